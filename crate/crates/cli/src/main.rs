mod engines;
mod report;
mod table;
mod verify;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, Subcommand};

use engines::{Failure, Method, Output};
use table::TableLattice;

#[derive(Parser)]
#[command(name = "tuttekit", version, about = "Arithmetic Tutte polynomials of the classical root systems")]
struct Cli {
    /// Cap on worker threads for the enumeration engines.
    #[arg(long, global = true, env = "TUTTEKIT_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute M(x,y) for one system by one method.
    Compute {
        /// FAMILY:n:lattice, e.g. C:2:integer
        #[arg(long)]
        system: String,
        #[arg(long, value_enum, default_value_t = Method::Genfun)]
        method: Method,
        /// Ignore multiplicities (ordinary Tutte polynomial).
        #[arg(long)]
        classical: bool,
        #[arg(long)]
        order: Option<usize>,
        /// `auto` or a prime, for --method finitefield.
        #[arg(long, default_value = "auto")]
        prime: String,
        /// Read n for type A as the rank instead of the coordinate count.
        #[arg(long)]
        a_by_rank: bool,
        #[arg(long, visible_alias = "out", value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Cross-check every applicable pair of methods.
    #[command(group(ArgGroup::new("target").required(true).args(["system", "signed_graphs"])))]
    Verify {
        #[arg(long)]
        system: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value = "auto")]
        prime: String,
        #[arg(long)]
        a_by_rank: bool,
        /// Check the signed and unsigned graph census against the closed formulas.
        #[arg(long)]
        signed_graphs: bool,
        #[arg(long, default_value_t = 4)]
        max_v: usize,
        #[arg(long, visible_alias = "out", value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Tabulate every family up to a given n.
    Table {
        #[arg(long, value_enum, default_value_t = TableLattice::Weight)]
        lattice: TableLattice,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Comma-separated columns: tutte, char, ehrhart.
        #[arg(long, default_value = "tutte")]
        report: String,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        a_by_rank: bool,
        #[arg(long, visible_alias = "out", value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Characteristic and Ehrhart polynomials and the evaluation invariants.
    Invariants {
        #[arg(long)]
        system: String,
        #[arg(long, value_enum, default_value_t = Method::Genfun)]
        method: Method,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        a_by_rank: bool,
        #[arg(long, visible_alias = "out", value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Dump the embedded published values with their citations.
    Fixtures {
        #[arg(long, visible_alias = "out", value_enum, default_value_t = Output::Json)]
        output: Output,
    },
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Failure::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Compute { system, method, classical, order, prime, a_by_rank, output } => {
            let spec = engines::resolve(&system, a_by_rank)?;
            let out = report::compute(&spec, a_by_rank, method, classical, order, &prime, output)?;
            Ok((out, true))
        }
        Command::Verify { system: Some(system), method, order, prime, a_by_rank, output, .. } => {
            let spec = engines::resolve(&system, a_by_rank)?;
            verify::system(&spec, a_by_rank, method, order, &prime, output)
        }
        Command::Verify { max_v, output, .. } => verify::signed_graphs(max_v, output),
        Command::Table { lattice, max_n, report, order, a_by_rank, output } => {
            Ok((table::table(lattice, max_n, &report, order, a_by_rank, output)?, true))
        }
        Command::Invariants { system, method, order, a_by_rank, output } => {
            let spec = engines::resolve(&system, a_by_rank)?;
            report::invariants(&spec, a_by_rank, method, order, output)
        }
        Command::Fixtures { output } => Ok((report::fixtures(output)?, true)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(4),
            };
        }
    };
    match run(cli) {
        Ok((out, ok)) => {
            println!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
