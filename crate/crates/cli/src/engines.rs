use std::fmt;

use clap::ValueEnum;
use num_traits::ToPrimitive;
use serde_json::Value;

use tuttekit::finite_field::{admissible_primes, is_prime};
use tuttekit::genfun::{expand_genfun, extract_from_series, GenFunLattice, GenFunRequest, DEFAULT_ORDER};
use tuttekit::lattice::{multiplicity_lcm, VectorConfig};
use tuttekit::root_system::{build_config, Family, RootSystemSpec};
use tuttekit::signed_graph::graph_dictionary_tutte;
use tuttekit::tutte::{arithmetic_tutte_bruteforce, classical_tutte_bruteforce, TuttePolynomial};
use tuttekit::{Error, MultiPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Bruteforce,
    Genfun,
    Finitefield,
    Graphs,
    All,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_possible_value().expect("no skipped variants");
        write!(f, "{}", s.get_name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Debug)]
pub enum Failure {
    Lib(Error),
    Usage(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Capacity { .. }) => 3,
            Failure::Lib(Error::Parse(_) | Error::InvalidSystem(_) | Error::Inadmissible(_)) => 4,
            Failure::Usage(_) => 4,
            Failure::Lib(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Usage(s) => write!(f, "{s}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Parses a system string; with `a_by_rank`, type A's n is a rank.
pub fn resolve(system: &str, a_by_rank: bool) -> Result<RootSystemSpec, Failure> {
    let spec: RootSystemSpec = system.parse()?;
    if a_by_rank && spec.family == Family::A {
        return Ok(RootSystemSpec::new(Family::A, spec.n + 1, spec.lattice)?);
    }
    Ok(spec)
}

pub fn label(spec: &RootSystemSpec, a_by_rank: bool) -> String {
    if a_by_rank && spec.family == Family::A {
        format!("A:{}:{}", spec.n - 1, spec.lattice)
    } else {
        spec.to_string()
    }
}

pub fn order(requested: Option<usize>, n: usize) -> Result<usize, Failure> {
    match requested {
        Some(o) if o < n => Err(Failure::Usage(format!("--order {o} is below n = {n}"))),
        Some(o) => Ok(o),
        None => Ok(DEFAULT_ORDER.max(n)),
    }
}

pub fn tutte(spec: &RootSystemSpec, method: Method, order: usize, classical: bool) -> Result<TuttePolynomial, Failure> {
    match method {
        Method::Bruteforce => {
            let config = build_config(spec)?;
            if classical {
                Ok(classical_tutte_bruteforce(&config)?)
            } else {
                Ok(arithmetic_tutte_bruteforce(&config)?)
            }
        }
        Method::Genfun => {
            let lattice = if classical { GenFunLattice::Classical } else { spec.lattice.into() };
            let series = expand_genfun(&GenFunRequest { family: spec.family, lattice, order })?;
            Ok(extract_from_series(&series, spec.family, lattice, spec.n)?)
        }
        Method::Graphs if classical => {
            Err(Failure::Usage("the graph dictionary computes arithmetic polynomials only".into()))
        }
        Method::Graphs => Ok(graph_dictionary_tutte(spec.family, spec.n, spec.lattice)?),
        Method::Finitefield | Method::All => {
            Err(Failure::Usage(format!("--method {method} does not produce a single polynomial")))
        }
    }
}

pub fn lcm(config: &VectorConfig) -> Result<u64, Failure> {
    let l = multiplicity_lcm(config)?;
    l.to_u64().ok_or_else(|| {
        Failure::Lib(Error::Capacity {
            what: "multiplicity lcm".into(),
            size: l.to_u128().unwrap_or(u128::MAX),
            limit: u64::MAX as u128,
        })
    })
}

/// Primes for the torus count: `auto` picks `count` admissible primes,
/// otherwise the given prime is checked for admissibility.
pub fn primes(config: &VectorConfig, choice: &str, count: usize) -> Result<Vec<u64>, Failure> {
    let d = lcm(config)?;
    if choice == "auto" {
        return Ok(admissible_primes(d, 5, count)?);
    }
    let p: u64 = choice
        .parse()
        .map_err(|_| Failure::Usage(format!("--prime expects `auto` or a prime, got `{choice}`")))?;
    if !is_prime(p) {
        return Err(Error::Inadmissible(format!("{p} is not prime")).into());
    }
    if (p - 1) % d != 0 {
        return Err(Error::Inadmissible(format!("multiplicity lcm {d} does not divide {p} - 1")).into());
    }
    Ok(vec![p])
}

pub fn poly_json(p: &MultiPoly) -> Result<Value, Failure> {
    Ok(serde_json::from_str(&p.to_canonical_json()?).expect("canonical JSON parses"))
}

pub fn render_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}
