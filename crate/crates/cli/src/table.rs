use clap::ValueEnum;
use serde_json::{json, Map, Value};

use tuttekit::genfun::{expand_genfun, extract_from_series, GenFunLattice, GenFunRequest};
use tuttekit::invariants::derive_all;
use tuttekit::root_system::Family;

use crate::engines::{order, poly_json, render_json, Failure, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableLattice {
    Integer,
    Root,
    Weight,
    Classical,
}

impl From<TableLattice> for GenFunLattice {
    fn from(l: TableLattice) -> Self {
        match l {
            TableLattice::Integer => GenFunLattice::Integer,
            TableLattice::Root => GenFunLattice::Root,
            TableLattice::Weight => GenFunLattice::Weight,
            TableLattice::Classical => GenFunLattice::Classical,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Column {
    Tutte,
    Characteristic,
    Ehrhart,
}

impl Column {
    fn name(self) -> &'static str {
        match self {
            Column::Tutte => "tutte",
            Column::Characteristic => "characteristic",
            Column::Ehrhart => "ehrhart",
        }
    }
}

fn columns(report: &str) -> Result<Vec<Column>, Failure> {
    report
        .split(',')
        .map(|s| match s.trim() {
            "tutte" => Ok(Column::Tutte),
            "char" | "characteristic" => Ok(Column::Characteristic),
            "ehrhart" => Ok(Column::Ehrhart),
            other => Err(Failure::Usage(format!("unknown report column `{other}`"))),
        })
        .collect()
}

/// Rows start at rank 1 for type A and at n = 2 for B, C, D. With
/// `a_by_rank`, `max_n` bounds the rank of type A rather than its
/// coordinate count.
pub fn table(
    lattice: TableLattice,
    max_n: usize,
    report: &str,
    requested_order: Option<usize>,
    a_by_rank: bool,
    output: Output,
) -> Result<String, Failure> {
    let cols = columns(report)?;
    let top_a = if a_by_rank { max_n + 1 } else { max_n };
    let order = order(requested_order, top_a.max(max_n))?;
    let lattice: GenFunLattice = lattice.into();
    let mut rows = Vec::new();
    for family in Family::ALL {
        let top = if family == Family::A { top_a } else { max_n };
        if top < 2 {
            continue;
        }
        let series = expand_genfun(&GenFunRequest { family, lattice, order })?;
        for n in 2..=top {
            let t = extract_from_series(&series, family, lattice, n)?;
            let report = if cols.iter().any(|&c| c != Column::Tutte) { Some(derive_all(&t)?) } else { None };
            let shown = if a_by_rank && family == Family::A { n - 1 } else { n };
            let cells: Vec<(Column, _)> = cols
                .iter()
                .map(|&c| {
                    let p = match c {
                        Column::Tutte => t.poly.clone(),
                        Column::Characteristic => report.as_ref().expect("derived above").characteristic.clone(),
                        Column::Ehrhart => report.as_ref().expect("derived above").ehrhart.clone(),
                    };
                    (c, p)
                })
                .collect();
            rows.push((format!("{family}{shown}"), cells));
        }
    }
    Ok(match output {
        Output::Json => {
            let mut out = Vec::new();
            for (name, cells) in &rows {
                let mut row = Map::new();
                row.insert("system".into(), json!(name));
                for (c, p) in cells {
                    row.insert(c.name().into(), poly_json(p)?);
                }
                out.push(Value::Object(row));
            }
            render_json(&json!({ "rows": out }))
        }
        Output::Text => rows
            .iter()
            .map(|(name, cells)| {
                let body: Vec<String> = cells.iter().map(|(_, p)| p.to_string()).collect();
                format!("{name}: {}", body.join(" | "))
            })
            .collect::<Vec<_>>()
            .join("\n"),
    })
}
