//! Positive roots of A, B, C, D and their integer, root, and weight lattices.
//!
//! Type A is indexed by the number of coordinates `n`, so `A:n` denotes the
//! configuration A_{n−1}. In the integer lattice its roots live in Z^n; in
//! the root and weight lattices they live in the quotient Z^n/(Σe_i = 0),
//! written in coordinates ē_1, …, ē_{n−1} with e_n = −(ē_1 + ⋯ + ē_{n−1}).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticeBasis, VectorConfig};
use crate::poly::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];

    pub fn min_n(self) -> usize {
        match self {
            Family::D => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            _ => Err(Error::Parse(format!("unknown family `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LatticeKind {
    Integer,
    Root,
    Weight,
}

impl LatticeKind {
    pub const ALL: [LatticeKind; 3] = [LatticeKind::Integer, LatticeKind::Root, LatticeKind::Weight];
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LatticeKind::Integer => "integer",
            LatticeKind::Root => "root",
            LatticeKind::Weight => "weight",
        };
        f.write_str(s)
    }
}

impl FromStr for LatticeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "integer" | "z" | "int" => Ok(LatticeKind::Integer),
            "root" | "r" => Ok(LatticeKind::Root),
            "weight" | "w" => Ok(LatticeKind::Weight),
            _ => Err(Error::Parse(format!("unknown lattice `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSystemSpec {
    pub family: Family,
    pub n: usize,
    pub lattice: LatticeKind,
}

impl RootSystemSpec {
    pub fn new(family: Family, n: usize, lattice: LatticeKind) -> Result<Self> {
        if n < family.min_n() {
            return Err(Error::InvalidSystem(format!(
                "{family} needs n >= {}, got {n}",
                family.min_n()
            )));
        }
        Ok(RootSystemSpec { family, n, lattice })
    }

    /// Rank of the full configuration.
    pub fn rank(&self) -> usize {
        match self.family {
            Family::A => self.n - 1,
            _ => self.n,
        }
    }

    /// Rank of the lattice the configuration lives in.
    pub fn lattice_rank(&self) -> usize {
        match (self.family, self.lattice) {
            (Family::A, LatticeKind::Integer) => self.n,
            (Family::A, _) => self.n - 1,
            _ => self.n,
        }
    }

    pub fn root_count(&self) -> usize {
        let n = self.n;
        match self.family {
            Family::A => n * (n - 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
        }
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.family, self.n, self.lattice)
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;
    /// Parses `FAMILY:n:lattice`, e.g. `C:2:integer`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [fam, n, lat] = parts.as_slice() else {
            return Err(Error::Parse(format!("expected FAMILY:n:lattice, got `{s}`")));
        };
        let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad rank `{n}`")))?;
        RootSystemSpec::new(fam.parse()?, n, lat.parse()?)
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Positive roots in standard coordinates of Z^n, in the fixed order
/// e_i − e_j (i < j), then e_i + e_j (i < j), then e_i or 2e_i.
pub fn standard_roots(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    for &(i, j) in &pairs {
        let mut v = vec![0; n];
        v[i] = 1;
        v[j] = -1;
        out.push(v);
    }
    if family != Family::A {
        for &(i, j) in &pairs {
            let mut v = vec![0; n];
            v[i] = 1;
            v[j] = 1;
            out.push(v);
        }
    }
    match family {
        Family::B => out.extend((0..n).map(|i| unit(n, i))),
        Family::C => out.extend((0..n).map(|i| unit(n, i).iter().map(|x| 2 * x).collect())),
        _ => {}
    }
    out
}

/// Image of a vector of Z^n in the quotient coordinates ē_1..ē_{n−1}.
fn to_quotient(v: &[i64]) -> Vec<i64> {
    let n = v.len();
    let last = v[n - 1];
    v[..n - 1].iter().map(|x| x - last).collect()
}

fn ints_to_rationals(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()
}

/// Basis columns (numerators) and common denominator for a lattice.
fn lattice_basis(family: Family, n: usize, kind: LatticeKind) -> Result<LatticeBasis> {
    use Family::*;
    use LatticeKind::*;
    let m = match (family, kind) {
        (A, Integer) => n,
        (A, _) => n - 1,
        _ => n,
    };
    match (family, kind) {
        (A, Integer) | (B, Integer) | (C, Integer) | (D, Integer) | (B, Root) | (C, Weight) => {
            Ok(LatticeBasis::standard(m))
        }
        (A, Weight) => Ok(LatticeBasis::standard(m)),
        (A, Root) => {
            let cols: Vec<Vec<i64>> = (0..n - 1)
                .map(|k| {
                    let mut v = vec![0; n];
                    v[k] = 1;
                    v[k + 1] = -1;
                    to_quotient(&v)
                })
                .collect();
            LatticeBasis::from_scaled_columns(m, &cols, 1)
        }
        (C, Root) | (D, Root) => {
            // Even coordinate sum: e_k − e_{k+1} and 2e_n.
            let mut cols: Vec<Vec<i64>> = (0..n - 1)
                .map(|k| {
                    let mut v = vec![0; n];
                    v[k] = 1;
                    v[k + 1] = -1;
                    v
                })
                .collect();
            cols.push(unit(n, n - 1).iter().map(|x| 2 * x).collect());
            LatticeBasis::from_scaled_columns(m, &cols, 1)
        }
        (B, Weight) | (D, Weight) => {
            // e_1..e_{n−1} and (e_1 + ⋯ + e_n)/2, over denominator 2.
            let mut cols: Vec<Vec<i64>> = (0..n - 1).map(|k| unit(n, k).iter().map(|x| 2 * x).collect()).collect();
            cols.push(vec![1; n]);
            LatticeBasis::from_scaled_columns(m, &cols, 2)
        }
    }
}

/// The lattice for `spec`, in the coordinates used by [`build_config`].
pub fn build_lattice(spec: &RootSystemSpec) -> Result<LatticeBasis> {
    RootSystemSpec::new(spec.family, spec.n, spec.lattice)?;
    lattice_basis(spec.family, spec.n, spec.lattice)
}

pub fn build_config(spec: &RootSystemSpec) -> Result<VectorConfig> {
    let lattice = build_lattice(spec)?;
    let roots = standard_roots(spec.family, spec.n);
    let vectors = match (spec.family, spec.lattice) {
        (Family::A, LatticeKind::Root | LatticeKind::Weight) => {
            roots.iter().map(|v| ints_to_rationals(&to_quotient(v))).collect()
        }
        _ => roots.iter().map(|v| ints_to_rationals(v)).collect(),
    };
    VectorConfig::new(vectors, lattice)
}

/// [Λ_W : Λ_R] as given by the Cartan determinant.
pub fn cartan_index(family: Family, n: usize) -> Result<u64> {
    match family {
        Family::A if n >= 1 => Ok(n as u64),
        Family::B | Family::C if n >= 1 => Ok(2),
        Family::D if n >= 3 => Ok(4),
        Family::D => Err(Error::Domain(format!("Cartan determinant of D_{n} is only listed for n >= 3"))),
        _ => Err(Error::Domain(format!("invalid rank {n} for {family}"))),
    }
}

/// [Λ_W : Λ_R] computed from the two bases.
pub fn lattice_index_check(family: Family, n: usize) -> Result<BigInt> {
    let w = lattice_basis_checked(family, n, LatticeKind::Weight)?;
    let r = lattice_basis_checked(family, n, LatticeKind::Root)?;
    w.index_of(&r)
}

fn lattice_basis_checked(family: Family, n: usize, kind: LatticeKind) -> Result<LatticeBasis> {
    build_lattice(&RootSystemSpec::new(family, n, kind)?)
}

/// Order of the Weyl group.
pub fn weyl_group_order(family: Family, n: usize) -> BigInt {
    let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
    match family {
        Family::A => fact,
        Family::B | Family::C => (BigInt::from(1) << n) * fact,
        Family::D => (BigInt::from(1) << (n.saturating_sub(1))) * fact,
    }
}
