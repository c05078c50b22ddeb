//! Lattices given by rational bases, vector configurations inside them, and
//! the rank and multiplicity of subsets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::Rational;

/// A lattice of rank `d` in Q^m, stored as `d` linearly independent basis
/// columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    ambient_dim: usize,
    columns: Vec<Vec<Rational>>,
}

impl LatticeBasis {
    pub fn new(ambient_dim: usize, columns: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != ambient_dim) {
            return Err(Error::DegenerateBasis(format!(
                "column of length {} in ambient dimension {ambient_dim}",
                c.len()
            )));
        }
        if rational_rank(&columns) != columns.len() {
            return Err(Error::DegenerateBasis("columns are linearly dependent".into()));
        }
        Ok(LatticeBasis { ambient_dim, columns })
    }

    /// Z^m with the standard basis.
    pub fn standard(m: usize) -> Self {
        let columns = (0..m)
            .map(|i| (0..m).map(|j| Rational::from_integer(BigInt::from((i == j) as i64))).collect())
            .collect();
        LatticeBasis { ambient_dim: m, columns }
    }

    /// Convenience constructor from integer numerator columns over a common
    /// denominator.
    pub fn from_scaled_columns(ambient_dim: usize, columns: &[Vec<i64>], denom: i64) -> Result<Self> {
        let cols = columns
            .iter()
            .map(|c| c.iter().map(|&x| Rational::new(BigInt::from(x), BigInt::from(denom))).collect())
            .collect();
        Self::new(ambient_dim, cols)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<Rational>] {
        &self.columns
    }

    /// Integer coordinates of `v` in this basis.
    pub fn lattice_coordinates(&self, v: &[Rational]) -> Result<Vec<BigInt>> {
        let c = self.rational_coordinates(v)?;
        if c.iter().all(|x| x.is_integer()) {
            Ok(c.into_iter().map(|x| x.to_integer()).collect())
        } else {
            Err(Error::NotInLattice(c.iter().map(|x| x.to_string()).collect()))
        }
    }

    /// Solves `basis · c = v` over the rationals.
    pub fn rational_coordinates(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.ambient_dim {
            return Err(Error::Domain(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        let d = self.rank();
        // Augmented m × (d+1) system.
        let mut a: Vec<Vec<Rational>> = (0..self.ambient_dim)
            .map(|i| {
                let mut row: Vec<Rational> = self.columns.iter().map(|c| c[i].clone()).collect();
                row.push(v[i].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..d {
            let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = a[row][col].recip();
            for x in a[row].iter_mut() {
                *x *= &inv;
            }
            for i in 0..a.len() {
                if i != row && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in 0..=d {
                        let t = &f * &a[row][j];
                        a[i][j] -= t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if a[row..].iter().any(|r| !r[d].is_zero()) {
            return Err(Error::NotInSpan);
        }
        let mut c = vec![Rational::zero(); d];
        for (r, &col) in pivots.iter().enumerate() {
            c[col] = a[r][d].clone();
        }
        Ok(c)
    }

    /// |det| of the matrix expressing `sub`'s basis in this basis, i.e. the
    /// index [self : sub]. Both lattices must have the same rank and `sub`
    /// must be contained in `self`.
    pub fn index_of(&self, sub: &LatticeBasis) -> Result<BigInt> {
        if sub.rank() != self.rank() {
            return Err(Error::RankMismatch(format!("ranks {} and {}", self.rank(), sub.rank())));
        }
        let rows: Vec<Vec<BigInt>> = sub
            .columns
            .iter()
            .map(|c| self.lattice_coordinates(c))
            .collect::<Result<_>>()?;
        let f = snf_invariant_factors(&rows);
        if f.len() != self.rank() {
            return Err(Error::DegenerateBasis("sublattice is not of full rank".into()));
        }
        Ok(f.into_iter().product())
    }

    /// Applies an integer change of basis: new column j = Σ_i u[i][j]·old
    /// column i.
    pub fn transformed(&self, u: &[Vec<i64>]) -> Result<Self> {
        let d = self.rank();
        let cols = (0..d)
            .map(|j| {
                (0..self.ambient_dim)
                    .map(|k| {
                        (0..d).fold(Rational::zero(), |acc, i| {
                            acc + &self.columns[i][k] * Rational::from_integer(BigInt::from(u[i][j]))
                        })
                    })
                    .collect()
            })
            .collect();
        Self::new(self.ambient_dim, cols)
    }
}

/// Rank of a list of rational vectors.
pub fn rational_rank(vectors: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = vectors.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            if !a[i][col].is_zero() {
                let f = &a[i][col] / &a[rank][col];
                for j in col..cols {
                    let t = &f * &a[rank][j];
                    a[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Nonzero invariant factors d₁ | d₂ | ⋯ of the Smith normal form.
pub fn snf_invariant_factors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    snf_generic(m.to_vec())
}

pub(crate) fn snf_i128(m: Vec<Vec<i128>>) -> Vec<i128> {
    snf_generic(m)
}

fn snf_generic<T: Integer + Signed + Clone>(mut a: Vec<Vec<T>>) -> Vec<T> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let s = q.clone() * a[t][j].clone();
                        a[i][j] = a[i][j].clone() - s;
                    }
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let s = q.clone() * row[t].clone();
                        row[j] = row[j].clone() - s;
                    }
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                // Divisibility condition on the rest of the block.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] = a[t][j].clone() + a[i][j].clone();
                        }
                        continue;
                    }
                }
            }
            // Move the smallest nonzero entry of row t / column t to the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// Rank and multiplicity of a subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetStats {
    pub rank: usize,
    pub multiplicity: BigInt,
}

/// An ordered list of vectors, each lying in `lattice`.
#[derive(Clone, Debug)]
pub struct VectorConfig {
    vectors: Vec<Vec<Rational>>,
    lattice: LatticeBasis,
    coords: Vec<Vec<i64>>,
}

impl VectorConfig {
    pub fn new(vectors: Vec<Vec<Rational>>, lattice: LatticeBasis) -> Result<Self> {
        let coords = vectors
            .iter()
            .map(|v| {
                lattice.lattice_coordinates(v)?.iter().map(|c| {
                    c.to_i64().ok_or_else(|| Error::Domain(format!("coordinate {c} too large")))
                }).collect()
            })
            .collect::<Result<Vec<Vec<i64>>>>()?;
        Ok(VectorConfig { vectors, lattice, coords })
    }

    /// Integer vectors in Z^m.
    pub fn integral(vectors: &[Vec<i64>], m: usize) -> Result<Self> {
        let vs = vectors
            .iter()
            .map(|v| v.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
            .collect();
        Self::new(vs, LatticeBasis::standard(m))
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattice.ambient_dim()
    }

    pub fn lattice(&self) -> &LatticeBasis {
        &self.lattice
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    /// Lattice coordinates of every vector, in order.
    pub fn coords(&self) -> &[Vec<i64>] {
        &self.coords
    }

    /// Same vectors described in a different basis of (possibly) another
    /// lattice.
    pub fn with_lattice(&self, lattice: LatticeBasis) -> Result<Self> {
        Self::new(self.vectors.clone(), lattice)
    }

    pub fn subset_stats(&self, subset: &[usize]) -> Result<SubsetStats> {
        let rows = subset
            .iter()
            .map(|&i| {
                self.coords
                    .get(i)
                    .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                    .ok_or_else(|| Error::Domain(format!("index {i} out of range")))
            })
            .collect::<Result<Vec<Vec<BigInt>>>>()?;
        let f = snf_invariant_factors(&rows);
        Ok(SubsetStats { rank: f.len(), multiplicity: f.into_iter().fold(BigInt::one(), |a, b| a * b) })
    }

    pub fn rank(&self) -> usize {
        let all: Vec<usize> = (0..self.len()).collect();
        self.subset_stats(&all).map(|s| s.rank).unwrap_or(0)
    }
}

/// Default largest configuration any exhaustive sweep will accept.
pub const DEFAULT_SUBSET_CAPACITY: usize = 25;
const LCM_CAPACITY: usize = 64;

/// Row-echelon basis of the lattice spanned by the vectors inserted so far,
/// kept in Hermite form so entries stay small.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v`; returns true when the rank grows.
    pub(crate) fn insert(&mut self, v: &[i64]) -> bool {
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut grew = false;
        let mut k = 0;
        loop {
            let Some(c) = v.iter().position(|x| *x != 0) else { break };
            while k < self.pivots.len() && self.pivots[k] < c {
                k += 1;
            }
            if k < self.pivots.len() && self.pivots[k] == c {
                // Unimodular 2×2 combination zeroes v[c].
                let row = &self.rows[k];
                let (g, s, t) = ext_gcd(row[c], v[c]);
                let (a, b) = (row[c] / g, v[c] / g);
                let new_row: Vec<i128> = row.iter().zip(&v).map(|(r, x)| s * r + t * x).collect();
                let new_v: Vec<i128> = row.iter().zip(&v).map(|(r, x)| a * x - b * r).collect();
                self.rows[k] = new_row;
                v = new_v;
            } else {
                if v[c] < 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                self.rows.insert(k, v);
                self.pivots.insert(k, c);
                grew = true;
                break;
            }
        }
        self.reduce();
        grew
    }

    fn reduce(&mut self) {
        for j in 0..self.rows.len() {
            let c = self.pivots[j];
            if self.rows[j][c] < 0 {
                self.rows[j].iter_mut().for_each(|x| *x = -*x);
            }
            let p = self.rows[j][c];
            for i in 0..j {
                let q = self.rows[i][c].div_euclid(p);
                if q != 0 {
                    let (lo, hi) = self.rows.split_at_mut(j);
                    for (x, y) in lo[i].iter_mut().zip(&hi[0]) {
                        *x -= q * y;
                    }
                }
            }
        }
    }

    pub(crate) fn pivot_product(&self) -> i128 {
        self.rows.iter().zip(&self.pivots).map(|(r, &c)| r[c]).product()
    }

    /// Product of Smith invariant factors of the stored basis.
    pub(crate) fn multiplicity(&self) -> i128 {
        snf_i128(self.rows.clone()).into_iter().product()
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// lcm of m(B) over all subsets B. Since m(B) is the gcd of m over the
/// bases of B, it suffices to sweep independent subsets.
pub fn multiplicity_lcm(config: &VectorConfig) -> Result<BigInt> {
    if config.len() > LCM_CAPACITY {
        return Err(Error::Capacity {
            what: "configuration size for multiplicity sweep".into(),
            size: config.len() as u128,
            limit: LCM_CAPACITY as u128,
        });
    }
    fn walk(coords: &[Vec<i64>], start: usize, ech: &Echelon) -> i128 {
        (start..coords.len())
            .into_par_iter()
            .map(|i| {
                let mut next = ech.clone();
                if !next.insert(&coords[i]) {
                    return 1;
                }
                let m = next.multiplicity();
                m.lcm(&walk(coords, i + 1, &next))
            })
            .reduce(|| 1, |a, b| a.lcm(&b))
    }
    Ok(BigInt::from(walk(config.coords(), 0, &Echelon::new())))
}
