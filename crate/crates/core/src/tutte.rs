//! Tutte and arithmetic Tutte polynomials by direct subset summation, and
//! the change of variables to the coboundary form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Echelon, VectorConfig, DEFAULT_SUBSET_CAPACITY};
use crate::poly::{rat, MultiPoly, Rational};

pub const TUTTE_VARS: [&str; 2] = ["x", "y"];
pub const COBOUNDARY_VARS: [&str; 2] = ["X", "Y"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    Classical,
    Arithmetic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuttePolynomial {
    pub poly: MultiPoly,
    /// r(A).
    pub rank: usize,
    /// Rank of the ambient lattice.
    pub ambient_rank: usize,
    pub flavor: Flavor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundaryPolynomial {
    pub poly: MultiPoly,
    pub rank: usize,
}

impl TuttePolynomial {
    pub fn eval(&self, x: i64, y: i64) -> Rational {
        self.poly.eval(&[rat(x), rat(y)]).expect("Tutte polynomials are bivariate")
    }

    pub fn eval_integer(&self, x: i64, y: i64) -> BigInt {
        let v = self.eval(x, y);
        debug_assert!(v.is_integer());
        v.to_integer()
    }
}

/// Σ over subsets of m(B), bucketed by (r(B), |B|).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetCensus {
    pub full_rank: usize,
    pub lattice_rank: usize,
    /// `counts[r][k]` = Σ m(B) over B with r(B) = r and |B| = k.
    pub counts: Vec<Vec<u128>>,
}

/// Walks all subsets depth-first, maintaining the Hermite basis of the
/// lattice they generate.
///
/// m(B) = [span(B) ∩ Λ : ZB]. When a new vector raises the rank the index is
/// read off the Smith form; while the span stays fixed, the pivot columns
/// stay fixed and m(B) is proportional to the product of the Hermite pivots.
pub fn subset_census(config: &VectorConfig, arithmetic: bool, capacity: usize) -> Result<SubsetCensus> {
    let n = config.len();
    if n > capacity {
        return Err(Error::Capacity {
            what: "configuration size for subset enumeration".into(),
            size: n as u128,
            limit: capacity as u128,
        });
    }
    let d = config.lattice_rank();
    let coords = config.coords();

    struct Walk<'a> {
        coords: &'a [Vec<i64>],
        arithmetic: bool,
        d: usize,
    }

    impl Walk<'_> {
        fn blank(&self) -> Vec<u128> {
            vec![0; (self.d + 1) * (self.coords.len() + 1)]
        }

        // `sat` is the pivot product of the saturated lattice of the current span.
        fn go(&self, start: usize, size: usize, ech: &Echelon, sat: i128, m: u128, acc: &mut Vec<u128>) {
            let k = self.coords.len() + 1;
            acc[ech.rank() * k + size] += m;
            let remaining = self.coords.len() - start;
            if remaining > 14 && start < 4 {
                // Fan out the top of the tree.
                let parts: Vec<Vec<u128>> = (start..self.coords.len())
                    .into_par_iter()
                    .map(|i| {
                        let mut local = self.blank();
                        self.step(i, size, ech, sat, &mut local);
                        local
                    })
                    .collect();
                for p in parts {
                    for (a, b) in acc.iter_mut().zip(p) {
                        *a += b;
                    }
                }
            } else {
                for i in start..self.coords.len() {
                    self.step(i, size, ech, sat, acc);
                }
            }
        }

        fn step(&self, i: usize, size: usize, ech: &Echelon, sat: i128, acc: &mut Vec<u128>) {
            let mut next = ech.clone();
            let grew = next.insert(&self.coords[i]);
            let (m, sat) = if !self.arithmetic {
                (1, sat)
            } else if grew {
                let m = next.multiplicity();
                (m, next.pivot_product() / m)
            } else {
                (next.pivot_product() / sat, sat)
            };
            self.go(i + 1, size + 1, &next, sat, m as u128, acc);
        }
    }

    let walk = Walk { coords, arithmetic, d };
    let mut acc = walk.blank();
    walk.go(0, 0, &Echelon::new(), 1, 1, &mut acc);
    let k = n + 1;
    let counts: Vec<Vec<u128>> = (0..=d).map(|r| acc[r * k..(r + 1) * k].to_vec()).collect();
    let full_rank = (0..=d).rev().find(|&r| counts[r].iter().any(|&c| c > 0)).unwrap_or(0);
    Ok(SubsetCensus { full_rank, lattice_rank: d, counts })
}

pub(crate) fn census_to_tutte(c: &SubsetCensus, flavor: Flavor) -> TuttePolynomial {
    let x1 = MultiPoly::parse("x - 1", &TUTTE_VARS).unwrap();
    let y1 = MultiPoly::parse("y - 1", &TUTTE_VARS).unwrap();
    let mut poly = MultiPoly::zero(&TUTTE_VARS);
    for (r, row) in c.counts.iter().enumerate() {
        for (k, &m) in row.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let term = &x1.pow((c.full_rank - r) as u32) * &y1.pow((k - r) as u32);
            poly = &poly + &term.scale(&Rational::from_integer(BigInt::from(m)));
        }
    }
    TuttePolynomial { poly, rank: c.full_rank, ambient_rank: c.lattice_rank, flavor }
}

pub fn arithmetic_tutte_bruteforce(config: &VectorConfig) -> Result<TuttePolynomial> {
    arithmetic_tutte_bruteforce_with_capacity(config, DEFAULT_SUBSET_CAPACITY)
}

pub fn arithmetic_tutte_bruteforce_with_capacity(config: &VectorConfig, capacity: usize) -> Result<TuttePolynomial> {
    Ok(census_to_tutte(&subset_census(config, true, capacity)?, Flavor::Arithmetic))
}

pub fn classical_tutte_bruteforce(config: &VectorConfig) -> Result<TuttePolynomial> {
    classical_tutte_bruteforce_with_capacity(config, DEFAULT_SUBSET_CAPACITY)
}

pub fn classical_tutte_bruteforce_with_capacity(config: &VectorConfig, capacity: usize) -> Result<TuttePolynomial> {
    Ok(census_to_tutte(&subset_census(config, false, capacity)?, Flavor::Classical))
}

/// ψ(X,Y) = (y−1)^r M(x,y) with X = (x−1)(y−1), Y = y. Writing
/// x = (X+Y−1)/(Y−1), each term a·x^i·y^j becomes a·(X+Y−1)^i (Y−1)^{r−i} Y^j.
pub fn coboundary_from_tutte(t: &TuttePolynomial) -> Result<CoboundaryPolynomial> {
    let xy1 = MultiPoly::parse("X + Y - 1", &COBOUNDARY_VARS).unwrap();
    let y1 = MultiPoly::parse("Y - 1", &COBOUNDARY_VARS).unwrap();
    let yy = MultiPoly::var(&COBOUNDARY_VARS, "Y").unwrap();
    let mut out = MultiPoly::zero(&COBOUNDARY_VARS);
    for (e, c) in t.poly.terms() {
        let (i, j) = (e[0] as usize, e[1]);
        if i > t.rank {
            return Err(Error::RankMismatch(format!("x-degree {i} exceeds rank {}", t.rank)));
        }
        let term = &(&xy1.pow(i as u32) * &y1.pow((t.rank - i) as u32)) * &yy.pow(j);
        out = &out + &term.scale(c);
    }
    Ok(CoboundaryPolynomial { poly: out, rank: t.rank })
}

/// Inverse of [`coboundary_from_tutte`]; fails unless (y−1)^r divides the
/// substituted polynomial.
pub fn tutte_from_coboundary(c: &CoboundaryPolynomial, ambient_rank: usize, flavor: Flavor) -> Result<TuttePolynomial> {
    let mut b = BTreeMap::new();
    b.insert("X".to_string(), MultiPoly::parse("x*y - x - y + 1", &TUTTE_VARS).unwrap());
    b.insert("Y".to_string(), MultiPoly::var(&TUTTE_VARS, "y").unwrap());
    let sub = c.poly.substitute(&b, &TUTTE_VARS)?;
    let y1 = MultiPoly::parse("y - 1", &TUTTE_VARS).unwrap().pow(c.rank as u32);
    let poly = sub.divide_exact(&y1).map_err(|_| {
        Error::InexactDivision(format!("coboundary polynomial {} is not divisible by (y-1)^{}", c.poly, c.rank))
    })?;
    Ok(TuttePolynomial { poly, rank: c.rank, ambient_rank, flavor })
}

impl CoboundaryPolynomial {
    /// ψ(X, 1) == X^r.
    pub fn normalization_holds(&self) -> bool {
        let at1 = self.poly.partial_eval(&[("Y", rat(1))]).expect("coboundary variables");
        let expected = MultiPoly::var(&COBOUNDARY_VARS, "X").unwrap().pow(self.rank as u32);
        at1 == expected
    }

    /// ψ(q, Y) as a polynomial in Y (still over {X, Y}).
    pub fn at_x(&self, q: i64) -> MultiPoly {
        self.poly.partial_eval(&[("X", rat(q))]).expect("coboundary variables")
    }
}

/// True if every coefficient is a non-negative integer.
pub fn has_nonnegative_integer_coeffs(p: &MultiPoly) -> bool {
    p.terms().all(|(_, c)| c.is_integer() && !c.is_negative())
}
