//! Closed-form Tutte generating functions and extraction of individual
//! polynomials from them.
//!
//! For B, C, D the coefficient of Z^n/n! is ψ_{Φ_n}(X,Y). For type A the
//! coefficient of Z^n/n! is X·ψ_{A_{n−1}}(X,Y) for n ≥ 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{rat, rat_frac, MultiPoly, Rational};
use crate::root_system::{Family, LatticeKind};
use crate::series::{deformed_exponential, euler_phi, factorial, TruncSeries};
use crate::tutte::{tutte_from_coboundary, CoboundaryPolynomial, Flavor, TuttePolynomial, COBOUNDARY_VARS};

pub const DEFAULT_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenFunLattice {
    Classical,
    Integer,
    Root,
    Weight,
}

impl From<LatticeKind> for GenFunLattice {
    fn from(k: LatticeKind) -> Self {
        match k {
            LatticeKind::Integer => GenFunLattice::Integer,
            LatticeKind::Root => GenFunLattice::Root,
            LatticeKind::Weight => GenFunLattice::Weight,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenFunRequest {
    pub family: Family,
    pub lattice: GenFunLattice,
    pub order: usize,
}

fn poly(s: &str) -> MultiPoly {
    MultiPoly::parse(s, &COBOUNDARY_VARS).expect("static polynomial literal")
}

/// The building blocks F(αZ, β) at a fixed order.
struct Blocks {
    order: usize,
}

impl Blocks {
    fn f(&self, alpha: &str, beta: &str) -> Result<TruncSeries> {
        deformed_exponential(&COBOUNDARY_VARS, &poly(alpha), &poly(beta), self.order)
    }
    /// F(Z,Y)
    fn f_z_y(&self) -> Result<TruncSeries> {
        self.f("1", "Y")
    }
    /// F(2Z,Y)
    fn f_2z_y(&self) -> Result<TruncSeries> {
        self.f("2", "Y")
    }
    /// F(−2Z,Y)
    fn f_m2z_y(&self) -> Result<TruncSeries> {
        self.f("-2", "Y")
    }
    /// F(Z,Y²)
    fn f_z_y2(&self) -> Result<TruncSeries> {
        self.f("1", "Y^2")
    }
    /// F(YZ,Y²)
    fn f_yz_y2(&self) -> Result<TruncSeries> {
        self.f("Y", "Y^2")
    }
}

pub fn expand_genfun(req: &GenFunRequest) -> Result<TruncSeries> {
    use Family::*;
    use GenFunLattice::*;
    if req.order == 0 {
        return Err(Error::SeriesPrecondition("generating function order must be at least 1".into()));
    }
    let b = Blocks { order: req.order };
    match (req.family, req.lattice) {
        (A, Weight) => typea_weight_series(req.order),
        (A, _) => b.f_z_y()?.pow_poly_exponent(&poly("X")),
        (B, Classical) | (C, Classical) => {
            b.f_2z_y()?.pow_poly_exponent(&poly("1/2X - 1/2"))?.mul(&b.f_yz_y2()?)
        }
        (D, Classical) => b.f_2z_y()?.pow_poly_exponent(&poly("1/2X - 1/2"))?.mul(&b.f_z_y2()?),
        (B, Integer) | (B, Root) => {
            let base = b.f_2z_y()?.pow_poly_exponent(&poly("1/2X - 1"))?;
            base.mul(&b.f_z_y2()?)?.mul(&b.f_yz_y2()?)
        }
        (C, Integer) | (C, Weight) => {
            let base = b.f_2z_y()?.pow_poly_exponent(&poly("1/2X - 1"))?;
            base.mul(&b.f_yz_y2()?.pow(2)?)
        }
        (D, Integer) => {
            let base = b.f_2z_y()?.pow_poly_exponent(&poly("1/2X - 1"))?;
            base.mul(&b.f_z_y2()?.pow(2)?)
        }
        (C, Root) => {
            let base = b.f_2z_y()?.pow_poly_exponent(&poly("1/2X - 1"))?;
            let bracket = b.f_2z_y()?.add(&b.f_yz_y2()?.pow(2)?)?;
            Ok(base.mul(&bracket)?.scale(&rat_frac(1, 2)))
        }
        (D, Root) => {
            let base = b.f_2z_y()?.pow_poly_exponent(&poly("1/2X - 1"))?;
            let bracket = b.f_2z_y()?.add(&b.f_z_y2()?.pow(2)?)?;
            Ok(base.mul(&bracket)?.scale(&rat_frac(1, 2)))
        }
        (B, Weight) => {
            let base = b.f_2z_y()?.pow_poly_exponent(&poly("1/4X - 1"))?;
            let bracket = weight_bracket(&b)?;
            base.mul(&b.f_z_y2()?)?.mul(&b.f_yz_y2()?)?.mul(&bracket)
        }
        (D, Weight) => {
            let base = b.f_2z_y()?.pow_poly_exponent(&poly("1/4X - 1"))?;
            let bracket = weight_bracket(&b)?;
            base.mul(&b.f_z_y2()?.pow(2)?)?.mul(&bracket)
        }
    }
}

/// F(2Z,Y)^{X/4} + F(−2Z,Y)^{X/4}
fn weight_bracket(b: &Blocks) -> Result<TruncSeries> {
    let e = poly("1/4X");
    b.f_2z_y()?.pow_poly_exponent(&e)?.add(&b.f_m2z_y()?.pow_poly_exponent(&e)?)
}

/// Σ_{k≥1} φ(k)(exp(X·CG_k) − 1), where CG = log F(Z,Y) and CG_k keeps only
/// the terms of CG whose Z-degree is a multiple of k. Terms with k > order
/// vanish below Z^{order+1}. The constant term is zero rather than 1, which
/// only affects Z^0.
pub fn typea_weight_series(order: usize) -> Result<TruncSeries> {
    if order == 0 {
        return Err(Error::SeriesPrecondition("order must be at least 1".into()));
    }
    let cg = deformed_exponential(&COBOUNDARY_VARS, &poly("1"), &poly("Y"), order)?.log()?;
    let mut total = TruncSeries::zero(&COBOUNDARY_VARS, order);
    let one = TruncSeries::one(&COBOUNDARY_VARS, order);
    for k in 1..=order {
        let term = cg.filter_every_nth(k)?.scale_poly(&poly("X"))?.exp()?.sub(&one)?;
        total = total.add(&term.scale(&rat(euler_phi(k as u64) as i64)))?;
    }
    Ok(total)
}

/// Reads off the polynomial for rank `n` (number of coordinates for type A).
pub fn extract_polynomial(req: &GenFunRequest, n: usize) -> Result<TuttePolynomial> {
    let series = expand_genfun(req)?;
    extract_from_series(&series, req.family, req.lattice, n)
}

/// Extraction from an already expanded series; lets callers reuse one
/// expansion for several ranks.
pub fn extract_from_series(series: &TruncSeries, family: Family, lattice: GenFunLattice, n: usize) -> Result<TuttePolynomial> {
    if n > series.order() {
        return Err(Error::SeriesPrecondition(format!("rank {n} exceeds series order {}", series.order())));
    }
    if n < family.min_n() {
        return Err(Error::InvalidSystem(format!("{family} needs n >= {}", family.min_n())));
    }
    let coeff = coboundary_coefficient(series, n);
    let (psi, rank, ambient) = match family {
        Family::A => {
            let q = coeff.divide_exact(&poly("X"))?;
            let ambient = if lattice == GenFunLattice::Weight || lattice == GenFunLattice::Root { n - 1 } else { n };
            (q, n - 1, ambient)
        }
        _ => (coeff, n, n),
    };
    if !psi.is_integral() {
        return Err(Error::NonIntegral(format!("coboundary coefficient for {family}{n}: {psi}")));
    }
    let flavor = if lattice == GenFunLattice::Classical { Flavor::Classical } else { Flavor::Arithmetic };
    let t = tutte_from_coboundary(&CoboundaryPolynomial { poly: psi, rank }, ambient, flavor)?;
    if !t.poly.is_integral() {
        return Err(Error::NonIntegral(format!("Tutte polynomial for {family}{n}")));
    }
    Ok(t)
}

/// n!·[Z^n] of a series.
pub fn coboundary_coefficient(series: &TruncSeries, n: usize) -> MultiPoly {
    series.coeff(n).scale(&Rational::from_integer(factorial(n as u64)))
}
