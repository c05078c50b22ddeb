//! Quantities read off an arithmetic Tutte polynomial by evaluation, and
//! closed forms for characteristic polynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{rat, MultiPoly, Rational};
use crate::root_system::{weyl_group_order, Family, LatticeKind};
use crate::series::{binomial, euler_phi, factorial};
use crate::tutte::{Flavor, TuttePolynomial};

pub const Q: [&str; 1] = ["q"];
pub const T: [&str; 1] = ["t"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub characteristic: MultiPoly,
    pub ehrhart: MultiPoly,
    pub volume: BigInt,
    pub lattice_points: BigInt,
    pub interior_points: BigInt,
    pub toric_regions: BigInt,
    pub poincare: MultiPoly,
    pub dm_dim: BigInt,
    pub dpv_dim: BigInt,
}

impl InvariantReport {
    pub fn to_json(&self) -> Result<Value> {
        let poly = |p: &MultiPoly| -> Result<Value> {
            Ok(serde_json::from_str(&p.to_canonical_json()?).expect("canonical JSON parses"))
        };
        Ok(json!({
            "characteristic": poly(&self.characteristic)?,
            "ehrhart": poly(&self.ehrhart)?,
            "volume": self.volume.to_string(),
            "lattice_points": self.lattice_points.to_string(),
            "interior_points": self.interior_points.to_string(),
            "toric_regions": self.toric_regions.to_string(),
            "poincare": poly(&self.poincare)?,
            "dm_dim": self.dm_dim.to_string(),
            "dpv_dim": self.dpv_dim.to_string(),
        }))
    }
}

fn q_var() -> MultiPoly {
    MultiPoly::var(&Q, "q").unwrap()
}

fn t_var() -> MultiPoly {
    MultiPoly::var(&T, "t").unwrap()
}

/// Coefficients of M(x, y0) as a polynomial in x.
fn x_coeffs(m: &TuttePolynomial, y0: i64) -> Result<Vec<Rational>> {
    m.poly.partial_eval(&[("y", rat(y0))])?.univariate_coeffs("x")
}

/// Σ_i a_i·f^i·g^{k−i} for coefficients a_i.
fn homogenize(coeffs: &[Rational], f: &MultiPoly, g: &MultiPoly, k: usize) -> Result<MultiPoly> {
    let mut out = f.zero_like();
    for (i, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        if i > k {
            return Err(Error::RankMismatch(format!("x-degree {i} exceeds {k}")));
        }
        out = &out + &(&f.pow(i as u32) * &g.pow((k - i) as u32)).scale(a);
    }
    Ok(out)
}

/// χ(q) = (−1)^r q^{d−r} M(1−q, 0).
pub fn characteristic_polynomial(m: &TuttePolynomial) -> Result<MultiPoly> {
    let a = x_coeffs(m, 0)?;
    let one = MultiPoly::one(&Q);
    let base = homogenize(&a, &(&one - &q_var()), &one, a.len())?;
    if m.rank > m.ambient_rank {
        return Err(Error::RankMismatch(format!("rank {} above lattice rank {}", m.rank, m.ambient_rank)));
    }
    let sign = if m.rank % 2 == 0 { rat(1) } else { rat(-1) };
    Ok((&base * &q_var().pow((m.ambient_rank - m.rank) as u32)).scale(&sign))
}

/// E(t) = t^r M(1 + 1/t, 1) = Σ_i b_i (t+1)^i t^{r−i}.
pub fn ehrhart_polynomial(m: &TuttePolynomial) -> Result<MultiPoly> {
    let b = x_coeffs(m, 1)?;
    let one = MultiPoly::one(&T);
    homogenize(&b, &(&t_var() + &one), &t_var(), m.rank)
}

/// q^d M((2q+1)/q, 0) = Σ_i a_i (2q+1)^i q^{d−i}.
pub fn poincare_polynomial(m: &TuttePolynomial) -> Result<MultiPoly> {
    let a = x_coeffs(m, 0)?;
    let f = &q_var().scale(&rat(2)) + &MultiPoly::one(&Q);
    homogenize(&a, &f, &q_var(), m.ambient_rank)
}

pub fn derive_all(m: &TuttePolynomial) -> Result<InvariantReport> {
    if m.flavor != Flavor::Arithmetic {
        return Err(Error::Domain("invariants are derived from arithmetic Tutte polynomials".into()));
    }
    let eval = |x: i64, y: i64| -> Result<BigInt> {
        let v = m.eval(x, y);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::NonIntegral(format!("M({x},{y}) = {v}")))
        }
    };
    let ehrhart = ehrhart_polynomial(m)?;
    Ok(InvariantReport {
        characteristic: characteristic_polynomial(m)?,
        volume: eval(1, 1)?,
        lattice_points: eval(2, 1)?,
        interior_points: eval(0, 1)?,
        toric_regions: eval(1, 0)?.abs(),
        poincare: poincare_polynomial(m)?,
        dm_dim: eval(1, 1)?,
        dpv_dim: eval(2, 1)?,
        ehrhart,
    })
}

fn linear(a: i64, b: i64) -> MultiPoly {
    // a·q + b
    &q_var().scale(&rat(a)) + &MultiPoly::one(&Q).scale(&rat(b))
}

fn product<I: IntoIterator<Item = MultiPoly>>(it: I) -> MultiPoly {
    it.into_iter().fold(MultiPoly::one(&Q), |acc, p| &acc * &p)
}

/// C(q/m, k) = Π_{i<k} (q/m − i) / k! as a polynomial in q.
fn binomial_poly(m: u64, k: u64) -> MultiPoly {
    let qm = q_var().scale(&Rational::new(BigInt::one(), BigInt::from(m)));
    let num = product((0..k).map(|i| &qm - &MultiPoly::one(&Q).scale(&rat(i as i64))));
    num.scale(&Rational::new(BigInt::one(), factorial(k)))
}

/// Closed-form characteristic polynomials: every family in the integer
/// lattice, and type A (n coordinates) in the weight lattice.
pub fn closed_form_characteristic(family: Family, n: usize, lattice: LatticeKind) -> Result<MultiPoly> {
    if n < family.min_n() {
        return Err(Error::InvalidSystem(format!("{family} needs n >= {}", family.min_n())));
    }
    let ni = n as i64;
    match (family, lattice) {
        (Family::A, LatticeKind::Integer) => Ok(product((0..ni).map(|i| linear(1, -i)))),
        (Family::B, LatticeKind::Integer) => {
            Ok(&product((1..ni).map(|i| linear(1, -2 * i))) * &linear(1, -ni))
        }
        (Family::C, LatticeKind::Integer) => Ok(product((1..=ni).map(|i| linear(1, -2 * i)))),
        (Family::D, LatticeKind::Integer) => {
            let quad = MultiPoly::parse(&format!("q^2 - {}q + {}", 2 * (ni - 1), ni * (ni - 1)), &Q)?;
            Ok(&product((1..=ni - 2).map(|i| linear(1, -2 * i))) * &quad)
        }
        (Family::A, LatticeKind::Weight) => typea_weight_characteristic(n),
        _ => Err(Error::Domain(format!("no closed form for {family} in the {lattice} lattice"))),
    }
}

/// The integer-lattice products for B and C with the two labels exchanged:
/// (q−2)(q−4)⋯(q−2n) for B and (q−2)⋯(q−2n+2)(q−n) for C.
pub fn swapped_bc_characteristic(family: Family, n: usize) -> Result<MultiPoly> {
    match family {
        Family::B => closed_form_characteristic(Family::C, n, LatticeKind::Integer),
        Family::C => closed_form_characteristic(Family::B, n, LatticeKind::Integer),
        _ => Err(Error::Domain("only B and C have exchanged labels".into())),
    }
}

/// (n!/q) Σ_{m|n} (−1)^{n−n/m} φ(m) C(q/m, n/m).
pub fn typea_weight_characteristic(n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::InvalidSystem("A needs n >= 1".into()));
    }
    let n64 = n as u64;
    let mut sum = MultiPoly::zero(&Q);
    for m in (1..=n64).filter(|m| n64 % m == 0) {
        let sign = if (n64 - n64 / m) % 2 == 0 { 1 } else { -1 };
        let term = binomial_poly(m, n64 / m).scale(&rat(sign * euler_phi(m) as i64));
        sum = &sum + &term;
    }
    let out = sum.scale(&Rational::from_integer(factorial(n64))).divide_exact(&q_var())?;
    if !out.is_integral() {
        return Err(Error::NonIntegral(format!("weight characteristic of A with n = {n}")));
    }
    Ok(out)
}

/// (q−1)(q−2)⋯(q−n+1) + (n−1)(n−1)!, stated for prime n ≥ 3.
pub fn typea_weight_prime_case(n: usize) -> Result<MultiPoly> {
    if n < 3 || !(2..n).all(|k| n % k != 0) {
        return Err(Error::Domain(format!("{n} is not an odd prime")));
    }
    let ni = n as i64;
    let c = factorial(n as u64 - 1) * BigInt::from(n - 1);
    Ok(&product((1..ni).map(|i| linear(1, -i))) + &MultiPoly::one(&Q).scale(&Rational::from_integer(c)))
}

/// Rotation classes of necklaces with n black and q − n white beads.
pub fn necklace_count(n: u64, q: u64) -> Result<BigInt> {
    if n == 0 || n > q {
        return Err(Error::Domain(format!("need 1 <= n <= q, got n = {n}, q = {q}")));
    }
    let g = n.gcd(&q);
    let total: BigInt = (1..=g)
        .filter(|m| g % m == 0)
        .map(|m| BigInt::from(euler_phi(m)) * binomial(q / m, n / m))
        .sum();
    let (quot, rem) = total.div_rem(&BigInt::from(q));
    debug_assert!(rem.is_zero());
    Ok(quot)
}

const PERMUTATION_CAPACITY: usize = 12;

fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for k in (1..=max.min(n)).rev() {
        cur.push(k);
        partitions(n - k, k, cur, out);
        cur.pop();
    }
}

/// c_k = Σ gcd(π) over permutations of [n] with k cycles, where gcd(π) is
/// the gcd of the cycle lengths. Summed by cycle type. Index 0 holds c_1.
pub fn char_coeffs_via_permutations(n: usize) -> Result<Vec<BigInt>> {
    if n == 0 || n > PERMUTATION_CAPACITY {
        return Err(Error::Capacity {
            what: "permutation size".into(),
            size: n as u128,
            limit: PERMUTATION_CAPACITY as u128,
        });
    }
    let mut types = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut types);
    let mut c = vec![BigInt::zero(); n];
    let nf = factorial(n as u64);
    for lambda in types {
        let mut mult: BTreeMap<usize, u64> = BTreeMap::new();
        for &k in &lambda {
            *mult.entry(k).or_insert(0) += 1;
        }
        let centralizer: BigInt = mult
            .iter()
            .map(|(&k, &m)| BigInt::from(k as u64).pow(m as u32) * factorial(m))
            .product();
        let g = lambda.iter().fold(0usize, |a, &b| a.gcd(&b));
        c[lambda.len() - 1] += &nf / centralizer * BigInt::from(g);
    }
    Ok(c)
}

/// χ(q) = Σ_k (−1)^{n−k} c_k q^{k−1}.
pub fn chi_from_permutation_coeffs(c: &[BigInt]) -> MultiPoly {
    let n = c.len();
    let mut out = MultiPoly::zero(&Q);
    for (i, ck) in c.iter().enumerate() {
        let k = i + 1;
        let sign = if (n - k) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        out.add_term(vec![(k - 1) as u32], Rational::from_integer(sign * ck));
    }
    out
}

/// |χ(0)| equals the order of the Weyl group (type A indexed by coordinates).
pub fn weyl_group_check(family: Family, n: usize, chi: &MultiPoly) -> bool {
    chi.constant_term().abs() == Rational::from_integer(weyl_group_order(family, n))
}
