//! The finite field method: histogram how many hypertori each point of the
//! finite torus Hom(Λ, F_p^*) ≅ (F_p^*)^d lies on.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{multiplicity_lcm, VectorConfig};
use crate::poly::{rat, MultiPoly, Rational};
use crate::tutte::CoboundaryPolynomial;

/// Largest number of torus points a single profile will enumerate.
pub const TORUS_CAPACITY: u128 = 400_000_000;
const PRIME_SEARCH_CAP: u64 = 10_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Smallest prime p ≥ `min_p` with `d` | p − 1.
pub fn find_admissible_prime(d: u64, min_p: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::Domain("divisor must be positive".into()));
    }
    (min_p.max(2)..=PRIME_SEARCH_CAP)
        .find(|&p| (p - 1) % d == 0 && is_prime(p))
        .ok_or_else(|| Error::Capacity {
            what: format!("prime search for p = 1 mod {d}"),
            size: PRIME_SEARCH_CAP as u128,
            limit: PRIME_SEARCH_CAP as u128,
        })
}

/// The first `count` admissible primes ≥ `min_p`.
pub fn admissible_primes(d: u64, min_p: u64, count: usize) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(count);
    let mut next = min_p;
    while out.len() < count {
        let p = find_admissible_prime(d, next)?;
        out.push(p);
        next = p + 1;
    }
    Ok(out)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// A generator of F_p^*.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if p == 2 {
        return Ok(1);
    }
    let q = p - 1;
    let fs = prime_factors(q);
    (2..p)
        .find(|&g| fs.iter().all(|&f| pow_mod(g, q / f, p) != 1))
        .ok_or_else(|| Error::Domain(format!("no primitive root mod {p}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusProfile {
    pub prime: u64,
    /// Lattice rank d.
    pub rank: usize,
    /// h ↦ number of points on exactly h hypertori.
    pub histogram: BTreeMap<usize, u128>,
}

impl TorusProfile {
    pub fn total(&self) -> u128 {
        self.histogram.values().sum()
    }

    /// Σ_points Y^{h(point)}.
    pub fn as_poly(&self) -> MultiPoly {
        let mut p = MultiPoly::zero(&["Y"]);
        for (&h, &c) in &self.histogram {
            p.add_term(vec![h as u32], Rational::from_integer(BigInt::from(c)));
        }
        p
    }

    /// Points on no hypertorus.
    pub fn complement(&self) -> u128 {
        self.histogram.get(&0).copied().unwrap_or(0)
    }
}

fn guard(config: &VectorConfig, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let q = p - 1;
    let points = (q as u128).checked_pow(config.lattice_rank() as u32).unwrap_or(u128::MAX);
    if points > TORUS_CAPACITY {
        return Err(Error::Capacity { what: format!("torus size at p = {p}"), size: points, limit: TORUS_CAPACITY });
    }
    Ok(q)
}

fn lcm_u64(config: &VectorConfig) -> Result<u64> {
    multiplicity_lcm(config)?
        .to_u64()
        .ok_or_else(|| Error::Domain("multiplicity lcm does not fit in 64 bits".into()))
}

/// Histogram of h over (F_p^*)^d. Requires every m(B) to divide p − 1.
pub fn torus_profile(config: &VectorConfig, p: u64) -> Result<TorusProfile> {
    let q = guard(config, p)?;
    let lcm = lcm_u64(config)?;
    if q % lcm != 0 {
        return Err(Error::Inadmissible(format!("multiplicity lcm {lcm} does not divide {q}")));
    }
    Ok(exponent_profile(config, p))
}

/// Writing a point as g^a for a generator g and a ∈ (Z/q)^d, the point lies
/// on the hypertorus of a vector with coordinates c iff ⟨a, c⟩ ≡ 0 mod q.
/// The enumeration is an odometer over a; each digit step adds that digit's
/// column of coordinates to every running dot product (a wrap adds it too,
/// since q·c ≡ 0).
fn exponent_profile(config: &VectorConfig, p: u64) -> TorusProfile {
    let q = p - 1;
    let d = config.lattice_rank();
    let nvec = config.len();
    // steps[i][j] = c_j[i] mod q
    let steps: Vec<Vec<u64>> = (0..d)
        .map(|i| config.coords().iter().map(|c| c[i].rem_euclid(q as i64) as u64).collect())
        .collect();
    let mut histogram = BTreeMap::new();
    if d == 0 {
        histogram.insert(nvec, 1);
        return TorusProfile { prime: p, rank: 0, histogram };
    }
    let counts: Vec<u128> = (0..q)
        .into_par_iter()
        .map(|a0| {
            let mut hist = vec![0u128; nvec + 1];
            let mut dots: Vec<u64> = steps[0].iter().map(|s| s * a0 % q).collect();
            let mut digits = vec![0u64; d];
            loop {
                let h = dots.iter().filter(|&&x| x == 0).count();
                hist[h] += 1;
                // Advance digits 1..d.
                let mut i = d - 1;
                loop {
                    if i == 0 {
                        return hist;
                    }
                    for (x, s) in dots.iter_mut().zip(&steps[i]) {
                        *x += s;
                        if *x >= q {
                            *x -= q;
                        }
                    }
                    digits[i] += 1;
                    if digits[i] < q {
                        break;
                    }
                    digits[i] = 0;
                    i -= 1;
                }
            }
        })
        .reduce(|| vec![0u128; nvec + 1], |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        });
    for (h, c) in counts.into_iter().enumerate() {
        if c > 0 {
            histogram.insert(h, c);
        }
    }
    TorusProfile { prime: p, rank: d, histogram }
}

/// Same histogram computed literally: for each tuple (t_1..t_d) ∈ (F_p^*)^d
/// and each vector with coordinates c, test Π t_i^{c_i} = 1, using inverses
/// for negative exponents. Slow; serves as a check on [`torus_profile`].
pub fn torus_profile_direct(config: &VectorConfig, p: u64) -> Result<TorusProfile> {
    let q = guard(config, p)?;
    let lcm = lcm_u64(config)?;
    if q % lcm != 0 {
        return Err(Error::Inadmissible(format!("multiplicity lcm {lcm} does not divide {q}")));
    }
    let d = config.lattice_rank();
    let mut histogram = BTreeMap::new();
    let mut point = vec![1u64; d];
    loop {
        let h = config
            .coords()
            .iter()
            .filter(|c| {
                let v = point.iter().zip(c.iter()).fold(1u64, |acc, (&t, &e)| {
                    let base = if e < 0 { pow_mod(t, p - 2, p) } else { t };
                    acc * pow_mod(base, e.unsigned_abs(), p) % p
                });
                v == 1
            })
            .count();
        *histogram.entry(h).or_insert(0) += 1;
        let mut i = 0;
        loop {
            if i == d {
                return Ok(TorusProfile { prime: p, rank: d, histogram });
            }
            point[i] += 1;
            if point[i] < p {
                break;
            }
            point[i] = 1;
            i += 1;
        }
    }
}

/// q^{d−r}·ψ(q, Y) as a polynomial in Y alone.
pub fn expected_profile_poly(psi: &CoboundaryPolynomial, q: u64, lattice_rank: usize) -> Result<MultiPoly> {
    if psi.rank > lattice_rank {
        return Err(Error::RankMismatch(format!("rank {} above lattice rank {lattice_rank}", psi.rank)));
    }
    let scale = num_traits::pow(rat(q as i64), lattice_rank - psi.rank);
    psi.at_x(q as i64).scale(&scale).embed(&["Y"])
}

/// Σ_points Y^{h} == q^{d−r}·ψ(q, Y).
pub fn verify_finite_field_identity(config: &VectorConfig, p: u64, psi: &CoboundaryPolynomial) -> Result<bool> {
    let profile = torus_profile(config, p)?;
    Ok(profile.as_poly() == expected_profile_poly(psi, p - 1, config.lattice_rank())?)
}

/// When gcd(m(B), p − 1) = 1 for every B, each intersection of hypertori is
/// a subtorus with q^{d−r(B)} points, so the histogram matches the classical
/// coboundary polynomial.
pub fn verify_classical_mode(config: &VectorConfig, p: u64, classical_psi: &CoboundaryPolynomial) -> Result<bool> {
    let q = guard(config, p)?;
    let lcm = lcm_u64(config)?;
    if lcm.gcd(&q) != 1 {
        return Err(Error::Inadmissible(format!("multiplicity lcm {lcm} shares a factor with {q}")));
    }
    let profile = exponent_profile(config, p);
    Ok(profile.as_poly() == expected_profile_poly(classical_psi, q, config.lattice_rank())?)
}
