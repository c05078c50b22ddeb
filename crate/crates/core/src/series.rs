//! Power series in `Z` truncated at a fixed order, with coefficients in a
//! polynomial ring.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{rat, MultiPoly, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    order: usize,
    vars: Arc<[String]>,
    coeffs: Vec<MultiPoly>,
}

impl TruncSeries {
    pub fn zero(vars: &[&str], order: usize) -> Self {
        let z = MultiPoly::zero(vars);
        Self::from_template(&z, order)
    }

    fn from_template(template: &MultiPoly, order: usize) -> Self {
        TruncSeries {
            order,
            vars: template.vars_arc(),
            coeffs: vec![template.zero_like(); order + 1],
        }
    }

    pub fn one(vars: &[&str], order: usize) -> Self {
        let mut s = Self::zero(vars, order);
        s.coeffs[0] = s.coeffs[0].one_like();
        s
    }

    /// Builds a series from explicit coefficients; missing high-order
    /// coefficients are zero.
    pub fn from_coeffs(vars: &[&str], order: usize, coeffs: Vec<MultiPoly>) -> Result<Self> {
        let mut s = Self::zero(vars, order);
        if coeffs.len() > order + 1 {
            return Err(Error::SeriesPrecondition(format!(
                "{} coefficients given for order {order}",
                coeffs.len()
            )));
        }
        for (k, c) in coeffs.into_iter().enumerate() {
            s.coeffs[k] = c.embed_like(&s.coeffs[k])?;
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn coeff(&self, k: usize) -> &MultiPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    fn template(&self) -> &MultiPoly {
        &self.coeffs[0]
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch { left: self.vars.to_vec(), right: other.vars.to_vec() })
        }
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order {
            return Err(Error::SeriesPrecondition(format!(
                "cannot raise order {} to {order}",
                self.order
            )));
        }
        Ok(TruncSeries { order, vars: self.vars.clone(), coeffs: self.coeffs[..=order].to_vec() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        Ok(TruncSeries { order, vars: self.vars.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect();
        Ok(TruncSeries { order, vars: self.vars.clone(), coeffs })
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let order = self.order.min(other.order);
        let mut coeffs = vec![self.template().zero_like(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(TruncSeries { order, vars: self.vars.clone(), coeffs })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncSeries {
            order: self.order,
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Multiplies every coefficient by a polynomial in the coefficient ring.
    pub fn scale_poly(&self, p: &MultiPoly) -> Result<Self> {
        let p = p.embed_like(self.template())?;
        Ok(TruncSeries {
            order: self.order,
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().map(|c| c * &p).collect(),
        })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::from_template(self.template(), self.order);
        out.coeffs[0] = out.coeffs[0].one_like();
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// exp(s) for s with zero constant term, via k·E_k = Σ_{j=1..k} j·S_j·E_{k−j}.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::SeriesPrecondition(format!(
                "exp needs zero constant term, found {}",
                self.coeffs[0]
            )));
        }
        let mut e: Vec<MultiPoly> = Vec::with_capacity(self.order + 1);
        e.push(self.template().one_like());
        for k in 1..=self.order {
            let mut acc = self.template().zero_like();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[j] * &e[k - j]).scale(&rat(j as i64));
            }
            e.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(k))));
        }
        Ok(TruncSeries { order: self.order, vars: self.vars.clone(), coeffs: e })
    }

    /// log(s) for s with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != self.template().one_like() {
            return Err(Error::SeriesPrecondition(format!(
                "log needs constant term 1, found {}",
                self.coeffs[0]
            )));
        }
        let mut l: Vec<MultiPoly> = Vec::with_capacity(self.order + 1);
        l.push(self.template().zero_like());
        for k in 1..=self.order {
            let mut acc = self.template().zero_like();
            for j in 1..k {
                if l[j].is_zero() || self.coeffs[k - j].is_zero() {
                    continue;
                }
                acc = &acc + &(&l[j] * &self.coeffs[k - j]).scale(&rat(j as i64));
            }
            let lk = &self.coeffs[k] - &acc.scale(&Rational::new(BigInt::one(), BigInt::from(k)));
            l.push(lk);
        }
        Ok(TruncSeries { order: self.order, vars: self.vars.clone(), coeffs: l })
    }

    /// s^e = exp(e·log s) for a polynomial exponent `e` over a subset of the
    /// coefficient variables.
    pub fn pow_poly_exponent(&self, e: &MultiPoly) -> Result<Self> {
        let e = e.embed_like(self.template())?;
        self.log()?.scale_poly(&e)?.exp()
    }

    /// Keeps the coefficients of Z^k with n | k and zeroes the rest.
    pub fn filter_every_nth(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::SeriesPrecondition("filter step must be positive".into()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % n == 0 { c.clone() } else { c.zero_like() })
            .collect();
        Ok(TruncSeries { order: self.order, vars: self.vars.clone(), coeffs })
    }

    /// Multiplies the coefficient of Z^k by k!, turning an exponential
    /// generating function into its sequence of terms.
    pub fn egf_terms(&self) -> Vec<MultiPoly> {
        let mut fact = BigInt::one();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    fact *= BigInt::from(k);
                }
                c.scale(&Rational::from_integer(fact.clone()))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// F(α·Z, β) = Σ_n α^n β^{C(n,2)} Z^n / n!, with `alpha` and `beta`
/// polynomials in the coefficient ring `vars`.
pub fn deformed_exponential(
    vars: &[&str],
    alpha: &MultiPoly,
    beta: &MultiPoly,
    order: usize,
) -> Result<TruncSeries> {
    let mut s = TruncSeries::zero(vars, order);
    let alpha = alpha.embed_like(s.template())?;
    let beta = beta.embed_like(s.template())?;
    let mut alpha_pow = alpha.one_like();
    let mut beta_pow = beta.one_like();
    let mut fact = BigInt::one();
    for n in 0..=order {
        if n > 0 {
            alpha_pow = &alpha_pow * &alpha;
            fact *= BigInt::from(n);
            // β^{C(n,2)} = β^{C(n−1,2)} · β^{n−1}
            beta_pow = &beta_pow * &beta.pow((n - 1) as u32);
        }
        let c = &alpha_pow * &beta_pow;
        s.coeffs[n] = c.scale(&Rational::new(BigInt::one(), fact.clone()));
    }
    Ok(s)
}

/// Euler's totient by trial division.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
