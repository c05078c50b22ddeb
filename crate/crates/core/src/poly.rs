//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`MultiPoly`] carries its own ordered variable list. Binary operations
//! require both operands to share that list exactly; use [`MultiPoly::embed`]
//! to move a polynomial into a larger ring first.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exponent vector, one entry per variable of the owning polynomial.
pub type Monomial = Vec<u32>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    // Invariant: no zero coefficients, every key has length vars.len().
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self::zero_in(vars.iter().map(|v| v.to_string()).collect())
    }

    pub(crate) fn zero_in(vars: Arc<[String]>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    /// Zero polynomial over the same variable list as `self`.
    pub fn zero_like(&self) -> Self {
        Self::zero_in(self.vars.clone())
    }

    pub fn one(vars: &[&str]) -> Self {
        Self::constant(vars, rat(1))
    }

    pub fn one_like(&self) -> Self {
        self.constant_like(rat(1))
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn constant_like(&self, c: Rational) -> Self {
        let mut p = self.zero_like();
        p.add_term(vec![0; self.vars.len()], c);
        p
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &[&str], name: &str) -> Result<Self> {
        let p = Self::zero(vars);
        p.var_like(name)
    }

    pub fn var_like(&self, name: &str) -> Result<Self> {
        let idx = self.var_index(name)?;
        let mut exps = vec![0; self.vars.len()];
        exps[idx] = 1;
        let mut p = self.zero_like();
        p.add_term(exps, rat(1));
        Ok(p)
    }

    pub fn monomial(vars: &[&str], exps: Monomial, coeff: Rational) -> Result<Self> {
        if exps.len() != vars.len() {
            return Err(Error::Domain(format!(
                "exponent vector {exps:?} has wrong length for {vars:?}"
            )));
        }
        let mut p = Self::zero(vars);
        p.add_term(exps, coeff);
        Ok(p)
    }

    pub fn from_terms<I>(vars: &[&str], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(Error::Domain(format!("exponent vector {exps:?} has wrong length")));
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub(crate) fn vars_arc(&self) -> Arc<[String]> {
        self.vars.clone()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Terms in storage (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in the canonical graded order: ascending total degree, and
    /// within a degree, earlier variables first (`x^2, x*y, y^2`).
    pub fn graded_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| graded_cmp(a.0, b.0));
        v
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Adds `c * monomial` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, exps: Monomial, c: Rational) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let mut out = self.zero_like();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return self.zero_like();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = self.one_like();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, name: &str) -> Result<Option<u32>> {
        let i = self.var_index(name)?;
        Ok(self.terms.keys().map(|e| e[i]).max())
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Re-expresses the polynomial over `new_vars`, which must contain every
    /// variable that actually occurs in `self`.
    pub fn embed(&self, new_vars: &[&str]) -> Result<Self> {
        let mut target = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            let pos = new_vars.iter().position(|n| n == v);
            let used = self.terms.keys().any(|e| e[i] > 0);
            match (pos, used) {
                (Some(p), _) => target.push(Some(p)),
                (None, false) => target.push(None),
                (None, true) => return Err(Error::UnknownVariable(v.clone())),
            }
        }
        let mut out = Self::zero(new_vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; new_vars.len()];
            for (i, &k) in e.iter().enumerate() {
                if let Some(p) = target[i] {
                    ne[p] += k;
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Same as [`embed`](Self::embed) with the variable list taken from `like`.
    pub fn embed_like(&self, like: &Self) -> Result<Self> {
        let names: Vec<&str> = like.vars.iter().map(|s| s.as_str()).collect();
        let mut p = self.embed(&names)?;
        p.vars = like.vars.clone();
        Ok(p)
    }

    /// Substitutes polynomials for variables. Every binding must live over
    /// `target_vars`; unbound variables of `self` pass through unchanged and
    /// must also appear in `target_vars`.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, MultiPoly>,
        target_vars: &[&str],
    ) -> Result<Self> {
        let target = Self::zero(target_vars);
        let mut images = Vec::with_capacity(self.vars.len());
        for v in self.vars.iter() {
            let img = match bindings.get(v) {
                Some(p) => p.embed_like(&target)?,
                None => target.var_like(v)?,
            };
            images.push(img);
        }
        // Cache powers of each image; exponents are small in practice.
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![p.one_like(), p.clone()]).collect();
        let mut out = target.clone();
        for (e, c) in &self.terms {
            let mut term = target.constant_like(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Evaluates at a rational point given in variable order.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.vars.len() {
            return Err(Error::Domain(format!(
                "evaluation point has {} entries, polynomial has {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Binds some variables to rational values, keeping the remaining ones.
    pub fn partial_eval(&self, values: &[(&str, Rational)]) -> Result<Self> {
        let mut idx = Vec::new();
        for (name, val) in values {
            idx.push((self.var_index(name)?, val));
        }
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let mut nc = c.clone();
            for &(i, val) in &idx {
                nc *= num_traits::pow(val.clone(), e[i] as usize);
                ne[i] = 0;
            }
            out.add_term(ne, nc);
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`; errors when the division leaves a
    /// remainder.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_same_vars(divisor)?;
        let (lead_e, lead_c) = divisor
            .terms
            .iter()
            .next_back()
            .ok_or_else(|| Error::InexactDivision("division by zero polynomial".into()))?;
        let mut rem = self.clone();
        let mut quot = self.zero_like();
        while let Some((e, c)) = rem.terms.iter().next_back() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return Err(Error::InexactDivision(format!("({self}) / ({divisor})")));
            }
            let qe: Monomial = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = c / lead_c;
            let mut t = self.zero_like();
            t.add_term(qe.clone(), qc.clone());
            rem = &rem - &(&t * divisor);
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    /// Integer coefficients as `BigInt`, or an error naming `context`.
    pub fn integer_terms(&self, context: &str) -> Result<Vec<(Monomial, BigInt)>> {
        self.terms
            .iter()
            .map(|(e, c)| {
                if c.is_integer() {
                    Ok((e.clone(), c.to_integer()))
                } else {
                    Err(Error::NonIntegral(format!("{context}: coefficient {c}")))
                }
            })
            .collect()
    }

    /// Univariate coefficient list (index = exponent) for a polynomial whose
    /// only occurring variable is `name`.
    pub fn univariate_coeffs(&self, name: &str) -> Result<Vec<Rational>> {
        let i = self.var_index(name)?;
        let mut out: Vec<Rational> = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return Err(Error::Domain(format!("{self} is not univariate in {name}")));
            }
            let k = e[i] as usize;
            if out.len() <= k {
                out.resize(k + 1, Rational::zero());
            }
            out[k] = c.clone();
        }
        Ok(out)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.to_vec(),
            terms: self
                .graded_terms()
                .into_iter()
                .map(|(e, c)| TermJson { coeff: c.to_string(), exps: e.clone() })
                .collect(),
        }
    }

    /// Canonical JSON encoding. Refuses non-integral coefficients; use
    /// [`to_json`](Self::to_json) for intermediate rational dumps.
    pub fn to_canonical_json(&self) -> Result<String> {
        if !self.is_integral() {
            return Err(Error::NonIntegral(format!("canonical emission of {self}")));
        }
        Ok(serde_json::to_string(&self.to_json()).expect("polynomial JSON is always serializable"))
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        let names: Vec<&str> = j.vars.iter().map(|s| s.as_str()).collect();
        let mut p = Self::zero(&names);
        for t in &j.terms {
            if t.exps.len() != names.len() {
                return Err(Error::Parse(format!("term {:?} has wrong arity", t.exps)));
            }
            let c: Rational = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            p.add_term(t.exps.clone(), c);
        }
        Ok(p)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }

    /// Parses human-written polynomials such as `3+4x+x^2+4y+2y^2`,
    /// `15+5 x+3 x^2+4 x y`, `-24 + 14 q - 6 q^2 + q^3`, or `1/2*x*y^{10}`.
    /// Juxtaposed variables multiply; variable names are matched longest
    /// first against `vars`.
    pub fn parse(s: &str, vars: &[&str]) -> Result<Self> {
        let cleaned: Vec<char> = s
            .chars()
            .filter(|c| !c.is_whitespace() && !matches!(c, '*' | '{' | '}'))
            .collect();
        let mut names: Vec<(usize, &str)> = vars.iter().copied().enumerate().collect();
        names.sort_by_key(|(_, n)| Reverse(n.len()));
        let mut out = Self::zero(vars);
        let mut pos = 0;
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        while pos < cleaned.len() {
            let mut sign = 1i64;
            if pos > 0 || matches!(cleaned[pos], '+' | '-') {
                match cleaned.get(pos) {
                    Some('+') => pos += 1,
                    Some('-') => {
                        sign = -1;
                        pos += 1
                    }
                    other => return Err(Error::Parse(format!("expected sign, found {other:?}"))),
                }
            }
            let mut coeff = rat(sign);
            let mut saw_anything = false;
            if pos < cleaned.len() && cleaned[pos].is_ascii_digit() {
                let num = take_digits(&cleaned, &mut pos);
                let mut c = Rational::from_integer(num);
                if cleaned.get(pos) == Some(&'/') {
                    pos += 1;
                    if !cleaned.get(pos).is_some_and(|c| c.is_ascii_digit()) {
                        return Err(Error::Parse("dangling `/`".into()));
                    }
                    let den = take_digits(&cleaned, &mut pos);
                    c /= Rational::from_integer(den);
                }
                coeff *= c;
                saw_anything = true;
            }
            let mut exps = vec![0u32; vars.len()];
            loop {
                let rest: String = cleaned[pos..].iter().collect();
                let Some(&(vi, name)) = names.iter().find(|(_, n)| rest.starts_with(n)) else {
                    break;
                };
                pos += name.chars().count();
                let mut k = 1u32;
                if cleaned.get(pos) == Some(&'^') {
                    pos += 1;
                    if !cleaned.get(pos).is_some_and(|c| c.is_ascii_digit()) {
                        return Err(Error::Parse("dangling `^`".into()));
                    }
                    k = take_digits(&cleaned, &mut pos)
                        .to_u32()
                        .ok_or_else(|| Error::Parse("exponent too large".into()))?;
                }
                exps[vi] += k;
                saw_anything = true;
            }
            if !saw_anything {
                let rest: String = cleaned[pos..].iter().collect();
                return Err(Error::Parse(format!("cannot parse term at `{rest}`")));
            }
            out.add_term(exps, coeff);
        }
        Ok(out)
    }
}

fn take_digits(chars: &[char], pos: &mut usize) -> BigInt {
    let start = *pos;
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    let s: String = chars[start..*pos].iter().collect();
    s.parse().expect("digit run parses as an integer")
}

/// Graded order: total degree first, then earlier variables heavier.
pub fn graded_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.graded_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            for (v, &k) in self.vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{k}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.vars.join(","), self)
    }
}

// Operator forms panic on a variable mismatch; the `try_*` methods report it.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&rat(-1))
    }
}

/// Which arithmetic operation [`poly_arith`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
    match op {
        PolyOp::Add => a.try_add(b),
        PolyOp::Sub => a.try_sub(b),
        PolyOp::Mul => a.try_mul(b),
    }
}
