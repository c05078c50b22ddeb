//! Signed graphs: exhaustive censuses by (c₊, c₋, c₀, l, e, v), and the
//! graph dictionary giving arithmetic Tutte polynomials of A, B, C, D
//! without any lattice computation.
//!
//! A vertex pair may carry a positive edge (the root e_i − e_j), a negative
//! edge (e_i + e_j), both, or neither. A loop at i stands for e_i in type B
//! and 2e_i in type C.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genfun::coboundary_coefficient;
use crate::poly::{rat_frac, MultiPoly, Rational};
use crate::root_system::{Family, LatticeKind};
use crate::series::{deformed_exponential, TruncSeries};
use crate::tutte::{census_to_tutte, Flavor, SubsetCensus, TuttePolynomial};

pub const MAX_SIGNED_V: usize = 5;
pub const MAX_UNSIGNED_V: usize = 7;
pub const MASTER_VARS: [&str; 5] = ["tp", "tm", "t0", "x", "y"];
pub const UNSIGNED_VARS: [&str; 2] = ["t", "y"];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignedGraph {
    pub v: usize,
    pub pos_edges: BTreeSet<(usize, usize)>,
    pub neg_edges: BTreeSet<(usize, usize)>,
    pub loops: BTreeSet<usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GraphStats {
    pub c_plus: usize,
    pub c_minus: usize,
    pub c_zero: usize,
    pub l: usize,
    pub e: usize,
    pub v: usize,
}

impl SignedGraph {
    pub fn new(v: usize) -> Self {
        SignedGraph { v, ..Default::default() }
    }

    fn norm(&self, a: usize, b: usize) -> Result<(usize, usize)> {
        if a == b || a >= self.v || b >= self.v {
            return Err(Error::Domain(format!("invalid edge ({a}, {b}) on {} vertices", self.v)));
        }
        Ok((a.min(b), a.max(b)))
    }

    pub fn add_pos(&mut self, a: usize, b: usize) -> Result<()> {
        let e = self.norm(a, b)?;
        self.pos_edges.insert(e);
        Ok(())
    }

    pub fn add_neg(&mut self, a: usize, b: usize) -> Result<()> {
        let e = self.norm(a, b)?;
        self.neg_edges.insert(e);
        Ok(())
    }

    pub fn add_loop(&mut self, a: usize) -> Result<()> {
        if a >= self.v {
            return Err(Error::Domain(format!("invalid loop at {a}")));
        }
        self.loops.insert(a);
        Ok(())
    }
}

/// Union–find where each vertex stores its sign relative to its parent.
struct SignedDsu {
    parent: [u8; 8],
    parity: [u8; 8],
    size: [u8; 8],
    unbalanced: [bool; 8],
    looped: [bool; 8],
}

impl SignedDsu {
    fn new(v: usize) -> Self {
        debug_assert!(v <= 8);
        let mut parent = [0u8; 8];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        SignedDsu { parent, parity: [0; 8], size: [1; 8], unbalanced: [false; 8], looped: [false; 8] }
    }

    fn find(&self, mut x: usize) -> (usize, u8) {
        let mut par = 0;
        while self.parent[x] as usize != x {
            par ^= self.parity[x];
            x = self.parent[x] as usize;
        }
        (x, par)
    }

    /// `sign` is 0 for a positive edge, 1 for a negative one.
    fn edge(&mut self, a: usize, b: usize, sign: u8) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != sign {
                self.unbalanced[ra] = true;
            }
            return;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big as u8;
        self.parity[small] = pa ^ pb ^ sign;
        self.size[big] += self.size[small];
        self.unbalanced[big] |= self.unbalanced[small];
        self.looped[big] |= self.looped[small];
    }

    fn add_loop(&mut self, a: usize) {
        let (r, _) = self.find(a);
        self.looped[r] = true;
    }
}

/// Full per-graph data needed by the censuses and the dictionary.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Summary {
    c_plus: u8,
    c_minus: u8,
    c_zero: u8,
    odd_balanced: bool,
    /// gcd of component sizes.
    size_gcd: u8,
}

fn summarize(dsu: &SignedDsu, v: usize) -> Summary {
    let mut s = Summary::default();
    let mut g = 0u8;
    for i in 0..v {
        if dsu.parent[i] as usize != i {
            continue;
        }
        g = g.gcd(&dsu.size[i]);
        if dsu.looped[i] {
            s.c_zero += 1;
        } else if dsu.unbalanced[i] {
            s.c_minus += 1;
        } else {
            s.c_plus += 1;
            if dsu.size[i] % 2 == 1 {
                s.odd_balanced = true;
            }
        }
    }
    s.size_gcd = g;
    s
}

pub fn component_stats(g: &SignedGraph) -> Result<GraphStats> {
    if g.v > 8 {
        return Err(Error::Capacity { what: "vertex count".into(), size: g.v as u128, limit: 8 });
    }
    let mut dsu = SignedDsu::new(g.v);
    for &(a, b) in &g.pos_edges {
        dsu.edge(a, b, 0);
    }
    for &(a, b) in &g.neg_edges {
        dsu.edge(a, b, 1);
    }
    for &a in &g.loops {
        dsu.add_loop(a);
    }
    let s = summarize(&dsu, g.v);
    Ok(GraphStats {
        c_plus: s.c_plus as usize,
        c_minus: s.c_minus as usize,
        c_zero: s.c_zero as usize,
        l: g.loops.len(),
        e: g.pos_edges.len() + g.neg_edges.len(),
        v: g.v,
    })
}

fn vertex_pairs(v: usize) -> Vec<(usize, usize)> {
    (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j))).collect()
}

/// Which edge kinds an enumeration ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Shape {
    /// Bits available per vertex pair: 1 (positive only) or 2 (both signs).
    pair_bits: u32,
    loops: bool,
}

/// Decodes graph number `code` and returns (summary, loops, non-loop edges).
fn decode(v: usize, pairs: &[(usize, usize)], shape: Shape, code: u64) -> (Summary, u32, u32) {
    let mut dsu = SignedDsu::new(v);
    let mut e = 0;
    let mut bits = code;
    for &(a, b) in pairs {
        let st = bits & ((1 << shape.pair_bits) - 1);
        bits >>= shape.pair_bits;
        if st & 1 != 0 {
            dsu.edge(a, b, 0);
            e += 1;
        }
        if st & 2 != 0 {
            dsu.edge(a, b, 1);
            e += 1;
        }
    }
    let mut l = 0;
    if shape.loops {
        for a in 0..v {
            if bits & 1 != 0 {
                dsu.add_loop(a);
                l += 1;
            }
            bits >>= 1;
        }
    }
    (summarize(&dsu, v), l, e)
}

fn graph_count(v: usize, shape: Shape) -> u64 {
    let bits = shape.pair_bits as usize * v * v.saturating_sub(1) / 2 + if shape.loops { v } else { 0 };
    1u64 << bits
}

/// Key (c₊, c₋, c₀, l, e).
pub type CensusKey = (usize, usize, usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCensus {
    pub v: usize,
    pub counts: BTreeMap<CensusKey, u64>,
}

impl SignedCensus {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Σ_G t₊^{c₊} t₋^{c₋} t₀^{c₀} x^l y^e over [`MASTER_VARS`].
    pub fn to_poly(&self) -> MultiPoly {
        let mut p = MultiPoly::zero(&MASTER_VARS);
        for (&(a, b, c, l, e), &n) in &self.counts {
            p.add_term(vec![a as u32, b as u32, c as u32, l as u32, e as u32], Rational::from_integer(BigInt::from(n)));
        }
        p
    }
}

fn check_v(v: usize, limit: usize, what: &str) -> Result<()> {
    if v > limit {
        return Err(Error::Capacity { what: what.into(), size: v as u128, limit: limit as u128 });
    }
    Ok(())
}

/// Census of all signed graphs (with loops) on exactly `v` labelled vertices.
pub fn signed_census(v: usize) -> Result<SignedCensus> {
    check_v(v, MAX_SIGNED_V, "vertex count for signed census")?;
    let shape = Shape { pair_bits: 2, loops: true };
    let pairs = vertex_pairs(v);
    let e_max = 2 * pairs.len();
    let dim = v + 1;
    let idx = |s: &Summary, l: u32, e: u32| {
        (((s.c_plus as usize * dim + s.c_minus as usize) * dim + s.c_zero as usize) * dim + l as usize) * (e_max + 1)
            + e as usize
    };
    let size = dim * dim * dim * dim * (e_max + 1);
    let dense = (0..graph_count(v, shape))
        .into_par_iter()
        .fold(
            || vec![0u64; size],
            |mut acc, code| {
                let (s, l, e) = decode(v, &pairs, shape, code);
                acc[idx(&s, l, e)] += 1;
                acc
            },
        )
        .reduce(|| vec![0u64; size], |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        });
    let mut counts = BTreeMap::new();
    for (i, &n) in dense.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let e = i % (e_max + 1);
        let mut r = i / (e_max + 1);
        let l = r % dim;
        r /= dim;
        let c0 = r % dim;
        r /= dim;
        let cm = r % dim;
        let cp = r / dim;
        counts.insert((cp, cm, c0, l, e), n);
    }
    Ok(SignedCensus { v, counts })
}

/// Censuses for v = 0..=v_max.
pub fn master_genfun_bruteforce(v_max: usize) -> Result<Vec<SignedCensus>> {
    (0..=v_max).map(signed_census).collect()
}

fn master_poly(name: &str) -> MultiPoly {
    MultiPoly::var(&MASTER_VARS, name).expect("master variable")
}

/// F(2z,1+y)^{(t₊−t₋)/2} F(z,(1+y)²)^{t₋−t₀} F((1+x)z,(1+y)²)^{t₀}.
pub fn master_series(order: usize) -> Result<TruncSeries> {
    let one = MultiPoly::one(&MASTER_VARS);
    let y1 = &one + &master_poly("y");
    let y1sq = &y1 * &y1;
    let x1 = &one + &master_poly("x");
    let two = one.scale(&Rational::from_integer(BigInt::from(2)));
    let e1 = (&master_poly("tp") - &master_poly("tm")).scale(&rat_frac(1, 2));
    let e2 = &master_poly("tm") - &master_poly("t0");
    let e3 = master_poly("t0");
    let f1 = deformed_exponential(&MASTER_VARS, &two, &y1, order)?.pow_poly_exponent(&e1)?;
    let f2 = deformed_exponential(&MASTER_VARS, &one, &y1sq, order)?.pow_poly_exponent(&e2)?;
    let f3 = deformed_exponential(&MASTER_VARS, &x1, &y1sq, order)?.pow_poly_exponent(&e3)?;
    f1.mul(&f2)?.mul(&f3)
}

/// v!·[z^v] of the master series for every v ≤ order.
pub fn master_theorem_polys(order: usize) -> Result<Vec<MultiPoly>> {
    let s = master_series(order)?;
    Ok((0..=order).map(|v| coboundary_coefficient(&s, v)).collect())
}

/// Σ_G t^{c} y^{e} over simple graphs on `v` labelled vertices.
pub fn unsigned_census_v(v: usize) -> Result<MultiPoly> {
    check_v(v, MAX_UNSIGNED_V, "vertex count for unsigned census")?;
    let shape = Shape { pair_bits: 1, loops: false };
    let pairs = vertex_pairs(v);
    let np = pairs.len();
    let dense = (0..graph_count(v, shape))
        .into_par_iter()
        .fold(
            || vec![0u64; (v + 1) * (np + 1)],
            |mut acc, code| {
                let (s, _, e) = decode(v, &pairs, shape, code);
                acc[s.c_plus as usize * (np + 1) + e as usize] += 1;
                acc
            },
        )
        .reduce(|| vec![0u64; (v + 1) * (np + 1)], |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        });
    let mut p = MultiPoly::zero(&UNSIGNED_VARS);
    for (i, &n) in dense.iter().enumerate() {
        if n > 0 {
            p.add_term(vec![(i / (np + 1)) as u32, (i % (np + 1)) as u32], Rational::from_integer(BigInt::from(n)));
        }
    }
    Ok(p)
}

pub fn unsigned_census(v_max: usize) -> Result<Vec<MultiPoly>> {
    (0..=v_max).map(unsigned_census_v).collect()
}

/// v!·[z^v] of F(z,1+y)^t for v ≤ order.
pub fn unsigned_theorem_polys(order: usize) -> Result<Vec<MultiPoly>> {
    let one = MultiPoly::one(&UNSIGNED_VARS);
    let y1 = &one + &MultiPoly::var(&UNSIGNED_VARS, "y")?;
    let s = deformed_exponential(&UNSIGNED_VARS, &one, &y1, order)?
        .pow_poly_exponent(&MultiPoly::var(&UNSIGNED_VARS, "t")?)?;
    Ok((0..=order).map(|v| coboundary_coefficient(&s, v)).collect())
}

/// Marked graphs (simple graph plus a sign on each vertex) on `v` vertices,
/// counted by (components, edges). Each one is also turned into the signed
/// graph whose edge signs are products of endpoint signs; the second map
/// counts how often each signed graph arises, keyed by its pair-state code.
pub fn marked_graph_census(v: usize) -> Result<(BTreeMap<(usize, usize), u64>, BTreeMap<u64, u64>)> {
    check_v(v, MAX_SIGNED_V, "vertex count for marked graphs")?;
    let pairs = vertex_pairs(v);
    let unsigned = Shape { pair_bits: 1, loops: false };
    let mut by_stats = BTreeMap::new();
    let mut images: BTreeMap<u64, u64> = BTreeMap::new();
    for g in 0..graph_count(v, unsigned) {
        let (s, _, e) = decode(v, &pairs, unsigned, g);
        for marks in 0u64..(1 << v) {
            *by_stats.entry((s.c_plus as usize, e as usize)).or_insert(0) += 1;
            let mut code = 0u64;
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if g >> k & 1 == 1 {
                    let neg = (marks >> a & 1) ^ (marks >> b & 1);
                    code |= (1 + neg) << (2 * k);
                }
            }
            *images.entry(code).or_insert(0) += 1;
        }
    }
    Ok((by_stats, images))
}

/// Loopless balanced signed graphs counted by (c₊, e), together with the
/// component count of each, keyed by pair-state code.
pub fn balanced_census(v: usize) -> Result<(BTreeMap<(usize, usize), u64>, BTreeMap<u64, usize>)> {
    check_v(v, MAX_SIGNED_V, "vertex count for balanced census")?;
    let pairs = vertex_pairs(v);
    let shape = Shape { pair_bits: 2, loops: false };
    let mut by_stats = BTreeMap::new();
    let mut comps = BTreeMap::new();
    for code in 0..graph_count(v, shape) {
        let (s, _, e) = decode(v, &pairs, shape, code);
        if s.c_minus == 0 && s.c_zero == 0 {
            *by_stats.entry((s.c_plus as usize, e as usize)).or_insert(0) += 1;
            comps.insert(code, s.c_plus as usize);
        }
    }
    Ok((by_stats, comps))
}

/// m(c₊,e,v) = 2^{c₊}·b(c₊,e,v), and every balanced signed graph arises from
/// exactly 2^{c₊} marked graphs.
pub fn marked_graph_identity_holds(v: usize) -> Result<bool> {
    let (marked, images) = marked_graph_census(v)?;
    let (balanced, comps) = balanced_census(v)?;
    let counts_ok = marked.len() == balanced.len()
        && marked.iter().all(|(&(c, e), &m)| balanced.get(&(c, e)).is_some_and(|&b| m == b << c));
    let fibres_ok = images.len() == comps.len()
        && images.iter().all(|(code, &n)| comps.get(code).is_some_and(|&c| n == 1 << c));
    Ok(counts_ok && fibres_ok)
}

fn dictionary_multiplicity(family: Family, lattice: LatticeKind, s: &Summary) -> u128 {
    use Family::*;
    use LatticeKind::*;
    let cm = s.c_minus as u32;
    let c0 = s.c_zero as u32;
    let balanced = cm == 0 && c0 == 0;
    match (family, lattice) {
        (A, Integer) | (A, Root) => 1,
        (A, Weight) => s.size_gcd as u128,
        (B, Integer) | (B, Root) | (D, Integer) => 1 << cm,
        (B, Weight) | (D, Weight) => {
            if s.odd_balanced {
                1 << cm
            } else {
                1 << (cm + 1)
            }
        }
        (C, Integer) | (C, Weight) => 1 << (cm + c0),
        (C, Root) => {
            if balanced {
                1
            } else {
                1 << (cm + c0 - 1)
            }
        }
        (D, Root) => {
            if balanced {
                1
            } else {
                1 << (cm - 1)
            }
        }
    }
}

/// M computed by summing over the graphs that correspond to subsets of the
/// roots, using rank v − c₊ (v − c for type A) and the multiplicity rules
/// for each family and lattice.
pub fn graph_dictionary_tutte(family: Family, n: usize, lattice: LatticeKind) -> Result<TuttePolynomial> {
    if n < family.min_n() {
        return Err(Error::InvalidSystem(format!("{family} needs n >= {}", family.min_n())));
    }
    let (limit, shape) = match family {
        Family::A => (MAX_UNSIGNED_V, Shape { pair_bits: 1, loops: false }),
        Family::B | Family::C => (MAX_SIGNED_V, Shape { pair_bits: 2, loops: true }),
        Family::D => (MAX_SIGNED_V, Shape { pair_bits: 2, loops: false }),
    };
    check_v(n, limit, "rank for graph dictionary")?;
    let pairs = vertex_pairs(n);
    let max_edges = shape.pair_bits as usize * pairs.len() + if shape.loops { n } else { 0 };
    let width = max_edges + 1;
    let blank = || vec![0u128; (n + 1) * width];
    let acc = (0..graph_count(n, shape))
        .into_par_iter()
        .fold(blank, |mut acc, code| {
            let (s, l, e) = decode(n, &pairs, shape, code);
            let rank = n - s.c_plus as usize;
            acc[rank * width + (l + e) as usize] += dictionary_multiplicity(family, lattice, &s);
            acc
        })
        .reduce(blank, |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        });
    let counts: Vec<Vec<u128>> = (0..=n).map(|r| acc[r * width..(r + 1) * width].to_vec()).collect();
    let full_rank = (0..=n).rev().find(|&r| counts[r].iter().any(|&c| c > 0)).unwrap_or(0);
    let lattice_rank = match (family, lattice) {
        (Family::A, LatticeKind::Root | LatticeKind::Weight) => n - 1,
        _ => n,
    };
    Ok(census_to_tutte(&SubsetCensus { full_rank, lattice_rank, counts }, Flavor::Arithmetic))
}
