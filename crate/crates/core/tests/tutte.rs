use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;

use tuttekit::fixtures::{WEIGHT_TABLE, WORKED_C2};
use tuttekit::lattice::VectorConfig;
use tuttekit::poly::rat;
use tuttekit::root_system::{build_config, Family, LatticeKind, RootSystemSpec};
use tuttekit::tutte::{
    arithmetic_tutte_bruteforce, arithmetic_tutte_bruteforce_with_capacity, classical_tutte_bruteforce,
    coboundary_from_tutte, has_nonnegative_integer_coeffs, tutte_from_coboundary, CoboundaryPolynomial, Flavor,
    TuttePolynomial, COBOUNDARY_VARS, TUTTE_VARS,
};
use tuttekit::MultiPoly;

fn m(s: &str) -> MultiPoly {
    MultiPoly::parse(s, &TUTTE_VARS).unwrap()
}

fn config(family: Family, n: usize, lattice: LatticeKind) -> VectorConfig {
    build_config(&RootSystemSpec::new(family, n, lattice).unwrap()).unwrap()
}

/// Exact rank and |gcd of maximal minors| via fraction-free elimination on
/// every square submatrix; small inputs only.
fn rank_and_index(cols: &[Vec<i64>], dim: usize) -> (usize, i128) {
    fn det(m: Vec<Vec<i128>>) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut a = m;
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| a[i][k] != 0) else { return 0 };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }
    fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = choose(n - 1, k);
        for mut c in choose(n - 1, k - 1) {
            c.push(n - 1);
            out.push(c);
        }
        out
    }
    for k in (1..=dim.min(cols.len())).rev() {
        let mut g = 0i128;
        for rows in choose(dim, k) {
            for cs in choose(cols.len(), k) {
                g = g.gcd(&det(rows.iter().map(|&r| cs.iter().map(|&c| cols[c][r] as i128).collect()).collect()));
            }
        }
        if g != 0 {
            return (k, g.abs());
        }
    }
    (0, 1)
}

/// M from the definition, one subset at a time.
fn definition_oracle(vectors: &[Vec<i64>], dim: usize, arithmetic: bool) -> MultiPoly {
    let n = vectors.len();
    let (full, _) = rank_and_index(vectors, dim);
    let x1 = m("x-1");
    let y1 = m("y-1");
    let mut out = MultiPoly::zero(&TUTTE_VARS);
    for mask in 0u32..(1 << n) {
        let cols: Vec<Vec<i64>> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| vectors[i].clone()).collect();
        let (r, g) = rank_and_index(&cols, dim);
        let mult = if arithmetic { g as i64 } else { 1 };
        let term = &x1.pow((full - r) as u32) * &y1.pow((cols.len() - r) as u32);
        out = &out + &term.scale(&rat(mult));
    }
    out
}

#[test]
fn arithmetic_examples() {
    for ex in &WORKED_C2 {
        let t = arithmetic_tutte_bruteforce(&config(Family::C, 2, ex.lattice)).unwrap();
        assert_eq!(t.poly, ex.tutte_poly().unwrap(), "{}", ex.citation());
    }
    let empty = VectorConfig::integral(&[], 1).unwrap();
    let t = arithmetic_tutte_bruteforce(&empty).unwrap();
    assert_eq!((t.poly, t.rank), (m("1"), 0));
    let b2 = arithmetic_tutte_bruteforce(&config(Family::B, 2, LatticeKind::Weight)).unwrap();
    assert_eq!(b2.poly, m("3+4x+x^2+4y+2y^2"));
}

#[test]
fn classical_examples() {
    let e1 = VectorConfig::integral(&[vec![1]], 1).unwrap();
    assert_eq!(classical_tutte_bruteforce(&e1).unwrap().poly, m("x"));
    // six independent pairs among the four C₂ roots
    let c2 = classical_tutte_bruteforce(&config(Family::C, 2, LatticeKind::Integer)).unwrap();
    assert_eq!(c2.poly, m("x^2+2x+2y+y^2"));
    for n in 1..=3 {
        let b = classical_tutte_bruteforce(&config(Family::B, n, LatticeKind::Integer)).unwrap();
        let c = classical_tutte_bruteforce(&config(Family::C, n, LatticeKind::Integer)).unwrap();
        assert_eq!(b.poly, c.poly);
    }
}

#[test]
fn coboundary_examples() {
    let one = TuttePolynomial { poly: m("1"), rank: 0, ambient_rank: 1, flavor: Flavor::Arithmetic };
    assert_eq!(coboundary_from_tutte(&one).unwrap().poly, MultiPoly::one(&COBOUNDARY_VARS));
    let x = TuttePolynomial { poly: m("x"), rank: 1, ambient_rank: 1, flavor: Flavor::Classical };
    let psi = coboundary_from_tutte(&x).unwrap();
    assert_eq!(psi.poly, MultiPoly::parse("X+Y-1", &COBOUNDARY_VARS).unwrap());
    assert_eq!(tutte_from_coboundary(&psi, 1, Flavor::Classical).unwrap().poly, m("x"));
    let c2 = arithmetic_tutte_bruteforce(&config(Family::C, 2, LatticeKind::Integer)).unwrap();
    let psi = coboundary_from_tutte(&c2).unwrap();
    assert!(psi.normalization_holds());
    assert_eq!(tutte_from_coboundary(&psi, 2, Flavor::Arithmetic).unwrap(), c2);
    let bad = CoboundaryPolynomial { poly: MultiPoly::parse("X", &COBOUNDARY_VARS).unwrap(), rank: 2 };
    assert!(tutte_from_coboundary(&bad, 2, Flavor::Arithmetic).is_err());
}

#[test]
fn table_rows_round_trip() {
    for row in WEIGHT_TABLE.iter().filter(|r| !r.truncated) {
        let rank = if row.family == Family::A { row.n - 1 } else { row.n };
        let t = TuttePolynomial { poly: row.polynomial().unwrap(), rank, ambient_rank: rank, flavor: Flavor::Arithmetic };
        let psi = coboundary_from_tutte(&t).unwrap();
        assert!(psi.normalization_holds(), "{}", row.citation());
        assert_eq!(tutte_from_coboundary(&psi, rank, Flavor::Arithmetic).unwrap(), t, "{}", row.citation());
    }
}

#[test]
fn brute_force_matches_definition() {
    for family in Family::ALL {
        for lattice in LatticeKind::ALL {
            for n in family.min_n()..=3 {
                let c = config(family, n, lattice);
                let t = arithmetic_tutte_bruteforce(&c).unwrap();
                assert_eq!(t.poly, definition_oracle(c.coords(), c.lattice_rank(), true), "{family}{n} {lattice}");
                let k = classical_tutte_bruteforce(&c).unwrap();
                assert_eq!(k.poly, definition_oracle(c.coords(), c.lattice_rank(), false), "{family}{n} {lattice}");
            }
        }
    }
}

/// M(1,1) is the multiplicity-weighted count of bases; for C₂ in Z² that is
/// five bases of multiplicity 2 plus one of multiplicity 4.
#[test]
fn evaluations() {
    let c2 = arithmetic_tutte_bruteforce(&config(Family::C, 2, LatticeKind::Integer)).unwrap();
    assert_eq!(c2.eval_integer(1, 1), BigInt::from(14));
    for family in Family::ALL {
        for lattice in LatticeKind::ALL {
            for n in family.min_n()..=3 {
                let t = arithmetic_tutte_bruteforce(&config(family, n, lattice)).unwrap();
                assert!(has_nonnegative_integer_coeffs(&t.poly));
                for (x, y) in [(1, 0), (0, 1), (2, 1), (1, 1)] {
                    let v = t.eval(x, y);
                    assert!(v.is_integer() && !v.is_negative(), "{family}{n} {lattice} M({x},{y}) = {v}");
                }
                assert!(BigInt::from(1) <= t.eval_integer(1, 1));
                assert_eq!(t.poly.degree_in("x").unwrap().unwrap_or(0) as usize, t.rank);
            }
        }
    }
}

#[test]
fn capacity_guard() {
    let b5 = config(Family::B, 5, LatticeKind::Integer);
    assert!(arithmetic_tutte_bruteforce_with_capacity(&b5, 20).is_err());
}

fn vectors() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=3).prop_flat_map(|k| (Just(k), prop::collection::vec(prop::collection::vec(-3i64..=3, k), 0..=7)))
}

/// Edges of a graph on `v` vertices as e_i − e_j.
fn graphic() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (2usize..=5).prop_flat_map(|v| {
        prop::collection::vec((0..v, 0..v), 0..=8).prop_map(move |edges| {
            let vecs = edges
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| {
                    let mut e = vec![0; v];
                    e[a] = 1;
                    e[b] = -1;
                    e
                })
                .collect();
            (v, vecs)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_configs_match_definition((k, vecs) in vectors()) {
        let c = VectorConfig::integral(&vecs, k).unwrap();
        let t = arithmetic_tutte_bruteforce(&c).unwrap();
        prop_assert_eq!(&t.poly, &definition_oracle(&vecs, k, true));
        let psi = coboundary_from_tutte(&t).unwrap();
        prop_assert!(psi.normalization_holds());
        prop_assert_eq!(tutte_from_coboundary(&psi, k, Flavor::Arithmetic).unwrap(), t);
    }

    #[test]
    fn unimodular_configs_are_classical((v, vecs) in graphic()) {
        let c = VectorConfig::integral(&vecs, v).unwrap();
        prop_assert_eq!(arithmetic_tutte_bruteforce(&c).unwrap().poly, classical_tutte_bruteforce(&c).unwrap().poly);
    }
}
