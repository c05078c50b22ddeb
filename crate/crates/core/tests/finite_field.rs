use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use tuttekit::finite_field::{
    admissible_primes, expected_profile_poly, find_admissible_prime, is_prime, torus_profile, torus_profile_direct,
    verify_classical_mode, verify_finite_field_identity,
};
use tuttekit::invariants::characteristic_polynomial;
use tuttekit::lattice::{multiplicity_lcm, VectorConfig};
use tuttekit::poly::rat;
use tuttekit::root_system::{build_config, Family, LatticeKind, RootSystemSpec};
use tuttekit::tutte::{arithmetic_tutte_bruteforce, classical_tutte_bruteforce, coboundary_from_tutte, CoboundaryPolynomial};
use tuttekit::MultiPoly;

fn config(family: Family, n: usize, lattice: LatticeKind) -> VectorConfig {
    build_config(&RootSystemSpec::new(family, n, lattice).unwrap()).unwrap()
}

fn psi_of(c: &VectorConfig) -> CoboundaryPolynomial {
    coboundary_from_tutte(&arithmetic_tutte_bruteforce(c).unwrap()).unwrap()
}

fn lcm(c: &VectorConfig) -> u64 {
    multiplicity_lcm(c).unwrap().to_u64().unwrap()
}

fn power(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Walks every tuple of nonzero residues and evaluates each character.
fn naive_histogram(c: &VectorConfig, p: u64) -> BTreeMap<usize, u128> {
    let d = c.lattice_rank();
    let mut hist = BTreeMap::new();
    let mut point = vec![1u64; d];
    loop {
        let h = c
            .coords()
            .iter()
            .filter(|coords| {
                coords.iter().zip(&point).fold(1u64, |acc, (&k, &t)| {
                    let base = if k < 0 { power(t, p - 2, p) } else { t };
                    acc * power(base, k.unsigned_abs(), p) % p
                }) == 1
            })
            .count();
        *hist.entry(h).or_insert(0) += 1;
        let Some(i) = (0..d).find(|&i| point[i] < p - 1) else { break };
        point[i] += 1;
        point[..i].iter_mut().for_each(|t| *t = 1);
    }
    hist
}

#[test]
fn prime_search_examples() {
    assert_eq!(find_admissible_prime(4, 3).unwrap(), 5);
    assert_eq!(find_admissible_prime(1, 2).unwrap(), 2);
    assert_eq!(find_admissible_prime(3, 3).unwrap(), 7);
    assert_eq!(admissible_primes(4, 5, 3).unwrap(), vec![5, 13, 17]);
}

#[test]
fn profile_examples() {
    let c2 = config(Family::C, 2, LatticeKind::Integer);
    let h = torus_profile(&c2, 5).unwrap();
    assert_eq!(h.total(), 16);
    assert!(verify_finite_field_identity(&c2, 5, &psi_of(&c2)).unwrap());

    let empty = VectorConfig::integral(&[], 2).unwrap();
    assert_eq!(torus_profile(&empty, 7).unwrap().histogram, BTreeMap::from([(0, 36)]));

    let e1 = VectorConfig::integral(&[vec![1]], 1).unwrap();
    let h = torus_profile(&e1, 3).unwrap();
    assert_eq!(h.histogram, BTreeMap::from([(0, 1), (1, 1)]));
    assert_eq!(h.as_poly(), MultiPoly::parse("Y+1", &["Y"]).unwrap());
    assert_eq!(expected_profile_poly(&psi_of(&e1), 2, 1).unwrap(), h.as_poly());

    let b3 = config(Family::B, 3, LatticeKind::Integer);
    assert!(verify_finite_field_identity(&b3, 5, &psi_of(&b3)).unwrap());
}

#[test]
fn negative_controls() {
    let c2 = config(Family::C, 2, LatticeKind::Integer);
    let mut psi = psi_of(&c2);
    psi.poly = &psi.poly + &MultiPoly::one(&["X", "Y"]);
    assert!(!verify_finite_field_identity(&c2, 5, &psi).unwrap());
    // 4 does not divide 6
    assert!(torus_profile(&c2, 7).is_err());

    let a3 = config(Family::A, 3, LatticeKind::Integer);
    let mut classical = coboundary_from_tutte(&classical_tutte_bruteforce(&a3).unwrap()).unwrap();
    classical.poly = &classical.poly + &MultiPoly::one(&["X", "Y"]);
    assert!(!verify_classical_mode(&a3, 5, &classical).unwrap());
    assert!(verify_classical_mode(&c2, 5, &psi_of(&c2)).is_err());
}

#[test]
fn classical_mode_examples() {
    let a2 = VectorConfig::integral(&[vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1]], 3).unwrap();
    let k = coboundary_from_tutte(&classical_tutte_bruteforce(&a2).unwrap()).unwrap();
    assert!(verify_classical_mode(&a2, 5, &k).unwrap());
    let a3 = config(Family::A, 4, LatticeKind::Root);
    let k = coboundary_from_tutte(&classical_tutte_bruteforce(&a3).unwrap()).unwrap();
    assert!(verify_classical_mode(&a3, 3, &k).unwrap());
    // type A has m ≡ 1, so both modes give the same histogram
    assert_eq!(torus_profile(&a3, 3).unwrap().as_poly(), expected_profile_poly(&k, 2, 3).unwrap());
}

/// Every odd prime has even p − 1, so a configuration with even multiplicity
/// lcm never qualifies for classical mode.
#[test]
fn classical_mode_needs_coprime_field() {
    let b2 = config(Family::B, 2, LatticeKind::Weight);
    assert_eq!(lcm(&b2) % 2, 0);
    let k = coboundary_from_tutte(&classical_tutte_bruteforce(&b2).unwrap()).unwrap();
    for p in [3, 5, 7, 11] {
        assert!(verify_classical_mode(&b2, p, &k).is_err());
    }
}

#[test]
fn fast_and_direct_paths_match_naive_enumeration() {
    for family in Family::ALL {
        for lattice in LatticeKind::ALL {
            for n in family.min_n()..=3 {
                let c = config(family, n, lattice);
                let p = find_admissible_prime(lcm(&c), 3).unwrap();
                let naive = naive_histogram(&c, p);
                assert_eq!(torus_profile(&c, p).unwrap().histogram, naive, "{family}{n} {lattice}");
                assert_eq!(torus_profile_direct(&c, p).unwrap().histogram, naive, "{family}{n} {lattice}");
            }
        }
    }
}

#[test]
fn identity_at_two_primes_and_complement_count() {
    for family in Family::ALL {
        for lattice in LatticeKind::ALL {
            for n in family.min_n()..=3 {
                let c = config(family, n, lattice);
                let t = arithmetic_tutte_bruteforce(&c).unwrap();
                let psi = coboundary_from_tutte(&t).unwrap();
                let chi = characteristic_polynomial(&t).unwrap();
                let primes = admissible_primes(lcm(&c), 3, 2).unwrap();
                assert_ne!(primes[0], primes[1]);
                for p in primes {
                    assert!(is_prime(p));
                    let h = torus_profile(&c, p).unwrap();
                    assert_eq!(h.total(), ((p - 1) as u128).pow(c.lattice_rank() as u32));
                    assert!(verify_finite_field_identity(&c, p, &psi).unwrap(), "{family}{n} {lattice} p = {p}");
                    let count = chi.eval(&[rat((p - 1) as i64)]).unwrap();
                    assert_eq!(count, rat(h.complement() as i64), "{family}{n} {lattice} p = {p}");
                }
            }
        }
    }
}

#[test]
fn capacity_guard() {
    let c = config(Family::B, 4, LatticeKind::Integer);
    assert!(torus_profile(&c, 1_000_003).is_err());
}
