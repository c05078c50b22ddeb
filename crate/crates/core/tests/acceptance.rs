use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tuttekit::finite_field::{admissible_primes, torus_profile, verify_classical_mode, verify_finite_field_identity};
use tuttekit::fixtures::{characteristic_row, CHARACTERISTIC_TABLE, WEIGHT_TABLE, WORKED_C2};
use tuttekit::genfun::{expand_genfun, extract_from_series, typea_weight_series, GenFunLattice, GenFunRequest, DEFAULT_ORDER};
use tuttekit::invariants::{
    char_coeffs_via_permutations, chi_from_permutation_coeffs, closed_form_characteristic, derive_all, necklace_count,
    typea_weight_characteristic, typea_weight_prime_case, weyl_group_check, Q,
};
use tuttekit::lattice::{multiplicity_lcm, snf_invariant_factors, LatticeBasis, VectorConfig};
use tuttekit::poly::{rat, MultiPoly};
use tuttekit::root_system::{build_config, Family, LatticeKind, RootSystemSpec};
use tuttekit::signed_graph::{
    graph_dictionary_tutte, marked_graph_identity_holds, master_theorem_polys, signed_census, unsigned_census_v,
    unsigned_theorem_polys,
};
use tuttekit::tutte::{
    arithmetic_tutte_bruteforce, classical_tutte_bruteforce, coboundary_from_tutte, CoboundaryPolynomial, Flavor,
    TuttePolynomial, COBOUNDARY_VARS,
};
use tuttekit::{deformed_exponential, TruncSeries};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T>(r: tuttekit::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn spec(family: Family, n: usize, lattice: LatticeKind) -> RootSystemSpec {
    RootSystemSpec::new(family, n, lattice).unwrap()
}

fn weight_tutte(family: Family, n: usize, poly: MultiPoly) -> TuttePolynomial {
    let rank = if family == Family::A { n - 1 } else { n };
    TuttePolynomial { poly, rank, ambient_rank: rank, flavor: Flavor::Arithmetic }
}

fn criterion_1() -> Outcome {
    for ex in &WORKED_C2 {
        let config = build_config(&spec(Family::C, 2, ex.lattice)).unwrap();
        let m = ok(arithmetic_tutte_bruteforce(&config), "brute force")?;
        ensure!(m.poly == ex.tutte_poly().unwrap(), "{}: M = {}", ex.citation(), m.poly);
        let inv = ok(derive_all(&m), "derive_all")?;
        ensure!(inv.ehrhart == ex.ehrhart_poly().unwrap(), "{}: Ehrhart {}", ex.citation(), inv.ehrhart);
        ensure!(inv.lattice_points == BigInt::from(ex.lattice_points), "{}: points {}", ex.citation(), inv.lattice_points);
        ensure!(
            inv.interior_points == BigInt::from(ex.interior_points),
            "{}: interior {}",
            ex.citation(),
            inv.interior_points
        );
    }
    Ok(())
}

fn weight_series(family: Family, order: usize) -> tuttekit::Result<TruncSeries> {
    match family {
        Family::A => typea_weight_series(order),
        _ => expand_genfun(&GenFunRequest { family, lattice: GenFunLattice::Weight, order }),
    }
}

fn criterion_2() -> Outcome {
    for family in Family::ALL {
        let series = ok(weight_series(family, DEFAULT_ORDER), "weight series")?;
        for row in WEIGHT_TABLE.iter().filter(|r| r.family == family) {
            let m = ok(extract_from_series(&series, family, GenFunLattice::Weight, row.n), "extraction")?;
            let printed = row.polynomial().unwrap();
            if row.truncated {
                for (e, c) in printed.terms() {
                    ensure!(m.poly.coeff(e) == *c, "{}: coefficient of {:?} is {}", row.citation(), e, m.poly.coeff(e));
                }
            } else {
                ensure!(m.poly == printed, "{}: got {}", row.citation(), m.poly);
            }
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let b5_series = ok(weight_series(Family::B, 5), "B weight series")?;
    for row in &CHARACTERISTIC_TABLE {
        let table = WEIGHT_TABLE.iter().find(|w| w.family == row.family && w.n == row.n).unwrap();
        let poly = if table.truncated {
            ok(extract_from_series(&b5_series, row.family, GenFunLattice::Weight, row.n), "extraction")?.poly
        } else {
            table.polynomial().unwrap()
        };
        let inv = ok(derive_all(&weight_tutte(row.family, row.n, poly)), "derive_all")?;
        ensure!(inv.characteristic == row.characteristic_poly().unwrap(), "{}: χ = {}", row.citation(), inv.characteristic);
        ensure!(inv.ehrhart == row.ehrhart_poly().unwrap(), "{}: E = {}", row.citation(), inv.ehrhart);
        ensure!(weyl_group_check(row.family, row.n, &inv.characteristic), "{}: |χ(0)| off", row.citation());
    }
    let a4 = characteristic_row(Family::A, 4).unwrap().ehrhart_poly().unwrap();
    ensure!(a4.coeff(&[3]) == rat(64), "A4 Ehrhart leading coefficient {}", a4.coeff(&[3]));
    Ok(())
}

fn criterion_4() -> Outcome {
    let order = 5;
    for family in Family::ALL {
        let max_n = if family == Family::A { 5 } else { 4 };
        for lattice in LatticeKind::ALL {
            let series = ok(
                expand_genfun(&GenFunRequest { family, lattice: lattice.into(), order }),
                "genfun",
            )?;
            for n in family.min_n()..=max_n {
                let s = spec(family, n, lattice);
                let config = build_config(&s).unwrap();
                let brute = ok(arithmetic_tutte_bruteforce(&config), "brute force")?;
                let gen = ok(extract_from_series(&series, family, lattice.into(), n), "genfun extraction")?;
                let dict = ok(graph_dictionary_tutte(family, n, lattice), "dictionary")?;
                ensure!(brute.poly == gen.poly, "{s}: brute {} vs genfun {}", brute.poly, gen.poly);
                ensure!(brute.poly == dict.poly, "{s}: brute {} vs dictionary {}", brute.poly, dict.poly);
                ensure!(brute.ambient_rank == gen.ambient_rank, "{s}: ambient rank mismatch");
                let psi = ok(coboundary_from_tutte(&brute), "coboundary")?;
                ensure!(psi.normalization_holds(), "{s}: ψ(X,1) ≠ X^r");
                let lcm = ok(multiplicity_lcm(&config), "lcm")?.to_u64().unwrap();
                let primes = ok(admissible_primes(lcm, 5, 2), "prime search")?;
                for p in primes {
                    ensure!(ok(verify_finite_field_identity(&config, p, &psi), "torus")?, "{s}: identity fails at p = {p}");
                }
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let formula = ok(master_theorem_polys(5), "master series")?;
    for v in 0..=4 {
        let census = ok(signed_census(v), "census")?.to_poly();
        ensure!(census == formula[v], "master census differs at v = {v}");
    }
    let census5 = ok(signed_census(5), "census")?.to_poly();
    let mut support: Vec<Vec<u32>> = census5.terms().chain(formula[5].terms()).map(|(e, _)| e.clone()).collect();
    support.sort();
    support.dedup();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let sample: Vec<_> = support.choose_multiple(&mut rng, 20).collect();
    ensure!(sample.len() == 20, "only {} coefficients at v = 5", support.len());
    for e in sample {
        ensure!(census5.coeff(e) == formula[5].coeff(e), "v = 5 coefficient {:?}", e);
    }
    let unsigned = ok(unsigned_theorem_polys(6), "unsigned series")?;
    for v in 0..=6 {
        ensure!(ok(unsigned_census_v(v), "unsigned census")? == unsigned[v], "unsigned census differs at v = {v}");
    }
    for v in 0..=4 {
        ensure!(ok(marked_graph_identity_holds(v), "marked graphs")?, "marked-graph identity fails at v = {v}");
    }
    Ok(())
}

fn weight_a_characteristics(max_n: usize) -> Result<BTreeMap<usize, MultiPoly>, String> {
    let series = ok(typea_weight_series(DEFAULT_ORDER.max(max_n)), "weight series")?;
    let mut out = BTreeMap::new();
    for n in 1..=max_n {
        let m = ok(extract_from_series(&series, Family::A, GenFunLattice::Weight, n), "extraction")?;
        out.insert(n, ok(derive_all(&m), "derive_all")?.characteristic);
    }
    Ok(out)
}

fn criterion_6() -> Outcome {
    for family in Family::ALL {
        for n in family.min_n()..=4 {
            let config = build_config(&spec(family, n, LatticeKind::Integer)).unwrap();
            let m = ok(arithmetic_tutte_bruteforce(&config), "brute force")?;
            let chi = ok(derive_all(&m), "derive_all")?.characteristic;
            let closed = ok(closed_form_characteristic(family, n, LatticeKind::Integer), "closed form")?;
            ensure!(chi == closed, "{family}{n}: χ = {chi}, product {closed}");
        }
    }
    let chis = weight_a_characteristics(6)?;
    for (&n, chi) in &chis {
        let closed = ok(typea_weight_characteristic(n), "divisor sum")?;
        ensure!(*chi == closed, "A{n}: χ = {chi}, divisor sum {closed}");
    }
    for n in [3, 5] {
        let prime = ok(typea_weight_prime_case(n), "prime case")?;
        ensure!(chis[&n] == prime, "A{n}: prime-case formula {prime}");
    }
    Ok(())
}

/// Rotation classes of 0/1 strings of length q with n ones, by brute force.
fn necklace_orbits(n: usize, q: usize) -> u64 {
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for mask in 0u64..(1 << q) {
        if mask.count_ones() as usize != n || seen.contains(&mask) {
            continue;
        }
        count += 1;
        let mut m = mask;
        for _ in 0..q {
            seen.insert(m);
            m = ((m << 1) | (m >> (q - 1))) & ((1 << q) - 1);
        }
    }
    count
}

fn criterion_7() -> Outcome {
    let chis = weight_a_characteristics(7)?;
    for (n, q) in [(3usize, 6u64), (3, 9), (5, 10), (7, 14)] {
        let direct = necklace_orbits(n, q as usize);
        let closed = ok(necklace_count(n as u64, q), "necklace count")?;
        ensure!(closed == BigInt::from(direct), "necklaces ({n},{q}): {closed} vs orbits {direct}");
        let value = chis[&n].eval(&[rat(q as i64)]).unwrap();
        let nf: BigInt = (1..=n as u64).map(BigInt::from).product();
        ensure!(value == tuttekit::Rational::from_integer(nf * &closed), "χ_A{n}({q}) = {value}, necklaces {closed}");
    }
    let three = ok(MultiPoly::parse("q^2 - 3q + 6", &Q), "parse")?;
    ensure!(chis[&3] == three, "A3: χ = {}, expected (q−1)(q−2)+4", chis[&3]);
    ensure!(ok(typea_weight_prime_case(3), "prime case")? == three, "prime-case formula at n = 3");
    Ok(())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// c_k by enumerating every permutation of [n].
fn permutation_coeffs_direct(n: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); n];
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut seen = vec![false; n];
        let (mut cycles, mut g) = (0, 0);
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let (mut j, mut len) = (i, 0);
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
                len += 1;
            }
            cycles += 1;
            g = gcd(g, len);
        }
        c[cycles - 1] += g;
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    c
}

fn criterion_8() -> Outcome {
    let chis = weight_a_characteristics(7)?;
    for n in 1..=7 {
        let c = ok(char_coeffs_via_permutations(n), "permutation coefficients")?;
        ensure!(c == permutation_coeffs_direct(n), "n = {n}: c_k disagree with enumeration");
        let chi = chi_from_permutation_coeffs(&c);
        ensure!(chi == chis[&n], "n = {n}: reconstructed {chi} vs {}", chis[&n]);
    }
    Ok(())
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<i64>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-4..=4)).collect()).collect()
}

/// Random unimodular matrix as a product of elementary operations.
fn unimodular(rng: &mut ChaCha8Rng, k: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    if k < 2 {
        return u;
    }
    for _ in 0..6 {
        let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
        if i == j {
            continue;
        }
        let f = rng.gen_range(-2..=2);
        for row in u.iter_mut() {
            row[i] += f * row[j];
        }
        if rng.gen_bool(0.3) {
            for row in u.iter_mut() {
                row.swap(i, j);
            }
        }
    }
    u
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    // ψ(X,1) = X^r
    let mut computed: Vec<(String, CoboundaryPolynomial)> = Vec::new();
    for family in Family::ALL {
        for lattice in LatticeKind::ALL {
            for n in family.min_n()..=3 {
                let s = spec(family, n, lattice);
                let m = ok(arithmetic_tutte_bruteforce(&build_config(&s).unwrap()), "brute force")?;
                computed.push((s.to_string(), ok(coboundary_from_tutte(&m), "coboundary")?));
            }
        }
    }
    for row in WEIGHT_TABLE.iter().filter(|r| !r.truncated) {
        let m = weight_tutte(row.family, row.n, row.polynomial().unwrap());
        computed.push((row.label(), ok(coboundary_from_tutte(&m), "coboundary")?));
    }
    for (label, psi) in &computed {
        ensure!(psi.normalization_holds(), "{label}: ψ(X,1) ≠ X^r");
    }
    // exp/log round trips
    for _ in 0..10 {
        let order = rng.gen_range(2..=6);
        let mut coeffs = vec![MultiPoly::zero(&COBOUNDARY_VARS)];
        for _ in 1..=order {
            let terms = (0..3).map(|_| (vec![rng.gen_range(0..3), rng.gen_range(0..3)], rat(rng.gen_range(-3..=3))));
            coeffs.push(MultiPoly::from_terms(&COBOUNDARY_VARS, terms).unwrap());
        }
        let f = TruncSeries::from_coeffs(&COBOUNDARY_VARS, order, coeffs).unwrap();
        ensure!(ok(f.exp().and_then(|e| e.log()), "exp/log")? == f, "log(exp f) ≠ f");
        let g = ok(f.exp(), "exp")?;
        ensure!(ok(g.log().and_then(|l| l.exp()), "log/exp")? == g, "exp(log g) ≠ g");
    }
    let fz0 = ok(
        deformed_exponential(&COBOUNDARY_VARS, &MultiPoly::one(&COBOUNDARY_VARS), &MultiPoly::zero(&COBOUNDARY_VARS), 5),
        "F(Z,0)",
    )?;
    ensure!(fz0.coeff(0) == &MultiPoly::one(&COBOUNDARY_VARS) && fz0.coeff(1) == &MultiPoly::one(&COBOUNDARY_VARS), "F(Z,0) ≠ 1+Z");
    ensure!((2..=5).all(|k| fz0.coeff(k).is_zero()), "F(Z,0) ≠ 1+Z");
    // SNF invariance under unimodular change of lattice basis
    for _ in 0..20 {
        let k = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=6);
        let a = random_matrix(&mut rng, k, cols);
        let u = unimodular(&mut rng, k);
        let ua: Vec<Vec<i64>> =
            (0..k).map(|i| (0..cols).map(|j| (0..k).map(|l| u[i][l] * a[l][j]).sum()).collect()).collect();
        let big = |m: &[Vec<i64>]| m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<Vec<BigInt>>>();
        ensure!(snf_invariant_factors(&big(&a)) == snf_invariant_factors(&big(&ua)), "SNF changed under {:?}", u);
        let basis = LatticeBasis::standard(k);
        let moved = ok(basis.transformed(&u), "basis change")?;
        let vecs: Vec<Vec<i64>> = (0..cols).map(|j| (0..k).map(|i| a[i][j]).collect()).collect();
        let c1 = ok(VectorConfig::integral(&vecs, k), "config")?;
        let c2 = ok(c1.with_lattice(moved), "config")?;
        let all: Vec<usize> = (0..cols).collect();
        ensure!(
            ok(c1.subset_stats(&all), "stats")? == ok(c2.subset_stats(&all), "stats")?,
            "multiplicity changed under basis change"
        );
    }
    // classical = arithmetic when every multiplicity is 1
    for n in 1..=5 {
        let config = build_config(&spec(Family::A, n, LatticeKind::Integer)).unwrap();
        let a = ok(arithmetic_tutte_bruteforce(&config), "arithmetic")?;
        let c = ok(classical_tutte_bruteforce(&config), "classical")?;
        ensure!(a.poly == c.poly, "A{n}: classical {} vs arithmetic {}", c.poly, a.poly);
    }
    // histogram totals and classical mode
    for (family, n, lattice) in [
        (Family::C, 2, LatticeKind::Integer),
        (Family::B, 3, LatticeKind::Root),
        (Family::A, 4, LatticeKind::Weight),
        (Family::D, 3, LatticeKind::Weight),
    ] {
        let s = spec(family, n, lattice);
        let config = build_config(&s).unwrap();
        let lcm = ok(multiplicity_lcm(&config), "lcm")?.to_u64().unwrap();
        for p in ok(admissible_primes(lcm, 3, 2), "primes")? {
            let h = ok(torus_profile(&config, p), "torus")?;
            let expected = (p as u128 - 1).pow(config.lattice_rank() as u32);
            ensure!(h.total() == expected, "{s}: histogram total {} at p = {p}", h.total());
        }
        let classical = ok(classical_tutte_bruteforce(&config), "classical")?;
        let psi = ok(coboundary_from_tutte(&classical), "coboundary")?;
        let coprime = (3u64..200)
            .filter(|&p| tuttekit::finite_field::is_prime(p) && gcd_u64(lcm, p - 1) == 1)
            .take(2)
            .collect::<Vec<_>>();
        for p in coprime {
            ensure!(ok(verify_classical_mode(&config, p, &psi), "classical mode")?, "{s}: classical mode at p = {p}");
        }
    }
    Ok(())
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd_u64(b, a % b) }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("worked C2 example", criterion_1, Duration::from_secs(1)),
        ("weight-lattice table from generating functions", criterion_2, Duration::from_secs(30)),
        ("characteristic and Ehrhart table", criterion_3, Duration::from_secs(5)),
        ("brute force = genfun = dictionary = finite field", criterion_4, Duration::from_secs(600)),
        ("signed-graph censuses", criterion_5, Duration::from_secs(900)),
        ("characteristic closed forms", criterion_6, Duration::from_secs(60)),
        ("necklace correspondence", criterion_7, Duration::from_secs(60)),
        ("gcd-permutation coefficients", criterion_8, Duration::from_secs(60)),
        ("property suites", criterion_9, Duration::from_secs(60)),
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let k = i + 1;
        if !filter.is_empty() && !filter.contains(&k) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed > *budget {
                Err(format!("over time budget of {:?}", budget))
            } else {
                Ok(())
            }
        });
        match outcome {
            Ok(()) => println!("criterion {k}: PASS ({:.2}s) {name}", elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {k}: FAIL ({:.2}s) {name}: {e}", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
