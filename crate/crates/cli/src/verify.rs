use serde_json::{json, Map, Value};

use tuttekit::finite_field::{expected_profile_poly, torus_profile};
use tuttekit::fixtures::weight_row;
use tuttekit::invariants::characteristic_polynomial;
use tuttekit::poly::rat;
use tuttekit::root_system::{build_config, LatticeKind, RootSystemSpec};
use tuttekit::signed_graph::{
    marked_graph_identity_holds, master_theorem_polys, signed_census, unsigned_census_v, unsigned_theorem_polys,
    MAX_UNSIGNED_V,
};
use tuttekit::tutte::{coboundary_from_tutte, TuttePolynomial};
use tuttekit::Error;

use crate::engines::{label, order, poly_json, primes, render_json, tutte, Failure, Method, Output};

/// Largest rank accepted by `--method all`.
const ALL_MAX_RANK: usize = 4;

struct Check {
    name: String,
    ok: bool,
    detail: Value,
}

fn render(target: &str, checks: &[Check], output: Output) -> (String, bool) {
    let ok = checks.iter().all(|c| c.ok);
    let out = match output {
        Output::Json => render_json(&json!({
            "target": target,
            "ok": ok,
            "checks": checks
                .iter()
                .map(|c| json!({"name": c.name, "ok": c.ok, "detail": c.detail}))
                .collect::<Vec<_>>(),
        })),
        Output::Text => {
            let mut lines: Vec<String> =
                checks.iter().map(|c| format!("{} {}", if c.ok { "PASS" } else { "FAIL" }, c.name)).collect();
            lines.push(format!("{target}: {}", if ok { "ok" } else { "MISMATCH" }));
            lines.join("\n")
        }
    };
    (out, ok)
}

fn same(a: &TuttePolynomial, b: &TuttePolynomial) -> bool {
    a.poly == b.poly && a.rank == b.rank && a.ambient_rank == b.ambient_rank
}

pub fn system(
    spec: &RootSystemSpec,
    a_by_rank: bool,
    method: Method,
    requested_order: Option<usize>,
    prime: &str,
    output: Output,
) -> Result<(String, bool), Failure> {
    if method == Method::All && spec.rank() > ALL_MAX_RANK {
        return Err(Error::Capacity {
            what: "rank for --method all".into(),
            size: spec.rank() as u128,
            limit: ALL_MAX_RANK as u128,
        }
        .into());
    }
    let order = order(requested_order, spec.n)?;
    let methods: Vec<Method> = match method {
        Method::All => vec![Method::Bruteforce, Method::Genfun, Method::Graphs],
        Method::Genfun => vec![Method::Genfun, Method::Bruteforce],
        Method::Finitefield => vec![Method::Genfun],
        m => vec![m, Method::Genfun],
    };
    let mut polys = Vec::new();
    for m in methods {
        polys.push((m, tutte(spec, m, order, false)?));
    }

    let mut checks = Vec::new();
    for (m, t) in &polys {
        checks.push(Check {
            name: format!("normalization {m}"),
            ok: coboundary_from_tutte(t)?.normalization_holds(),
            detail: json!({"tutte": poly_json(&t.poly)?}),
        });
    }
    for (i, (a, ta)) in polys.iter().enumerate() {
        for (b, tb) in &polys[i + 1..] {
            checks.push(Check { name: format!("{a} = {b}"), ok: same(ta, tb), detail: Value::Null });
        }
    }

    let reference = &polys[0].1;
    if spec.lattice == LatticeKind::Weight {
        if let Some(row) = weight_row(spec.family, spec.n) {
            let printed = row.polynomial()?;
            let ok = if row.truncated {
                printed.terms().all(|(e, c)| &reference.poly.coeff(e) == c)
            } else {
                reference.poly == printed
            };
            checks.push(Check {
                name: format!("published {}", row.label()),
                ok,
                detail: json!({"citation": row.citation(), "truncated": row.truncated}),
            });
        }
    }

    if matches!(method, Method::All | Method::Finitefield) {
        let config = build_config(spec)?;
        let psi = coboundary_from_tutte(reference)?;
        let chi = characteristic_polynomial(reference)?;
        let d = config.lattice_rank();
        for p in primes(&config, prime, 2)? {
            let h = torus_profile(&config, p)?;
            let expected = expected_profile_poly(&psi, p - 1, d)?;
            let complement_ok = chi.eval(&[rat((p - 1) as i64)])? == rat(h.complement() as i64);
            let hist: Map<String, Value> =
                h.histogram.iter().map(|(k, v)| (k.to_string(), json!(v.to_string()))).collect();
            checks.push(Check {
                name: format!("torus count p = {p}"),
                ok: h.as_poly() == expected && complement_ok,
                detail: json!({
                    "prime": p,
                    "histogram": hist,
                    "expected": poly_json(&expected)?,
                    "complement_matches_characteristic": complement_ok,
                }),
            });
        }
    }
    Ok(render(&label(spec, a_by_rank), &checks, output))
}

pub fn signed_graphs(max_v: usize, output: Output) -> Result<(String, bool), Failure> {
    let formula = master_theorem_polys(max_v)?;
    let mut checks = Vec::new();
    for v in 0..=max_v {
        let census = signed_census(v)?;
        let counts: Map<String, Value> = census
            .counts
            .iter()
            .map(|(&(cp, cm, c0, l, e), &n)| (format!("{cp},{cm},{c0},{l},{e}"), json!(n)))
            .collect();
        checks.push(Check {
            name: format!("signed census v = {v}"),
            ok: census.to_poly() == formula[v],
            detail: json!({"key": "c+,c-,c0,l,e", "counts": counts}),
        });
    }
    let unsigned_v = (max_v + 2).min(MAX_UNSIGNED_V);
    let unsigned = unsigned_theorem_polys(unsigned_v)?;
    for (v, expected) in unsigned.iter().enumerate() {
        let census = unsigned_census_v(v)?;
        checks.push(Check {
            name: format!("unsigned census v = {v}"),
            ok: &census == expected,
            detail: json!({"census": poly_json(&census)?}),
        });
    }
    for v in 0..=max_v {
        checks.push(Check {
            name: format!("marked graphs v = {v}"),
            ok: marked_graph_identity_holds(v)?,
            detail: Value::Null,
        });
    }
    Ok(render(&format!("signed graphs up to {max_v} vertices"), &checks, output))
}
