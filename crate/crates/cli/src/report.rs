use num_traits::Signed;
use serde_json::{json, Map, Value};

use tuttekit::finite_field::torus_profile;
use tuttekit::fixtures::{CHARACTERISTIC_TABLE, WEIGHT_TABLE, WORKED_C2, WORKED_C2_PRINTED_EHRHART};
use tuttekit::invariants::derive_all;
use tuttekit::root_system::{build_config, weyl_group_order, LatticeKind, RootSystemSpec};
use tuttekit::tutte::{coboundary_from_tutte, Flavor};
use tuttekit::Rational;

use crate::engines::{label, order, poly_json, primes, render_json, tutte, Failure, Method, Output};

pub fn compute(
    spec: &RootSystemSpec,
    a_by_rank: bool,
    method: Method,
    classical: bool,
    requested_order: Option<usize>,
    prime: &str,
    output: Output,
) -> Result<String, Failure> {
    let name = label(spec, a_by_rank);
    if method == Method::Finitefield {
        if classical {
            return Err(Failure::Usage("the torus count is reported for the arithmetic case only".into()));
        }
        let config = build_config(spec)?;
        let p = primes(&config, prime, 1)?[0];
        let h = torus_profile(&config, p)?;
        let hist: Map<String, Value> = h.histogram.iter().map(|(k, v)| (k.to_string(), json!(v.to_string()))).collect();
        return Ok(match output {
            Output::Json => render_json(&json!({
                "system": name,
                "method": method.to_string(),
                "prime": p,
                "lattice_rank": h.rank,
                "histogram": hist,
                "profile": poly_json(&h.as_poly())?,
            })),
            Output::Text => format!("system   {name}\nmethod   {method}\nprime    {p}\nprofile  {}", h.as_poly()),
        });
    }
    let t = tutte(spec, method, order(requested_order, spec.n)?, classical)?;
    let psi = coboundary_from_tutte(&t)?;
    let flavor = match t.flavor {
        Flavor::Arithmetic => "arithmetic",
        Flavor::Classical => "classical",
    };
    Ok(match output {
        Output::Json => render_json(&json!({
            "system": name,
            "method": method.to_string(),
            "flavor": flavor,
            "rank": t.rank,
            "ambient_rank": t.ambient_rank,
            "tutte": poly_json(&t.poly)?,
            "coboundary": poly_json(&psi.poly)?,
        })),
        Output::Text => format!(
            "system   {name}\nmethod   {method}\nflavor   {flavor}\nrank     {}\nM        {}\npsi      {}",
            t.rank, t.poly, psi.poly
        ),
    })
}

pub fn invariants(
    spec: &RootSystemSpec,
    a_by_rank: bool,
    method: Method,
    requested_order: Option<usize>,
    output: Output,
) -> Result<(String, bool), Failure> {
    let name = label(spec, a_by_rank);
    let t = tutte(spec, method, order(requested_order, spec.n)?, false)?;
    let r = derive_all(&t)?;
    let weyl = weyl_group_order(spec.family, spec.n);
    let constant = r.characteristic.constant_term();
    let holds = constant.abs() == Rational::from_integer(weyl.clone());
    // only the weight lattice is gated
    let gated = spec.lattice == LatticeKind::Weight;
    let ok = holds || !gated;
    let out = match output {
        Output::Json => render_json(&json!({
            "system": name,
            "method": method.to_string(),
            "tutte": poly_json(&t.poly)?,
            "invariants": r.to_json()?,
            "weyl_group": {
                "order": weyl.to_string(),
                "characteristic_constant": constant.to_string(),
                "gated": gated,
                "holds": holds,
            },
        })),
        Output::Text => {
            let mut lines = vec![
                format!("system           {name}"),
                format!("M                {}", t.poly),
                format!("characteristic   {}", r.characteristic),
                format!("ehrhart          {}", r.ehrhart),
                format!("volume           {}", r.volume),
                format!("lattice points   {}", r.lattice_points),
                format!("interior points  {}", r.interior_points),
                format!("toric regions    {}", r.toric_regions),
                format!("poincare         {}", r.poincare),
                format!("dim DM           {}", r.dm_dim),
                format!("dim DPV          {}", r.dpv_dim),
            ];
            let verdict = match (gated, holds) {
                (_, true) => "holds",
                (true, false) => "FAILS",
                (false, false) => "differs (not gated)",
            };
            lines.push(format!("weyl check       |W| = {weyl}, {verdict}"));
            lines.join("\n")
        }
    };
    Ok((out, ok))
}

pub fn fixtures(output: Output) -> Result<String, Failure> {
    let weight: Vec<Value> = WEIGHT_TABLE
        .iter()
        .map(|r| json!({"system": r.label(), "printed": r.printed, "truncated": r.truncated, "citation": r.citation()}))
        .collect();
    let characteristic: Vec<Value> = CHARACTERISTIC_TABLE
        .iter()
        .map(|r| {
            json!({
                "system": r.label(),
                "characteristic": r.characteristic,
                "ehrhart": r.ehrhart,
                "citation": r.citation(),
            })
        })
        .collect();
    let worked: Vec<Value> = WORKED_C2
        .iter()
        .map(|w| {
            json!({
                "lattice": w.lattice.to_string(),
                "tutte": w.tutte,
                "ehrhart": w.ehrhart,
                "lattice_points": w.lattice_points,
                "interior_points": w.interior_points,
                "citation": w.citation(),
            })
        })
        .collect();
    Ok(match output {
        Output::Json => render_json(&json!({
            "weight_table": weight,
            "characteristic_table": characteristic,
            "worked_c2": worked,
            "worked_c2_printed_ehrhart": {
                "printed": WORKED_C2_PRINTED_EHRHART,
                "citation": WORKED_C2[0].citation(),
            },
        })),
        Output::Text => {
            let mut lines = Vec::new();
            for r in &WEIGHT_TABLE {
                lines.push(format!("{}: {}", r.citation(), r.printed));
            }
            for r in &CHARACTERISTIC_TABLE {
                lines.push(format!("{}: {} | {}", r.citation(), r.characteristic, r.ehrhart));
            }
            for w in &WORKED_C2 {
                lines.push(format!("{}: {} | {}", w.citation(), w.tutte, w.ehrhart));
            }
            lines.push(format!("{} (as printed): {}", WORKED_C2[0].citation(), WORKED_C2_PRINTED_EHRHART));
            lines.join("\n")
        }
    })
}
