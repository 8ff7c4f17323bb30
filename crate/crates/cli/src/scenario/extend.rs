//! The extension `π̃(a·s⁻¹)ξ = π(a)·π(s)⁻¹ξ`, cross-checked against
//! `π(t)⁻¹·π(b)ξ` for a left witness `t·a = b·s`.

use num_complex::Complex64;
use ores_core::operators::{extend_representation, FockAssignment};
use ores_core::ore::{OreSearch, SProduct};
use ores_core::{sample, AlgebraElement};
use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{factors, frac, rate, rng, ScenarioError};
use crate::config::ScenarioConfig;
use crate::report::{Item, Report, Status};

const MAX_ATTEMPTS: usize = 400;

fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    let z = Complex64::new(0.0, 0.0);
    (0..a.len().max(b.len()))
        .map(|i| (a.get(i).copied().unwrap_or(z) - b.get(i).copied().unwrap_or(z)).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn show(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub(super) fn run(cfg: &ScenarioConfig) -> Result<Report, ScenarioError> {
    // computed to a tenth of the probe tolerance, so the two routes may
    // differ by at most the probe tolerance
    let tol = cfg.tolerances.probe / 10.0;
    let agree = cfg.tolerances.probe;
    let cap = cfg.truncation_cap;
    let mut report = Report::new("extend-representation", cfg.seed);
    let fock = FockAssignment::heisenberg();
    let p = fock.presentation().clone();
    let loc = cfg.localization(&p)?;
    let a = AlgebraElement::generator(&p, "a")?;
    let s = SProduct::single(a.clone())?;

    let mut e3 = vec![Complex64::new(0.0, 0.0); 4];
    e3[3] = Complex64::new(1.0, 0.0);
    for (name, num, expected) in [
        ("unit", AlgebraElement::one(&p), 3usize),
        ("a", a.clone(), 2usize),
    ] {
        let f = loc.fraction(num.clone(), s.clone())?;
        let w = loc.solve_left(&num, &s)?.found();
        let ext = extend_representation(&fock, &f, &e3, tol, cap, w.as_ref())?;
        let mut want = vec![Complex64::new(0.0, 0.0); expected + 1];
        want[expected] = Complex64::new(if name == "a" { 3f64.sqrt() / 4.0 } else { 0.25 }, 0.0);
        let err = dist(&ext.value, &want);
        let gap = ext.witness_route.as_ref().map(|(_, g)| *g);
        report.items.push(Item::check(
            format!("e3/{name}"),
            "extension of [num, 1+a'a] at e3",
            err <= cfg.tolerances.solve && gap.is_some_and(|g| g <= agree),
            json!({ "fraction": frac(&f), "error": err, "route_gap": gap, "truncation_size": ext.truncation_size }),
        ));
    }

    let wanted = cfg.samples.unwrap_or(20);
    let mut rng = rng(cfg);
    let mut pairs = Vec::new();
    let mut attempts = 0;
    while pairs.len() < wanted && attempts < MAX_ATTEMPTS {
        attempts += 1;
        let num = sample::element(&p, &mut rng, 2, 2)?;
        let den = sample::sproduct(&p, &mut rng, 2, 1)?;
        if den.value().degree() == 0 {
            continue;
        }
        let len = rng.random_range(1..=6);
        let xi: Vec<Complex64> = (0..len).map(|_| sample::scalar(&mut rng).to_complex()).collect();
        if let OreSearch::Found(w) = loc.solve_left(&num, &den)? {
            pairs.push((loc.fraction(num, den)?, xi, w));
        }
    }
    report.notes.insert("found_rate/left".into(), rate(pairs.len(), attempts));
    report.notes.insert("attempts".into(), json!(attempts));
    let items: Vec<Item> = pairs
        .par_iter()
        .enumerate()
        .map(|(i, (f, xi, w))| {
            let id = format!("pair/{i:02}");
            let check = "pi(a)pi(s)^-1 xi = pi(t)^-1 pi(b) xi";
            let mut detail = json!({ "fraction": frac(f), "xi": show(xi), "b": w.b.to_string(), "t": factors(&w.t) });
            match extend_representation(&fock, f, xi, tol, cap, Some(w)) {
                Ok(ext) => {
                    let (_, gap) = ext.witness_route.expect("witness supplied");
                    detail["route_gap"] = json!(gap);
                    detail["residual"] = json!(ext.residual);
                    detail["truncation_size"] = json!(ext.truncation_size);
                    Item::check(id, check, gap <= agree && ext.residual <= tol, detail)
                }
                Err(e) => {
                    detail["error"] = json!(e.to_string());
                    Item::new(id, check, Status::Fail, detail)
                }
            }
        })
        .collect();
    if pairs.len() < wanted {
        report.items.push(Item::check(
            "pairs",
            "enough fractions with a left witness",
            false,
            json!({ "found": pairs.len(), "wanted": wanted, "attempts": attempts }),
        ));
    }
    report.items.extend(items);
    Ok(report)
}
