//! The embedding `a ↦ [a, 1]` is a unital *-morphism into the
//! localization, and every witness the solver returns satisfies its
//! defining identity.

use ores_core::algebra::presets::PRESET_NAMES;
use ores_core::ore::{OreSearch, SProduct};
use ores_core::{sample, AlgebraElement};
use rayon::prelude::*;
use serde_json::json;

use super::{eq_item, factors, presentations, rate, rng, ScenarioError};
use crate::config::ScenarioConfig;
use crate::report::{Item, Report, Status};

pub(super) fn run(cfg: &ScenarioConfig) -> Result<Report, ScenarioError> {
    let mut report = Report::new("ore-axioms", cfg.seed);
    let mut rng = rng(cfg);
    let n = cfg.samples.unwrap_or(100);
    for (name, p) in presentations(cfg, &PRESET_NAMES)? {
        let loc = cfg.localization(&p)?;
        let mut samples = Vec::with_capacity(n);
        for _ in 0..n {
            let a = sample::element(&p, &mut rng, 2, 2)?;
            let b = sample::element(&p, &mut rng, 2, 2)?;
            let s = sample::sproduct(&p, &mut rng, 1, 1)?;
            samples.push((a, b, s));
        }
        let items: Vec<Vec<Item>> = samples
            .par_iter()
            .enumerate()
            .map(|(i, (a, b, s))| {
                let id = |check: &str| format!("{name}/{i:03}/{check}");
                let detail = json!({ "a": a.to_string(), "b": b.to_string(), "s": factors(s) });
                let mut out = Vec::new();
                out.push(eq_item(
                    id("embed-mul"),
                    "embed(ab) = embed(a)embed(b)",
                    &loc,
                    a.mul(b).map(|ab| loc.embed(&ab)).map_err(Into::into),
                    loc.mul(&loc.embed(a), &loc.embed(b)),
                    detail.clone(),
                ));
                out.push(eq_item(
                    id("embed-dagger"),
                    "embed(a') = embed(a)'",
                    &loc,
                    a.dagger().map(|ad| loc.embed(&ad)).map_err(Into::into),
                    loc.dagger(&loc.embed(a)),
                    detail.clone(),
                ));
                let inverse = loc
                    .fraction(AlgebraElement::one(&p), s.clone())
                    .and_then(|inv| loc.mul(&loc.embed(s.value()), &inv));
                out.push(eq_item(id("embed-inverse"), "embed(s)[1, s] = [1, 1]", &loc, inverse, Ok(loc.one()), detail.clone()));
                out.push(witness_item(id("witness-right"), &loc, a, s, false));
                out.push(witness_item(id("witness-left"), &loc, a, s, true));
                out
            })
            .collect();
        let items: Vec<Item> = items.into_iter().flatten().collect();
        for side in ["right", "left"] {
            let check = format!("witness-{side}");
            let found = items.iter().filter(|i| i.id.ends_with(&check) && i.status != Status::Skipped).count();
            report.notes.insert(format!("found_rate/{name}/{side}"), rate(found, n));
        }
        let decided = items.iter().filter(|i| i.id.contains("/embed-") && i.status != Status::Skipped).count();
        report.notes.insert(format!("decided_rate/{name}/embed"), rate(decided, 3 * n));
        report.items.extend(items);
    }
    Ok(report)
}

/// Right: `a·t = s·b`. Left: `t·a = b·s`.
fn witness_item(id: String, loc: &ores_core::ore::Localization, a: &AlgebraElement, s: &SProduct, left: bool) -> Item {
    let check = if left { "t*a = b*s" } else { "a*t = s*b" };
    let mut detail = json!({ "a": a.to_string(), "s": factors(s) });
    let search = if left { loc.solve_left(a, s) } else { loc.solve_right(a, s) };
    let w = match search {
        Ok(OreSearch::Found(w)) => w,
        Ok(OreSearch::NotFoundWithinBudget) => return Item::new(id, check, Status::Skipped, detail),
        Err(e) => {
            detail["error"] = json!(e.to_string());
            return Item::new(id, check, Status::Fail, detail);
        }
    };
    detail["b"] = json!(w.b.to_string());
    detail["t"] = json!(factors(&w.t));
    let holds = if left {
        w.t.value().mul(a).ok().zip(w.b.mul(s.value()).ok()).is_some_and(|(x, y)| x == y)
    } else {
        a.mul(w.t.value()).ok().zip(s.value().mul(&w.b).ok()).is_some_and(|(x, y)| x == y)
    };
    Item::check(id, check, holds, detail)
}
