//! Positivity certificates behind cofinality: every factor `1 + b†b`
//! satisfies `(1 + b†b)² − 1 = 2·b†b + (b†b)†(b†b)`, and fractions are
//! dominated through chains of such certificates.

use ores_core::ore::{OreError, SProduct};
use ores_core::positivity::{cofinal_dominator, cofinal_dominator_left, factor_certificate, verify_certificate};
use ores_core::{sample, AlgebraElement};
use rayon::prelude::*;
use serde_json::json;

use super::{factors, presentations, rate, rng, ScenarioError};
use ores_core::algebra::presets::PRESET_NAMES;
use crate::config::ScenarioConfig;
use crate::report::{Item, Report, Status};

pub(super) fn run(cfg: &ScenarioConfig) -> Result<Report, ScenarioError> {
    let mut report = Report::new("cofinality", cfg.seed);
    let mut rng = rng(cfg);
    let n = cfg.samples.unwrap_or(50);
    for (name, p) in presentations(cfg, &PRESET_NAMES)? {
        let loc = cfg.localization(&p)?;
        let mut samples = Vec::with_capacity(n);
        for _ in 0..n {
            let b = sample::element(&p, &mut rng, 2, 2)?;
            let a = sample::element(&p, &mut rng, 1, 2)?;
            let pair = vec![sample::element(&p, &mut rng, 1, 2)?, sample::element(&p, &mut rng, 1, 2)?];
            let single = sample::element(&p, &mut rng, 1, 2)?;
            samples.push((b, a, SProduct::new(&p, pair)?, SProduct::single(single)?));
        }
        let items: Vec<Vec<Item>> = samples
            .par_iter()
            .enumerate()
            .map(|(i, (b, a, s2, s1))| {
                let id = |check: &str| format!("{name}/{i:03}/{check}");
                vec![factor_item(id("factor"), b), chain_item(id("chain"), a, s2), dominator_item(id("dominator"), &loc, a, s1)]
            })
            .collect();
        let found = items.iter().filter(|v| v[2].status != Status::Skipped).count();
        report.notes.insert(format!("found_rate/{name}/dominator"), rate(found, n));
        report.items.extend(items.into_iter().flatten());
    }
    Ok(report)
}

fn factor_item(id: String, b: &AlgebraElement) -> Item {
    let check = "(1+b'b)^2 - 1 = 2 b'b + (b'b)'(b'b)";
    let mut detail = json!({ "b": b.to_string() });
    let outcome = (|| {
        let c = factor_certificate(b)?;
        let s = b.one_plus_dagger_square()?;
        let excess = s.mul(&s)?.sub(&AlgebraElement::one(b.presentation()))?;
        Ok::<_, ores_core::AlgebraError>(excess == c.excess && verify_certificate(&excess, &c.certificate)?)
    })();
    match outcome {
        Ok(ok) => Item::check(id, check, ok, detail),
        Err(e) => {
            detail["error"] = json!(e.to_string());
            Item::new(id, check, Status::Fail, detail)
        }
    }
}

fn chain_item(id: String, a: &AlgebraElement, s: &SProduct) -> Item {
    let check = "chained certificates for s^-1 a";
    let mut detail = json!({ "a": a.to_string(), "s": factors(s) });
    match cofinal_dominator_left(a, s).and_then(|d| Ok(d.chain.len() == s.len() && d.verify()?)) {
        Ok(ok) => Item::check(id, check, ok, detail),
        Err(e) => {
            detail["error"] = json!(e.to_string());
            Item::new(id, check, Status::Fail, detail)
        }
    }
}

fn dominator_item(id: String, loc: &ores_core::ore::Localization, a: &AlgebraElement, s: &SProduct) -> Item {
    let check = "a s^-1 = t^-1 b dominated by b'b";
    let mut detail = json!({ "a": a.to_string(), "s": factors(s) });
    let f = match loc.fraction(a.clone(), s.clone()) {
        Ok(f) => f,
        Err(e) => {
            detail["error"] = json!(e.to_string());
            return Item::new(id, check, Status::Fail, detail);
        }
    };
    match cofinal_dominator(loc, &f) {
        Ok(d) => {
            detail["b"] = json!(d.numerator.to_string());
            detail["t"] = json!(factors(&d.denominator));
            let witness = d.denominator.value().mul(a).ok() == d.numerator.mul(s.value()).ok();
            Item::check(id, check, witness && d.verify().unwrap_or(false), detail)
        }
        Err(OreError::OreWitnessNotFound) => Item::new(id, check, Status::Skipped, detail),
        Err(e) => {
            detail["error"] = json!(e.to_string());
            Item::new(id, check, Status::Fail, detail)
        }
    }
}
