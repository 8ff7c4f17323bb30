//! The extended involution on fractions is antilinear, antimultiplicative
//! and involutive on sampled pairs.

use ores_core::ore::Fraction;
use ores_core::sample;
use rayon::prelude::*;
use serde_json::json;

use super::{eq_item, frac, presentations, rate, rng, ScenarioError};
use crate::config::ScenarioConfig;
use crate::report::{Item, Report, Status};

pub(super) fn run(cfg: &ScenarioConfig) -> Result<Report, ScenarioError> {
    let mut report = Report::new("involution-proposition", cfg.seed);
    let mut rng = rng(cfg);
    for (name, p) in presentations(cfg, &["cx", "heisenberg"])? {
        let loc = cfg.localization(&p)?;
        // commutative presentations are cheap enough for larger samples
        let (n, shape) = if p.is_commutative() { (200, (2, 3, 2, 1)) } else { (40, (1, 2, 1, 1)) };
        let n = cfg.samples.unwrap_or(n);
        let (deg, terms, s_factors, s_deg) = shape;
        let mut samples = Vec::with_capacity(n);
        for _ in 0..n {
            let mut fraction = || -> Result<Fraction, ScenarioError> {
                let a = sample::element(&p, &mut rng, deg, terms)?;
                let s = sample::sproduct(&p, &mut rng, s_factors, s_deg)?;
                Ok(loc.fraction(a, s)?)
            };
            let (f, g) = (fraction()?, fraction()?);
            samples.push((f, g, sample::scalar(&mut rng)));
        }
        let items: Vec<Vec<Item>> = samples
            .par_iter()
            .enumerate()
            .map(|(i, (f, g, lambda))| {
                let id = |check: &str| format!("{name}/{i:03}/{check}");
                let detail = json!({ "f": frac(f), "g": frac(g), "lambda": lambda.to_string() });
                let antilinear_lhs = loc.add(lambda, f, g).and_then(|x| loc.dagger(&x));
                let antilinear_rhs = loc.dagger(f).and_then(|fd| loc.dagger(g).and_then(|gd| loc.add(&lambda.conj(), &fd, &gd)));
                let anti_lhs = loc.mul(f, g).and_then(|x| loc.dagger(&x));
                let anti_rhs = loc.dagger(g).and_then(|gd| loc.dagger(f).and_then(|fd| loc.mul(&gd, &fd)));
                let twice = loc.dagger(f).and_then(|fd| loc.dagger(&fd));
                vec![
                    eq_item(id("antilinear"), "(lf + g)' = conj(l)f' + g'", &loc, antilinear_lhs, antilinear_rhs, detail.clone()),
                    eq_item(id("antimultiplicative"), "(fg)' = g'f'", &loc, anti_lhs, anti_rhs, detail.clone()),
                    eq_item(id("involutive"), "f'' = f", &loc, twice, Ok(f.clone()), detail),
                ]
            })
            .collect();
        let complete = items.iter().filter(|v| v.iter().all(|i| i.status != Status::Skipped)).count();
        report.notes.insert(format!("found_rate/{name}"), rate(complete, n));
        report.items.extend(items.into_iter().flatten());
    }
    Ok(report)
}
