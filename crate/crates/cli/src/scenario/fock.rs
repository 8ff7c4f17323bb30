//! Integrability probes for the Fock representation of the Heisenberg
//! algebra: `π(s)` is onto, agrees with the product of its factors, and
//! `π(s)𝒱` is a core.

use num_complex::Complex64;
use ores_core::operators::{
    core_density_probe, lemma_pis_equals_s_check, lemma_pis_equals_s_check_with, pi_s_surjectivity_probe,
    BandedOperator, FockAssignment, ProbeReport,
};
use ores_core::ore::SProduct;
use ores_core::{AlgebraElement, Scalar};
use serde_json::json;

use super::{factors, ScenarioError};
use crate::config::ScenarioConfig;
use crate::report::{Item, Report};

fn basis(n: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); n + 1];
    v[n] = Complex64::new(1.0, 0.0);
    v
}

fn exact_basis(n: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n + 1];
    v[n] = Scalar::one();
    v
}

fn probe_item(id: &str, check: &str, r: &ProbeReport) -> Item {
    Item::check(id, check, r.pass, serde_json::to_value(r).expect("reports serialise"))
}

/// `1 + a'a`, `(1 + a'a)²` and `(1 + a'a)(1 + (a + a')'(a + a'))`.
pub fn denominators(fock: &FockAssignment) -> Result<Vec<(&'static str, SProduct)>, ScenarioError> {
    let p = fock.presentation();
    let a = AlgebraElement::generator(p, "a")?;
    let q = a.add(&a.dagger()?)?;
    Ok(vec![
        ("number", SProduct::single(a.clone())?),
        ("number-squared", SProduct::new(p, vec![a.clone(), a.clone()])?),
        ("number-position", SProduct::new(p, vec![a, q])?),
    ])
}

pub(super) fn run(cfg: &ScenarioConfig) -> Result<Report, ScenarioError> {
    let tol = cfg.tolerances.probe;
    let cap = cfg.truncation_cap;
    let mut report = Report::new("fock-integrability", cfg.seed);
    let fock = FockAssignment::heisenberg();

    let broken = fock.check_relations(64);
    report.items.push(Item::check(
        "relations",
        "a a' - a' a = 1 on e0..e63",
        broken.is_none(),
        json!({ "first_failure": broken.map(|(rule, n)| json!({ "rule": rule, "n": n })) }),
    ));

    let targets: Vec<_> = (0..=5).map(basis).collect();
    let samples: Vec<_> = (0..=8).map(exact_basis).collect();
    for (name, s) in denominators(&fock)? {
        let r = pi_s_surjectivity_probe(&fock, &s, &targets, tol, cap)?;
        let mut item = probe_item(&format!("surjectivity/{name}"), "|pi(s)x - y| <= tol for y = e0..e5", &r);
        item.detail["s"] = json!(factors(&s));
        report.items.push(item);
        let r = lemma_pis_equals_s_check(&fock, &s, &samples);
        let mut item = probe_item(&format!("lemma/{name}"), "pi(s) = prod(1 + Ai*Ai) exactly on e0..e8", &r);
        item.detail["s"] = json!(factors(&s));
        report.items.push(item);
    }

    // a deliberately wrong adjoint must be caught
    let s = SProduct::single(AlgebraElement::generator(fock.presentation(), "a")?)?;
    let a = BandedOperator::annihilation();
    let wrong = a.strong_sum(&BandedOperator::identity());
    let r = lemma_pis_equals_s_check_with(&fock, &s, &[(a, wrong)], &samples);
    report.items.push(Item::check(
        "lemma/perturbed",
        "a wrong adjoint breaks the factor identity",
        !r.pass,
        serde_json::to_value(&r).expect("reports serialise"),
    ));

    let geometric: Vec<Complex64> = (0..48).map(|n| Complex64::new(0.5f64.powi(n), 0.0)).collect();
    let p = fock.presentation();
    for (name, a) in [("a", AlgebraElement::generator(p, "a")?), ("zero", AlgebraElement::zero(p))] {
        let r = core_density_probe(&fock, &a, &s, &geometric, 1e-6, cap)?;
        report.items.push(probe_item(&format!("core/{name}"), "graph-norm distance to pi(s)V below 1e-6", &r));
    }
    Ok(report)
}
