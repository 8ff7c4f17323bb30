//! Finite-truncation checks of the integrability statements for a
//! concrete assignment. Each returns a serialisable report.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use super::banded::BandedOperator;
use super::fock::FockAssignment;
use super::solve::{invert_positive, residual};
use super::surd::SurdSum;
use super::OperatorError;
use crate::algebra::AlgebraElement;
use crate::ore::{Fraction, OreWitness, SProduct};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub probe: String,
    pub inputs: serde_json::Value,
    pub residuals: Vec<f64>,
    pub truncation_size: usize,
    pub pass: bool,
}

/// `x` with `π(s)x ≈ y`, where `residual = ‖π(s)x − y‖`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainInversion {
    pub x: Vec<Complex64>,
    pub residual: f64,
    pub truncation_size: usize,
}

fn factor_names(s: &SProduct) -> Vec<String> {
    s.factors().iter().map(|f| f.p().to_string()).collect()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn sub(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len().max(b.len());
    let zero = Complex64::new(0.0, 0.0);
    (0..n).map(|i| a.get(i).copied().unwrap_or(zero) - b.get(i).copied().unwrap_or(zero)).collect()
}

/// Solves `π(s)x = y` one factor at a time, first factor first, since
/// `π(s) = Π(1 + Aᵢ*Aᵢ)`. The per-step tolerance is tightened until the
/// composite residual meets `tol` or stops improving.
pub fn invert_sproduct(
    assignment: &FockAssignment,
    s: &SProduct,
    y: &[Complex64],
    tol: f64,
    cap: usize,
) -> Result<ChainInversion, OperatorError> {
    let steps: Vec<BandedOperator> =
        s.factors().iter().map(|f| assignment.represent(f.p()).one_plus_adjoint_square()).collect();
    let whole = assignment.represent(s.value()).compile();
    let mut step_tol = tol / (steps.len().max(1) as f64);
    let mut best: Option<ChainInversion> = None;
    for _ in 0..4 {
        let mut x = y.to_vec();
        let mut size = 0;
        for t in &steps {
            let r = invert_positive(t, &x, step_tol, cap)?;
            size = size.max(r.truncation_size);
            x = r.x;
        }
        let res = residual(&whole, &x, y);
        let done = res <= tol;
        if best.as_ref().is_none_or(|b| res < b.residual) {
            best = Some(ChainInversion { x, residual: res, truncation_size: size });
        }
        if done || steps.is_empty() {
            break;
        }
        step_tol = (step_tol * 1e-3).max(1e-15);
    }
    Ok(best.expect("at least one attempt"))
}

/// For each target `y`, finds `x` with `‖π(s)x − y‖ ≤ tol`.
pub fn pi_s_surjectivity_probe(
    assignment: &FockAssignment,
    s: &SProduct,
    targets: &[Vec<Complex64>],
    tol: f64,
    cap: usize,
) -> Result<ProbeReport, OperatorError> {
    let mut residuals = Vec::with_capacity(targets.len());
    let mut size = 0;
    for y in targets {
        let r = invert_sproduct(assignment, s, y, tol, cap)?;
        size = size.max(r.truncation_size);
        residuals.push(r.residual);
    }
    Ok(ProbeReport {
        probe: "pi_s_surjectivity".into(),
        inputs: json!({ "s": factor_names(s), "targets": targets.len(), "tol": tol }),
        pass: residuals.iter().all(|r| *r <= tol),
        residuals,
        truncation_size: size,
    })
}

/// Compares `π(s)ξ` with `Π(1 + Aᵢ*Aᵢ)ξ` exactly on each sample.
pub fn lemma_pis_equals_s_check(assignment: &FockAssignment, s: &SProduct, samples: &[Vec<Scalar>]) -> ProbeReport {
    let factors: Vec<(BandedOperator, BandedOperator)> = s
        .factors()
        .iter()
        .map(|f| {
            let a = assignment.represent(f.p());
            let a_star = a.adjoint();
            (a, a_star)
        })
        .collect();
    lemma_pis_equals_s_check_with(assignment, s, &factors, samples)
}

/// As [`lemma_pis_equals_s_check`], with the pairs `(Aᵢ, Aᵢ*)` supplied,
/// so that a wrong adjoint can be planted.
pub fn lemma_pis_equals_s_check_with(
    assignment: &FockAssignment,
    s: &SProduct,
    factors: &[(BandedOperator, BandedOperator)],
    samples: &[Vec<Scalar>],
) -> ProbeReport {
    let pi_s = assignment.represent(s.value());
    let mut residuals = Vec::with_capacity(samples.len());
    let mut exact = true;
    let mut size = 0;
    for xi in samples {
        let xi: Vec<SurdSum> = xi.iter().cloned().map(SurdSum::from_scalar).collect();
        let direct = pi_s.apply_exact(&xi);
        let mut chained = xi.clone();
        for (a, a_star) in factors.iter().rev() {
            let aa = a_star.apply_exact(&a.apply_exact(&chained));
            let n = chained.len().max(aa.len());
            chained = (0..n)
                .map(|i| &chained.get(i).cloned().unwrap_or_default() + &aa.get(i).cloned().unwrap_or_default())
                .collect();
        }
        while chained.last().is_some_and(SurdSum::is_zero) {
            chained.pop();
        }
        size = size.max(direct.len()).max(chained.len());
        exact &= direct == chained;
        let d: Vec<Complex64> = direct.iter().map(SurdSum::to_complex).collect();
        let c: Vec<Complex64> = chained.iter().map(SurdSum::to_complex).collect();
        residuals.push(norm(&sub(&d, &c)));
    }
    ProbeReport {
        probe: "lemma_pis_equals_S".into(),
        inputs: json!({ "s": factor_names(s), "samples": samples.len() }),
        residuals,
        truncation_size: size,
        pass: exact,
    }
}

/// Approximates `ξ` in the graph norm of `π(a)` by vectors `π(s)u` with
/// `u` finitely supported: for growing `L`, `u` solves `π(s)u ≈ ξ[..L]`.
/// Reports the distance reached at each `L`; passes once it is within
/// `tol`.
pub fn core_density_probe(
    assignment: &FockAssignment,
    a: &AlgebraElement,
    s: &SProduct,
    xi: &[Complex64],
    tol: f64,
    cap: usize,
) -> Result<ProbeReport, OperatorError> {
    let pi_a = assignment.represent(a).compile();
    let pi_s = assignment.represent(s.value()).compile();
    let mut residuals = Vec::new();
    let mut reached = None;
    let mut len = 4usize.min(xi.len());
    loop {
        let u = invert_sproduct(assignment, s, &xi[..len], tol * 1e-3, cap)?;
        let v = pi_s.apply(&u.x);
        let d = sub(xi, &v);
        let dist = (norm(&d).powi(2) + norm(&pi_a.apply(&d)).powi(2)).sqrt();
        residuals.push(dist);
        if dist <= tol {
            reached = Some(len);
            break;
        }
        if len == xi.len() {
            break;
        }
        len = (2 * len).min(xi.len());
    }
    Ok(ProbeReport {
        probe: "core_density".into(),
        inputs: json!({ "a": a.to_string(), "s": factor_names(s), "xi_len": xi.len(), "tol": tol }),
        residuals,
        truncation_size: reached.unwrap_or(len),
        pass: reached.is_some(),
    })
}

/// `π̃(a·s⁻¹)ξ = π(a)·π(s)⁻¹ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Extension {
    pub value: Vec<Complex64>,
    pub residual: f64,
    pub truncation_size: usize,
    /// `π(t)⁻¹π(b)ξ` from a left witness `t·a = b·s`, and its distance to
    /// `value`.
    pub witness_route: Option<(Vec<Complex64>, f64)>,
}

pub fn extend_representation(
    assignment: &FockAssignment,
    f: &Fraction,
    xi: &[Complex64],
    tol: f64,
    cap: usize,
    left_witness: Option<&OreWitness>,
) -> Result<Extension, OperatorError> {
    let inner = tol * 1e-3;
    let u = invert_sproduct(assignment, f.den(), xi, inner, cap)?;
    let value = assignment.represent(f.num()).apply(&u.x);
    let mut size = u.truncation_size;
    let witness_route = match left_witness {
        None => None,
        Some(w) => {
            let bxi = assignment.represent(&w.b).apply(xi);
            let r = invert_sproduct(assignment, &w.t, &bxi, inner, cap)?;
            size = size.max(r.truncation_size);
            let gap = norm(&sub(&value, &r.x));
            Some((r.x, gap))
        }
    };
    Ok(Extension { value, residual: u.residual, truncation_size: size, witness_route })
}
