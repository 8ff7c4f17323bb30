//! GNS of the Gaussian moment functional on ℂ[x] recovers the Hermite
//! Jacobi matrix; generator matrices of Gaussian and Fock-state GNS are
//! adjoint-compatible on the window.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use ores_core::algebra::presets;
use ores_core::operators::FockAssignment;
use ores_core::ore::SProduct;
use ores_core::positivity::{gaussian_extension_expectation, gns, MomentFunctional};
use ores_core::{AlgebraElement, Scalar, Word};
use serde_json::json;

use super::ScenarioError;
use crate::config::ScenarioConfig;
use crate::report::{Item, Report};

/// `E[1/(1 + X²)]` for `X` standard normal, `√(π/2)·e^{1/2}·erfc(1/√2)`.
const GAUSSIAN_CAUCHY: f64 = 0.6556795424187986;

fn double_factorial(k: usize) -> f64 {
    (1..k).step_by(2).map(BigInt::from).product::<BigInt>().to_f64().expect("finite")
}

pub(super) fn run(cfg: &ScenarioConfig) -> Result<Report, ScenarioError> {
    let tol = cfg.tolerances.solve;
    let mut report = Report::new("gaussian-gns", cfg.seed);
    let p = presets::polynomial_ring();
    for d in [4, 6] {
        let rep = gns(&MomentFunctional::gaussian(&p, d))?;
        let m = rep.compressed(0);
        let n = m.nrows();
        let mut worst_diag: f64 = 0.0;
        let mut worst_off: f64 = 0.0;
        let mut off = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let z = m[(r, c)];
                if r == c {
                    worst_diag = worst_diag.max(z.norm());
                } else if r.abs_diff(c) == 1 {
                    let want = (r.max(c) as f64).sqrt();
                    worst_off = worst_off.max((z - want).norm());
                    if r == c + 1 {
                        off.push(z.re);
                    }
                } else {
                    worst_off = worst_off.max(z.norm());
                }
            }
        }
        report.items.push(Item::check(
            format!("d{d}/jacobi"),
            "x acts tridiagonally with zero diagonal and off-diagonals sqrt(k)",
            worst_diag <= tol && worst_off <= tol,
            json!({ "rank": rep.rank(), "window": rep.window(), "off_diagonals": off, "max_diagonal": worst_diag, "max_off_error": worst_off }),
        ));
        if d == 6 {
            for k in 0..=10 {
                let got = rep.moment(&Word(vec![0; k]))?;
                let want = if k % 2 == 1 { 0.0 } else { double_factorial(k) };
                let err = (got - want).norm();
                report.items.push(Item::check(
                    format!("d6/moment/{k:02}"),
                    "<Omega, x^k Omega> = m_k",
                    err <= tol,
                    json!({ "k": k, "value": got.re, "expected": want, "error": err }),
                ));
            }
            let defect = rep.adjoint_defect(0);
            report.items.push(Item::check(
                "d6/adjoint/gaussian/x",
                "|M(x') - M(x)*| on the window",
                defect <= tol,
                json!({ "defect": defect }),
            ));
        }
    }

    let fock = FockAssignment::heisenberg();
    let omega = [Scalar::rational(3, 5), Scalar::rational(4, 5)];
    let rep = gns(&fock.vector_state(&omega, 6)?)?;
    for g in 0..2u16 {
        let name = fock.presentation().generator_name(g).to_string();
        let defect = rep.adjoint_defect(g);
        report.items.push(Item::check(
            format!("d6/adjoint/fock/{name}"),
            "|M(g') - M(g)*| on the window",
            defect <= tol,
            json!({ "state": "3/5 e0 + 4/5 e1", "rank": rep.rank(), "window": rep.window(), "defect": defect }),
        ));
    }

    let x = AlgebraElement::generator(&p, "x")?;
    let loc = cfg.localization(&p)?;
    let f = loc.fraction(AlgebraElement::one(&p), SProduct::single(x)?)?;
    let value = gaussian_extension_expectation(&f, 160)?;
    let err = (value - GAUSSIAN_CAUCHY).norm();
    report.items.push(Item::check(
        "extension/cauchy",
        "E[1/(1+X^2)] by 160-node quadrature",
        err <= cfg.tolerances.probe,
        json!({ "value": value.re, "expected": GAUSSIAN_CAUCHY, "error": err }),
    ));
    Ok(report)
}
