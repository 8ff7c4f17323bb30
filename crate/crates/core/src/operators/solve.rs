use num_complex::Complex64;

use super::banded::{BandedOperator, CompiledOperator};
use super::OperatorError;

/// Default largest truncation tried before giving up.
pub const DEFAULT_TRUNCATION_CAP: usize = 16_384;

/// `x ≈ T⁻¹y` together with the residual of the untruncated operator.
#[derive(Clone, Debug, PartialEq)]
pub struct InversionResult {
    pub x: Vec<Complex64>,
    pub residual: f64,
    pub truncation_size: usize,
    /// `(N, residual)` for every truncation tried.
    pub history: Vec<(usize, f64)>,
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖T·x − y‖₂`, with every row of `T·x` counted, including those past
/// the truncation.
pub(crate) fn residual(t: &CompiledOperator, x: &[Complex64], y: &[Complex64]) -> f64 {
    let mut r = t.apply(x);
    if r.len() < y.len() {
        r.resize(y.len(), Complex64::new(0.0, 0.0));
    }
    for (ri, yi) in r.iter_mut().zip(y) {
        *ri -= yi;
    }
    norm(&r)
}

/// Solves `T_N x = y` for the leading `N × N` block of a hermitian positive
/// definite banded `T`, by banded Cholesky.
pub(crate) fn solve_truncated(t: &CompiledOperator, y: &[Complex64], n: usize) -> Result<Vec<Complex64>, OperatorError> {
    let w = t.bandwidth();
    // l[i][w + j − i] = L[i][j] for i − w ≤ j ≤ i
    let mut l = vec![vec![Complex64::new(0.0, 0.0); w + 1]; n];
    for i in 0..n {
        for j in i.saturating_sub(w)..=i {
            let mut sum = t.entry(j as i64 - i as i64, i as i64);
            for k in i.saturating_sub(w).max(j.saturating_sub(w))..j {
                sum -= l[i][w + k - i] * l[j][w + k - j].conj();
            }
            if i == j {
                if sum.re <= 0.0 || !sum.re.is_finite() {
                    return Err(OperatorError::NotPositiveDefinite { index: i });
                }
                l[i][w] = Complex64::new(sum.re.sqrt(), 0.0);
            } else {
                l[i][w + j - i] = sum / l[j][w];
            }
        }
    }
    let mut z = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut v = y.get(i).copied().unwrap_or_default();
        for k in i.saturating_sub(w)..i {
            v -= l[i][w + k - i] * z[k];
        }
        z[i] = v / l[i][w];
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut v = z[i];
        for k in i + 1..(i + w + 1).min(n) {
            v -= l[k][w + i - k].conj() * x[k];
        }
        x[i] = v / l[i][w];
    }
    Ok(x)
}

/// Inverts a positive operator `T ≥ 1` on `y` by solving truncations of
/// size `max(2·len y, 16)`, doubling until the residual meets `tol`. Since
/// `‖T⁻¹‖ ≤ 1`, the error of `x` is bounded by the residual.
pub fn invert_positive(t: &BandedOperator, y: &[Complex64], tol: f64, cap: usize) -> Result<InversionResult, OperatorError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(OperatorError::InvalidTolerance(tol));
    }
    let compiled = t.compile();
    let mut n = (2 * y.len()).max(16);
    let mut history = Vec::new();
    loop {
        let x = solve_truncated(&compiled, y, n)?;
        let r = residual(&compiled, &x, y);
        history.push((n, r));
        if r <= tol {
            return Ok(InversionResult { x, residual: r, truncation_size: n, history });
        }
        if 2 * n > cap {
            return Err(OperatorError::TruncationLimit { size: n, residual: r });
        }
        n *= 2;
    }
}

/// `(1 + A*A)⁻¹y`.
pub fn invert_one_plus_astar_a(a: &BandedOperator, y: &[Complex64], tol: f64, cap: usize) -> Result<InversionResult, OperatorError> {
    invert_positive(&a.one_plus_adjoint_square(), y, tol, cap)
}
