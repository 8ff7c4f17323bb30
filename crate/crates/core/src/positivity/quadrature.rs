use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::StateError;
use crate::algebra::AlgebraElement;
use crate::ore::Fraction;

/// Nodes and weights of the `n`-point Gauss–Hermite rule for the standard
/// normal distribution (weights sum to 1), from the eigen-decomposition of
/// its Jacobi matrix.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let j = DMatrix::from_fn(n, n, |r, c| if r.abs_diff(c) == 1 { (r.max(c) as f64).sqrt() } else { 0.0 });
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> =
        (0..n).map(|k| (eig.eigenvalues[k], eig.eigenvectors[(0, k)].powi(2))).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

fn eval_univariate(e: &AlgebraElement, x: f64) -> Complex64 {
    e.terms().iter().map(|(w, c)| c.to_complex() * x.powi(w.len() as i32)).sum()
}

/// `E[a(X)/s(X)]` for `X` standard normal, on ℂ[x] only. A demonstration of
/// one positive extension of the Gaussian state to fractions.
pub fn gaussian_extension_expectation(f: &Fraction, nodes: usize) -> Result<Complex64, StateError> {
    let p = f.num().presentation();
    if p.generator_count() != 1 || !p.is_hermitian_generator(0) || !p.rules().is_empty() {
        return Err(StateError::NotUnivariate);
    }
    let (xs, ws) = gauss_hermite(nodes);
    Ok(xs.iter().zip(&ws).map(|(&x, &w)| eval_univariate(f.num(), x) / eval_univariate(f.den().value(), x) * w).sum())
}
