//! Seeded random elements for property suites.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{AlgebraElement, AlgebraError, Presentation};
use crate::ore::SProduct;
use crate::scalar::Scalar;

/// `m + n·i` with small integer parts, halved one time in four.
pub fn scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let den = if rng.random_ratio(1, 4) { 2 } else { 1 };
    Scalar::from_parts(rng.random_range(-2..=2), den, rng.random_range(-1..=1), 1)
}

/// A nonzero combination of one to `max_terms` normal words of degree at
/// most `max_degree`.
pub fn element<R: Rng + ?Sized>(
    p: &Arc<Presentation>,
    rng: &mut R,
    max_degree: usize,
    max_terms: usize,
) -> Result<AlgebraElement, AlgebraError> {
    let words = p.normal_words(max_degree);
    loop {
        let n = rng.random_range(1..=max_terms.max(1));
        let raw: Vec<_> = (0..n).map(|_| (words[rng.random_range(0..words.len())].clone(), scalar(rng))).collect();
        let e = AlgebraElement::normalize(p, raw)?;
        if !e.is_zero() {
            return Ok(e);
        }
    }
}

/// A product of up to `max_factors` factors `1 + p†p` with `p` of degree at
/// most `max_degree`.
pub fn sproduct<R: Rng + ?Sized>(
    p: &Arc<Presentation>,
    rng: &mut R,
    max_factors: usize,
    max_degree: usize,
) -> Result<SProduct, AlgebraError> {
    let k = rng.random_range(0..=max_factors);
    let ps = (0..k).map(|_| element(p, rng, max_degree, 2)).collect::<Result<Vec<_>, _>>()?;
    SProduct::new(p, ps)
}
