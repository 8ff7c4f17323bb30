#![allow(dead_code)]

use std::collections::BTreeMap;

use ores_core::algebra::Presentation;
use ores_core::ore::Fraction;
use ores_core::{AlgebraElement, Scalar, Word};

/// Naive oracle: keep an uncombined list of terms and rewrite the
/// right-most redex of any term until nothing changes, then collect.
pub fn naive_normalize(p: &Presentation, raw: &[(Vec<u16>, Scalar)]) -> BTreeMap<Word, Scalar> {
    let mut terms: Vec<(Vec<u16>, Scalar)> = raw.to_vec();
    loop {
        let mut changed = false;
        let mut next = Vec::new();
        for (w, c) in terms {
            let mut hit = None;
            for i in (0..w.len()).rev() {
                if let Some(rule) = p.rules().iter().find(|r| w[i..].starts_with(r.lhs.letters())) {
                    hit = Some((i, rule));
                    break;
                }
            }
            match hit {
                None => next.push((w, c)),
                Some((i, rule)) => {
                    changed = true;
                    for (rc, rw) in &rule.rhs {
                        let mut nw = w[..i].to_vec();
                        nw.extend_from_slice(rw.letters());
                        nw.extend_from_slice(&w[i + rule.lhs.len()..]);
                        next.push((nw, &c * rc));
                    }
                }
            }
        }
        terms = next;
        if !changed {
            break;
        }
    }
    let mut out: BTreeMap<Word, Scalar> = BTreeMap::new();
    for (w, c) in terms {
        *out.entry(Word(w)).or_insert_with(Scalar::zero) += &c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `u·v` by expanding every pair of terms and rewriting naively.
pub fn naive_product(u: &AlgebraElement, v: &AlgebraElement) -> BTreeMap<Word, Scalar> {
    let mut raw = Vec::new();
    for (x, cx) in u.terms() {
        for (y, cy) in v.terms() {
            let mut w = x.0.clone();
            w.extend_from_slice(&y.0);
            raw.push((w, cx * cy));
        }
    }
    naive_normalize(u.presentation(), &raw)
}

/// Coefficients of a ℂ[x] element, lowest degree first.
pub fn coeffs(e: &AlgebraElement) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); e.degree() + 1];
    for (w, c) in e.terms() {
        out[w.len()] = c.clone();
    }
    out
}

pub fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(out)
}

pub fn poly_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    trim(out)
}

pub fn poly_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    trim(a.iter().map(|x| x * c).collect())
}

pub fn poly_conj(a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(Scalar::conj).collect()
}

fn trim(mut v: Vec<Scalar>) -> Vec<Scalar> {
    while v.len() > 1 && v.last().is_some_and(Scalar::is_zero) {
        v.pop();
    }
    v
}

/// A rational function `n/d` over ℂ, as coefficient lists.
#[derive(Clone, Debug)]
pub struct RatFn {
    pub n: Vec<Scalar>,
    pub d: Vec<Scalar>,
}

impl RatFn {
    pub fn of(f: &Fraction) -> Self {
        RatFn { n: trim(coeffs(f.num())), d: trim(coeffs(f.den().value())) }
    }

    pub fn same(&self, other: &RatFn) -> bool {
        poly_mul(&self.n, &other.d) == poly_mul(&other.n, &self.d)
    }

    pub fn add(&self, lambda: &Scalar, other: &RatFn) -> RatFn {
        let left = poly_scale(&poly_mul(&self.n, &other.d), lambda);
        RatFn { n: poly_add(&left, &poly_mul(&other.n, &self.d)), d: poly_mul(&self.d, &other.d) }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn { n: poly_mul(&self.n, &other.n), d: poly_mul(&self.d, &other.d) }
    }

    /// Complex conjugation of coefficients; `x` is real.
    pub fn conj(&self) -> RatFn {
        RatFn { n: poly_conj(&self.n), d: poly_conj(&self.d) }
    }
}
