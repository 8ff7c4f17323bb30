#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use ores_core::algebra::Presentation;
use ores_core::ore::Fraction;
use ores_core::{AlgebraElement, Scalar, Word};

/// Keeps an uncombined list of terms and rewrites the right-most redex of
/// each term until nothing changes, then collects.
pub fn naive_normalize(p: &Presentation, raw: &[(Vec<u16>, Scalar)]) -> BTreeMap<Word, Scalar> {
    let mut terms: Vec<(Vec<u16>, Scalar)> = raw.to_vec();
    loop {
        let mut changed = false;
        let mut next = Vec::new();
        for (w, c) in terms {
            let hit = (0..w.len())
                .rev()
                .find_map(|i| p.rules().iter().find(|r| w[i..].starts_with(r.lhs.letters())).map(|r| (i, r)));
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

/// Wraps a map that is already in normal form.
pub fn element(p: &Arc<Presentation>, terms: BTreeMap<Word, Scalar>) -> AlgebraElement {
    let e = AlgebraElement::normalize(p, terms.clone()).unwrap();
    assert_eq!(e.terms(), &terms, "oracle output is not in normal form");
    e
}

/// Left-to-right naive product of a list of factors; 1 when empty.
pub fn naive_chain(p: &Arc<Presentation>, factors: &[AlgebraElement]) -> AlgebraElement {
    factors.iter().fold(AlgebraElement::one(p), |acc, f| element(p, naive_product(&acc, f)))
}

/// `1 + p†p`, expanded naively.
pub fn naive_factor(p: &AlgebraElement) -> AlgebraElement {
    let sq = element(p.presentation(), naive_product(&p.dagger().unwrap(), p));
    AlgebraElement::one(p.presentation()).add(&sq).unwrap()
}

fn coeffs(e: &AlgebraElement) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); e.degree() + 1];
    for (w, c) in e.terms() {
        out[w.len()] = c.clone();
    }
    out
}

fn trim(mut v: Vec<Scalar>) -> Vec<Scalar> {
    while v.len() > 1 && v.last().is_some_and(Scalar::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(out)
}

fn poly_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    trim(out)
}

/// A rational function `n/d` in one real variable, as coefficient lists.
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
        let left: Vec<Scalar> = poly_mul(&self.n, &other.d).iter().map(|x| x * lambda).collect();
        RatFn { n: poly_add(&left, &poly_mul(&other.n, &self.d)), d: poly_mul(&self.d, &other.d) }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn { n: poly_mul(&self.n, &other.n), d: poly_mul(&self.d, &other.d) }
    }

    /// `x` is real, so the adjoint conjugates coefficients.
    pub fn conj(&self) -> RatFn {
        RatFn { n: self.n.iter().map(Scalar::conj).collect(), d: self.d.iter().map(Scalar::conj).collect() }
    }
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn basis(n: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0); n + 1];
    v[n] = c(1.0);
    v
}

pub fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    let z = c(0.0);
    (0..a.len().max(b.len()))
        .map(|i| (a.get(i).copied().unwrap_or(z) - b.get(i).copied().unwrap_or(z)).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `size × size` weighted shift with `A e_{n+1} = w(n)·e_n`.
pub fn dense_shift(size: usize, w: impl Fn(usize) -> f64) -> DMatrix<Complex64> {
    DMatrix::from_fn(size, size, |i, j| if j == i + 1 { c(w(i)) } else { c(0.0) })
}

/// The Fock representation of a Heisenberg element (`a` is generator 0),
/// computed on a padded space and cut to `size`.
pub fn dense_fock(u: &AlgebraElement, size: usize) -> DMatrix<Complex64> {
    let pad = size + 2 * u.degree() + 2;
    let a = dense_shift(pad, |i| ((i + 1) as f64).sqrt());
    let ad = a.adjoint();
    let mut out = DMatrix::zeros(pad, pad);
    for (w, coeff) in u.terms() {
        let mut m = DMatrix::identity(pad, pad);
        for &g in w.letters() {
            m *= if g == 0 { &a } else { &ad };
        }
        out += m * coeff.to_complex();
    }
    out.view((0, 0), (size, size)).into_owned()
}

/// `π(u)x` in the Fock representation, letter by letter on the vector.
pub fn fock_apply(u: &AlgebraElement, x: &[Complex64]) -> Vec<Complex64> {
    let len = x.len() + u.degree();
    let mut out = vec![c(0.0); len];
    for (w, coeff) in u.terms() {
        let mut cur = padded(x, len);
        for &g in w.letters().iter().rev() {
            let mut next = DVector::zeros(len);
            for n in 0..len {
                if g == 0 && n > 0 {
                    next[n - 1] += cur[n] * (n as f64).sqrt();
                } else if g != 0 && n + 1 < len {
                    next[n + 1] += cur[n] * ((n + 1) as f64).sqrt();
                }
            }
            cur = next;
        }
        for (o, z) in out.iter_mut().zip(cur.iter()) {
            *o += z * coeff.to_complex();
        }
    }
    out
}

pub fn padded(v: &[Complex64], size: usize) -> DVector<Complex64> {
    let mut out = DVector::zeros(size);
    for (i, x) in v.iter().enumerate() {
        out[i] = *x;
    }
    out
}

pub fn dense_solve(t: &DMatrix<Complex64>, y: &[Complex64]) -> Vec<Complex64> {
    t.clone().lu().solve(&padded(y, t.nrows())).expect("invertible").iter().copied().collect()
}

/// Moments of the standard normal law: `(k − 1)!!` for even `k`, else 0.
pub fn gaussian_moment(k: usize) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    (1..k).step_by(2).map(|j| j as f64).product()
}

/// Jacobi coefficients `(α_k, √β_k)` by the Stieltjes procedure on
/// coefficient vectors, with the inner product read off the moments.
pub fn stieltjes(moment: impl Fn(usize) -> f64, count: usize) -> (Vec<f64>, Vec<f64>) {
    let inner = |p: &[f64], q: &[f64]| -> f64 {
        let mut s = 0.0;
        for (i, x) in p.iter().enumerate() {
            for (j, y) in q.iter().enumerate() {
                s += x * y * moment(i + j);
            }
        }
        s
    };
    let times_x = |p: &[f64]| -> Vec<f64> { std::iter::once(0.0).chain(p.iter().copied()).collect() };
    let (mut alpha, mut off) = (Vec::new(), Vec::new());
    let mut prev: Vec<f64> = vec![0.0];
    let mut cur: Vec<f64> = vec![1.0];
    let mut norm_prev = 1.0;
    for k in 0..count {
        let norm = inner(&cur, &cur);
        let a = inner(&times_x(&cur), &cur) / norm;
        let b = if k == 0 { 0.0 } else { norm / norm_prev };
        if k > 0 {
            off.push(b.sqrt());
        }
        alpha.push(a);
        let mut next = times_x(&cur);
        for (i, x) in cur.iter().enumerate() {
            next[i] -= a * x;
        }
        for (i, x) in prev.iter().enumerate() {
            next[i] -= b * x;
        }
        prev = std::mem::replace(&mut cur, next);
        norm_prev = norm;
    }
    (alpha, off)
}
