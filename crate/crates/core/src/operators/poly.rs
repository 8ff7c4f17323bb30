use std::cmp::Ordering;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::scalar::Scalar;

/// A polynomial in the index `n` with Gaussian rational coefficients, lowest
/// degree first and without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(Vec<Scalar>);

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    /// `n + c`.
    pub fn index_plus(c: i64) -> Self {
        Poly::new(vec![Scalar::from(c), Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(Scalar::is_real)
    }

    pub fn eval(&self, n: i64) -> Scalar {
        let x = Scalar::from(n);
        self.0.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * &x) + c)
    }

    pub fn eval_f64(coeffs: &[Complex64], n: f64) -> Complex64 {
        coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * n + c)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.0.iter().map(Scalar::to_complex).collect()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let get = |v: &[Scalar], i: usize| v.get(i).cloned().unwrap_or_else(Scalar::zero);
        Poly::new((0..n).map(|i| &get(&self.0, i) + &get(&other.0, i)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }

    /// `p(n + k)`.
    pub fn shift(&self, k: i64) -> Poly {
        let step = Poly::index_plus(k);
        self.0.iter().rev().fold(Poly::zero(), |acc, c| acc.mul(&step).add(&Poly::constant(c.clone())))
    }

    pub fn conj(&self) -> Poly {
        Poly(self.0.iter().map(Scalar::conj).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn key(&self) -> Vec<(&BigRational, &BigRational)> {
        self.0.iter().map(|c| (&c.re, &c.im)).collect()
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.key().cmp(&other.key()))
    }
}
