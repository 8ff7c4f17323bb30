use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::scalar::Scalar;

/// An exact number `Σ cᵣ·√r` over squarefree `r`, with Gaussian rational
/// `cᵣ`. Closed under the ring operations and conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SurdSum(BTreeMap<u64, Scalar>);

/// `m = k²·f` with `f` squarefree.
fn squarefree_split(mut m: u64) -> (u64, u64) {
    let (mut k, mut f) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= m {
        while m % (p * p) == 0 {
            m /= p * p;
            k *= p;
        }
        if m % p == 0 {
            m /= p;
            f *= p;
        }
        p += 1;
    }
    (k, f * m)
}

impl SurdSum {
    pub fn zero() -> Self {
        SurdSum(BTreeMap::new())
    }

    pub fn from_scalar(c: Scalar) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(1, c);
        }
        SurdSum(m)
    }

    pub fn one() -> Self {
        Self::from_scalar(Scalar::one())
    }

    /// `√r`, taken as `i·√|r|` when `r < 0`.
    pub fn sqrt(r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        // √(a/b) = √(a·b)/b
        let (a, b) = (r.numer().abs(), r.denom().clone());
        let ab = (&a * &b).to_u64().expect("radicand fits in 64 bits");
        let (k, f) = squarefree_split(ab);
        let c = BigRational::new(BigInt::from(k), b);
        let coeff = if r.is_negative() { Scalar::new(BigRational::zero(), c) } else { Scalar::real(c) };
        SurdSum(BTreeMap::from([(f, coeff)]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<u64, Scalar> {
        &self.0
    }

    /// The value when it is rational, i.e. carries no surd.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.0.len() {
            0 => Some(Scalar::zero()),
            1 => self.0.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SurdSum(self.0.iter().map(|(r, v)| (*r, v * c)).collect())
    }

    pub fn conj(&self) -> Self {
        SurdSum(self.0.iter().map(|(r, v)| (*r, v.conj())).collect())
    }

    pub fn to_complex(&self) -> Complex64 {
        self.0.iter().map(|(r, v)| v.to_complex() * (*r as f64).sqrt()).sum()
    }

    fn accumulate(&mut self, r: u64, c: Scalar) {
        let e = self.0.entry(r).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            self.0.remove(&r);
        }
    }
}

impl Add for &SurdSum {
    type Output = SurdSum;
    fn add(self, other: &SurdSum) -> SurdSum {
        let mut out = self.clone();
        for (r, c) in &other.0 {
            out.accumulate(*r, c.clone());
        }
        out
    }
}

impl Neg for &SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        self.scale(&-Scalar::one())
    }
}

impl Sub for &SurdSum {
    type Output = SurdSum;
    fn sub(self, other: &SurdSum) -> SurdSum {
        self + &(-other)
    }
}

impl Mul for &SurdSum {
    type Output = SurdSum;
    fn mul(self, other: &SurdSum) -> SurdSum {
        let mut out = SurdSum::zero();
        for (r1, c1) in &self.0 {
            for (r2, c2) in &other.0 {
                // √r₁·√r₂ = g·√(r₁r₂/g²), squarefree since r₁/g and r₂/g are coprime
                let g = r1.gcd(r2);
                let r = (r1 / g) * (r2 / g);
                out.accumulate(r, &(c1 * c2) * &Scalar::from(g as i64));
            }
        }
        out
    }
}
