use std::collections::BTreeMap;

use num_complex::Complex64;

use super::formula::{FloatTerm, Formula};
use super::poly::Poly;
use super::surd::SurdSum;
use crate::scalar::Scalar;

/// An operator on ℓ²(ℕ) with finitely many bands:
/// `(Aξ)ₙ = Σₖ cₖ(n)·ξₙ₊ₖ`, entries with `n < 0` or `n + k < 0` absent.
///
/// Band formulas are kept canonical, so equality of operators is equality
/// of their formulas (a sufficient test; different formulas can still
/// agree on every index).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BandedOperator {
    bands: BTreeMap<i64, Formula>,
}

fn floor(k: i64) -> i64 {
    0.max(-k)
}

impl BandedOperator {
    pub fn zero() -> Self {
        BandedOperator { bands: BTreeMap::new() }
    }

    pub fn identity() -> Self {
        Self::diagonal(Poly::one())
    }

    pub fn diagonal(p: Poly) -> Self {
        Self::from_bands([(0, Formula::poly(p))])
    }

    pub fn from_bands(bands: impl IntoIterator<Item = (i64, Formula)>) -> Self {
        let mut raw: BTreeMap<i64, Formula> = BTreeMap::new();
        for (k, f) in bands {
            let e = raw.entry(k).or_default();
            *e = e.add(&f);
        }
        let bands = raw
            .into_iter()
            .map(|(k, f)| (k, f.canonical(floor(k))))
            .filter(|(_, f)| !f.is_zero())
            .collect();
        BandedOperator { bands }
    }

    /// The annihilation operator, `A e_{n+1} = √(n+1)·e_n`.
    pub fn annihilation() -> Self {
        Self::from_bands([(1, Formula::sqrt_poly(Poly::index_plus(1)))])
    }

    /// The shift `A e_{n+1} = (n+1)·e_n`, with polynomially growing weights.
    pub fn polynomial_shift() -> Self {
        Self::from_bands([(1, Formula::poly(Poly::index_plus(1)))])
    }

    pub fn bands(&self) -> &BTreeMap<i64, Formula> {
        &self.bands
    }

    pub fn is_zero(&self) -> bool {
        self.bands.is_empty()
    }

    /// Largest `|k|` over nonzero bands.
    pub fn bandwidth(&self) -> usize {
        self.bands.keys().map(|k| k.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_bands(self.bands.iter().map(|(&k, f)| (-k, f.shift(-k).conj())))
    }

    pub fn strong_sum(&self, other: &Self) -> Self {
        Self::from_bands(self.bands.iter().chain(&other.bands).map(|(&k, f)| (k, f.clone())))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_bands(self.bands.iter().map(|(&k, f)| (k, f.scale(c))))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    /// `A·B`: band `k + j` collects `cₖ(n)·dⱼ(n+k)` where `n + k ≥ 0`.
    pub fn strong_product(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for (&k, c) in &self.bands {
            for (&j, d) in &other.bands {
                let guard = Formula::from_terms(vec![super::formula::Term {
                    lower: -k,
                    coeff: Poly::one(),
                    radicand: Poly::one(),
                }]);
                out.push((k + j, c.mul(&d.shift(k)).mul(&guard)));
            }
        }
        Self::from_bands(out)
    }

    /// `1 + A*A`.
    pub fn one_plus_adjoint_square(&self) -> Self {
        Self::identity().strong_sum(&self.adjoint().strong_product(self))
    }

    /// The exact entry `⟨eₙ, A e_{n+k}⟩`.
    pub fn coefficient(&self, k: i64, n: i64) -> SurdSum {
        if n < 0 || n + k < 0 {
            return SurdSum::zero();
        }
        self.bands.get(&k).map(|f| f.eval(n)).unwrap_or_default()
    }

    fn out_len(&self, len: usize) -> usize {
        let lowest = self.bands.keys().next().copied().unwrap_or(0);
        (len as i64 - lowest.min(0)).max(0) as usize
    }

    /// Exact action on a finitely supported vector.
    pub fn apply_exact(&self, xi: &[SurdSum]) -> Vec<SurdSum> {
        let mut out = vec![SurdSum::zero(); self.out_len(xi.len())];
        for (n, slot) in out.iter_mut().enumerate() {
            for &k in self.bands.keys() {
                let m = n as i64 + k;
                if m < 0 || m as usize >= xi.len() || xi[m as usize].is_zero() {
                    continue;
                }
                let c = self.coefficient(k, n as i64);
                *slot = &*slot + &(&c * &xi[m as usize]);
            }
        }
        trim(out)
    }

    pub(crate) fn compile(&self) -> CompiledOperator {
        CompiledOperator { bands: self.bands.iter().map(|(&k, f)| (k, f.compile())).collect() }
    }

    /// Floating-point action on a finitely supported vector.
    pub fn apply(&self, xi: &[Complex64]) -> Vec<Complex64> {
        self.compile().apply(xi)
    }
}

fn trim(mut v: Vec<SurdSum>) -> Vec<SurdSum> {
    while v.last().is_some_and(SurdSum::is_zero) {
        v.pop();
    }
    v
}

/// Band formulas with float coefficients, for repeated numerical use.
#[derive(Clone, Debug)]
pub(crate) struct CompiledOperator {
    pub(crate) bands: Vec<(i64, Vec<FloatTerm>)>,
}

impl CompiledOperator {
    pub(crate) fn entry(&self, k: i64, n: i64) -> Complex64 {
        if n < 0 || n + k < 0 {
            return Complex64::new(0.0, 0.0);
        }
        self.bands
            .iter()
            .find(|(b, _)| *b == k)
            .map(|(_, t)| FloatTerm::eval(t, n))
            .unwrap_or_default()
    }

    pub(crate) fn bandwidth(&self) -> usize {
        self.bands.iter().map(|(k, _)| k.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub(crate) fn apply(&self, xi: &[Complex64]) -> Vec<Complex64> {
        let lowest = self.bands.first().map(|(k, _)| *k).unwrap_or(0);
        let len = (xi.len() as i64 - lowest.min(0)).max(0) as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        for (n, slot) in out.iter_mut().enumerate() {
            for (k, terms) in &self.bands {
                let m = n as i64 + k;
                if m < 0 || m as usize >= xi.len() {
                    continue;
                }
                *slot += FloatTerm::eval(terms, n as i64) * xi[m as usize];
            }
        }
        out
    }
}
