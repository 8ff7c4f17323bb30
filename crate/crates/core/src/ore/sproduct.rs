use std::sync::Arc;

use crate::algebra::{AlgebraElement, AlgebraError, Presentation};

/// A generator `1 + p†p` of the multiplicative set, with its `p` kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFactor {
    p: AlgebraElement,
    value: AlgebraElement,
}

impl SFactor {
    pub fn new(p: AlgebraElement) -> Result<Self, AlgebraError> {
        let value = p.one_plus_dagger_square()?;
        Ok(SFactor { p, value })
    }

    pub fn p(&self) -> &AlgebraElement {
        &self.p
    }

    pub fn value(&self) -> &AlgebraElement {
        &self.value
    }
}

/// An element of S stored as its ordered factorisation. The empty product
/// is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SProduct {
    factors: Vec<SFactor>,
    value: AlgebraElement,
}

impl SProduct {
    pub fn one(presentation: &Arc<Presentation>) -> Self {
        SProduct { factors: Vec::new(), value: AlgebraElement::one(presentation) }
    }

    /// `Π (1 + pᵢ†pᵢ)`, left to right.
    pub fn new(presentation: &Arc<Presentation>, ps: Vec<AlgebraElement>) -> Result<Self, AlgebraError> {
        let factors = ps.into_iter().map(SFactor::new).collect::<Result<Vec<_>, _>>()?;
        Self::from_factors(presentation, factors)
    }

    pub fn from_factors(presentation: &Arc<Presentation>, factors: Vec<SFactor>) -> Result<Self, AlgebraError> {
        let mut value = AlgebraElement::one(presentation);
        for f in &factors {
            value = value.mul(&f.value)?;
        }
        Ok(SProduct { factors, value })
    }

    pub fn single(p: AlgebraElement) -> Result<Self, AlgebraError> {
        let f = SFactor::new(p)?;
        Ok(SProduct { value: f.value.clone(), factors: vec![f] })
    }

    pub fn factors(&self) -> &[SFactor] {
        &self.factors
    }

    pub fn value(&self) -> &AlgebraElement {
        &self.value
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        self.value.presentation()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The concatenated product `self · other`.
    pub fn then(&self, other: &SProduct) -> Result<SProduct, AlgebraError> {
        let value = self.value.mul(&other.value)?;
        let factors = self.factors.iter().chain(&other.factors).cloned().collect();
        Ok(SProduct { factors, value })
    }

    /// Each factor is hermitian, so the adjoint just reverses their order.
    pub fn dagger(&self) -> Result<SProduct, AlgebraError> {
        let factors = self.factors.iter().rev().cloned().collect();
        Ok(SProduct { factors, value: self.value.dagger()? })
    }
}
