//! Right fractions `a·s⁻¹` over the multiplicative set S generated by the
//! elements `1 + p†p`.
//!
//! Nothing here assumes that S actually satisfies the Ore condition. Every
//! operation that needs a witness searches for one inside an [`OreBudget`],
//! and failing to find one is reported as such, never as a contradiction.

mod fraction;
mod modp;
mod search;
mod sproduct;

use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError};

pub use fraction::{verify_equality, EqualityCertificate, Fraction, FractionEquality, Localization};
pub use sproduct::{SFactor, SProduct};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OreBudget {
    pub max_factors: usize,
    pub max_degree: usize,
}

impl Default for OreBudget {
    fn default() -> Self {
        OreBudget { max_factors: 2, max_degree: 2 }
    }
}

/// For a right witness `a·t = s·b`; for a left witness `t·a = b·s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreWitness {
    pub b: AlgebraElement,
    pub t: SProduct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OreSearch {
    Found(OreWitness),
    NotFoundWithinBudget,
}

impl OreSearch {
    pub fn found(self) -> Option<OreWitness> {
        match self {
            OreSearch::Found(w) => Some(w),
            OreSearch::NotFoundWithinBudget => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OreError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("denominator is a zero divisor: {witness} annihilates it")]
    IrregularDenominator { witness: AlgebraElement },
    #[error("no Ore witness within the search budget")]
    OreWitnessNotFound,
    #[error("budget degree {degree} exceeds the degree cap {cap}")]
    BudgetExceedsCap { degree: usize, cap: usize },
    #[error("{0} does not equal the stated product")]
    InvalidCertificate(String),
}
