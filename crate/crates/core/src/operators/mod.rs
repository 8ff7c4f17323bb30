//! Banded operators on ℓ²(ℕ) with exact coefficient formulas: a class
//! closed under adjoint, sum and product that contains the Fock
//! representation, and in which `1 + A*A` can be inverted on truncations
//! with an a-posteriori error bound.

mod banded;
mod fock;
mod file;
mod formula;
mod poly;
mod probes;
mod solve;
mod surd;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::positivity::StateError;

pub use banded::BandedOperator;
pub use file::{BandSpec, FormulaSpec, OperatorSpec};
pub use fock::FockAssignment;
pub use formula::{Formula, Term};
pub use poly::Poly;
pub use probes::{
    core_density_probe, extend_representation, invert_sproduct, lemma_pis_equals_s_check,
    lemma_pis_equals_s_check_with, pi_s_surjectivity_probe, ChainInversion, Extension, ProbeReport,
};
pub use solve::{invert_one_plus_astar_a, invert_positive, InversionResult, DEFAULT_TRUNCATION_CAP};
pub use surd::SurdSum;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperatorError {
    #[error("no truncation up to {size} met the tolerance (residual {residual:e})")]
    TruncationLimit { size: usize, residual: f64 },
    #[error("truncated system is not positive definite at row {index}")]
    NotPositiveDefinite { index: usize },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("invalid assignment: {0}")]
    NotAnAssignment(String),
    #[error("malformed operator spec: {0}")]
    Format(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    State(#[from] StateError),
}
