//! The positivity cone, states given by moment tables, and the GNS
//! construction on degree-truncated quotients.

mod certificate;
mod gns;
mod moments;
mod quadrature;

use thiserror::Error;

use crate::algebra::{AlgebraError, Word};

pub use certificate::{
    cofinal_dominator, cofinal_dominator_left, factor_certificate, verify_certificate, CofinalDominator,
    FactorCertificate, PositivityCertificate,
};
pub use gns::{gns, GnsRepresentation};
pub use moments::{check_state_axioms, rationalize, state_from_gns, MomentFunctional, StateReport};
pub use quadrature::{gauss_hermite, gaussian_extension_expectation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("no moment for {0:?}")]
    MissingMoment(Word),
    #[error("{0:?} is not a normal word of degree at most 2d")]
    BadWord(Word),
    #[error("the GNS construction needs degree at least 1")]
    InsufficientDegree,
    #[error("the table is not a state: {0}")]
    NotAState(String),
    #[error("a vector left the truncation window")]
    WindowExceeded,
    #[error("quadrature needs a single hermitian commuting generator")]
    NotUnivariate,
}
