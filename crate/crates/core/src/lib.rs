//! Ore localization of involutive algebras at the multiplicative set
//! generated by the elements `1 + a†a`, the GNS construction on truncated
//! moment data, and a computable class of closable operators on ℓ²(ℕ).

pub mod algebra;
pub mod linalg;
pub mod operators;
pub mod ore;
pub mod positivity;
pub mod sample;
pub mod scalar;

pub use algebra::{AlgebraElement, AlgebraError, Presentation, Word};
pub use scalar::Scalar;
