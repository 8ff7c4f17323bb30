//! Exact arithmetic in finitely presented unital *-algebras.
//!
//! Elements are kept in normal form with respect to a terminating,
//! confluent rewrite system, so equality of elements is syntactic equality
//! of their term maps. Every computation is bounded by the presentation's
//! degree cap; exceeding it is an error rather than a truncation.

mod element;
mod file;
mod presentation;
pub mod presets;
mod word;

use thiserror::Error;

pub use element::{AlgebraElement, Regularity};
pub use file::{PresentationFile, RelationEntry, RhsTerm};
pub use presentation::{Presentation, Rule};
pub use word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("word of length {len} exceeds the degree cap {cap}")]
    DegreeOverflow { len: usize, cap: usize },
    #[error("operands belong to different presentations")]
    PresentationMismatch,
    #[error("rewriting does not terminate on {word:?}")]
    NonTerminating { word: Word },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("too many generators")]
    TooManyGenerators,
    #[error("dagger pairing: {0}")]
    DaggerPairing(String),
    #[error("a relation has an empty left-hand side")]
    EmptyLeftHandSide,
    #[error("critical pair on {word:?} does not resolve")]
    NotConfluent { word: Word },
    #[error("rewriting does not terminate on {word:?}")]
    NonTerminating { word: Word },
    #[error("relation {rule} is not closed under the involution")]
    NotDaggerClosed { rule: usize },
    #[error("coefficient has a zero denominator")]
    ZeroDenominator,
    #[error("malformed presentation file: {0}")]
    Format(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
