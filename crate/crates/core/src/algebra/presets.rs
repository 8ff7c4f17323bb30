//! Built-in presentations.

use std::sync::Arc;

use super::presentation::{Presentation, Rule};
use super::word::Word;
use crate::scalar::Scalar;

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// ℂ[x] with `x` hermitian.
pub fn polynomial_ring() -> Arc<Presentation> {
    Presentation::new(names(&["x"]), vec![names(&["x"])], vec![], 48).expect("preset is valid")
}

/// ℂ[x, y], both hermitian, with `y·x → x·y`.
pub fn commuting_pair() -> Arc<Presentation> {
    let rule = Rule { lhs: Word(vec![1, 0]), rhs: vec![(Scalar::one(), Word(vec![0, 1]))] };
    Presentation::new(names(&["x", "y"]), vec![names(&["x"]), names(&["y"])], vec![rule], 16).expect("preset is valid")
}

/// The Heisenberg (Weyl) algebra ⟨a, a'⟩ with `a·a' → a'·a + 1` (normal
/// ordering), `a' = a†`.
pub fn heisenberg() -> Arc<Presentation> {
    let rule = Rule {
        lhs: Word(vec![0, 1]),
        rhs: vec![(Scalar::one(), Word(vec![1, 0])), (Scalar::one(), Word::unit())],
    };
    Presentation::new(names(&["a", "a'"]), vec![names(&["a", "a'"])], vec![rule], 16).expect("preset is valid")
}

/// The free *-algebra ℂ⟨x, y⟩ on two hermitian generators.
pub fn free_pair() -> Arc<Presentation> {
    Presentation::new(names(&["x", "y"]), vec![names(&["x"]), names(&["y"])], vec![], 8).expect("preset is valid")
}

/// Looks a preset up by its short name: `cx`, `cxy`, `heisenberg`, `free`.
pub fn by_name(name: &str) -> Option<Arc<Presentation>> {
    match name {
        "cx" => Some(polynomial_ring()),
        "cxy" => Some(commuting_pair()),
        "heisenberg" => Some(heisenberg()),
        "free" => Some(free_pair()),
        _ => None,
    }
}

pub const PRESET_NAMES: [&str; 4] = ["cx", "cxy", "heisenberg", "free"];
