use std::collections::BTreeMap;
use std::sync::Arc;

use super::banded::BandedOperator;
use super::surd::SurdSum;
use super::OperatorError;
use crate::algebra::{presets, AlgebraElement, Presentation, Word};
use crate::positivity::{rationalize, MomentFunctional};
use crate::scalar::Scalar;

/// A representation of a presented algebra by banded operators, one per
/// generator, acting on finitely supported sequences.
#[derive(Clone, Debug)]
pub struct FockAssignment {
    presentation: Arc<Presentation>,
    operators: Vec<BandedOperator>,
}

pub(crate) fn basis_vector(n: usize) -> Vec<SurdSum> {
    let mut v = vec![SurdSum::zero(); n + 1];
    v[n] = SurdSum::one();
    v
}

fn same_vector(a: &[SurdSum], b: &[SurdSum]) -> bool {
    let n = a.len().max(b.len());
    (0..n).all(|i| a.get(i).cloned().unwrap_or_default() == b.get(i).cloned().unwrap_or_default())
}

impl FockAssignment {
    /// Requires one operator per generator and `π(g†) = π(g)*` band for
    /// band.
    pub fn new(presentation: &Arc<Presentation>, operators: Vec<BandedOperator>) -> Result<Self, OperatorError> {
        if operators.len() != presentation.generator_count() {
            return Err(OperatorError::NotAnAssignment("one operator per generator".into()));
        }
        for g in 0..operators.len() as u16 {
            if operators[presentation.dagger_of(g) as usize] != operators[g as usize].adjoint() {
                return Err(OperatorError::NotAnAssignment(format!(
                    "operator for {}' is not the adjoint of {}",
                    presentation.generator_name(g),
                    presentation.generator_name(g)
                )));
            }
        }
        Ok(FockAssignment { presentation: presentation.clone(), operators })
    }

    /// `a ↦` annihilation, `a' ↦` creation, on the Heisenberg preset.
    pub fn heisenberg() -> Self {
        let a = BandedOperator::annihilation();
        let ad = a.adjoint();
        Self::new(&presets::heisenberg(), vec![a, ad]).expect("the Fock pair is adjoint")
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn operator(&self, g: u16) -> &BandedOperator {
        &self.operators[g as usize]
    }

    fn word_operator(&self, w: &Word) -> BandedOperator {
        w.letters()
            .iter()
            .fold(BandedOperator::identity(), |acc, &g| acc.strong_product(&self.operators[g as usize]))
    }

    /// `π(u)` as a banded operator.
    pub fn represent(&self, u: &AlgebraElement) -> BandedOperator {
        u.terms()
            .iter()
            .fold(BandedOperator::zero(), |acc, (w, c)| acc.strong_sum(&self.word_operator(w).scale(c)))
    }

    /// Applies the letters of `w` one at a time, exactly.
    fn apply_word(&self, w: &Word, xi: &[SurdSum]) -> Vec<SurdSum> {
        w.letters().iter().rev().fold(xi.to_vec(), |v, &g| self.operators[g as usize].apply_exact(&v))
    }

    /// Checks every relation `lhs = rhs` on `e₀ … e_{n−1}` in exact
    /// arithmetic; returns the first failing `(rule index, n)`.
    pub fn check_relations(&self, n: usize) -> Option<(usize, usize)> {
        for (i, rule) in self.presentation.rules().iter().enumerate() {
            for m in 0..n {
                let e = basis_vector(m);
                let lhs = self.apply_word(&rule.lhs, &e);
                let mut rhs: Vec<SurdSum> = Vec::new();
                for (c, w) in &rule.rhs {
                    let v = self.apply_word(w, &e);
                    if rhs.len() < v.len() {
                        rhs.resize(v.len(), SurdSum::zero());
                    }
                    for (r, x) in rhs.iter_mut().zip(&v) {
                        *r = &*r + &x.scale(c);
                    }
                }
                if !same_vector(&lhs, &rhs) {
                    return Some((i, m));
                }
            }
        }
        None
    }

    /// The state `w ↦ ⟨Ω, π(w)Ω⟩` on normal words of degree at most
    /// `2·degree`. Exact when every moment is rational; otherwise rounded.
    pub fn vector_state(&self, omega: &[Scalar], degree: usize) -> Result<MomentFunctional, OperatorError> {
        let omega: Vec<SurdSum> = omega.iter().cloned().map(SurdSum::from_scalar).collect();
        let mut table = BTreeMap::new();
        for w in self.presentation.normal_words(2 * degree) {
            let v = self.apply_word(&w, &omega);
            let m = omega.iter().zip(&v).fold(SurdSum::zero(), |acc, (o, x)| &acc + &(&o.conj() * x));
            let value = m.as_scalar().unwrap_or_else(|| {
                let z = m.to_complex();
                Scalar::new(rationalize(z.re, 1e-12), rationalize(z.im, 1e-12))
            });
            table.insert(w, value);
        }
        Ok(MomentFunctional::new(&self.presentation, degree, table)?)
    }
}
