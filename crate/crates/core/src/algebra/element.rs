use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::presentation::Presentation;
use super::word::Word;
use super::AlgebraError;
use crate::linalg::{EchelonSolver, ExactMatrix};
use crate::scalar::Scalar;

/// A normal-form element of a presented *-algebra.
///
/// The term map never holds a reducible word or a zero coefficient, so two
/// elements are equal exactly when their term maps are.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    presentation: Arc<Presentation>,
    terms: BTreeMap<Word, Scalar>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        same_presentation(&self.presentation, &other.presentation) && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

fn same_presentation(a: &Arc<Presentation>, b: &Arc<Presentation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Result of a bounded regularity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regularity {
    RegularUpTo(usize),
    /// A nonzero `a` with `s·a = 0` or `a·s = 0`.
    ZeroDivisorWitness(AlgebraElement),
}

impl AlgebraElement {
    /// Rewrites a formal combination of words into normal form.
    pub fn normalize<I>(presentation: &Arc<Presentation>, raw: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let terms = presentation.reduce(raw)?;
        Ok(AlgebraElement { presentation: presentation.clone(), terms })
    }

    pub fn zero(presentation: &Arc<Presentation>) -> Self {
        AlgebraElement { presentation: presentation.clone(), terms: BTreeMap::new() }
    }

    pub fn one(presentation: &Arc<Presentation>) -> Self {
        Self::constant(presentation, Scalar::one())
    }

    pub fn constant(presentation: &Arc<Presentation>, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Word::unit(), c);
        }
        AlgebraElement { presentation: presentation.clone(), terms }
    }

    pub fn generator(presentation: &Arc<Presentation>, name: &str) -> Result<Self, AlgebraError> {
        let g = presentation.generator_index(name).ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))?;
        Self::word(presentation, Word::letter(g))
    }

    pub fn word(presentation: &Arc<Presentation>, w: Word) -> Result<Self, AlgebraError> {
        Self::normalize(presentation, [(w, Scalar::one())])
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Word::unit()).is_some_and(Scalar::is_one)
    }

    /// Length of the longest word; zero for scalars and for 0.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if same_presentation(&self.presentation, &other.presentation) {
            Ok(())
        } else {
            Err(AlgebraError::PresentationMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let e = terms.entry(w.clone()).or_insert_with(Scalar::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(w);
            }
        }
        Ok(AlgebraElement { presentation: self.presentation.clone(), terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.presentation);
        }
        let terms = self.terms.iter().map(|(w, v)| (w.clone(), c * v)).collect();
        AlgebraElement { presentation: self.presentation.clone(), terms }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let raw = self
            .terms
            .iter()
            .flat_map(|(u, cu)| other.terms.iter().map(move |(v, cv)| (u.concat(v), cu * cv)));
        Self::normalize(&self.presentation, raw)
    }

    /// Antilinear, antimultiplicative involution.
    pub fn dagger(&self) -> Result<Self, AlgebraError> {
        let p = &self.presentation;
        Self::normalize(p, self.terms.iter().map(|(w, c)| (p.dagger_word(w), c.conj())))
    }

    pub fn pow(&self, k: usize) -> Result<Self, AlgebraError> {
        (0..k).try_fold(Self::one(&self.presentation), |acc, _| acc.mul(self))
    }

    /// `1 + p†p`, the generating elements of the multiplicative set.
    pub fn one_plus_dagger_square(&self) -> Result<Self, AlgebraError> {
        Self::one(&self.presentation).add(&self.dagger()?.mul(self)?)
    }

    /// Exact test that `a ↦ s·a` and `a ↦ a·s` are injective on elements of
    /// degree at most `depth`.
    pub fn is_regular_up_to(&self, depth: usize) -> Result<Regularity, AlgebraError> {
        let cap = self.presentation.degree_cap();
        if depth + self.degree() > cap {
            return Err(AlgebraError::DegreeOverflow { len: depth + self.degree(), cap });
        }
        let basis = self.presentation.normal_words(depth);
        for left in [true, false] {
            let images = basis
                .iter()
                .map(|w| {
                    let a = Self::word(&self.presentation, w.clone())?;
                    if left { self.mul(&a) } else { a.mul(self) }
                })
                .collect::<Result<Vec<_>, _>>()?;
            let solver = EchelonSolver::new(coefficient_matrix(&images));
            if let Some(kernel) = solver.kernel().into_iter().next() {
                return Ok(Regularity::ZeroDivisorWitness(self.combination(&basis, kernel)?));
            }
        }
        Ok(Regularity::RegularUpTo(depth))
    }

    /// `Σ cᵢ·wᵢ`, rescaled so that the deglex-first nonzero coefficient is 1.
    fn combination(&self, basis: &[Word], coeffs: Vec<Scalar>) -> Result<Self, AlgebraError> {
        let lead = coeffs.iter().find(|c| !c.is_zero()).and_then(Scalar::inv).unwrap_or_else(Scalar::one);
        Self::normalize(&self.presentation, basis.iter().cloned().zip(coeffs.iter().map(|c| c * &lead)))
    }
}

/// Columns are the given elements, rows the union of their supports (in
/// deglex order).
pub(crate) fn coefficient_matrix(columns: &[AlgebraElement]) -> ExactMatrix {
    let rows = row_index(columns.iter());
    let mut m = ExactMatrix::zeros(rows.len(), columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (w, c) in col.terms() {
            m.set(rows[w], j, c.clone());
        }
    }
    m
}

pub(crate) fn row_index<'a>(elements: impl Iterator<Item = &'a AlgebraElement>) -> BTreeMap<Word, usize> {
    let mut words: Vec<Word> = elements.flat_map(|e| e.terms().keys().cloned()).collect();
    words.sort();
    words.dedup();
    words.into_iter().enumerate().map(|(i, w)| (w, i)).collect()
}

fn write_word(f: &mut fmt::Formatter<'_>, p: &Presentation, w: &Word) -> fmt::Result {
    for (k, &g) in w.letters().iter().enumerate() {
        if k > 0 {
            f.write_str("*")?;
        }
        f.write_str(p.generator_name(g))?;
    }
    Ok(())
}

/// Surface syntax, highest-degree terms first: `a'*a + 1`, `-x*x + 1`.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.im.is_zero() && c.re.is_negative() || c.re.is_zero() && c.im.is_negative();
            let mag = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mixed = !mag.re.is_zero() && !mag.im.is_zero();
            if w.is_empty() {
                if mixed {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
                continue;
            }
            if !mag.is_one() {
                if mixed {
                    write!(f, "({mag})*")?;
                } else {
                    write!(f, "{mag}*")?;
                }
            }
            write_word(f, &self.presentation, w)?;
        }
        Ok(())
    }
}
