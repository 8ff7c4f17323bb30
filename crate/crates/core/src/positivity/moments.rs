use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gns::GnsRepresentation;
use super::StateError;
use crate::algebra::{AlgebraElement, Presentation, Word};
use crate::linalg::{hermitian_definiteness, Definiteness, ExactMatrix};
use crate::scalar::Scalar;

/// A linear functional given by its values on all normal words of degree
/// at most `2·degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentFunctional {
    presentation: Arc<Presentation>,
    degree: usize,
    table: BTreeMap<Word, Scalar>,
}

impl MomentFunctional {
    /// Every normal word of degree at most `2·degree` needs an entry, and
    /// nothing else may have one.
    pub fn new(presentation: &Arc<Presentation>, degree: usize, table: BTreeMap<Word, Scalar>) -> Result<Self, StateError> {
        for w in table.keys() {
            if w.len() > 2 * degree || !presentation.is_normal_word(w) {
                return Err(StateError::BadWord(w.clone()));
            }
        }
        for w in presentation.normal_words(2 * degree) {
            if !table.contains_key(&w) {
                return Err(StateError::MissingMoment(w));
            }
        }
        Ok(MomentFunctional { presentation: presentation.clone(), degree, table })
    }

    pub fn from_fn(presentation: &Arc<Presentation>, degree: usize, f: impl Fn(&Word) -> Scalar) -> Self {
        let table = presentation.normal_words(2 * degree).into_iter().map(|w| {
            let v = f(&w);
            (w, v)
        });
        MomentFunctional { presentation: presentation.clone(), degree, table: table.collect() }
    }

    /// Point evaluation at 0 on ℂ[x].
    pub fn dirac(presentation: &Arc<Presentation>, degree: usize) -> Self {
        Self::from_fn(presentation, degree, |w| if w.is_empty() { Scalar::one() } else { Scalar::zero() })
    }

    /// Standard normal moments on ℂ[x]: `x^{2k} ↦ (2k−1)!!`, odd words to 0.
    pub fn gaussian(presentation: &Arc<Presentation>, degree: usize) -> Self {
        Self::from_fn(presentation, degree, |w| {
            let k = w.len();
            if k % 2 == 1 {
                return Scalar::zero();
            }
            let m: BigInt = (1..k).step_by(2).map(BigInt::from).product();
            Scalar::real(BigRational::from_integer(m))
        })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn table(&self) -> &BTreeMap<Word, Scalar> {
        &self.table
    }

    pub fn evaluate(&self, u: &AlgebraElement) -> Result<Scalar, StateError> {
        let mut acc = Scalar::zero();
        for (w, c) in u.terms() {
            let m = self.table.get(w).ok_or_else(|| StateError::MissingMoment(w.clone()))?;
            acc += &(c * m);
        }
        Ok(acc)
    }

    /// Normal words of degree at most `degree`, in deglex order.
    pub fn gram_words(&self) -> Vec<Word> {
        self.presentation.normal_words(self.degree)
    }

    /// `G[u, v] = f(u†·v)` over [`Self::gram_words`].
    pub fn gram_matrix(&self) -> Result<ExactMatrix, StateError> {
        self.pairing(&self.gram_words())
    }

    pub(crate) fn pairing(&self, words: &[Word]) -> Result<ExactMatrix, StateError> {
        let p = &self.presentation;
        let mut g = ExactMatrix::zeros(words.len(), words.len());
        for (i, u) in words.iter().enumerate() {
            let ud = AlgebraElement::normalize(p, [(p.dagger_word(u), Scalar::one())])?;
            for (j, v) in words.iter().enumerate() {
                let prod = ud.mul(&AlgebraElement::word(p, v.clone())?)?;
                g.set(i, j, self.evaluate(&prod)?);
            }
        }
        Ok(g)
    }
}

/// Outcome of [`check_state_axioms`]; each field names the first failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateReport {
    pub hermitian_violation: Option<Word>,
    pub normalized: bool,
    pub psd_violation: Option<Word>,
    pub gram_rank: Option<usize>,
    pub cauchy_schwarz_violation: Option<(Word, Word)>,
}

impl StateReport {
    pub fn passes(&self) -> bool {
        self.hermitian_violation.is_none()
            && self.normalized
            && self.psd_violation.is_none()
            && self.cauchy_schwarz_violation.is_none()
    }
}

/// Exact checks of `f(w†) = conj f(w)`, `f(1) = 1`, semidefiniteness of the
/// Gram matrix and `|f(u†v)|² ≤ f(u†u)·f(v†v)` over all pairs of Gram words.
pub fn check_state_axioms(f: &MomentFunctional) -> Result<StateReport, StateError> {
    let p = f.presentation();
    let mut hermitian_violation = None;
    for (w, v) in f.table() {
        let wd = AlgebraElement::normalize(p, [(p.dagger_word(w), Scalar::one())])?;
        if f.evaluate(&wd)? != v.conj() {
            hermitian_violation = Some(w.clone());
            break;
        }
    }
    let normalized = f.table().get(&Word::unit()).is_some_and(Scalar::is_one);
    let words = f.gram_words();
    let g = f.gram_matrix()?;
    let (psd_violation, gram_rank) = match hermitian_definiteness(&g) {
        Definiteness::PositiveSemidefinite { rank } => (None, Some(rank)),
        Definiteness::Violation { index } => (Some(words[index].clone()), None),
    };
    let mut cauchy_schwarz_violation = None;
    'outer: for i in 0..words.len() {
        for j in i + 1..words.len() {
            let lhs = g.get(i, j).norm_sqr();
            let rhs = &g.get(i, i).re * &g.get(j, j).re;
            if lhs > rhs {
                cauchy_schwarz_violation = Some((words[i].clone(), words[j].clone()));
                break 'outer;
            }
        }
    }
    Ok(StateReport { hermitian_violation, normalized, psd_violation, gram_rank, cauchy_schwarz_violation })
}

/// Best rational approximation of `x` with denominator at most `10⁶`,
/// stopping once within `tol`. Snaps floating noise on exact moments.
pub fn rationalize(x: f64, tol: f64) -> BigRational {
    const MAX_DEN: i128 = 1_000_000;
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    loop {
        let a = r.floor();
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > MAX_DEN {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() <= tol || r - a == 0.0 {
            break;
        }
        r = 1.0 / (r - a);
        if !r.is_finite() {
            break;
        }
    }
    BigRational::new(BigInt::from(h1), BigInt::from(k1))
}

pub(crate) fn scalar_from_complex(z: num_complex::Complex64, tol: f64) -> Scalar {
    Scalar::new(rationalize(z.re, tol), rationalize(z.im, tol))
}

/// Moments `⟨Ω, π(w)Ω⟩` for words of degree at most `2(d−1)`, read from a
/// degree-`d` representation and rounded to nearby rationals.
pub fn state_from_gns(rep: &GnsRepresentation, tol: f64) -> Result<MomentFunctional, StateError> {
    let p = rep.presentation();
    let degree = rep.degree() - 1;
    let mut table = BTreeMap::new();
    for w in p.normal_words(2 * degree) {
        let m = rep.moment(&w)?;
        table.insert(w, scalar_from_complex(m, tol));
    }
    MomentFunctional::new(p, degree, table)
}
