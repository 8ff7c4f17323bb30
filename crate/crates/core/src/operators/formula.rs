use num_complex::Complex64;

use super::poly::Poly;
use super::surd::SurdSum;
use crate::scalar::Scalar;

/// `p(n)·√q(n)` for `n ≥ lower`, zero below. `q` has real coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Term {
    pub lower: i64,
    pub radicand: Poly,
    pub coeff: Poly,
}

impl Term {
    pub fn eval(&self, n: i64) -> SurdSum {
        if n < self.lower {
            return SurdSum::zero();
        }
        let c = self.coeff.eval(n);
        if self.radicand.is_one() {
            return SurdSum::from_scalar(c);
        }
        SurdSum::sqrt(&self.radicand.eval(n).re).scale(&c)
    }
}

/// A band coefficient `c(n)`, a finite sum of guarded terms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Formula {
    terms: Vec<Term>,
}

/// Float copies of the polynomials for fast evaluation.
#[derive(Clone, Debug)]
pub(crate) struct FloatTerm {
    lower: i64,
    coeff: Vec<Complex64>,
    radicand: Option<Vec<Complex64>>,
}

impl FloatTerm {
    pub(crate) fn eval(terms: &[FloatTerm], n: i64) -> Complex64 {
        let x = n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for t in terms {
            if n < t.lower {
                continue;
            }
            let c = Poly::eval_f64(&t.coeff, x);
            acc += match &t.radicand {
                None => c,
                Some(q) => {
                    let r = Poly::eval_f64(q, x).re;
                    if r >= 0.0 { c * r.sqrt() } else { c * Complex64::new(0.0, (-r).sqrt()) }
                }
            };
        }
        acc
    }
}

impl Formula {
    pub fn zero() -> Self {
        Formula { terms: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Formula::poly(Poly::constant(c))
    }

    pub fn poly(p: Poly) -> Self {
        Formula::from_terms(vec![Term { lower: i64::MIN, coeff: p, radicand: Poly::one() }])
    }

    /// `√q(n)`.
    pub fn sqrt_poly(q: Poly) -> Self {
        Formula::from_terms(vec![Term { lower: i64::MIN, coeff: Poly::one(), radicand: q }])
    }

    pub fn from_terms(terms: Vec<Term>) -> Self {
        Formula { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, n: i64) -> SurdSum {
        self.terms.iter().fold(SurdSum::zero(), |acc, t| &acc + &t.eval(n))
    }

    pub(crate) fn compile(&self) -> Vec<FloatTerm> {
        self.terms
            .iter()
            .map(|t| FloatTerm {
                lower: t.lower,
                coeff: t.coeff.to_complex(),
                radicand: (!t.radicand.is_one()).then(|| t.radicand.to_complex()),
            })
            .collect()
    }

    pub fn add(&self, other: &Formula) -> Formula {
        Formula { terms: self.terms.iter().chain(&other.terms).cloned().collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Formula {
        let terms = self.terms.iter().map(|t| Term { coeff: t.coeff.scale(c), ..t.clone() }).collect();
        Formula { terms }
    }

    /// `c(n + k)`.
    pub fn shift(&self, k: i64) -> Formula {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                lower: t.lower.saturating_sub(k),
                coeff: t.coeff.shift(k),
                radicand: t.radicand.shift(k),
            })
            .collect();
        Formula { terms }
    }

    pub fn conj(&self) -> Formula {
        let terms = self.terms.iter().map(|t| Term { coeff: t.coeff.conj(), ..t.clone() }).collect();
        Formula { terms }
    }

    pub fn mul(&self, other: &Formula) -> Formula {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let lower = a.lower.max(b.lower);
                let term = if a.radicand == b.radicand {
                    Term { lower, coeff: a.coeff.mul(&b.coeff).mul(&a.radicand), radicand: Poly::one() }
                } else if a.radicand.is_one() || b.radicand.is_one() {
                    let radicand = if a.radicand.is_one() { b.radicand.clone() } else { a.radicand.clone() };
                    Term { lower, coeff: a.coeff.mul(&b.coeff), radicand }
                } else {
                    Term { lower, coeff: a.coeff.mul(&b.coeff), radicand: a.radicand.mul(&b.radicand) }
                };
                terms.push(term);
            }
        }
        Formula { terms }
    }

    /// Canonical form for a coefficient used only at `n ≥ floor`: guards
    /// are raised to `floor`, then lowered past any points where the term
    /// vanishes anyway; terms sharing guard and radicand are merged.
    pub(crate) fn canonical(&self, floor: i64) -> Formula {
        let mut terms: Vec<Term> = Vec::new();
        for t in &self.terms {
            if t.coeff.is_zero() || t.radicand.is_zero() {
                continue;
            }
            let mut lower = t.lower.max(floor);
            while lower > floor {
                let n = lower - 1;
                if t.coeff.eval(n).is_zero() || t.radicand.eval(n).is_zero() {
                    lower -= 1;
                } else {
                    break;
                }
            }
            match terms.iter_mut().find(|u| u.lower == lower && u.radicand == t.radicand) {
                Some(u) => u.coeff = u.coeff.add(&t.coeff),
                None => terms.push(Term { lower, ..t.clone() }),
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        terms.sort();
        Formula { terms }
    }
}
