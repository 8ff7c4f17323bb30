use std::sync::Arc;

use super::search::right_witness;
use super::sproduct::SProduct;
use super::{OreBudget, OreError, OreSearch, OreWitness};
use crate::algebra::{AlgebraElement, Presentation, Regularity};
use crate::scalar::Scalar;

/// The right fraction `a·s⁻¹`. It has no canonical form; compare with
/// [`Localization::eq`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    num: AlgebraElement,
    den: SProduct,
}

impl Fraction {
    pub fn num(&self) -> &AlgebraElement {
        &self.num
    }

    pub fn den(&self) -> &SProduct {
        &self.den
    }
}

/// `(a·u, s·u) = (b·v, t·v)` with the common denominator factored in S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityCertificate {
    pub u: AlgebraElement,
    pub v: AlgebraElement,
    pub common: SProduct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FractionEquality {
    Equal(EqualityCertificate),
    /// Only returned for commutative presentations, where cross
    /// multiplication decides equality.
    Distinct,
    NotEqualUpToBudget,
}

impl FractionEquality {
    pub fn is_equal(&self) -> bool {
        matches!(self, FractionEquality::Equal(_))
    }
}

/// Fraction arithmetic over one presentation with a fixed search budget.
#[derive(Clone, Debug)]
pub struct Localization {
    presentation: Arc<Presentation>,
    budget: OreBudget,
    regularity_depth: usize,
}

impl Localization {
    pub fn new(presentation: &Arc<Presentation>, budget: OreBudget, regularity_depth: usize) -> Result<Self, OreError> {
        let cap = presentation.degree_cap();
        if 2 * budget.max_degree > cap {
            return Err(OreError::BudgetExceedsCap { degree: budget.max_degree, cap });
        }
        Ok(Localization { presentation: presentation.clone(), budget, regularity_depth })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn budget(&self) -> OreBudget {
        self.budget
    }

    pub fn regularity_depth(&self) -> usize {
        self.regularity_depth
    }

    fn check_regular(&self, s: &AlgebraElement) -> Result<(), OreError> {
        let room = self.presentation.degree_cap().saturating_sub(s.degree());
        match s.is_regular_up_to(self.regularity_depth.min(room))? {
            Regularity::RegularUpTo(_) => Ok(()),
            Regularity::ZeroDivisorWitness(witness) => Err(OreError::IrregularDenominator { witness }),
        }
    }

    /// Searches `(b, t)` with `a·t = s·b`.
    pub fn solve_right(&self, a: &AlgebraElement, s: &SProduct) -> Result<OreSearch, OreError> {
        self.check_regular(s.value())?;
        match right_witness(a, s, &self.budget)? {
            Some((b, t)) => Ok(OreSearch::Found(OreWitness { b, t })),
            None => Ok(OreSearch::NotFoundWithinBudget),
        }
    }

    /// Searches `(b, t)` with `t·a = b·s`, as the adjoint of a right
    /// witness for `(a†, s†)`.
    pub fn solve_left(&self, a: &AlgebraElement, s: &SProduct) -> Result<OreSearch, OreError> {
        let found = self.solve_right(&a.dagger()?, &s.dagger()?)?;
        Ok(match found {
            OreSearch::Found(w) => OreSearch::Found(OreWitness { b: w.b.dagger()?, t: w.t.dagger()? }),
            OreSearch::NotFoundWithinBudget => OreSearch::NotFoundWithinBudget,
        })
    }

    fn witness(&self, a: &AlgebraElement, s: &SProduct) -> Result<OreWitness, OreError> {
        self.solve_right(a, s)?.found().ok_or(OreError::OreWitnessNotFound)
    }

    /// `[a, s]`, after checking that `s` is regular to the configured depth.
    pub fn fraction(&self, num: AlgebraElement, den: SProduct) -> Result<Fraction, OreError> {
        if !Arc::ptr_eq(num.presentation(), den.presentation()) && num.presentation() != den.presentation() {
            return Err(crate::algebra::AlgebraError::PresentationMismatch.into());
        }
        self.check_regular(den.value())?;
        Ok(Fraction { num, den })
    }

    pub fn embed(&self, a: &AlgebraElement) -> Fraction {
        Fraction { num: a.clone(), den: SProduct::one(&self.presentation) }
    }

    pub fn one(&self) -> Fraction {
        self.embed(&AlgebraElement::one(&self.presentation))
    }

    pub fn zero(&self) -> Fraction {
        self.embed(&AlgebraElement::zero(&self.presentation))
    }

    /// `λ·[a₁, s₁] + [a₂, s₂] = [λ·a₁·t + a₂·b, s₁·t]` for `s₁·t = s₂·b`.
    pub fn add(&self, lambda: &Scalar, f: &Fraction, g: &Fraction) -> Result<Fraction, OreError> {
        let w = self.witness(f.den.value(), &g.den)?;
        let num = f.num.mul(w.t.value())?.scale(lambda).add(&g.num.mul(&w.b)?)?;
        Ok(Fraction { num, den: f.den.then(&w.t)? })
    }

    /// `[a₁, s₁]·[a₂, s₂] = [a₁·b, s₂·t]` for `a₂·t = s₁·b`.
    pub fn mul(&self, f: &Fraction, g: &Fraction) -> Result<Fraction, OreError> {
        let w = self.witness(&g.num, &f.den)?;
        Ok(Fraction { num: f.num.mul(&w.b)?, den: g.den.then(&w.t)? })
    }

    /// `[a, s]† = [1, s†]·[a†, 1] = [b, t]` for `a†·t = s†·b`.
    pub fn dagger(&self, f: &Fraction) -> Result<Fraction, OreError> {
        let w = self.witness(&f.num.dagger()?, &f.den.dagger()?)?;
        Ok(Fraction { num: w.b, den: w.t })
    }

    /// Decides `[a, s] = [b, t]`. Commutative presentations compare `a·t`
    /// with `b·s`. Otherwise a right witness `s·u = t·v` is searched in
    /// both orders and `a·u = b·v` is tested.
    pub fn eq(&self, f: &Fraction, g: &Fraction) -> Result<FractionEquality, OreError> {
        if f.num == g.num && f.den.value() == g.den.value() {
            let one = AlgebraElement::one(&self.presentation);
            return Ok(FractionEquality::Equal(EqualityCertificate { u: one.clone(), v: one, common: f.den.clone() }));
        }
        if self.presentation.is_commutative() {
            let (t, s) = (g.den.value(), f.den.value());
            return Ok(if f.num.mul(t)? == g.num.mul(s)? {
                FractionEquality::Equal(EqualityCertificate { u: t.clone(), v: s.clone(), common: f.den.then(&g.den)? })
            } else {
                FractionEquality::Distinct
            });
        }
        // t·t₁ = s·b₁: u = b₁, v = t₁
        if let OreSearch::Found(w) = self.solve_right(g.den.value(), &f.den)? {
            if f.num.mul(&w.b)? == g.num.mul(w.t.value())? {
                let v = w.t.value().clone();
                return Ok(FractionEquality::Equal(EqualityCertificate { u: w.b, v, common: g.den.then(&w.t)? }));
            }
        }
        // s·t₂ = t·b₂: u = t₂, v = b₂
        if let OreSearch::Found(w) = self.solve_right(f.den.value(), &g.den)? {
            if f.num.mul(w.t.value())? == g.num.mul(&w.b)? {
                let u = w.t.value().clone();
                return Ok(FractionEquality::Equal(EqualityCertificate { u, v: w.b, common: f.den.then(&w.t)? }));
            }
        }
        Ok(FractionEquality::NotEqualUpToBudget)
    }

    /// Checks `[1, u·s]·[u·a, 1] = [1, s]·[a, 1]`, where `us` is a stated
    /// factorisation of `u·s` in S.
    pub fn remark_mult_property_check(
        &self,
        a: &AlgebraElement,
        s: &SProduct,
        u: &AlgebraElement,
        us: &SProduct,
    ) -> Result<bool, OreError> {
        if u.mul(s.value())? != *us.value() {
            return Err(OreError::InvalidCertificate("u·s".into()));
        }
        let one = AlgebraElement::one(&self.presentation);
        let left = self.mul(&self.fraction(one.clone(), us.clone())?, &self.embed(&u.mul(a)?))?;
        let right = self.mul(&self.fraction(one, s.clone())?, &self.embed(a))?;
        Ok(self.eq(&left, &right)?.is_equal())
    }
}

/// Checks that a certificate really witnesses `[a, s] = [b, t]`.
pub fn verify_equality(f: &Fraction, g: &Fraction, cert: &EqualityCertificate) -> Result<bool, OreError> {
    let su = f.den.value().mul(&cert.u)?;
    let tv = g.den.value().mul(&cert.v)?;
    Ok(f.num.mul(&cert.u)? == g.num.mul(&cert.v)? && su == tv && su == *cert.common.value())
}
