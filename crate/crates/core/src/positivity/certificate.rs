use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::algebra::{AlgebraElement, AlgebraError};
use crate::ore::{Fraction, Localization, OreError, SProduct};
use crate::scalar::Scalar;

/// `Σ λᵢ·aᵢ†aᵢ` with every `λᵢ > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PositivityCertificate {
    pub terms: Vec<(BigRational, AlgebraElement)>,
}

impl PositivityCertificate {
    pub fn new(terms: Vec<(BigRational, AlgebraElement)>) -> Self {
        PositivityCertificate { terms }
    }

    /// The certified element; `None` for an empty certificate.
    pub fn element(&self) -> Result<Option<AlgebraElement>, AlgebraError> {
        let mut acc: Option<AlgebraElement> = None;
        for (lambda, a) in &self.terms {
            let term = a.dagger()?.mul(a)?.scale(&Scalar::real(lambda.clone()));
            acc = Some(match acc {
                None => term,
                Some(x) => x.add(&term)?,
            });
        }
        Ok(acc)
    }
}

/// Exact check that `x = Σ λᵢ·aᵢ†aᵢ` with positive `λᵢ`.
pub fn verify_certificate(x: &AlgebraElement, c: &PositivityCertificate) -> Result<bool, AlgebraError> {
    if c.terms.iter().any(|(l, _)| !l.is_positive()) {
        return Ok(false);
    }
    Ok(match c.element()? {
        Some(e) => e == *x,
        None => x.is_zero(),
    })
}

/// `(1 + p†p)² − 1 = 2·p†p + (p†p)†(p†p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorCertificate {
    pub p: AlgebraElement,
    pub excess: AlgebraElement,
    pub certificate: PositivityCertificate,
}

pub fn factor_certificate(p: &AlgebraElement) -> Result<FactorCertificate, AlgebraError> {
    let s = p.one_plus_dagger_square()?;
    let excess = s.mul(&s)?.sub(&AlgebraElement::one(p.presentation()))?;
    let pp = p.dagger()?.mul(p)?;
    let two = BigRational::from_integer(2.into());
    let certificate = PositivityCertificate::new(vec![(two, p.clone()), (BigRational::one(), pp)]);
    Ok(FactorCertificate { p: p.clone(), excess, certificate })
}

/// The dominator `b†b` of the left fraction `t⁻¹b`, with one factor
/// certificate per factor of `t`, in factor order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofinalDominator {
    pub numerator: AlgebraElement,
    pub denominator: SProduct,
    pub dominator: AlgebraElement,
    pub chain: Vec<FactorCertificate>,
}

impl CofinalDominator {
    pub fn verify(&self) -> Result<bool, AlgebraError> {
        if self.dominator != self.numerator.dagger()?.mul(&self.numerator)? {
            return Ok(false);
        }
        if self.chain.len() != self.denominator.len() {
            return Ok(false);
        }
        for (c, f) in self.chain.iter().zip(self.denominator.factors()) {
            if c.p != *f.p() || !verify_certificate(&c.excess, &c.certificate)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// For `s⁻¹a` given directly in left position.
pub fn cofinal_dominator_left(a: &AlgebraElement, s: &SProduct) -> Result<CofinalDominator, AlgebraError> {
    let chain = s.factors().iter().map(|f| factor_certificate(f.p())).collect::<Result<Vec<_>, _>>()?;
    Ok(CofinalDominator {
        numerator: a.clone(),
        denominator: s.clone(),
        dominator: a.dagger()?.mul(a)?,
        chain,
    })
}

/// Rewrites `a·s⁻¹` as `t⁻¹b` using a left witness `t·a = b·s`, then
/// dominates it by `b†b`.
pub fn cofinal_dominator(loc: &Localization, f: &Fraction) -> Result<CofinalDominator, OreError> {
    let w = loc.solve_left(f.num(), f.den())?.found().ok_or(OreError::OreWitnessNotFound)?;
    Ok(cofinal_dominator_left(&w.b, &w.t)?)
}
