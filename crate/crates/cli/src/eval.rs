//! Evaluation of expression trees to algebra elements and fractions.

use std::fmt;

use ores_core::ore::{Fraction, Localization, OreError, SProduct};
use ores_core::{AlgebraElement, AlgebraError, Scalar};
use thiserror::Error;

use super::ast::Expr;
use super::parser::{parse, SyntaxError};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("syntax error at {0}")]
    Syntax(#[from] SyntaxError),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("denominator factor {0} is not of the form 1 + p'*p")]
    BadFactor(String),
    #[error("expected an element, found the fraction {0}")]
    NotAnElement(String),
    #[error("expected a scalar, found {0}")]
    NotAScalar(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ore(#[from] OreError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Element(AlgebraElement),
    Fraction(Fraction),
}

impl Value {
    pub fn into_fraction(self, loc: &Localization) -> Fraction {
        match self {
            Value::Element(a) => loc.embed(&a),
            Value::Fraction(f) => f,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Element(a) => write!(f, "{a}"),
            Value::Fraction(x) => write!(f, "{}", FractionDisplay(x)),
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// `1 + p'*p` in a form that [`Evaluator`] reads back to the same `p`.
pub fn factor_string(p: &AlgebraElement) -> String {
    let s = p.to_string();
    if p.is_zero() {
        "1".into()
    } else if let Some(d) = p.dagger().ok().map(|d| d.to_string()).filter(|d| is_identifier(&s) && is_identifier(d)) {
        format!("1 + {d}*{s}")
    } else if is_identifier(&s) {
        format!("1 + {s}'*{s}")
    } else {
        format!("1 + ({s})'*({s})")
    }
}

/// `frac(a; 1 + p₁'*p₁, …)`; `frac(a; 1)` for an empty denominator.
pub struct FractionDisplay<'a>(pub &'a Fraction);

impl fmt::Display for FractionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.0.den();
        let factors: Vec<String> = if den.is_empty() {
            vec!["1".into()]
        } else {
            den.factors().iter().map(|x| factor_string(x.p())).collect()
        };
        write!(f, "frac({}; {})", self.0.num(), factors.join(", "))
    }
}

/// Evaluates trees over the presentation of a localization, using its
/// Ore budget for fraction arithmetic.
pub struct Evaluator<'a> {
    loc: &'a Localization,
}

impl<'a> Evaluator<'a> {
    pub fn new(loc: &'a Localization) -> Self {
        Evaluator { loc }
    }

    pub fn parse_value(&self, text: &str) -> Result<Value, EvalError> {
        self.eval(&parse(text)?)
    }

    pub fn parse_element(&self, text: &str) -> Result<AlgebraElement, EvalError> {
        match self.parse_value(text)? {
            Value::Element(a) => Ok(a),
            Value::Fraction(f) => Err(EvalError::NotAnElement(FractionDisplay(&f).to_string())),
        }
    }

    pub fn parse_fraction(&self, text: &str) -> Result<Fraction, EvalError> {
        Ok(self.parse_value(text)?.into_fraction(self.loc))
    }

    pub fn eval(&self, e: &Expr) -> Result<Value, EvalError> {
        let p = self.loc.presentation();
        let loc = self.loc;
        Ok(match e {
            Expr::Scalar(l) => Value::Element(AlgebraElement::constant(p, l.to_scalar())),
            Expr::Gen(name) => Value::Element(
                AlgebraElement::generator(p, name).map_err(|_| EvalError::UnknownGenerator(name.clone()))?,
            ),
            Expr::Paren(inner) => self.eval(inner)?,
            Expr::Dagger(inner) => match self.eval(inner)? {
                Value::Element(a) => Value::Element(a.dagger()?),
                Value::Fraction(f) => Value::Fraction(loc.dagger(&f)?),
            },
            Expr::Neg(inner) => match self.eval(inner)? {
                Value::Element(a) => Value::Element(a.neg()),
                Value::Fraction(f) => Value::Fraction(loc.add(&-Scalar::one(), &f, &loc.zero())?),
            },
            Expr::Scale(l, inner) => match self.eval(inner)? {
                Value::Element(a) => Value::Element(a.scale(&l.to_scalar())),
                Value::Fraction(f) => Value::Fraction(loc.add(&l.to_scalar(), &f, &loc.zero())?),
            },
            Expr::Sum(items) => self.fold(items, |x, y| Ok(x.add(y)?), |f, g| Ok(loc.add(&Scalar::one(), f, g)?))?,
            Expr::Prod(items) => self.fold(items, |x, y| Ok(x.mul(y)?), |f, g| Ok(loc.mul(f, g)?))?,
            Expr::Frac(num, den) => {
                let mut ps = Vec::new();
                for d in den {
                    if let Some(p) = self.factor_p(d)? {
                        ps.push(p);
                    }
                }
                let s = SProduct::new(p, ps)?;
                match self.eval(num)? {
                    Value::Element(a) => Value::Fraction(loc.fraction(a, s)?),
                    Value::Fraction(g) => Value::Fraction(loc.mul(&g, &loc.fraction(AlgebraElement::one(p), s)?)?),
                }
            }
        })
    }

    fn fold(
        &self,
        items: &[Expr],
        elem: impl Fn(&AlgebraElement, &AlgebraElement) -> Result<AlgebraElement, EvalError>,
        frac: impl Fn(&Fraction, &Fraction) -> Result<Fraction, EvalError>,
    ) -> Result<Value, EvalError> {
        let mut acc: Option<Value> = None;
        for item in items {
            let v = self.eval(item)?;
            acc = Some(match (acc, v) {
                (None, v) => v,
                (Some(Value::Element(x)), Value::Element(y)) => Value::Element(elem(&x, &y)?),
                (Some(x), y) => Value::Fraction(frac(&x.into_fraction(self.loc), &y.into_fraction(self.loc))?),
            });
        }
        Ok(acc.expect("sums and products are nonempty"))
    }

    /// Reads `p` back from a factor `1 + q*p` (summands in either order)
    /// where `q` evaluates to `p'`. A bare `1` contributes no factor.
    fn factor_p(&self, d: &Expr) -> Result<Option<AlgebraElement>, EvalError> {
        let bad = || EvalError::BadFactor(d.to_string());
        let mut e = d;
        while let Expr::Paren(inner) = e {
            e = inner;
        }
        let items = match e {
            Expr::Scalar(l) if l.is_one() => return Ok(None),
            Expr::Sum(items) if items.len() == 2 => items,
            _ => return Err(bad()),
        };
        let square = match (&items[0], &items[1]) {
            (Expr::Scalar(l), sq) | (sq, Expr::Scalar(l)) if l.is_one() => sq,
            _ => return Err(bad()),
        };
        let Expr::Prod(pair) = square else { return Err(bad()) };
        let [left, right] = pair.as_slice() else { return Err(bad()) };
        let p = self.element(right)?;
        if self.element(left)? == p.dagger()? {
            Ok(Some(p))
        } else {
            Err(bad())
        }
    }

    fn element(&self, e: &Expr) -> Result<AlgebraElement, EvalError> {
        match self.eval(e)? {
            Value::Element(a) => Ok(a),
            Value::Fraction(f) => Err(EvalError::NotAnElement(FractionDisplay(&f).to_string())),
        }
    }
}

/// A constant expression without generators, such as `1/2 - 3i`.
pub fn eval_scalar(e: &Expr) -> Result<Scalar, EvalError> {
    let not = || EvalError::NotAScalar(e.to_string());
    Ok(match e {
        Expr::Scalar(l) => l.to_scalar(),
        Expr::Paren(inner) => eval_scalar(inner)?,
        Expr::Neg(inner) => -eval_scalar(inner)?,
        Expr::Dagger(inner) => eval_scalar(inner)?.conj(),
        Expr::Scale(l, inner) => &l.to_scalar() * &eval_scalar(inner)?,
        Expr::Sum(items) => items.iter().try_fold(Scalar::zero(), |acc, x| Ok::<_, EvalError>(&acc + &eval_scalar(x)?))?,
        Expr::Prod(items) => items.iter().try_fold(Scalar::one(), |acc, x| Ok::<_, EvalError>(&acc * &eval_scalar(x)?))?,
        Expr::Gen(_) | Expr::Frac(..) => return Err(not()),
    })
}

/// Comma-separated scalars: `1, 0, 1/2 - 1i`.
pub fn parse_scalars(text: &str) -> Result<Vec<Scalar>, EvalError> {
    text.split(',').map(|part| eval_scalar(&parse(part)?)).collect()
}
