//! Expression syntax trees and their printer.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use ores_core::Scalar;

/// A non-negative rational, optionally times `i`: `3`, `3/4`, `2i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Literal {
    pub value: BigRational,
    pub imaginary: bool,
}

impl Literal {
    pub fn integer(n: u64) -> Self {
        Literal { value: BigRational::from_integer(BigInt::from(n)), imaginary: false }
    }

    pub fn to_scalar(&self) -> Scalar {
        if self.imaginary {
            Scalar::new(BigRational::zero(), self.value.clone())
        } else {
            Scalar::real(self.value.clone())
        }
    }

    pub fn is_one(&self) -> bool {
        !self.imaginary && self.value.is_one()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_integer() {
            write!(f, "{}", self.value.numer())?;
        } else {
            write!(f, "{}/{}", self.value.numer(), self.value.denom())?;
        }
        if self.imaginary {
            f.write_str("i")?;
        }
        Ok(())
    }
}

/// Sums hold at least two items and subtracted items are wrapped in
/// [`Expr::Neg`]; products hold at least two factors; a product whose first
/// factor is a literal is a [`Expr::Scale`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Scalar(Literal),
    Gen(String),
    Dagger(Box<Expr>),
    Neg(Box<Expr>),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Scale(Literal, Box<Expr>),
    Paren(Box<Expr>),
    Frac(Box<Expr>, Vec<Expr>),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Sum,
    Term,
    Product,
    Factor,
}

impl Expr {
    fn level(&self) -> Level {
        match self {
            Expr::Sum(_) => Level::Sum,
            Expr::Neg(_) => Level::Term,
            Expr::Prod(_) | Expr::Scale(..) => Level::Product,
            _ => Level::Factor,
        }
    }

    /// The same tree with every [`Expr::Paren`] removed.
    pub fn strip_parens(&self) -> Expr {
        let b = |e: &Expr| Box::new(e.strip_parens());
        match self {
            Expr::Paren(e) => e.strip_parens(),
            Expr::Scalar(_) | Expr::Gen(_) => self.clone(),
            Expr::Dagger(e) => Expr::Dagger(b(e)),
            Expr::Neg(e) => Expr::Neg(b(e)),
            Expr::Sum(v) => Expr::Sum(v.iter().map(Expr::strip_parens).collect()),
            Expr::Prod(v) => Expr::Prod(v.iter().map(Expr::strip_parens).collect()),
            Expr::Scale(l, e) => Expr::Scale(l.clone(), b(e)),
            Expr::Frac(n, d) => Expr::Frac(b(n), d.iter().map(Expr::strip_parens).collect()),
        }
    }
}

/// Writes `e`, adding parentheses only where the tree could not otherwise
/// be read back.
fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: Level) -> fmt::Result {
    if e.level() < min {
        f.write_str("(")?;
        write_at(f, e, Level::Sum)?;
        return f.write_str(")");
    }
    match e {
        Expr::Scalar(l) => write!(f, "{l}"),
        Expr::Gen(g) => f.write_str(g),
        Expr::Dagger(inner) => {
            write_at(f, inner, Level::Factor)?;
            f.write_str("'")
        }
        Expr::Neg(inner) => {
            f.write_str("-")?;
            write_at(f, inner, Level::Term)
        }
        Expr::Sum(items) => {
            for (k, item) in items.iter().enumerate() {
                match (k, item) {
                    (0, _) => write_at(f, item, Level::Term)?,
                    (_, Expr::Neg(inner)) => {
                        f.write_str(" - ")?;
                        write_at(f, inner, Level::Term)?;
                    }
                    _ => {
                        f.write_str(" + ")?;
                        write_at(f, item, Level::Term)?;
                    }
                }
            }
            Ok(())
        }
        Expr::Prod(items) => {
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    f.write_str("*")?;
                }
                write_at(f, item, Level::Factor)?;
            }
            Ok(())
        }
        Expr::Scale(l, inner) => {
            write!(f, "{l}*")?;
            match inner.as_ref() {
                Expr::Prod(_) => write_at(f, inner, Level::Product),
                _ => write_at(f, inner, Level::Factor),
            }
        }
        Expr::Paren(inner) => {
            f.write_str("(")?;
            write_at(f, inner, Level::Sum)?;
            f.write_str(")")
        }
        Expr::Frac(num, den) => {
            f.write_str("frac(")?;
            write_at(f, num, Level::Sum)?;
            f.write_str("; ")?;
            for (k, d) in den.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write_at(f, d, Level::Sum)?;
            }
            f.write_str(")")
        }
    }
}

/// Canonical surface form: single spaces around `+` and `-`, none around
/// `*`, `; ` and `, ` inside `frac`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(f, self, Level::Sum)
    }
}
