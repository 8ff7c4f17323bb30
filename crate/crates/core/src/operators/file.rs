//! The JSON operator spec format.

use serde::{Deserialize, Serialize};

use super::banded::BandedOperator;
use super::formula::Formula;
use super::poly::Poly;
use super::OperatorError;
use crate::scalar::Scalar;

/// Coefficients are `[re_num, re_den, im_num, im_den]`, lowest degree
/// first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FormulaSpec {
    Const { value: [i64; 4] },
    Poly { coeffs: Vec<[i64; 4]> },
    SqrtPoly { coeffs: Vec<[i64; 4]> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandSpec {
    pub offset: i64,
    pub formula: FormulaSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSpec {
    pub bands: Vec<BandSpec>,
}

fn scalar(c: &[i64; 4]) -> Result<Scalar, OperatorError> {
    if c[1] == 0 || c[3] == 0 {
        return Err(OperatorError::Format("zero denominator".into()));
    }
    Ok(Scalar::from_parts(c[0], c[1], c[2], c[3]))
}

fn poly(cs: &[[i64; 4]]) -> Result<Poly, OperatorError> {
    Ok(Poly::new(cs.iter().map(scalar).collect::<Result<_, _>>()?))
}

impl OperatorSpec {
    pub fn from_json(text: &str) -> Result<Self, OperatorError> {
        serde_json::from_str(text).map_err(|e| OperatorError::Format(e.to_string()))
    }

    pub fn build(&self) -> Result<BandedOperator, OperatorError> {
        let mut bands = Vec::with_capacity(self.bands.len());
        for b in &self.bands {
            let f = match &b.formula {
                FormulaSpec::Const { value } => Formula::constant(scalar(value)?),
                FormulaSpec::Poly { coeffs } => Formula::poly(poly(coeffs)?),
                FormulaSpec::SqrtPoly { coeffs } => {
                    let q = poly(coeffs)?;
                    if !q.is_real() {
                        return Err(OperatorError::Format("radicand must be real".into()));
                    }
                    Formula::sqrt_poly(q)
                }
            };
            bands.push((b.offset, f));
        }
        Ok(BandedOperator::from_bands(bands))
    }
}
