//! The JSON presentation file format.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::presentation::{Presentation, Rule};
use super::word::Word;
use super::PresentationError;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    pub dagger_pairs: Vec<Vec<String>>,
    pub relations: Vec<RelationEntry>,
    pub degree_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationEntry {
    pub lhs: Vec<String>,
    pub rhs: Vec<RhsTerm>,
}

/// `coeff` is `[re_num, re_den, im_num, im_den]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhsTerm {
    pub coeff: [i64; 4],
    pub word: Vec<String>,
}

impl PresentationFile {
    pub fn from_json(text: &str) -> Result<Self, PresentationError> {
        serde_json::from_str(text).map_err(|e| PresentationError::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("presentation file serialises");
        s.push('\n');
        s
    }

    pub fn build(&self) -> Result<Arc<Presentation>, PresentationError> {
        let index = |name: &String| {
            self.generators
                .iter()
                .position(|g| g == name)
                .map(|i| i as u16)
                .ok_or_else(|| PresentationError::UnknownGenerator(name.clone()))
        };
        let word = |names: &[String]| names.iter().map(index).collect::<Result<Vec<_>, _>>().map(Word);
        let mut rules = Vec::with_capacity(self.relations.len());
        for rel in &self.relations {
            let mut rhs = Vec::with_capacity(rel.rhs.len());
            for t in &rel.rhs {
                let [a, b, c, d] = t.coeff;
                if b == 0 || d == 0 {
                    return Err(PresentationError::ZeroDenominator);
                }
                rhs.push((Scalar::from_parts(a, b, c, d), word(&t.word)?));
            }
            rules.push(Rule { lhs: word(&rel.lhs)?, rhs });
        }
        Presentation::new(self.generators.clone(), self.dagger_pairs.clone(), rules, self.degree_cap)
    }
}

impl Presentation {
    /// The file form of this presentation. Coefficients are written in
    /// lowest terms; feeding the result back through [`PresentationFile::build`]
    /// and serialising again reproduces it byte for byte.
    pub fn to_file(&self) -> PresentationFile {
        let names = |w: &Word| w.letters().iter().map(|&g| self.generator_name(g).to_string()).collect::<Vec<_>>();
        PresentationFile {
            generators: self.generators().to_vec(),
            dagger_pairs: self
                .dagger_pairs()
                .iter()
                .map(|p| p.iter().map(|&g| self.generator_name(g).to_string()).collect())
                .collect(),
            relations: self
                .rules()
                .iter()
                .map(|r| RelationEntry {
                    lhs: names(&r.lhs),
                    rhs: r
                        .rhs
                        .iter()
                        .map(|(c, w)| RhsTerm { coeff: c.to_parts().expect("rule coefficients fit in i64"), word: names(w) })
                        .collect(),
                })
                .collect(),
            degree_cap: self.degree_cap(),
        }
    }
}
