use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::word::Word;
use super::{AlgebraError, PresentationError};
use crate::scalar::Scalar;

/// Upper bound on single-word rewrite steps inside one reduction. A
/// terminating presentation never gets near it at desk-scale degree caps.
const MAX_REWRITE_STEPS: usize = 2_000_000;

/// A rewrite rule `lhs → Σ cᵢ·wᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Vec<(Scalar, Word)>,
}

/// A finitely presented unital *-algebra over ℚ(i).
///
/// Construction verifies, up to `degree_cap`: that the dagger pairing is an
/// involution on generators, that rewriting terminates and all critical
/// pairs resolve, and that applying † to each rule yields a consequence of
/// the rules.
#[derive(Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    dagger: Vec<u16>,
    pairs: Vec<Vec<u16>>,
    rules: Vec<Rule>,
    degree_cap: usize,
    commutative: bool,
}

fn valid_name(name: &str) -> bool {
    let base = name.strip_suffix('\'').unwrap_or(name);
    let mut chars = base.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    /// `dagger_pairs` holds one entry per †-orbit: a singleton for a
    /// hermitian generator, a pair `[g, h]` for `g† = h`.
    pub fn new(
        generators: Vec<String>,
        dagger_pairs: Vec<Vec<String>>,
        rules: Vec<Rule>,
        degree_cap: usize,
    ) -> Result<Arc<Presentation>, PresentationError> {
        if generators.len() > u16::MAX as usize {
            return Err(PresentationError::TooManyGenerators);
        }
        let mut index: HashMap<&str, u16> = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if !valid_name(g) {
                return Err(PresentationError::InvalidName(g.clone()));
            }
            if index.insert(g.as_str(), i as u16).is_some() {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        let lookup = |name: &str| index.get(name).copied().ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()));

        let mut dagger: Vec<Option<u16>> = vec![None; generators.len()];
        let mut pairs = Vec::with_capacity(dagger_pairs.len());
        for pair in &dagger_pairs {
            let ids = pair.iter().map(|n| lookup(n)).collect::<Result<Vec<_>, _>>()?;
            let (g, h) = match ids.as_slice() {
                [g] => (*g, *g),
                [g, h] if g != h => (*g, *h),
                _ => return Err(PresentationError::DaggerPairing(format!("malformed pair {pair:?}"))),
            };
            for (from, to) in [(g, h), (h, g)] {
                if dagger[from as usize].replace(to).is_some_and(|prev| prev != to) {
                    return Err(PresentationError::DaggerPairing(format!(
                        "generator {} paired twice",
                        generators[from as usize]
                    )));
                }
            }
            pairs.push(ids);
        }
        let dagger = dagger
            .into_iter()
            .enumerate()
            .map(|(i, d)| d.ok_or_else(|| PresentationError::DaggerPairing(format!("generator {} is unpaired", generators[i]))))
            .collect::<Result<Vec<_>, _>>()?;
        // a primed name must be the partner of its unprimed base
        for (i, g) in generators.iter().enumerate() {
            if let Some(base) = g.strip_suffix('\'') {
                match index.get(base) {
                    Some(&b) if dagger[b as usize] == i as u16 => {}
                    _ => return Err(PresentationError::DaggerPairing(format!("{g} must be the partner of {base}"))),
                }
            }
        }

        let n = generators.len() as u16;
        for rule in &rules {
            if rule.lhs.is_empty() {
                return Err(PresentationError::EmptyLeftHandSide);
            }
            let words = std::iter::once(&rule.lhs).chain(rule.rhs.iter().map(|(_, w)| w));
            for w in words {
                if w.letters().iter().any(|&g| g >= n) {
                    return Err(PresentationError::UnknownGenerator(format!("index out of range in {w:?}")));
                }
                if w.len() > degree_cap {
                    return Err(PresentationError::Algebra(AlgebraError::DegreeOverflow { len: w.len(), cap: degree_cap }));
                }
            }
        }

        let mut p = Presentation { generators, dagger, pairs, rules, degree_cap, commutative: false };
        p.check_confluence()?;
        p.check_dagger_closed()?;
        p.commutative = p.detect_commutative()?;
        Ok(Arc::new(p))
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<u16> {
        self.generators.iter().position(|g| g == name).map(|i| i as u16)
    }

    pub fn generator_name(&self, g: u16) -> &str {
        &self.generators[g as usize]
    }

    pub fn dagger_of(&self, g: u16) -> u16 {
        self.dagger[g as usize]
    }

    pub fn is_hermitian_generator(&self, g: u16) -> bool {
        self.dagger[g as usize] == g
    }

    pub fn dagger_pairs(&self) -> &[Vec<u16>] {
        &self.pairs
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// Whether all generators pairwise commute (hence the whole algebra).
    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Reverses the word and maps each letter through the dagger pairing.
    /// The result is not necessarily in normal form.
    pub fn dagger_word(&self, w: &Word) -> Word {
        Word(w.letters().iter().rev().map(|&g| self.dagger[g as usize]).collect())
    }

    pub fn is_normal_word(&self, w: &Word) -> bool {
        self.first_redex(w).is_none()
    }

    fn first_redex(&self, w: &Word) -> Option<(usize, &Rule)> {
        for i in 0..w.len() {
            for rule in &self.rules {
                let l = rule.lhs.letters();
                if w.letters()[i..].starts_with(l) {
                    return Some((i, rule));
                }
            }
        }
        None
    }

    /// All irreducible words of length at most `max_len`, in deglex order.
    pub fn normal_words(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::unit()];
        let mut layer = vec![Word::unit()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..self.generators.len() as u16 {
                    let mut v = w.0.clone();
                    v.push(g);
                    let cand = Word(v);
                    // irreducible iff no rule ends at the new last letter
                    // (the prefix is already irreducible)
                    let ends_in_redex = self.rules.iter().any(|r| cand.letters().ends_with(r.lhs.letters()));
                    if !ends_in_redex {
                        next.push(cand);
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Rewrites a formal combination of words to normal form.
    pub fn reduce<I>(&self, raw: I) -> Result<BTreeMap<Word, Scalar>, AlgebraError>
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let mut pending: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, c) in raw {
            self.push_term(&mut pending, w, c)?;
        }
        let mut done: BTreeMap<Word, Scalar> = BTreeMap::new();
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.first_redex(&w) {
                None => {
                    let e = done.entry(w).or_insert_with(Scalar::zero);
                    *e += &c;
                }
                Some((at, rule)) => {
                    steps += 1;
                    if steps > MAX_REWRITE_STEPS {
                        return Err(AlgebraError::NonTerminating { word: w });
                    }
                    for (rc, rw) in &rule.rhs {
                        let nw = w.splice(at, rule.lhs.len(), rw);
                        self.push_term(&mut pending, nw, &c * rc)?;
                    }
                }
            }
        }
        done.retain(|_, c| !c.is_zero());
        Ok(done)
    }

    fn push_term(&self, into: &mut BTreeMap<Word, Scalar>, w: Word, c: Scalar) -> Result<(), AlgebraError> {
        if c.is_zero() {
            return Ok(());
        }
        if w.len() > self.degree_cap {
            return Err(AlgebraError::DegreeOverflow { len: w.len(), cap: self.degree_cap });
        }
        let e = into.entry(w).or_insert_with(Scalar::zero);
        *e += &c;
        Ok(())
    }

    fn rewrite_at(&self, w: &Word, at: usize, rule: &Rule) -> Vec<(Word, Scalar)> {
        rule.rhs.iter().map(|(c, rw)| (w.splice(at, rule.lhs.len(), rw), c.clone())).collect()
    }

    /// Resolves every overlap and inclusion ambiguity whose word fits under
    /// the degree cap. Ambiguities whose reductions overflow the cap cannot
    /// be decided here and are skipped.
    fn check_confluence(&self) -> Result<(), PresentationError> {
        let mut ambiguities: Vec<(Word, usize, usize, usize, usize)> = Vec::new();
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                let (li, lj) = (ri.lhs.letters(), rj.lhs.letters());
                // suffix of lhs_i equals prefix of lhs_j
                for k in 1..li.len().min(lj.len() + 1) {
                    if k >= li.len() || k > lj.len() {
                        continue;
                    }
                    if li[li.len() - k..] == lj[..k] {
                        let w = Word(li.iter().chain(&lj[k..]).copied().collect());
                        ambiguities.push((w, i, 0, j, li.len() - k));
                    }
                }
                // lhs_j strictly inside lhs_i
                if i != j && lj.len() <= li.len() {
                    let mut from = 0;
                    while let Some(p) = ri.lhs.find(lj, from) {
                        ambiguities.push((ri.lhs.clone(), i, 0, j, p));
                        from = p + 1;
                    }
                }
            }
        }
        for (w, i, pi, j, pj) in ambiguities {
            if w.len() > self.degree_cap {
                continue;
            }
            let left = self.reduce(self.rewrite_at(&w, pi, &self.rules[i]));
            let right = self.reduce(self.rewrite_at(&w, pj, &self.rules[j]));
            match (left, right) {
                (Ok(l), Ok(r)) if l != r => return Err(PresentationError::NotConfluent { word: w }),
                (Err(AlgebraError::NonTerminating { word }), _) | (_, Err(AlgebraError::NonTerminating { word })) => {
                    return Err(PresentationError::NonTerminating { word })
                }
                _ => {}
            }
        }
        for rule in &self.rules {
            if let Err(AlgebraError::NonTerminating { word }) = self.reduce([(rule.lhs.clone(), Scalar::one())]) {
                return Err(PresentationError::NonTerminating { word });
            }
        }
        Ok(())
    }

    fn check_dagger_closed(&self) -> Result<(), PresentationError> {
        for (k, rule) in self.rules.iter().enumerate() {
            let lhs = self.reduce([(self.dagger_word(&rule.lhs), Scalar::one())])?;
            let rhs = self.reduce(rule.rhs.iter().map(|(c, w)| (self.dagger_word(w), c.conj())))?;
            if lhs != rhs {
                return Err(PresentationError::NotDaggerClosed { rule: k });
            }
        }
        Ok(())
    }

    fn detect_commutative(&self) -> Result<bool, PresentationError> {
        if self.degree_cap < 2 {
            return Ok(self.generators.len() <= 1);
        }
        let n = self.generators.len() as u16;
        for g in 0..n {
            for h in (g + 1)..n {
                let gh = self.reduce([(Word(vec![g, h]), Scalar::one())])?;
                let hg = self.reduce([(Word(vec![h, g]), Scalar::one())])?;
                if gh != hg {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn rejects_non_involutive_pairing() {
        let err = Presentation::new(names(&["a", "b"]), vec![names(&["a", "b"]), names(&["b"])], vec![], 4).unwrap_err();
        assert!(matches!(err, PresentationError::DaggerPairing(_)));
    }

    #[test]
    fn rejects_unpaired_generator() {
        let err = Presentation::new(names(&["a", "b"]), vec![names(&["a"])], vec![], 4).unwrap_err();
        assert!(matches!(err, PresentationError::DaggerPairing(_)));
    }

    #[test]
    fn rejects_non_confluent_rules() {
        // x·x → y and x·x·x has two reductions: y·x and x·y, with y·x ≠ x·y irreducible
        let rule = Rule { lhs: Word(vec![0, 0]), rhs: vec![(Scalar::one(), Word(vec![1]))] };
        let err = Presentation::new(names(&["x", "y"]), vec![names(&["x"]), names(&["y"])], vec![rule], 6).unwrap_err();
        assert!(matches!(err, PresentationError::NotConfluent { .. }));
    }

    #[test]
    fn rejects_rule_that_is_not_dagger_closed() {
        // x·y → i with x, y hermitian: the dagger image y·x → -i is not derivable
        let rule = Rule { lhs: Word(vec![0, 1]), rhs: vec![(Scalar::i(), Word(vec![]))] };
        let err = Presentation::new(names(&["x", "y"]), vec![names(&["x"]), names(&["y"])], vec![rule], 6).unwrap_err();
        assert!(matches!(err, PresentationError::NotDaggerClosed { rule: 0 }));
    }

    #[test]
    fn detects_non_termination() {
        let rule = Rule { lhs: Word(vec![0]), rhs: vec![(Scalar::one(), Word(vec![0]))] };
        let err = Presentation::new(names(&["x"]), vec![names(&["x"])], vec![rule], 4).unwrap_err();
        assert!(matches!(err, PresentationError::NonTerminating { .. }));
    }

    #[test]
    fn normal_words_skip_reducible() {
        let rule = Rule { lhs: Word(vec![1, 0]), rhs: vec![(Scalar::one(), Word(vec![0, 1]))] };
        let p = Presentation::new(names(&["x", "y"]), vec![names(&["x"]), names(&["y"])], vec![rule], 6).unwrap();
        let ws = p.normal_words(2);
        assert_eq!(ws.len(), 1 + 2 + 3);
        assert!(ws.iter().all(|w| p.is_normal_word(w)));
        assert!(p.is_commutative());
    }
}
