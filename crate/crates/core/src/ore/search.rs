//! Bounded search for Ore witnesses.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::sproduct::{SFactor, SProduct};
use super::modp::Gf;
use super::OreBudget;
use crate::algebra::{AlgebraElement, AlgebraError, Presentation, Word};
use crate::scalar::Scalar;

type Sparse = BTreeMap<Word, Scalar>;

/// Decides membership in the right ideal `s·A`, for quotients of degree at
/// most `cap − deg s`. The images `s·w` are triangularised once by leading
/// word; a query is then divided out term by term from the top.
pub(crate) struct RightIdeal {
    presentation: Arc<Presentation>,
    /// leading word ↦ (image, quotient), the image monic in its leading word
    pivots: BTreeMap<Word, (Sparse, Sparse)>,
}

fn axpy(into: &mut Sparse, factor: &Scalar, x: &Sparse) {
    for (w, c) in x {
        let e = into.entry(w.clone()).or_insert_with(Scalar::zero);
        *e = &*e + &(factor * c);
        if e.is_zero() {
            into.remove(w);
        }
    }
}

impl RightIdeal {
    pub(crate) fn new(s: &AlgebraElement) -> Result<Self, AlgebraError> {
        let p = s.presentation();
        let room = p.degree_cap().saturating_sub(s.degree());
        let mut ideal = RightIdeal { presentation: p.clone(), pivots: BTreeMap::new() };
        for w in p.normal_words(room) {
            let image = match s.mul(&AlgebraElement::word(p, w.clone())?) {
                Ok(col) => col.terms().clone(),
                Err(AlgebraError::DegreeOverflow { .. }) => continue,
                Err(e) => return Err(e),
            };
            let (mut image, mut quotient) = (image, Sparse::from([(w, Scalar::one())]));
            ideal.reduce(&mut image, &mut quotient);
            if let Some((lead, c)) = image.last_key_value() {
                let inv = c.inv().expect("leading coefficient is nonzero");
                let lead = lead.clone();
                image.values_mut().for_each(|v| *v = &*v * &inv);
                quotient.values_mut().for_each(|v| *v = &*v * &inv);
                ideal.pivots.insert(lead, (image, quotient));
            }
        }
        Ok(ideal)
    }

    /// Divides by pivots while the leading word of `c` has one.
    fn reduce(&self, c: &mut Sparse, quotient: &mut Sparse) {
        while let Some((lead, coef)) = c.last_key_value() {
            let Some((image, q)) = self.pivots.get(lead) else { return };
            let factor = -coef.clone();
            axpy(c, &factor, image);
            axpy(quotient, &factor, q);
        }
    }

    /// The remainder of `c` after dividing out every pivot it contains.
    /// Linear in `c`, and zero exactly when `c` lies in the searched range
    /// of `s·A`.
    fn remainder(&self, c: &Sparse) -> Sparse {
        let mut rest = c.clone();
        let mut out = Sparse::new();
        while let Some((lead, coef)) = rest.pop_last() {
            match self.pivots.get(&lead) {
                Some((image, _)) => {
                    let mut tail = image.clone();
                    tail.pop_last();
                    axpy(&mut rest, &-coef, &tail);
                }
                None => {
                    out.insert(lead, coef);
                }
            }
        }
        out
    }

    /// `b` with `s·b = c`, if one exists in the searched range.
    pub(crate) fn quotient(&self, c: &AlgebraElement) -> Option<AlgebraElement> {
        let mut rest = c.terms().clone();
        let mut q = Sparse::new();
        self.reduce(&mut rest, &mut q);
        if !rest.is_empty() {
            return None;
        }
        let b = q.into_iter().map(|(w, v)| (w, -v));
        AlgebraElement::normalize(&self.presentation, b).ok()
    }
}

/// The factor alphabet: `1 + p†p` for every nonempty normal monomial `p` of
/// degree at most `max_degree`, then for `p = wᵢ ± wⱼ` over pairs of normal
/// words (the unit included), dropping repeated factor values.
pub(crate) fn factor_alphabet(p: &Arc<Presentation>, max_degree: usize) -> Result<Vec<SFactor>, AlgebraError> {
    let words = p.normal_words(max_degree);
    let monomials = words
        .iter()
        .map(|w| AlgebraElement::word(p, w.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut ps: Vec<AlgebraElement> = monomials[1..].to_vec();
    for i in 0..monomials.len() {
        for j in i + 1..monomials.len() {
            ps.push(monomials[i].add(&monomials[j])?);
            ps.push(monomials[i].sub(&monomials[j])?);
        }
    }
    let mut out: Vec<SFactor> = Vec::with_capacity(ps.len());
    for q in ps {
        let f = SFactor::new(q)?;
        if !out.iter().any(|g| g.value() == f.value()) {
            out.push(f);
        }
    }
    Ok(out)
}

/// Searches `t` in a fixed order: the empty product, then `s` itself, then
/// all ordered products of one to `max_factors` alphabet factors whose
/// degrees fit under the cap together with `a`. The first `t` in that order
/// for which `a·t ∈ s·A` wins, whatever the thread count.
///
/// For a product `f₁⋯f_k` the prefix `u = a·f₁⋯f_{k−1}` is formed exactly
/// and `u·f_k` is screened through the linear remainder map, memoised on
/// the words `w·v` and reduced mod a large prime. The screen only discards
/// candidates that are certainly outside `s·A`; survivors are decided
/// exactly.
pub(crate) fn right_witness(
    a: &AlgebraElement,
    s: &SProduct,
    budget: &OreBudget,
) -> Result<Option<(AlgebraElement, SProduct)>, AlgebraError> {
    let p = a.presentation();
    let cap = p.degree_cap();
    let ideal = RightIdeal::new(s.value())?;
    let exact = |t: SProduct| -> Option<(AlgebraElement, SProduct)> {
        if a.degree() + t.value().degree() > cap {
            return None;
        }
        let c = a.mul(t.value()).ok()?;
        let b = ideal.quotient(&c)?;
        (s.value().mul(&b).ok()? == c).then_some((b, t))
    };

    if let Some(hit) = exact(SProduct::one(p)) {
        return Ok(Some(hit));
    }
    if !s.is_empty() {
        if let Some(hit) = exact(s.clone()) {
            return Ok(Some(hit));
        }
    }
    let alphabet = factor_alphabet(p, budget.max_degree)?;
    let n = alphabet.len();
    let room = cap.saturating_sub(a.degree());
    // prefixes a·f₁⋯f_{k−1}, with their summed factor degree
    let mut prefixes: Vec<(Vec<usize>, usize, AlgebraElement)> = vec![(Vec::new(), 0, a.clone())];
    for k in 1..=budget.max_factors {
        // remainders of the words w·v, reduced mod p over an index of the
        // words they use; `None` where some coefficient is not p-integral
        let mut index: BTreeMap<Word, usize> = BTreeMap::new();
        let mut remainders: BTreeMap<Word, Option<Vec<(usize, Gf)>>> = BTreeMap::new();
        for (_, deg, u) in &prefixes {
            for f in alphabet.iter().filter(|f| deg + f.value().degree() <= room) {
                for w in u.terms().keys() {
                    for v in f.value().terms().keys() {
                        let key = w.concat(v);
                        if remainders.contains_key(&key) {
                            continue;
                        }
                        let nf = p.reduce([(key.clone(), Scalar::one())])?;
                        let reduced = ideal
                            .remainder(&nf)
                            .into_iter()
                            .map(|(w, c)| {
                                let next = index.len();
                                Some((*index.entry(w).or_insert(next), Gf::reduce(&c)?))
                            })
                            .collect();
                        remainders.insert(key, reduced);
                    }
                }
            }
        }
        // false only when u·f provably lies outside s·A
        let member = |u: &AlgebraElement, f: &SFactor| {
            let mut acc = vec![Gf::default(); index.len()];
            for (w, cw) in u.terms() {
                for (v, cv) in f.value().terms() {
                    let (Some(c), Some(r)) = ((|| Some(Gf::reduce(cw)?.mul(Gf::reduce(cv)?)))(), &remainders[&w.concat(v)])
                    else {
                        return true;
                    };
                    for &(i, x) in r {
                        acc[i] = acc[i].add(c.mul(x));
                    }
                }
            }
            acc.iter().all(|x| x.is_zero())
        };
        let total = prefixes.len() * n;
        let hit = (0..total).into_par_iter().find_map_first(|idx| {
            let (picked, deg, u) = &prefixes[idx / n];
            let f = &alphabet[idx % n];
            if deg + f.value().degree() > room || !member(u, f) {
                return None;
            }
            let factors = picked.iter().chain([&(idx % n)]).map(|&i| alphabet[i].clone()).collect();
            exact(SProduct::from_factors(p, factors).ok()?)
        });
        if hit.is_some() || k == budget.max_factors {
            return Ok(hit);
        }
        let next = prefixes
            .par_iter()
            .flat_map_iter(|(picked, deg, u)| {
                alphabet.iter().enumerate().filter_map(move |(i, f)| {
                    let deg = deg + f.value().degree();
                    if deg > room {
                        return None;
                    }
                    let mut picked = picked.clone();
                    picked.push(i);
                    Some(u.mul(f.value()).map(|v| (picked, deg, v)))
                })
            })
            .collect::<Result<Vec<_>, _>>();
        prefixes = match next {
            Ok(next) => next,
            Err(AlgebraError::DegreeOverflow { .. }) => break,
            Err(e) => return Err(e),
        };
    }
    Ok(None)
}
