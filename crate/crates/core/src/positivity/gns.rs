use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::moments::{check_state_axioms, MomentFunctional};
use super::StateError;
use crate::algebra::{AlgebraElement, Presentation, Word};
use crate::scalar::Scalar;

/// The GNS representation of a moment functional of degree `d`, on the
/// quotient `V_d` of words of degree at most `d` by the null vectors.
///
/// Coordinates are taken in the orthonormal basis obtained by Gram–Schmidt
/// on the surviving words in deglex order, so `V_k` is always spanned by a
/// prefix of the basis. Generator matrices act `V_{d−1} → V_d`.
#[derive(Clone, Debug)]
pub struct GnsRepresentation {
    presentation: Arc<Presentation>,
    degree: usize,
    basis_words: Vec<Word>,
    layer_dims: Vec<usize>,
    matrices: Vec<DMatrix<Complex64>>,
}

/// Ordered LDL* of the Gram matrix: `S` keeps the words whose Schur pivot
/// survives, `y(v) = L⁻¹·G[S, v]` is exact, and `c(v) = D^{-1/2}·y(v)`.
struct Factorisation {
    selected: Vec<usize>,
    l: Vec<Vec<Scalar>>,
    d: Vec<Scalar>,
}

impl Factorisation {
    fn new(g: &crate::linalg::ExactMatrix) -> Result<Self, StateError> {
        let mut f = Factorisation { selected: Vec::new(), l: Vec::new(), d: Vec::new() };
        for k in 0..g.rows() {
            let y = f.forward(g, k);
            let mut pivot = g.get(k, k).clone();
            for (yi, di) in y.iter().zip(&f.d) {
                pivot = &pivot - &Scalar::real(yi.norm_sqr() / &di.re);
            }
            if pivot.is_zero() {
                continue;
            }
            if pivot.re < num_traits::Zero::zero() {
                return Err(StateError::NotAState(format!("negative pivot at word index {k}")));
            }
            let row = y.iter().zip(&f.d).map(|(yi, di)| &yi.conj() / di).collect();
            f.selected.push(k);
            f.l.push(row);
            f.d.push(pivot);
        }
        Ok(f)
    }

    /// `L_S⁻¹ · G[S, k]` by forward substitution with the unit lower factor.
    fn forward(&self, g: &crate::linalg::ExactMatrix, k: usize) -> Vec<Scalar> {
        let mut y: Vec<Scalar> = Vec::with_capacity(self.selected.len());
        for (i, &si) in self.selected.iter().enumerate() {
            let mut v = g.get(si, k).clone();
            for (j, yj) in y.iter().enumerate() {
                v = &v - &(&self.l[i][j] * yj);
            }
            y.push(v);
        }
        y
    }
}

/// The GNS construction. Requires `d ≥ 1` and a table passing
/// [`check_state_axioms`].
pub fn gns(f: &MomentFunctional) -> Result<GnsRepresentation, StateError> {
    let d = f.degree();
    if d < 1 {
        return Err(StateError::InsufficientDegree);
    }
    let report = check_state_axioms(f)?;
    if !report.passes() {
        return Err(StateError::NotAState(format!("{report:?}")));
    }
    let p = f.presentation().clone();
    let words = f.gram_words();
    let g = f.gram_matrix()?;
    let fac = Factorisation::new(&g)?;
    let rank = fac.selected.len();
    let basis_words: Vec<Word> = fac.selected.iter().map(|&i| words[i].clone()).collect();
    let layer_dims: Vec<usize> = (0..=d).map(|k| basis_words.iter().filter(|w| w.len() <= k).count()).collect();
    let window = layer_dims[d - 1];

    // columns y(w) for every Gram word, in exact arithmetic
    let index: std::collections::BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let y_of_word: Vec<Vec<Scalar>> = (0..words.len()).map(|k| fac.forward(&g, k)).collect();
    let y_of = |e: &AlgebraElement| -> Result<Vec<Scalar>, StateError> {
        let mut acc = vec![Scalar::zero(); rank];
        for (w, c) in e.terms() {
            let &k = index.get(w).ok_or(StateError::WindowExceeded)?;
            for (a, v) in acc.iter_mut().zip(&y_of_word[k]) {
                *a += &(c * v);
            }
        }
        Ok(acc)
    };

    // y on the window basis is upper triangular: y(S_m) = D·L*[:, m]
    let top: Vec<&Vec<Scalar>> = fac.selected[..window].iter().map(|&i| &y_of_word[i]).collect();
    let mut matrices = Vec::with_capacity(p.generator_count());
    for gen in 0..p.generator_count() as u16 {
        let gw = AlgebraElement::word(&p, Word::letter(gen))?;
        // K·y_top = y(g·S): solve column by column
        let mut k: Vec<Vec<Scalar>> = Vec::with_capacity(window);
        for m in 0..window {
            let img = gw.mul(&AlgebraElement::word(&p, basis_words[m].clone())?)?;
            let mut col = y_of(&img)?;
            for (j, kj) in k.iter().enumerate() {
                let c = &top[m][j];
                if !c.is_zero() {
                    for (x, v) in col.iter_mut().zip(kj) {
                        *x = &*x - &(v * c);
                    }
                }
            }
            let inv = top[m][m].inv().expect("diagonal of D·L* is a pivot");
            k.push(col.iter().map(|x| x * &inv).collect());
        }
        let sqrt_d: Vec<f64> = fac.d.iter().map(|x| x.to_complex().re.sqrt()).collect();
        let m = DMatrix::from_fn(rank, window, |i, j| k[j][i].to_complex() * (sqrt_d[j] / sqrt_d[i]));
        matrices.push(m);
    }
    Ok(GnsRepresentation { presentation: p, degree: d, basis_words, layer_dims, matrices })
}

impl GnsRepresentation {
    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `dim V_d`, the rank of the Gram matrix.
    pub fn rank(&self) -> usize {
        self.basis_words.len()
    }

    /// `dim V_{d−1}`, the domain of the generator matrices.
    pub fn window(&self) -> usize {
        self.layer_dims[self.degree - 1]
    }

    /// The words whose classes were orthonormalised, in order.
    pub fn basis_words(&self) -> &[Word] {
        &self.basis_words
    }

    pub fn cyclic_vector(&self) -> DVector<Complex64> {
        let mut v = DVector::zeros(self.rank());
        v[0] = Complex64::new(1.0, 0.0);
        v
    }

    /// `π(g)` as a `dim V_d × dim V_{d−1}` matrix.
    pub fn matrix(&self, g: u16) -> &DMatrix<Complex64> {
        &self.matrices[g as usize]
    }

    /// The square block of `π(g)` on `V_{d−1}`.
    pub fn compressed(&self, g: u16) -> DMatrix<Complex64> {
        let w = self.window();
        self.matrices[g as usize].view((0, 0), (w, w)).into_owned()
    }

    /// Frobenius norm of `π(g†) − π(g)*` on `V_{d−1}`.
    pub fn adjoint_defect(&self, g: u16) -> f64 {
        let gd = self.presentation.dagger_of(g);
        (self.compressed(gd) - self.compressed(g).adjoint()).norm()
    }

    /// Applies the letters of `w` right to left; every intermediate vector
    /// must stay inside `V_{d−1}`.
    pub fn apply_word(&self, w: &[u16], v: &DVector<Complex64>) -> Result<DVector<Complex64>, StateError> {
        let window = self.window();
        let mut cur = v.clone();
        for &g in w.iter().rev() {
            if cur.iter().skip(window).any(|z| *z != Complex64::new(0.0, 0.0)) {
                return Err(StateError::WindowExceeded);
            }
            cur = &self.matrices[g as usize] * cur.rows(0, window);
        }
        Ok(cur)
    }

    /// `⟨Ω, π(w)Ω⟩ = ⟨π(u†)Ω, π(v)Ω⟩` for `w = u·v` with both halves of
    /// degree at most `d`.
    pub fn moment(&self, w: &Word) -> Result<Complex64, StateError> {
        let letters = w.letters();
        if letters.len() > 2 * self.degree {
            return Err(StateError::WindowExceeded);
        }
        let cut = letters.len().saturating_sub(self.degree);
        let (u, v) = letters.split_at(cut);
        let u_dagger = self.presentation.dagger_word(&Word(u.to_vec()));
        let omega = self.cyclic_vector();
        let left = self.apply_word(u_dagger.letters(), &omega)?;
        let right = self.apply_word(v, &omega)?;
        Ok(left.dotc(&right))
    }
}
