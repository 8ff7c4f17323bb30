//! Exact linear algebra over ℚ(i).
//!
//! Two kernels live here: a Gauss–Jordan factorisation that can be replayed
//! against many right-hand sides (used by the Ore solver, which tests
//! membership of many candidates in one fixed image `s·𝒜`), and a symmetric
//! pivoting elimination that decides positive semidefiniteness of a
//! hermitian matrix without rounding.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::scalar::Scalar;

/// Dense row-major matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    fn row_mut(&mut self, r: usize) -> &mut [Scalar] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `target -= factor · source`, skipping structural zeros of `source`.
    fn eliminate(&mut self, target: usize, source: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let s = &self.data[source * self.cols + c];
            if s.is_zero() {
                continue;
            }
            let delta = factor * s;
            let t = &mut self.data[target * self.cols + c];
            *t = &*t - &delta;
        }
    }
}

#[derive(Clone, Debug)]
enum RowOp {
    Swap(usize, usize),
    Scale(usize, Scalar),
    /// `row[target] -= factor · row[source]`
    Sub { target: usize, source: usize, factor: Scalar },
}

/// Reduced row echelon factorisation of a fixed matrix, replayable on
/// arbitrary right-hand sides.
#[derive(Clone, Debug)]
pub struct EchelonSolver {
    reduced: ExactMatrix,
    pivots: Vec<usize>,
    ops: Vec<RowOp>,
}

impl EchelonSolver {
    pub fn new(matrix: ExactMatrix) -> Self {
        let mut m = matrix;
        let mut ops = Vec::new();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                m.swap_rows(p, row);
                ops.push(RowOp::Swap(p, row));
            }
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            if !inv.is_one() {
                for v in m.row_mut(row) {
                    if !v.is_zero() {
                        *v = &*v * &inv;
                    }
                }
                ops.push(RowOp::Scale(row, inv));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                m.eliminate(r, row, &factor);
                ops.push(RowOp::Sub { target: r, source: row, factor });
            }
            pivots.push(col);
            row += 1;
        }
        EchelonSolver { reduced: m, pivots, ops }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.reduced.cols
    }

    /// Solves `M x = rhs`; `None` when `rhs` is outside the column space.
    /// Free variables are set to zero.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.reduced.rows, "right-hand side has wrong length");
        let mut b = rhs.to_vec();
        for op in &self.ops {
            match op {
                RowOp::Swap(a, c) => b.swap(*a, *c),
                RowOp::Scale(r, s) => {
                    if !b[*r].is_zero() {
                        b[*r] = &b[*r] * s;
                    }
                }
                RowOp::Sub { target, source, factor } => {
                    if !b[*source].is_zero() {
                        let d = factor * &b[*source];
                        b[*target] = &b[*target] - &d;
                    }
                }
            }
        }
        if b[self.rank()..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.reduced.cols];
        for (r, &c) in self.pivots.iter().enumerate() {
            x[c] = b[r].clone();
        }
        Some(x)
    }

    /// A basis of the kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let n = self.reduced.cols;
        let mut is_pivot = vec![false; n];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..n)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut v = vec![Scalar::zero(); n];
                v[j] = Scalar::one();
                for (r, &c) in self.pivots.iter().enumerate() {
                    v[c] = -self.reduced.get(r, j);
                }
                v
            })
            .collect()
    }
}

/// Outcome of the exact semidefiniteness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Definiteness {
    PositiveSemidefinite { rank: usize },
    /// `index` is the basis vector at which a negative (or an
    /// off-diagonal-dominated zero) pivot was met.
    Violation { index: usize },
}

/// Decides whether a hermitian matrix is positive semidefinite by symmetric
/// elimination with complete (largest diagonal) pivoting, in exact
/// arithmetic. Also reports a violation if the matrix is not hermitian.
pub fn hermitian_definiteness(matrix: &ExactMatrix) -> Definiteness {
    let n = matrix.rows;
    assert_eq!(n, matrix.cols, "matrix must be square");
    for r in 0..n {
        for c in r..n {
            if *matrix.get(r, c) != matrix.get(c, r).conj() {
                return Definiteness::Violation { index: r };
            }
        }
    }
    let mut m = matrix.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    loop {
        if let Some(&idx) = active.iter().find(|&&i| m.get(i, i).re.is_negative()) {
            return Definiteness::Violation { index: idx };
        }
        // largest remaining diagonal; ties broken by index
        let mut best: Option<(usize, BigRational)> = None;
        for &i in &active {
            let d = m.get(i, i).re.clone();
            if best.as_ref().is_none_or(|(_, b)| d > *b) {
                best = Some((i, d));
            }
        }
        let Some((p, d)) = best else { break };
        if d.is_zero() {
            // all remaining diagonals vanish; any surviving off-diagonal
            // entry makes a 2×2 indefinite block
            for &i in &active {
                for &j in &active {
                    if i != j && !m.get(i, j).is_zero() {
                        return Definiteness::Violation { index: i.min(j) };
                    }
                }
            }
            break;
        }
        let pivot = Scalar::real(d);
        let inv = pivot.inv().expect("pivot is positive");
        active.retain(|&i| i != p);
        for &i in &active {
            let lip = m.get(i, p).clone();
            if lip.is_zero() {
                continue;
            }
            let li = &lip * &inv;
            for &j in &active {
                let upj = m.get(p, j).clone();
                if upj.is_zero() {
                    continue;
                }
                let v = m.get(i, j) - &(&li * &upj);
                m.set(i, j, v);
            }
        }
        rank += 1;
    }
    Definiteness::PositiveSemidefinite { rank }
}
