//! Smith normal form over the integers.
//!
//! For an `m × n` integer matrix `A` this computes unimodular `U` (`m × m`) and
//! `V` (`n × n`) with `U · A · V = D`, where `D` is diagonal with non-negative
//! entries `d_0 | d_1 | ... ` and any zeros trailing. `V⁻¹` is tracked alongside
//! `V` because cokernel coordinates need both directions of the basis change.

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// The outcome of [`smith_normal_form`].
///
/// Only `diagonal` is unique; the transforms are one valid choice among many.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult<T> {
    /// The `min(rows, cols)` diagonal entries.
    pub diagonal: Vec<T>,
    /// Left transform `U`.
    pub left: Matrix<T>,
    /// Right transform `V`.
    pub right: Matrix<T>,
    /// `V⁻¹`.
    pub right_inverse: Matrix<T>,
}

impl<T: Scalar> SnfResult<T> {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// The `rows × cols` diagonal matrix `D`.
    pub fn diagonal_matrix(&self) -> Matrix<T> {
        let mut d = Matrix::zeros(self.left.rows(), self.right.rows());
        for (i, x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

struct Reducer<T> {
    a: Matrix<T>,
    u: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

impl<T: Scalar> Reducer<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, q: &T) {
        self.a.add_row_multiple(dst, src, q);
        self.u.add_row_multiple(dst, src, q);
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &T) {
        self.a.add_col_multiple(dst, src, q);
        self.v.add_col_multiple(dst, src, q);
        self.v_inv.add_row_multiple(src, dst, &-q.clone());
    }

    /// Moves the smallest nonzero entry (first in row-major order on ties)
    /// of `cells` to `(k, k)`.
    fn place_pivot(&mut self, k: usize, cells: impl Iterator<Item = (usize, usize)>) -> bool {
        let mut best: Option<(usize, usize)> = None;
        for (i, j) in cells {
            let x = &self.a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
        match best {
            Some((i, j)) => {
                self.swap_rows(k, i);
                self.swap_cols(k, j);
                true
            }
            None => false,
        }
    }

    /// Clears row and column `k` outside the pivot. Returns false when some
    /// remainder survived and a new pivot is required.
    fn eliminate(&mut self, k: usize) -> bool {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let mut clean = true;
        for i in k + 1..rows {
            if self.a[(i, k)].is_zero() {
                continue;
            }
            let q = self.a[(i, k)].clone() / self.a[(k, k)].clone();
            self.add_row(i, k, &-q);
            clean &= self.a[(i, k)].is_zero();
        }
        for j in k + 1..cols {
            if self.a[(k, j)].is_zero() {
                continue;
            }
            let q = self.a[(k, j)].clone() / self.a[(k, k)].clone();
            self.add_col(j, k, &-q);
            clean &= self.a[(k, j)].is_zero();
        }
        clean
    }
}

/// Computes the Smith normal form of `m`, including empty matrices.
pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> SnfResult<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reducer {
        a: m.clone(),
        u: Matrix::identity(rows),
        v: Matrix::identity(cols),
        v_inv: Matrix::identity(cols),
    };
    let n = rows.min(cols);
    for k in 0..n {
        let all = (k..rows).flat_map(|i| (k..cols).map(move |j| (i, j)));
        if !r.place_pivot(k, all) {
            break;
        }
        loop {
            if !r.eliminate(k) {
                let cross = (k..rows).map(|i| (i, k)).chain((k + 1..cols).map(|j| (k, j)));
                r.place_pivot(k, cross);
                continue;
            }
            let pivot = r.a[(k, k)].clone();
            let offender = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| !(r.a[(i, j)].clone() % pivot.clone()).is_zero()));
            match offender {
                Some(i) => r.add_row(k, i, &T::one()),
                None => break,
            }
        }
        if r.a[(k, k)].is_negative() {
            r.a.negate_row(k);
            r.u.negate_row(k);
        }
    }
    SnfResult {
        diagonal: (0..n).map(|i| r.a[(i, i)].clone()).collect(),
        left: r.u,
        right: r.v,
        right_inverse: r.v_inv,
    }
}
