//! Dense exact linear algebra: reduced row echelon form, kernels, ranks,
//! and rank sequences of matrix powers.
//!
//! The canonical rref is the equality witness for subspaces everywhere in
//! this crate: two row spaces are equal iff their rref bases are identical.

use num_traits::Zero;
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("{dim}x{dim} matrix is not nilpotent")]
    NotNilpotent { dim: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for row in &rows {
            assert_eq!(row.len(), ncols, "ragged rows");
        }
        Self {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: S) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).clone();
                    out.set(r, c, cur + a.clone() * b.clone());
                }
            }
        }
        out
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|r| {
                let mut acc = S::zero();
                for (entry, value) in self.row(r).iter().zip(v) {
                    if !value.is_zero() && !entry.is_zero() {
                        acc = acc + entry.clone() * value.clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form and rank. The row space is preserved and
    /// the result is the unique rref of the input.
    pub fn rref(&self) -> (Self, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place();
        (m, rank)
    }

    fn rref_in_place(&mut self) -> usize {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(pivot_row, src);

            let inv = S::one() / self.get(pivot_row, col).clone();
            if !inv.is_one() {
                for c in col..self.cols {
                    let v = self.get(pivot_row, c).clone();
                    self.set(pivot_row, c, v * inv.clone());
                }
            }
            for r in 0..self.rows {
                if r == pivot_row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let sub = factor.clone() * self.get(pivot_row, c).clone();
                    let v = self.get(r, c).clone();
                    self.set(r, c, v - sub);
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of `{v : self * v = 0}` as matrix rows, in rref form.
    /// The row count is always `cols - rank`.
    pub fn kernel(&self) -> Self {
        let (r, rank) = self.rref();
        let mut pivot_cols = Vec::with_capacity(rank);
        for row in 0..rank {
            let col = (0..self.cols)
                .find(|&c| !r.get(row, c).is_zero())
                .expect("nonzero row above rank");
            pivot_cols.push(col);
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -r.get(row, free).clone();
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return Self::zeros(0, self.cols);
        }
        let (canon, nullity) = Self::from_rows(basis).rref();
        debug_assert_eq!(nullity, self.cols - rank);
        canon
    }

    /// `[rank(M^0), rank(M^1), ...]` until the rank reaches zero or repeats.
    pub fn rank_power_sequence(&self) -> Result<Vec<usize>, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut seq = vec![self.rows];
        if self.rows == 0 {
            return Ok(seq);
        }
        let mut power = self.clone();
        loop {
            let rank = power.rank();
            let stable = rank == *seq.last().expect("nonempty");
            seq.push(rank);
            if stable || rank == 0 {
                return Ok(seq);
            }
            power = power.mul(self);
        }
    }

    /// Inverse via Gauss-Jordan on the augmented matrix.
    pub fn inverse(&self) -> Result<Self, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, S::one());
        }
        aug.rref_in_place();
        // Singular input leaves pivots in the augmented half; the left
        // block is the identity exactly when the input is invertible.
        for r in 0..n {
            for c in 0..n {
                let expected = if r == c { S::one() } else { S::zero() };
                if *aug.get(r, c) != expected {
                    return Err(LinAlgError::Singular);
                }
            }
        }
        Ok(Self::from_fn(n, n, |r, c| aug.get(r, n + c).clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id: Matrix<Rat> = Matrix::identity(2);
        let (r, rank) = id.rref();
        assert_eq!(r, id);
        assert_eq!(rank, 2);
    }

    #[test]
    fn rref_zero_matrix() {
        let z: Matrix<Rat> = Matrix::zeros(3, 4);
        let (r, rank) = z.rref();
        assert_eq!(r, z);
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_rank_one() {
        // Hand Gaussian elimination: R2 -= 2*R1 leaves [[1,2],[0,0]].
        let (r, rank) = m(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(rank, 1);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let id: Matrix<Rat> = Matrix::identity(3);
        let k = id.kernel();
        assert_eq!(k.rows(), 0);
        assert_eq!(k.cols(), 3);
    }

    #[test]
    fn kernel_of_zero_is_identity_basis() {
        let z: Matrix<Rat> = Matrix::zeros(2, 3);
        assert_eq!(z.kernel(), Matrix::identity(3));
    }

    #[test]
    fn kernel_by_substitution() {
        // v = (-t, t, s) solves x + y = 0; rref basis of that plane:
        let k = m(&[&[1, 1, 0]]).kernel();
        assert_eq!(k, m(&[&[1, -1, 0], &[0, 0, 1]]));
        for row in k.row_vecs() {
            assert!(m(&[&[1, 1, 0]]).mul_vec(&row).iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn rank_powers_of_single_shift() {
        // e_i -> e_{i+1}: entries on the subdiagonal.
        let shift = Matrix::from_fn(4, 4, |r, c| if r == c + 1 { rat(1) } else { rat(0) });
        assert_eq!(shift.rank_power_sequence().unwrap(), vec![4, 3, 2, 1, 0]);
    }

    #[test]
    fn rank_powers_of_zero_and_identity() {
        let z: Matrix<Rat> = Matrix::zeros(5, 5);
        assert_eq!(z.rank_power_sequence().unwrap(), vec![5, 0]);
        let id: Matrix<Rat> = Matrix::identity(5);
        assert_eq!(id.rank_power_sequence().unwrap(), vec![5, 5]);
    }

    #[test]
    fn rank_powers_reject_non_square() {
        let z: Matrix<Rat> = Matrix::zeros(2, 3);
        assert_eq!(
            z.rank_power_sequence(),
            Err(LinAlgError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(rows in 1usize..5, cols in 1usize..5,
                              seed in proptest::collection::vec(-4i64..=4, 16)) {
            let mat = Matrix::from_fn(rows, cols, |r, c| rat(seed[r * 4 + c % 4]));
            let (r1, rank1) = mat.rref();
            let (r2, rank2) = r1.rref();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(rank1, rank2);
        }

        #[test]
        fn rank_plus_nullity_is_cols(rows in 1usize..5, cols in 1usize..5,
                                     seed in proptest::collection::vec(-4i64..=4, 16)) {
            let mat = Matrix::from_fn(rows, cols, |r, c| rat(seed[r * 4 + c % 4]));
            let kernel = mat.kernel();
            prop_assert_eq!(mat.rank() + kernel.rows(), cols);
            for row in kernel.row_vecs() {
                prop_assert!(mat.mul_vec(&row).iter().all(|v| v.is_zero()));
            }
        }

        #[test]
        fn rank_power_sequence_is_weakly_decreasing(dim in 1usize..5,
                                                    seed in proptest::collection::vec(-2i64..=2, 16)) {
            let mat = Matrix::from_fn(dim, dim, |r, c| rat(seed[r * 4 + c % 4]));
            let seq = mat.rank_power_sequence().unwrap();
            prop_assert!(seq.len() <= dim + 2);
            prop_assert!(seq.windows(2).all(|w| w[1] <= w[0]));
        }
    }
}
