//! Graded subspaces of the ambient space of a superalgebra, held as
//! canonical rref bases.

use num_traits::Zero;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Subspace of the `n + m`-dimensional ambient space, stored as an rref
/// basis with zero rows dropped. Because the rref is unique, two subspaces
/// are equal iff the stored bases are identical, so `PartialEq` decides
/// subspace equality.
///
/// For a graded subspace (all series terms, annihilators and ideals in this
/// crate are graded) the rref rows are automatically homogeneous, since the
/// even coordinates precede the odd ones.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<S> {
    n: usize,
    m: usize,
    basis: Matrix<S>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            basis: Matrix::zeros(0, n + m),
        }
    }

    pub fn full(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            basis: Matrix::identity(n + m),
        }
    }

    /// Row-reduces the given spanning set.
    pub fn span(n: usize, m: usize, vectors: &[Vec<S>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), n + m, "spanning vector has wrong length");
        }
        if vectors.is_empty() {
            return Self::zero(n, m);
        }
        let (reduced, rank) = Matrix::from_rows(vectors.to_vec()).rref();
        let basis = Matrix::from_fn(rank, n + m, |r, c| reduced.get(r, c).clone());
        Self { n, m, basis }
    }

    pub fn from_kernel(n: usize, m: usize, kernel: Matrix<S>) -> Self {
        assert_eq!(kernel.cols(), n + m);
        Self { n, m, basis: kernel }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<S>> {
        self.basis.row_vecs()
    }

    /// Dimension of the intersection with the even (resp. odd) coordinate
    /// block. Meaningful for graded subspaces, whose rref rows are
    /// homogeneous.
    pub fn even_dim(&self) -> usize {
        self.basis_rows()
            .iter()
            .filter(|row| row[self.n..].iter().all(Zero::is_zero))
            .count()
    }

    pub fn odd_dim(&self) -> usize {
        self.basis_rows()
            .iter()
            .filter(|row| row[..self.n].iter().all(Zero::is_zero))
            .count()
    }

    /// Exact membership test by reduction against the rref basis.
    pub fn contains(&self, v: &[S]) -> bool {
        assert_eq!(v.len(), self.n + self.m, "vector has wrong length");
        let mut v = v.to_vec();
        for row in 0..self.basis.rows() {
            let pivot = (0..v.len())
                .find(|&c| !self.basis.get(row, c).is_zero())
                .expect("basis rows are nonzero");
            if v[pivot].is_zero() {
                continue;
            }
            let factor = v[pivot].clone();
            for (value, entry) in v.iter_mut().zip(self.basis.row(row)) {
                *value = value.clone() - factor.clone() * entry.clone();
            }
        }
        v.iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis_rows().iter().all(|row| self.contains(row))
    }
}
