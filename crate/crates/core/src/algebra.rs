//! The superalgebra value: structure constants with a Z2-grading, product
//! evaluation, identity checkers, the descending central series, nilindex,
//! right annihilator and generator count.

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("grading violation: [{left}, {right}] cannot contain basis element {target}")]
    Grading {
        left: usize,
        right: usize,
        target: usize,
    },
    #[error("duplicate product definition for ({left}, {right})")]
    DuplicateProduct { left: usize, right: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("operation requires a nilpotent superalgebra")]
    NotNilpotent,
    #[error("element is not even-homogeneous")]
    NotEvenHomogeneous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// Element of a superalgebra as a coefficient vector over the basis
/// `x_1..x_n, y_1..y_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Element<S> {
    pub coords: Vec<S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Even,
    Odd,
    Mixed,
}

impl<S: Scalar> Element<S> {
    pub fn zero(dim: usize) -> Self {
        Self {
            coords: vec![S::zero(); dim],
        }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[index] = S::one();
        e
    }

    pub fn from_coords(coords: Vec<S>) -> Self {
        Self { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Homogeneity with respect to the even/odd coordinate split at `n`.
    pub fn homogeneity(&self, n: usize) -> Homogeneity {
        let even = self.coords[..n].iter().any(|v| !v.is_zero());
        let odd = self.coords[n..].iter().any(|v| !v.is_zero());
        match (even, odd) {
            (false, false) => Homogeneity::Zero,
            (true, false) => Homogeneity::Even,
            (false, true) => Homogeneity::Odd,
            (true, true) => Homogeneity::Mixed,
        }
    }
}

/// Identity to check on a superalgebra table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityKind {
    /// `[x, [y, z]] = [[x, y], z] - (-1)^{|y||z|} [[x, z], y]`.
    LeibnizSuper,
    /// `(-1)^{|x||z|}[x,[y,z]] + (-1)^{|x||y|}[y,[z,x]] + (-1)^{|y||z|}[z,[x,y]] = 0`.
    JacobiSuper,
    /// Products land in the parity-sum component.
    Grading,
    /// `[x, y] = -(-1)^{|x||y|} [y, x]`.
    Antisymmetry,
}

/// One violating basis tuple together with its nonzero residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation<S> {
    pub indices: Vec<usize>,
    pub residual: Vec<S>,
}

/// Outcome of an identity check over all homogeneous basis tuples. By
/// multilinearity an empty violation list certifies the identity on the
/// whole space.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport<S> {
    pub kind: IdentityKind,
    pub violations: Vec<Violation<S>>,
}

impl<S> IdentityReport<S> {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Result of a nilindex computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nilindex {
    /// Minimal `s` with `L^s = 0`.
    Nilpotent(usize),
    /// The descending central series stabilized above zero.
    NotNilpotent,
}

impl Nilindex {
    pub fn value(self) -> Option<usize> {
        match self {
            Nilindex::Nilpotent(s) => Some(s),
            Nilindex::NotNilpotent => None,
        }
    }
}

/// Finite-dimensional Leibniz superalgebra candidate given by structure
/// constants over the graded basis `x_1..x_n, y_1..y_m`.
///
/// `c[i][j]` is the coefficient vector of `[b_i, b_j]`. The grading
/// constraint (products land in the parity-sum component) is enforced at
/// construction, so values of this type always satisfy it. Values are
/// immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperAlgebra<S> {
    n: usize,
    m: usize,
    c: Vec<Vec<Vec<S>>>,
}

impl<S: Scalar> SuperAlgebra<S> {
    /// Algebra with all products zero.
    pub fn abelian(n: usize, m: usize) -> Self {
        let d = n + m;
        Self {
            n,
            m,
            c: vec![vec![vec![S::zero(); d]; d]; d],
        }
    }

    /// Builds the algebra from a list of nonzero products
    /// `(left, right, coefficients)`; omitted products are zero. Rejects
    /// grading violations and duplicate slots.
    pub fn from_products(
        n: usize,
        m: usize,
        products: &[(usize, usize, Vec<S>)],
    ) -> Result<Self, AlgebraError> {
        let d = n + m;
        let mut alg = Self::abelian(n, m);
        let mut seen = vec![false; d * d];
        for (i, j, coeffs) in products {
            let (i, j) = (*i, *j);
            for &idx in &[i, j] {
                if idx >= d {
                    return Err(AlgebraError::IndexOutOfRange { index: idx, dim: d });
                }
            }
            if coeffs.len() != d {
                return Err(AlgebraError::DimMismatch(format!(
                    "product ({i}, {j}) has {} coefficients, expected {d}",
                    coeffs.len()
                )));
            }
            if seen[i * d + j] {
                return Err(AlgebraError::DuplicateProduct { left: i, right: j });
            }
            seen[i * d + j] = true;
            let target = alg.parity(i).bit() ^ alg.parity(j).bit();
            for (k, v) in coeffs.iter().enumerate() {
                if !v.is_zero() && alg.parity(k).bit() != target {
                    return Err(AlgebraError::Grading {
                        left: i,
                        right: j,
                        target: k,
                    });
                }
            }
            alg.c[i][j] = coeffs.clone();
        }
        Ok(alg)
    }

    pub fn even_dim(&self) -> usize {
        self.n
    }

    pub fn odd_dim(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    pub fn parity(&self, index: usize) -> Parity {
        if index < self.n {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Coefficient vector of `[b_i, b_j]`.
    pub fn product(&self, i: usize, j: usize) -> &[S] {
        &self.c[i][j]
    }

    /// `[b_i, v]` for a coefficient vector `v`.
    pub fn bracket_basis_vec(&self, i: usize, v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim()];
        for (t, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in self.c[i][t].iter().enumerate() {
                if !c.is_zero() {
                    out[k] = out[k].clone() + coeff.clone() * c.clone();
                }
            }
        }
        out
    }

    /// `[v, b_j]` for a coefficient vector `v`.
    pub fn bracket_vec_basis(&self, v: &[S], j: usize) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim()];
        for (t, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in self.c[t][j].iter().enumerate() {
                if !c.is_zero() {
                    out[k] = out[k].clone() + coeff.clone() * c.clone();
                }
            }
        }
        out
    }

    /// Bilinear extension of the bracket to arbitrary elements.
    pub fn evaluate_product(&self, u: &Element<S>, v: &Element<S>) -> Result<Element<S>, AlgebraError> {
        let d = self.dim();
        if u.coords.len() != d || v.coords.len() != d {
            return Err(AlgebraError::DimMismatch(format!(
                "elements of length {} and {} in a {d}-dimensional algebra",
                u.coords.len(),
                v.coords.len()
            )));
        }
        let mut out = vec![S::zero(); d];
        for (i, a) in u.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let partial = self.bracket_basis_vec(i, &v.coords);
            for (k, val) in partial.into_iter().enumerate() {
                if !val.is_zero() {
                    out[k] = out[k].clone() + a.clone() * val;
                }
            }
        }
        Ok(Element::from_coords(out))
    }

    fn sign(&self, i: usize, j: usize) -> S {
        if self.parity(i) == Parity::Odd && self.parity(j) == Parity::Odd {
            -S::one()
        } else {
            S::one()
        }
    }

    fn leibniz_residual(&self, i: usize, j: usize, k: usize) -> Vec<S> {
        // [b_i, [b_j, b_k]] - [[b_i, b_j], b_k] + (-1)^{|b_j||b_k|} [[b_i, b_k], b_j]
        let lhs = self.bracket_basis_vec(i, &self.c[j][k]);
        let r1 = self.bracket_vec_basis(&self.c[i][j], k);
        let r2 = self.bracket_vec_basis(&self.c[i][k], j);
        let sign = self.sign(j, k);
        (0..self.dim())
            .map(|t| lhs[t].clone() - r1[t].clone() + sign.clone() * r2[t].clone())
            .collect()
    }

    fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Vec<S> {
        let t1 = self.bracket_basis_vec(i, &self.c[j][k]);
        let t2 = self.bracket_basis_vec(j, &self.c[k][i]);
        let t3 = self.bracket_basis_vec(k, &self.c[i][j]);
        let (s1, s2, s3) = (self.sign(i, k), self.sign(i, j), self.sign(j, k));
        (0..self.dim())
            .map(|t| {
                s1.clone() * t1[t].clone()
                    + s2.clone() * t2[t].clone()
                    + s3.clone() * t3[t].clone()
            })
            .collect()
    }

    fn antisymmetry_residual(&self, i: usize, j: usize) -> Vec<S> {
        let sign = self.sign(i, j);
        (0..self.dim())
            .map(|t| self.c[i][j][t].clone() + sign.clone() * self.c[j][i][t].clone())
            .collect()
    }

    /// Exhaustive identity check over homogeneous basis tuples. Reports
    /// every violating tuple with its residual.
    pub fn check_identity(&self, kind: IdentityKind) -> IdentityReport<S> {
        let mut violations = Vec::new();
        self.walk_identity(kind, |indices, residual| {
            violations.push(Violation {
                indices: indices.to_vec(),
                residual: residual.to_vec(),
            });
            true
        });
        IdentityReport { kind, violations }
    }

    /// Early-exit variant of [`check_identity`](Self::check_identity).
    pub fn satisfies_identity(&self, kind: IdentityKind) -> bool {
        let mut ok = true;
        self.walk_identity(kind, |_, _| {
            ok = false;
            false
        });
        ok
    }

    /// Visits violations in a fixed order; the callback returns whether to
    /// keep going.
    fn walk_identity(&self, kind: IdentityKind, mut on_violation: impl FnMut(&[usize], &[S]) -> bool) {
        let d = self.dim();
        match kind {
            IdentityKind::Grading => {
                for i in 0..d {
                    for j in 0..d {
                        let target = self.parity(i).bit() ^ self.parity(j).bit();
                        for k in 0..d {
                            if self.parity(k).bit() != target && !self.c[i][j][k].is_zero() {
                                let mut residual = vec![S::zero(); d];
                                residual[k] = self.c[i][j][k].clone();
                                if !on_violation(&[i, j, k], &residual) {
                                    return;
                                }
                            }
                        }
                    }
                }
            }
            IdentityKind::Antisymmetry => {
                for i in 0..d {
                    for j in i..d {
                        let residual = self.antisymmetry_residual(i, j);
                        if residual.iter().any(|v| !v.is_zero())
                            && !on_violation(&[i, j], &residual)
                        {
                            return;
                        }
                    }
                }
            }
            IdentityKind::LeibnizSuper | IdentityKind::JacobiSuper => {
                let zero: Vec<bool> = (0..d * d)
                    .map(|idx| self.c[idx / d][idx % d].iter().all(Zero::is_zero))
                    .collect();
                for i in 0..d {
                    for j in 0..d {
                        for k in 0..d {
                            // All source products zero: the residual
                            // vanishes identically, skip the arithmetic.
                            let skip = match kind {
                                IdentityKind::LeibnizSuper => {
                                    zero[j * d + k] && zero[i * d + j] && zero[i * d + k]
                                }
                                _ => zero[j * d + k] && zero[k * d + i] && zero[i * d + j],
                            };
                            if skip {
                                continue;
                            }
                            let residual = match kind {
                                IdentityKind::LeibnizSuper => self.leibniz_residual(i, j, k),
                                _ => self.jacobi_residual(i, j, k),
                            };
                            if residual.iter().any(|v| !v.is_zero())
                                && !on_violation(&[i, j, k], &residual)
                            {
                                return;
                            }
                        }
                    }
                }
            }
        }
    }

    /// Descending central series `L^1 ⊇ L^2 ⊇ ...` until the zero subspace
    /// or a repeated (stabilized) term.
    pub fn lower_central_series(&self) -> Vec<Subspace<S>> {
        let mut terms = vec![Subspace::full(self.n, self.m)];
        loop {
            let cur = terms.last().expect("nonempty");
            if cur.is_zero() {
                return terms;
            }
            let mut products = Vec::new();
            for u in cur.basis_rows() {
                for j in 0..self.dim() {
                    let p = self.bracket_vec_basis(&u, j);
                    if p.iter().any(|v| !v.is_zero()) {
                        products.push(p);
                    }
                }
            }
            let next = Subspace::span(self.n, self.m, &products);
            if &next == cur {
                return terms;
            }
            terms.push(next);
        }
    }

    /// Minimal `s` with `L^s = 0`, or [`Nilindex::NotNilpotent`]. The
    /// zero-dimensional algebra has nilindex 1.
    pub fn nilindex(&self) -> Nilindex {
        let series = self.lower_central_series();
        if series.last().expect("nonempty").is_zero() {
            Nilindex::Nilpotent(series.len())
        } else {
            Nilindex::NotNilpotent
        }
    }

    /// Right annihilator `R(L) = {z : [y, z] = 0 for all y}`, computed as
    /// the kernel of the stacked left-product matrices.
    pub fn right_annihilator(&self) -> Subspace<S> {
        let d = self.dim();
        let stacked = Matrix::from_fn(d * d, d, |row, j| {
            let (i, k) = (row / d, row % d);
            self.c[i][j][k].clone()
        });
        Subspace::from_kernel(self.n, self.m, stacked.kernel())
    }

    /// `dim(L / L^2)`, the minimal number of generators of a nilpotent
    /// algebra. Refuses non-nilpotent input.
    pub fn generator_count(&self) -> Result<usize, AlgebraError> {
        let series = self.lower_central_series();
        if !series.last().expect("nonempty").is_zero() {
            return Err(AlgebraError::NotNilpotent);
        }
        let l2_dim = series.get(1).map_or(0, Subspace::dim);
        Ok(self.dim() - l2_dim)
    }

    /// The even part as a plain Leibniz algebra (odd dimension zero).
    pub fn even_part(&self) -> SuperAlgebra<S> {
        let n = self.n;
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.c[i][j][..n].iter().any(|v| !v.is_zero()) {
                    products.push((i, j, self.c[i][j][..n].to_vec()));
                }
            }
        }
        SuperAlgebra::from_products(n, 0, &products).expect("even part of a graded algebra")
    }

    /// Human-readable name of basis element `i` (`x1..xn`, `y1..ym`).
    pub fn basis_name(&self, i: usize) -> String {
        if i < self.n {
            format!("x{}", i + 1)
        } else {
            format!("y{}", i - self.n + 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_theorem21;
    use crate::scalar::{rat, Rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(dim: usize, idx: usize) -> Vec<Rat> {
        let mut v = vec![rat(0); dim];
        v[idx] = rat(1);
        v
    }

    /// Null-filiform table `[e_i, e_1] = e_{i+1}` built by hand.
    fn null_filiform(n: usize) -> SuperAlgebra<Rat> {
        let products: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, 0, e(n, i + 1))).collect();
        SuperAlgebra::from_products(n, 0, &products).unwrap()
    }

    #[test]
    fn grading_is_enforced_at_construction() {
        // even * even cannot be odd
        let err = SuperAlgebra::from_products(1, 1, &[(0, 0, e(2, 1))]).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::Grading {
                left: 0,
                right: 0,
                target: 1
            }
        );
    }

    #[test]
    fn product_on_basis_matches_table() {
        let a = null_filiform(3);
        let u = Element::basis(3, 1);
        let v = Element::basis(3, 0);
        let p = a.evaluate_product(&u, &v).unwrap();
        assert_eq!(p.coords, e(3, 2)); // [e2, e1] = e3
    }

    #[test]
    fn product_with_zero_is_zero() {
        let a = null_filiform(4);
        let z = Element::zero(4);
        let v = Element::basis(4, 0);
        assert!(a.evaluate_product(&z, &v).unwrap().is_zero());
        assert!(a.evaluate_product(&v, &z).unwrap().is_zero());
    }

    #[test]
    fn product_dimension_mismatch() {
        let a = null_filiform(3);
        let u = Element::zero(4);
        assert!(matches!(
            a.evaluate_product(&u, &u),
            Err(AlgebraError::DimMismatch(_))
        ));
    }

    /// Independent contraction oracle: plain double loop over the basis.
    fn oracle_product(a: &SuperAlgebra<Rat>, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let d = a.dim();
        let mut out = vec![rat(0); d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    out[k] =
                        out[k].clone() + u[i].clone() * v[j].clone() * a.product(i, j)[k].clone();
                }
            }
        }
        out
    }

    fn class_a_instance() -> SuperAlgebra<Rat> {
        let mut spec = crate::families::FamilySpec::new(
            crate::families::FamilyKind::Thm22A,
            5,
            vec![2, 1],
        );
        spec.params.set_named("alpha4", rat(2)).unwrap();
        spec.params.set_named("theta", rat(-1)).unwrap();
        let (a, report) = spec.build().unwrap();
        assert!(report.holds());
        a
    }

    #[test]
    fn evaluate_matches_contraction_oracle_on_seeded_pairs() {
        let algebras = vec![
            null_filiform(4),
            build_theorem21(crate::families::Theorem21Variant::Second, 2, 3).unwrap(),
            class_a_instance(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for a in &algebras {
            let d = a.dim();
            for _ in 0..1000 {
                let u: Vec<Rat> = (0..d).map(|_| rat(rng.random_range(-3..=3))).collect();
                let v: Vec<Rat> = (0..d).map(|_| rat(rng.random_range(-3..=3))).collect();
                let got = a
                    .evaluate_product(&Element::from_coords(u.clone()), &Element::from_coords(v.clone()))
                    .unwrap();
                assert_eq!(got.coords, oracle_product(a, &u, &v));
            }
        }
    }

    #[test]
    fn abelian_satisfies_all_identities() {
        let a: SuperAlgebra<Rat> = SuperAlgebra::abelian(2, 2);
        for kind in [
            IdentityKind::LeibnizSuper,
            IdentityKind::JacobiSuper,
            IdentityKind::Grading,
            IdentityKind::Antisymmetry,
        ] {
            assert!(a.check_identity(kind).holds());
            assert!(a.satisfies_identity(kind));
        }
    }

    #[test]
    fn null_filiform_is_leibniz_but_not_antisymmetric() {
        let a = null_filiform(4);
        assert!(a.check_identity(IdentityKind::LeibnizSuper).holds());
        assert!(!a.check_identity(IdentityKind::Antisymmetry).holds());
    }

    /// Brute-force evaluation of both sides of the Leibniz superidentity,
    /// used to confirm reported violations independently.
    fn leibniz_brute(a: &SuperAlgebra<Rat>, i: usize, j: usize, k: usize) -> (Vec<Rat>, Vec<Rat>) {
        let d = a.dim();
        let bi = Element::basis(d, i);
        let bj = Element::basis(d, j);
        let bk = Element::basis(d, k);
        let lhs = a
            .evaluate_product(&bi, &a.evaluate_product(&bj, &bk).unwrap())
            .unwrap();
        let s = if j >= a.even_dim() && k >= a.even_dim() {
            rat(-1)
        } else {
            rat(1)
        };
        let t1 = a
            .evaluate_product(&a.evaluate_product(&bi, &bj).unwrap(), &bk)
            .unwrap();
        let t2 = a
            .evaluate_product(&a.evaluate_product(&bi, &bk).unwrap(), &bj)
            .unwrap();
        let rhs: Vec<Rat> = (0..d)
            .map(|t| t1.coords[t].clone() - s.clone() * t2.coords[t].clone())
            .collect();
        (lhs.coords, rhs)
    }

    #[test]
    fn injected_violation_is_reported_and_reproduced() {
        // null-filiform n=3 with one extra product [e3, e2] = e1 injected
        let mut products: Vec<_> = (0..2).map(|i| (i, 0, e(3, i + 1))).collect();
        products.push((2, 1, e(3, 0)));
        let a = SuperAlgebra::from_products(3, 0, &products).unwrap();
        let report = a.check_identity(IdentityKind::LeibnizSuper);
        assert!(!report.holds());
        for v in &report.violations {
            let (lhs, rhs) = leibniz_brute(&a, v.indices[0], v.indices[1], v.indices[2]);
            let brute: Vec<Rat> = (0..3).map(|t| lhs[t].clone() - rhs[t].clone()).collect();
            assert_eq!(brute, v.residual);
        }
    }

    #[test]
    fn series_dims_of_null_filiform() {
        let a = null_filiform(4);
        let dims: Vec<_> = a.lower_central_series().iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![4, 3, 2, 1, 0]);
        assert_eq!(a.nilindex(), Nilindex::Nilpotent(5));
    }

    #[test]
    fn series_of_abelian_and_zero_dim() {
        let a: SuperAlgebra<Rat> = SuperAlgebra::abelian(2, 1);
        let dims: Vec<_> = a.lower_central_series().iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![3, 0]);
        assert_eq!(a.nilindex(), Nilindex::Nilpotent(2));

        let z: SuperAlgebra<Rat> = SuperAlgebra::abelian(0, 0);
        assert_eq!(z.nilindex(), Nilindex::Nilpotent(1));
    }

    #[test]
    fn non_nilpotent_detection() {
        // [e1, e1] = e1 stabilizes at L^k = <e1> != 0
        let a = SuperAlgebra::from_products(1, 0, &[(0, 0, e(1, 0))]).unwrap();
        assert_eq!(a.nilindex(), Nilindex::NotNilpotent);
        assert_eq!(a.generator_count(), Err(AlgebraError::NotNilpotent));
    }

    #[test]
    fn series_is_monotone_decreasing_chain() {
        let a: SuperAlgebra<Rat> = build_theorem21(crate::families::Theorem21Variant::Second, 3, 4).unwrap();
        let series = a.lower_central_series();
        for w in series.windows(2) {
            assert!(w[0].contains_subspace(&w[1]));
            assert!(w[1].dim() < w[0].dim());
        }
    }

    /// Independent span-closure oracle for the series dimensions: spans
    /// all element-level products of the current term's basis against the
    /// full basis and measures ranks directly.
    fn series_dims_oracle(a: &SuperAlgebra<Rat>) -> Vec<usize> {
        let d = a.dim();
        let mut dims = vec![d];
        let mut current: Vec<Vec<Rat>> = (0..d).map(|i| Element::basis(d, i).coords).collect();
        loop {
            let mut products = Vec::new();
            for u in &current {
                for j in 0..d {
                    let p = a
                        .evaluate_product(&Element::from_coords(u.clone()), &Element::basis(d, j))
                        .unwrap();
                    if !p.is_zero() {
                        products.push(p.coords);
                    }
                }
            }
            let dim = if products.is_empty() {
                0
            } else {
                Matrix::from_rows(products.clone()).rank()
            };
            if dim == *dims.last().unwrap() {
                break;
            }
            dims.push(dim);
            if dim == 0 {
                break;
            }
            current = products;
        }
        dims
    }

    #[test]
    fn series_dims_match_span_closure_oracle() {
        for a in [class_a_instance(), null_filiform(5)] {
            let dims: Vec<_> = a.lower_central_series().iter().map(Subspace::dim).collect();
            assert_eq!(dims, series_dims_oracle(&a));
        }
    }

    #[test]
    fn right_annihilator_of_null_filiform() {
        // Solving [e_i, z] = 0 by hand: z_1 = 0, so R(L) = <e2, e3>.
        let a = null_filiform(3);
        let r = a.right_annihilator();
        assert_eq!(r.dim(), 2);
        assert!(r.contains(&e(3, 1)));
        assert!(r.contains(&e(3, 2)));
        assert!(!r.contains(&e(3, 0)));
    }

    #[test]
    fn right_annihilator_of_abelian_is_everything() {
        let a: SuperAlgebra<Rat> = SuperAlgebra::abelian(2, 2);
        assert_eq!(a.right_annihilator().dim(), 4);
    }

    #[test]
    fn generator_counts() {
        assert_eq!(null_filiform(5).generator_count().unwrap(), 1);
        let ab: SuperAlgebra<Rat> = SuperAlgebra::abelian(3, 1);
        assert_eq!(ab.generator_count().unwrap(), 4);
    }

    #[test]
    fn even_part_restricts_table() {
        let a: SuperAlgebra<Rat> = build_theorem21(crate::families::Theorem21Variant::Second, 3, 4).unwrap();
        let even = a.even_part();
        assert_eq!(even.even_dim(), 3);
        assert_eq!(even.odd_dim(), 0);
        // [x_i, x_1] = x_{i+1} survives the restriction
        assert_eq!(even.product(0, 0), &e(3, 1)[..]);
        assert_eq!(even.product(1, 0), &e(3, 2)[..]);
    }

    #[test]
    fn antisymmetry_and_leibniz_imply_jacobi() {
        // Lie algebra tables: abelian, and sl2-like [h,e]=2e, [h,f]=-2f, [e,f]=h.
        let sl2 = SuperAlgebra::from_products(
            3,
            0,
            &[
                (0, 1, {
                    let mut v = vec![rat(0); 3];
                    v[1] = rat(2);
                    v
                }),
                (1, 0, {
                    let mut v = vec![rat(0); 3];
                    v[1] = rat(-2);
                    v
                }),
                (0, 2, {
                    let mut v = vec![rat(0); 3];
                    v[2] = rat(-2);
                    v
                }),
                (2, 0, {
                    let mut v = vec![rat(0); 3];
                    v[2] = rat(2);
                    v
                }),
                (1, 2, e(3, 0)),
                (2, 1, {
                    let mut v = vec![rat(0); 3];
                    v[0] = rat(-1);
                    v
                }),
            ],
        )
        .unwrap();
        let algebras = vec![SuperAlgebra::abelian(2, 1), sl2];
        for a in &algebras {
            if a.satisfies_identity(IdentityKind::Antisymmetry)
                && a.satisfies_identity(IdentityKind::LeibnizSuper)
            {
                assert!(a.satisfies_identity(IdentityKind::JacobiSuper));
            }
        }
    }
}
