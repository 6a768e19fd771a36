//! Invertible grading-respecting basis changes, structure-constant
//! transport, and the seven explicit adapted-basis transformations with
//! their preservation checks.


use thiserror::Error;

use crate::algebra::{SuperAlgebra, Violation};
use crate::families::{partition_boundaries, partition_heads, Theorem22Class};
use crate::linalg::{LinAlgError, Matrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChangeError {
    #[error("change matrix is singular")]
    Singular,
    #[error("change matrix mixes parities (entry at row {row}, column {col})")]
    ParityMixing { row: usize, col: usize },
    #[error("case condition violated: {0}")]
    CaseCondition(String),
    #[error("primed vector {name} is dependent on the earlier ones")]
    DependentPrimed { name: String },
    #[error("retry over the parameter `a` exhausted after {attempts} attempts")]
    RetryExhausted { attempts: usize },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Invertible basis change respecting the parity blocks.
///
/// Convention: the change is the coordinate map `T` sending old
/// coordinates to primed coordinates; equivalently, the primed basis
/// vectors written in old coordinates are the columns of `T^{-1}`.
///
/// Worked two-dimensional example: take the table `[e_1, e_1] = e_2` (both
/// basis vectors even) and `T = 2·id`. Then `e'_i = 1/2 e_i`, so
/// `[e'_1, e'_1] = 1/4 [e_1, e_1] = 1/4 e_2 = 1/2 e'_2`: the transported
/// constant is `c'^2_{1,1} = 1/2` — scaling all coordinates by 2 halves
/// the structure constants.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisChange<S> {
    n: usize,
    m: usize,
    /// Columns are the primed basis vectors in old coordinates (`T^{-1}`).
    new_in_old: Matrix<S>,
    /// The coordinate map `T` itself.
    old_in_new: Matrix<S>,
}

impl<S: Scalar> BasisChange<S> {
    /// Builds the change from the primed basis vectors given in old
    /// coordinates.
    pub fn from_new_basis(n: usize, m: usize, vectors: &[Vec<S>]) -> Result<Self, ChangeError> {
        let d = n + m;
        assert_eq!(vectors.len(), d, "need {d} primed vectors");
        let new_in_old = Matrix::from_fn(d, d, |r, c| vectors[c][r].clone());
        Self::check_blocks(n, &new_in_old)?;
        let old_in_new = new_in_old.inverse().map_err(|_| ChangeError::Singular)?;
        Ok(Self {
            n,
            m,
            new_in_old,
            old_in_new,
        })
    }

    /// Builds the change from the coordinate map `T` (old coordinates to
    /// primed coordinates).
    pub fn from_coordinate_map(n: usize, m: usize, t: Matrix<S>) -> Result<Self, ChangeError> {
        assert_eq!(t.rows(), n + m);
        assert_eq!(t.cols(), n + m);
        Self::check_blocks(n, &t)?;
        let new_in_old = t.inverse().map_err(|_| ChangeError::Singular)?;
        Ok(Self {
            n,
            m,
            new_in_old,
            old_in_new: t,
        })
    }

    pub fn identity(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            new_in_old: Matrix::identity(n + m),
            old_in_new: Matrix::identity(n + m),
        }
    }

    fn check_blocks(n: usize, t: &Matrix<S>) -> Result<(), ChangeError> {
        for r in 0..t.rows() {
            for c in 0..t.cols() {
                if (r < n) != (c < n) && !t.get(r, c).is_zero() {
                    return Err(ChangeError::ParityMixing { row: r, col: c });
                }
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> Self {
        Self {
            n: self.n,
            m: self.m,
            new_in_old: self.old_in_new.clone(),
            old_in_new: self.new_in_old.clone(),
        }
    }

    pub fn to_new_coords(&self, v: &[S]) -> Vec<S> {
        self.old_in_new.mul_vec(v)
    }

    pub fn to_old_coords(&self, v: &[S]) -> Vec<S> {
        self.new_in_old.mul_vec(v)
    }

    /// Primed basis vector `j` in old coordinates.
    pub fn new_basis_vector(&self, j: usize) -> Vec<S> {
        (0..self.n + self.m)
            .map(|r| self.new_in_old.get(r, j).clone())
            .collect()
    }
}

/// Structure constants in the primed basis: `c'_{ij}` is
/// `T([T^{-1}e_i, T^{-1}e_j])`. Leibniz validity, nilindex, series
/// dimensions and the characteristic sequence are all preserved.
pub fn change_basis<S: Scalar>(a: &SuperAlgebra<S>, change: &BasisChange<S>) -> SuperAlgebra<S> {
    let (n, m) = (a.even_dim(), a.odd_dim());
    assert_eq!((n, m), (change.n, change.m), "dimension mismatch");
    let d = n + m;
    let mut products = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let u = change.new_basis_vector(i);
            let v = change.new_basis_vector(j);
            let w = bracket_vectors(a, &u, &v);
            if w.iter().any(|x| !x.is_zero()) {
                products.push((i, j, change.to_new_coords(&w)));
            }
        }
    }
    SuperAlgebra::from_products(n, m, &products)
        .expect("parity-block change preserves the grading")
}

fn bracket_vectors<S: Scalar>(a: &SuperAlgebra<S>, u: &[S], v: &[S]) -> Vec<S> {
    let mut out = vec![S::zero(); a.dim()];
    for (i, coeff) in u.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let partial = a.bracket_basis_vec(i, v);
        for (k, val) in partial.into_iter().enumerate() {
            if !val.is_zero() {
                out[k] = out[k].clone() + coeff.clone() * val;
            }
        }
    }
    out
}

/// The seven explicit transformations from the adapted-basis normalization
/// argument, keyed by class and by the shape of `x = A_1 x_1 + A_2 x_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma31CaseKind {
    /// class a, `A_1 (A_1 + A_2) != 0`
    A1,
    /// class a, `A_1 = 0` (uses the auxiliary parameter `a`)
    A2,
    /// class a, `A_1 = -A_2 != 0` (uses `a`)
    A3,
    /// class b, `A_1 != 0`
    B1,
    /// class b, `A_1 = 0` (uses `a`)
    B2,
    /// class c, `A_1 != 0`
    C1,
    /// class c, `A_1 = 0` (uses `a`)
    C2,
}

impl Lemma31CaseKind {
    pub const ALL: [Self; 7] = [
        Self::A1,
        Self::A2,
        Self::A3,
        Self::B1,
        Self::B2,
        Self::C1,
        Self::C2,
    ];

    pub fn class(self) -> Theorem22Class {
        match self {
            Self::A1 | Self::A2 | Self::A3 => Theorem22Class::A,
            Self::B1 | Self::B2 => Theorem22Class::B,
            Self::C1 | Self::C2 => Theorem22Class::C,
        }
    }

    /// Whether the case formula involves the free parameter `a`.
    pub fn needs_a(self) -> bool {
        matches!(self, Self::A2 | Self::A3 | Self::B2 | Self::C2)
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text.to_ascii_lowercase().replace('.', "").as_str() {
            "a1" => Some(Self::A1),
            "a2" => Some(Self::A2),
            "a3" => Some(Self::A3),
            "b1" => Some(Self::B1),
            "b2" => Some(Self::B2),
            "c1" => Some(Self::C1),
            "c2" => Some(Self::C2),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::A1 => "a.1",
            Self::A2 => "a.2",
            Self::A3 => "a.3",
            Self::B1 => "b.1",
            Self::B2 => "b.2",
            Self::C1 => "c.1",
            Self::C2 => "c.2",
        }
    }
}

/// Scalars for one case application. `a` is ignored by the cases that do
/// not use it.
#[derive(Debug, Clone)]
pub struct Lemma31Case<S> {
    pub kind: Lemma31CaseKind,
    pub a1: S,
    pub a2: S,
    pub a: S,
}

impl<S: Scalar> Lemma31Case<S> {
    pub fn new(kind: Lemma31CaseKind, a1: S, a2: S) -> Self {
        Self {
            kind,
            a1,
            a2,
            a: S::one(),
        }
    }

    pub fn with_a(mut self, a: S) -> Self {
        self.a = a;
        self
    }

    /// The case's defining condition on `(A_1, A_2, a)`.
    pub fn check_condition(&self) -> Result<(), ChangeError> {
        let fail = |msg: &str| Err(ChangeError::CaseCondition(msg.into()));
        match self.kind {
            Lemma31CaseKind::A1 => {
                if (self.a1.clone() * (self.a1.clone() + self.a2.clone())).is_zero() {
                    return fail("case a.1 needs A1 (A1 + A2) != 0");
                }
            }
            Lemma31CaseKind::A2 => {
                if !self.a1.is_zero() || self.a2.is_zero() {
                    return fail("case a.2 needs A1 = 0 and A2 != 0");
                }
                let guard = self.a.clone() * (S::one() + self.a.clone() * self.a2.clone());
                if guard.is_zero() {
                    return fail("case a.2 needs a (1 + a A2) != 0");
                }
            }
            Lemma31CaseKind::A3 => {
                if self.a1.is_zero() || self.a1 != -self.a2.clone() {
                    return fail("case a.3 needs A1 = -A2 != 0");
                }
                if self.a.is_zero() {
                    return fail("case a.3 needs a != 0");
                }
            }
            Lemma31CaseKind::B1 | Lemma31CaseKind::C1 => {
                if self.a1.is_zero() {
                    return fail("cases b.1 and c.1 need A1 != 0");
                }
            }
            Lemma31CaseKind::B2 | Lemma31CaseKind::C2 => {
                if !self.a1.is_zero() || self.a2.is_zero() {
                    return fail("cases b.2 and c.2 need A1 = 0 and A2 != 0");
                }
                if self.a.is_zero() {
                    return fail("cases b.2 and c.2 need a != 0");
                }
            }
        }
        Ok(())
    }
}

/// Applies one printed case to a matching-class algebra: builds the primed
/// basis exactly as displayed (including the recursive even chain and,
/// where the case redefines them, the recursive odd vectors with heads
/// copied verbatim), assembles the [`BasisChange`] and returns it together
/// with the transported algebra.
///
/// The correction coefficients are read off the table: for class a,
/// `theta` is the `x_n` coefficient of `[x_1, x_2]` and `alpha_n` the one
/// of `[x_2, x_2]`; for class b, `gamma` is the `x_n` coefficient of
/// `[x_2, x_2]`.
pub fn lemma31_transform<S: Scalar>(
    a: &SuperAlgebra<S>,
    partition: &[usize],
    case: &Lemma31Case<S>,
) -> Result<(BasisChange<S>, SuperAlgebra<S>), ChangeError> {
    case.check_condition()?;
    let (n, m) = (a.even_dim(), a.odd_dim());
    assert_eq!(
        m,
        partition.iter().sum::<usize>(),
        "partition does not sum to the odd dimension"
    );
    assert!(n >= 4, "adapted-basis classes need n >= 4");
    let d = n + m;
    let class = case.kind.class();

    let theta = a.product(0, 1)[n - 1].clone();
    let alpha_n = a.product(1, 1)[n - 1].clone();
    let gamma = a.product(1, 1)[n - 1].clone();

    let ev = |i: usize, coeff: S| {
        let mut v = vec![S::zero(); d];
        v[i - 1] = coeff;
        v
    };
    let add = |mut u: Vec<S>, v: Vec<S>| {
        for (x, y) in u.iter_mut().zip(v) {
            *x = x.clone() + y;
        }
        u
    };

    let (a1, a2, aa) = (case.a1.clone(), case.a2.clone(), case.a.clone());
    let x1p;
    let x2p;
    match case.kind {
        Lemma31CaseKind::A1 => {
            x1p = add(ev(1, a1.clone()), ev(2, a2.clone()));
            x2p = add(
                ev(2, a1.clone() + a2.clone()),
                ev(n - 1, a2.clone() * (theta.clone() - alpha_n.clone())),
            );
        }
        Lemma31CaseKind::A2 => {
            x1p = add(ev(1, S::one()), ev(2, aa.clone() * a2.clone()));
            // printed coefficient (1 + A2); the preservation check is the
            // arbiter for this formula
            x2p = add(
                ev(2, S::one() + a2.clone()),
                ev(
                    n - 1,
                    aa.clone() * a2.clone() * (theta.clone() - alpha_n.clone()),
                ),
            );
        }
        Lemma31CaseKind::A3 => {
            x1p = add(ev(1, a1.clone()), ev(2, aa.clone() - a1.clone()));
            x2p = add(
                ev(2, aa.clone()),
                ev(
                    n - 1,
                    (aa.clone() - a1.clone()) * (theta.clone() - alpha_n.clone()),
                ),
            );
        }
        Lemma31CaseKind::B1 => {
            x1p = add(ev(1, a1.clone()), ev(2, a2.clone()));
            x2p = add(
                ev(2, S::one()),
                ev(n - 1, -(a2.clone() * gamma.clone() / a1.clone())),
            );
        }
        Lemma31CaseKind::B2 => {
            x1p = add(ev(1, S::one()), ev(2, aa.clone() * a2.clone()));
            x2p = add(
                ev(2, S::one()),
                ev(n - 1, -(aa.clone() * a2.clone() * gamma.clone())),
            );
        }
        Lemma31CaseKind::C1 => {
            x1p = add(ev(1, a1.clone()), ev(2, a2.clone()));
            x2p = ev(2, S::one());
        }
        Lemma31CaseKind::C2 => {
            x1p = add(ev(1, S::one()), ev(2, aa.clone() * a2.clone()));
            x2p = ev(2, S::one());
        }
    }

    let mut evens: Vec<Vec<S>> = vec![x1p.clone(), x2p];
    if class == Theorem22Class::B {
        evens.push(bracket_vectors(a, &x1p, &x1p));
    } else {
        let prev = evens[1].clone();
        evens.push(bracket_vectors(a, &prev, &x1p));
    }
    for i in 4..=n {
        let prev = evens[i - 2].clone();
        evens.push(bracket_vectors(a, &prev, &x1p));
    }

    let redefine_odds = case.kind.needs_a();
    let heads = partition_heads(partition);
    let mut odds: Vec<Vec<S>> = Vec::with_capacity(m);
    for j in 1..=m {
        if !redefine_odds || heads.contains(&j) {
            let mut v = vec![S::zero(); d];
            v[n + j - 1] = S::one();
            odds.push(v);
        } else {
            let prev = odds[j - 2].clone();
            odds.push(bracket_vectors(a, &prev, &x1p));
        }
    }

    // The primed family must be a basis; report the first failing vector.
    let mut accum: Vec<Vec<S>> = Vec::with_capacity(d);
    for (idx, v) in evens.iter().chain(odds.iter()).enumerate() {
        accum.push(v.clone());
        let rank = Matrix::from_rows(accum.clone()).rank();
        if rank != accum.len() {
            let name = if idx < n {
                format!("x'{}", idx + 1)
            } else {
                format!("y'{}", idx - n + 1)
            };
            return Err(ChangeError::DependentPrimed { name });
        }
    }

    let vectors: Vec<Vec<S>> = evens.into_iter().chain(odds).collect();
    let change = BasisChange::from_new_basis(n, m, &vectors)?;
    let transported = change_basis(a, &change);
    Ok((change, transported))
}

/// Preservation report for the four protected product groups of a class.
/// Violations carry the slot indices and the residual coefficient vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PreservationReport<S> {
    pub violations: Vec<Violation<S>>,
}

impl<S> PreservationReport<S> {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the class's four protected product groups after a
/// transformation: the even chain relations are compared slot-by-slot
/// between original and transformed, and the transformed table must carry
/// the odd chain in normalized form (`[y_j, x_1] = y_{j+1}` off the
/// partition boundaries, `0` on them). For a normalized original the odd
/// checks coincide with slot equality against it.
pub fn verify_preserved_products<S: Scalar>(
    original: &SuperAlgebra<S>,
    transformed: &SuperAlgebra<S>,
    class: Theorem22Class,
    partition: &[usize],
) -> PreservationReport<S> {
    let (n, m) = (original.even_dim(), original.odd_dim());
    assert_eq!((n, m), (transformed.even_dim(), transformed.odd_dim()));
    let d = n + m;
    let mut violations = Vec::new();

    let mut even_slots: Vec<(usize, usize)> = Vec::new();
    match class {
        Theorem22Class::A => {
            even_slots.push((0, 0));
            even_slots.extend((2..n).map(|i| (i - 1, 0)));
        }
        Theorem22Class::B => {
            even_slots.push((0, 0));
            even_slots.extend((3..n).map(|i| (i - 1, 0)));
        }
        Theorem22Class::C => {
            even_slots.extend((2..n).map(|i| (i - 1, 0)));
            even_slots.extend((3..n).map(|i| (0, i - 1)));
        }
    }
    for (i, j) in even_slots {
        let residual: Vec<S> = (0..d)
            .map(|k| transformed.product(i, j)[k].clone() - original.product(i, j)[k].clone())
            .collect();
        if residual.iter().any(|v| !v.is_zero()) {
            violations.push(Violation {
                indices: vec![i, j],
                residual,
            });
        }
    }

    let boundaries = partition_boundaries(partition);
    for j in 1..=m {
        let mut expected = vec![S::zero(); d];
        if !boundaries.contains(&j) {
            expected[n + j] = S::one();
        }
        let residual: Vec<S> = (0..d)
            .map(|k| transformed.product(n + j - 1, 0)[k].clone() - expected[k].clone())
            .collect();
        if residual.iter().any(|v| !v.is_zero()) {
            violations.push(Violation {
                indices: vec![n + j - 1, 0],
                residual,
            });
        }
    }

    PreservationReport { violations }
}

/// Case instantiation chosen by the retry loop, with the change it
/// produced and the transported algebra.
pub type RetryOutcome<S> = (Lemma31Case<S>, BasisChange<S>, SuperAlgebra<S>);

/// Effective substitute for "a sufficiently big/small value of the
/// parameter a": tries `1, 2, 4, ...` (or `1, 1/2, 1/4, ...` for the case
/// that wants small values), skipping values that violate the case
/// condition, until the primed family is independent and the preserved
/// products verify. Cases without an `a` parameter get a single attempt.
pub fn lemma31_transform_retry<S: Scalar>(
    a: &SuperAlgebra<S>,
    partition: &[usize],
    kind: Lemma31CaseKind,
    a1: S,
    a2: S,
    max_retries: usize,
) -> Result<RetryOutcome<S>, ChangeError> {
    let attempt =
        |case: &Lemma31Case<S>| -> Result<(BasisChange<S>, SuperAlgebra<S>), ChangeError> {
            let (change, transported) = lemma31_transform(a, partition, case)?;
            let report = verify_preserved_products(a, &transported, kind.class(), partition);
            if report.holds() {
                Ok((change, transported))
            } else {
                Err(ChangeError::CaseCondition(format!(
                    "{} preserved-product violations",
                    report.violations.len()
                )))
            }
        };

    if !kind.needs_a() {
        let case = Lemma31Case::new(kind, a1, a2);
        let (change, transported) = attempt(&case)?;
        return Ok((case, change, transported));
    }

    let small = kind == Lemma31CaseKind::A3;
    let mut attempts = 0;
    let mut numer: i64 = 1;
    for _ in 0..max_retries {
        let value = if small {
            S::one() / S::from_int(numer)
        } else {
            S::from_int(numer)
        };
        numer = numer.saturating_mul(2);
        let case = Lemma31Case::new(kind, a1.clone(), a2.clone()).with_a(value);
        if case.check_condition().is_err() {
            continue;
        }
        attempts += 1;
        if let Ok((change, transported)) = attempt(&case) {
            return Ok((case, change, transported));
        }
    }
    Err(ChangeError::RetryExhausted { attempts })
}

/// Rewrites the odd chain of a class table so that it is carried by the
/// pair `(c_1, c_2)`: `[y_j, x_1] = c_1 y_{j+1}` and `[y_j, x_2] = c_2
/// y_{j+1}` off the boundaries, zero on them. The element
/// `x = A_1 x_1 + A_2 x_2` then acts as the chain exactly when
/// `A_1 c_1 + A_2 c_2 = 1`.
///
/// Intended for instances whose `[y_j, x_2]` slots are otherwise zero; the
/// caller re-checks the superidentity.
pub fn with_odd_action<S: Scalar>(
    a: &SuperAlgebra<S>,
    partition: &[usize],
    c1: S,
    c2: S,
) -> SuperAlgebra<S> {
    let (n, m) = (a.even_dim(), a.odd_dim());
    let d = n + m;
    let boundaries = partition_boundaries(partition);
    let mut products = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i >= n && (j == 0 || j == 1) {
                continue;
            }
            let p = a.product(i, j);
            if p.iter().any(|v| !v.is_zero()) {
                products.push((i, j, p.to_vec()));
            }
        }
    }
    for j in 1..=m {
        if boundaries.contains(&j) {
            continue;
        }
        let mut v1 = vec![S::zero(); d];
        v1[n + j] = c1.clone();
        push_if_nonzero(&mut products, n + j - 1, 0, v1);
        let mut v2 = vec![S::zero(); d];
        v2[n + j] = c2.clone();
        push_if_nonzero(&mut products, n + j - 1, 1, v2);
    }
    SuperAlgebra::from_products(n, m, &products).expect("odd action rewrite respects the grading")
}

fn push_if_nonzero<S: Scalar>(
    products: &mut Vec<(usize, usize, Vec<S>)>,
    i: usize,
    j: usize,
    v: Vec<S>,
) {
    if v.iter().any(|x| !x.is_zero()) {
        products.push((i, j, v));
    }
}
