//! Constructors for the model families: the two maximal-nilindex
//! superalgebras, the graded form of the second one, and the three
//! adapted-basis classes a), b), c).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{AlgebraError, IdentityKind, IdentityReport, SuperAlgebra};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("invalid dimensions: {0}")]
    BadDimensions(String),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("product ({left}, {right}) is fixed by the family table and cannot be overridden")]
    FixedSlot { left: usize, right: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem21Variant {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem22Class {
    A,
    B,
    C,
}

impl Theorem22Class {
    pub fn name(self) -> &'static str {
        match self {
            Theorem22Class::A => "a",
            Theorem22Class::B => "b",
            Theorem22Class::C => "c",
        }
    }
}

/// Cumulative partition sums `m_1, m_1+m_2, ..., m`: the 1-based odd
/// indices at which the chain action of `x_1` breaks.
pub fn partition_boundaries(partition: &[usize]) -> Vec<usize> {
    partition
        .iter()
        .scan(0, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
        .collect()
}

/// 1-based odd indices of the block heads: `1, m_1+1, m_1+m_2+1, ...`.
pub fn partition_heads(partition: &[usize]) -> Vec<usize> {
    let mut heads = Vec::with_capacity(partition.len());
    let mut acc = 1;
    for &p in partition {
        heads.push(acc);
        acc += p;
    }
    heads
}

/// Coefficient parameters of the Theorem 2.2 classes. Anything left unset
/// is zero.
///
/// Class a) has `alpha_4 .. alpha_n` and `theta`: `theta` is the `x_n`
/// coefficient of `[x_1, x_2]` while `alpha_n` only enters the rows
/// `[x_j, x_2]`, `j >= 2` (their last term is `alpha_{n+2-j} x_n`).
/// Class b) has `beta_4 .. beta_n` and `gamma`. Class c) has
/// `theta_1..theta_3` plus the free skew coefficients of `[x_i, x_j]`,
/// `2 <= i < j <= n-2`, supported on `x_{i+j+1}..x_n`.
#[derive(Debug, Clone)]
pub struct Theorem22Params<S> {
    pub alpha: BTreeMap<usize, S>,
    pub theta: Option<S>,
    pub beta: BTreeMap<usize, S>,
    pub gamma: Option<S>,
    pub theta1: Option<S>,
    pub theta2: Option<S>,
    pub theta3: Option<S>,
    /// `(i, j, l)` with `i < j`: coefficient of `x_l` in `[x_i, x_j]`;
    /// `[x_j, x_i]` gets the negated value.
    pub skew: BTreeMap<(usize, usize, usize), S>,
}

impl<S> Default for Theorem22Params<S> {
    fn default() -> Self {
        Self {
            alpha: BTreeMap::new(),
            theta: None,
            beta: BTreeMap::new(),
            gamma: None,
            theta1: None,
            theta2: None,
            theta3: None,
            skew: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> Theorem22Params<S> {
    /// Sets a parameter by name: `alpha4`, `theta`, `beta5`, `gamma`,
    /// `theta1`, `theta2`, `theta3`, or `c<i>_<j>_<l>` for the class-c skew
    /// coefficient of `x_l` in `[x_i, x_j]`.
    pub fn set_named(&mut self, name: &str, value: S) -> Result<(), FamilyError> {
        let bad = || FamilyError::BadParameter(format!("unknown parameter name `{name}`"));
        if let Some(rest) = name.strip_prefix("alpha") {
            let idx: usize = rest.parse().map_err(|_| bad())?;
            self.alpha.insert(idx, value);
        } else if name == "theta" {
            self.theta = Some(value);
        } else if let Some(rest) = name.strip_prefix("beta") {
            let idx: usize = rest.parse().map_err(|_| bad())?;
            self.beta.insert(idx, value);
        } else if name == "gamma" {
            self.gamma = Some(value);
        } else if name == "theta1" {
            self.theta1 = Some(value);
        } else if name == "theta2" {
            self.theta2 = Some(value);
        } else if name == "theta3" {
            self.theta3 = Some(value);
        } else if let Some(rest) = name.strip_prefix('c') {
            let parts: Vec<_> = rest.split('_').collect();
            if parts.len() != 3 {
                return Err(bad());
            }
            let i: usize = parts[0].parse().map_err(|_| bad())?;
            let j: usize = parts[1].parse().map_err(|_| bad())?;
            let l: usize = parts[2].parse().map_err(|_| bad())?;
            self.skew.insert((i, j, l), value);
        } else {
            return Err(bad());
        }
        Ok(())
    }

    fn alpha_at(&self, idx: usize) -> S {
        self.alpha.get(&idx).cloned().unwrap_or_else(S::zero)
    }

    fn beta_at(&self, idx: usize) -> S {
        self.beta.get(&idx).cloned().unwrap_or_else(S::zero)
    }

    fn opt(&self, v: &Option<S>) -> S {
        v.clone().unwrap_or_else(S::zero)
    }
}

/// Parameters selecting one of the model families.
#[derive(Debug, Clone)]
pub struct FamilySpec<S> {
    pub family: FamilyKind,
    pub n: usize,
    /// Odd block sizes `m_1..m_k`; the odd dimension is their sum.
    pub partition: Vec<usize>,
    pub params: Theorem22Params<S>,
    /// Products the family table leaves unspecified, as
    /// `(left, right, full coefficient vector)` over 0-based indices.
    pub mixed: Vec<(usize, usize, Vec<S>)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Thm21First,
    Thm21Second,
    Remark21,
    Thm22A,
    Thm22B,
    Thm22C,
}

impl FamilyKind {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "thm21-first" => Some(Self::Thm21First),
            "thm21-second" => Some(Self::Thm21Second),
            "remark21" => Some(Self::Remark21),
            "thm22-a" => Some(Self::Thm22A),
            "thm22-b" => Some(Self::Thm22B),
            "thm22-c" => Some(Self::Thm22C),
            _ => None,
        }
    }
}

impl<S: Scalar> FamilySpec<S> {
    pub fn new(family: FamilyKind, n: usize, partition: Vec<usize>) -> Self {
        Self {
            family,
            n,
            partition,
            params: Theorem22Params::default(),
            mixed: Vec::new(),
        }
    }

    pub fn odd_dim(&self) -> usize {
        self.partition.iter().sum()
    }

    /// Builds the family member together with its Leibniz superidentity
    /// report. The Theorem 2.1 / Remark 2.1 tables always pass; Theorem 2.2
    /// members need not for arbitrary parameters, so callers must inspect
    /// the report.
    pub fn build(&self) -> Result<(SuperAlgebra<S>, IdentityReport<S>), FamilyError> {
        let m = self.odd_dim();
        let algebra = match self.family {
            FamilyKind::Thm21First => build_theorem21(Theorem21Variant::First, self.n, m)?,
            FamilyKind::Thm21Second => build_theorem21(Theorem21Variant::Second, self.n, m)?,
            FamilyKind::Remark21 => build_remark21(self.n, m)?,
            FamilyKind::Thm22A => return build_theorem22(Theorem22Class::A, self),
            FamilyKind::Thm22B => return build_theorem22(Theorem22Class::B, self),
            FamilyKind::Thm22C => return build_theorem22(Theorem22Class::C, self),
        };
        let report = algebra.check_identity(IdentityKind::LeibnizSuper);
        Ok((algebra, report))
    }
}

fn basis_vec<S: Scalar>(dim: usize, index: usize, value: S) -> Vec<S> {
    let mut v = vec![S::zero(); dim];
    v[index] = value;
    v
}

/// The two maximal-nilindex superalgebras. The first variant is the
/// null-filiform chain `[e_i, e_1] = e_{i+1}` and has no odd part; the
/// second requires `m = n` or `m = n + 1` and is returned in the graded
/// basis of [`build_remark21`].
pub fn build_theorem21<S: Scalar>(
    variant: Theorem21Variant,
    n: usize,
    m: usize,
) -> Result<SuperAlgebra<S>, FamilyError> {
    match variant {
        Theorem21Variant::First => {
            if m != 0 {
                return Err(FamilyError::BadDimensions(format!(
                    "the first maximal-nilindex table has no odd action (m = {m})"
                )));
            }
            if n == 0 {
                return Err(FamilyError::BadDimensions("n must be at least 1".into()));
            }
            let mut products = Vec::new();
            for i in 0..n.saturating_sub(1) {
                products.push((i, 0, basis_vec(n, i + 1, S::one())));
            }
            Ok(SuperAlgebra::from_products(n, 0, &products)?)
        }
        Theorem21Variant::Second => build_remark21(n, m),
    }
}

/// Graded multiplication table of the second maximal-nilindex superalgebra:
///
/// ```text
/// [y_j, x_1] = y_{j+1}        1 <= j <= m-1
/// [x_i, x_1] = x_{i+1}        1 <= i <= n-1
/// [y_j, y_1] = x_j            1 <= j <= n
/// [x_i, y_1] = 1/2 y_{i+1}    1 <= i <= min(n, m-1)
/// ```
///
/// This is the regrading of the ungraded chain table
/// `[e_i, e_1] = e_{i+1}`, `[e_i, e_2] = 2 e_{i+2}` under
/// `y_j = 2^{j-1} e_{2j-1}`, `x_i = 2^{i-1} e_{2i}`; it passes the Leibniz
/// superidentity and has nilindex `n + m + 1`.
pub fn build_remark21<S: Scalar>(n: usize, m: usize) -> Result<SuperAlgebra<S>, FamilyError> {
    if n == 0 || (m != n && m != n + 1) {
        return Err(FamilyError::BadDimensions(format!(
            "the graded table needs n >= 1 and m = n or m = n + 1 (got n = {n}, m = {m})"
        )));
    }
    let d = n + m;
    let y = |j: usize| n + j - 1; // 1-based odd index -> 0-based
    let half = S::one() / S::from_int(2);
    let mut products = Vec::new();
    for j in 1..m {
        products.push((y(j), 0, basis_vec(d, y(j + 1), S::one())));
    }
    for i in 1..n {
        products.push((i - 1, 0, basis_vec(d, i, S::one())));
    }
    for j in 1..=n {
        products.push((y(j), y(1), basis_vec(d, j - 1, S::one())));
    }
    for i in 1..=n.min(m - 1) {
        products.push((i - 1, y(1), basis_vec(d, y(i + 1), half.clone())));
    }
    Ok(SuperAlgebra::from_products(n, m, &products)?)
}

/// Adapted-basis constructor for the three Theorem 2.2 classes, normalized
/// so that the odd chain action is carried by `x_1`:
/// `[y_j, x_1] = y_{j+1}` off the partition boundaries and `0` on them.
///
/// Even-even products follow the printed class tables letter for letter;
/// in particular class a) includes `[x_2, x_1] = x_3` (the chain row
/// `i = 2`) alongside `[x_1, x_1] = x_3`, which makes `x_3` reachable from
/// both generators there.
///
/// Products the theorem leaves unspecified default to zero and may be
/// supplied through [`FamilySpec::mixed`]. Arbitrary parameter choices need
/// not satisfy the superidentity, so the report is returned alongside the
/// algebra.
pub fn build_theorem22<S: Scalar>(
    class: Theorem22Class,
    spec: &FamilySpec<S>,
) -> Result<(SuperAlgebra<S>, IdentityReport<S>), FamilyError> {
    let algebra = build_theorem22_table(class, spec)?;
    let report = algebra.check_identity(IdentityKind::LeibnizSuper);
    Ok((algebra, report))
}

/// Table-only variant of [`build_theorem22`] for callers that run their
/// own (early-exit) identity check, like the rejection sampler.
pub fn build_theorem22_table<S: Scalar>(
    class: Theorem22Class,
    spec: &FamilySpec<S>,
) -> Result<SuperAlgebra<S>, FamilyError> {
    let n = spec.n;
    let m = spec.odd_dim();
    let d = n + m;
    if n < 4 {
        return Err(FamilyError::BadDimensions(format!(
            "adapted-basis classes need n >= 4 (got n = {n})"
        )));
    }
    if spec.partition.contains(&0) {
        return Err(FamilyError::BadDimensions(
            "partition entries must be positive".into(),
        ));
    }
    spec_params_for_class(class, &spec.params, n)?;

    let p = &spec.params;
    let mut products: Vec<(usize, usize, Vec<S>)> = Vec::new();

    // Odd chain action of x_1 with breaks exactly at the cumulative sums.
    let boundaries = partition_boundaries(&spec.partition);
    for j in 1..=m {
        if !boundaries.contains(&j) {
            products.push((n + j - 1, 0, basis_vec(d, n + j, S::one())));
        }
    }

    match class {
        Theorem22Class::A => {
            products.push((0, 0, basis_vec(d, 2, S::one())));
            for i in 2..n {
                products.push((i - 1, 0, basis_vec(d, i, S::one())));
            }
            // [x_1, x_2] = alpha_4 x_4 + ... + alpha_{n-1} x_{n-1} + theta x_n
            let mut v = vec![S::zero(); d];
            for t in 4..n {
                v[t - 1] = p.alpha_at(t);
            }
            v[n - 1] = v[n - 1].clone() + p.opt(&p.theta);
            push_nonzero(&mut products, 0, 1, v);
            // [x_j, x_2] = alpha_4 x_{j+2} + ... + alpha_{n+2-j} x_n
            for j in 2..=n.saturating_sub(2) {
                let mut v = vec![S::zero(); d];
                for t in 4..=(n + 2 - j) {
                    v[j + t - 3] = v[j + t - 3].clone() + p.alpha_at(t);
                }
                push_nonzero(&mut products, j - 1, 1, v);
            }
        }
        Theorem22Class::B => {
            products.push((0, 0, basis_vec(d, 2, S::one())));
            for i in 3..n {
                products.push((i - 1, 0, basis_vec(d, i, S::one())));
            }
            let mut v = vec![S::zero(); d];
            for t in 4..=n {
                v[t - 1] = p.beta_at(t);
            }
            push_nonzero(&mut products, 0, 1, v);
            push_nonzero(&mut products, 1, 1, basis_vec(d, n - 1, p.opt(&p.gamma)));
            for j in 3..=n.saturating_sub(2) {
                let mut v = vec![S::zero(); d];
                for t in 4..=(n + 2 - j) {
                    v[j + t - 3] = v[j + t - 3].clone() + p.beta_at(t);
                }
                push_nonzero(&mut products, j - 1, 1, v);
            }
        }
        Theorem22Class::C => {
            for i in 2..n {
                products.push((i - 1, 0, basis_vec(d, i, S::one())));
            }
            for i in 3..n {
                products.push((0, i - 1, basis_vec(d, i, -S::one())));
            }
            push_nonzero(&mut products, 0, 0, basis_vec(d, n - 1, p.opt(&p.theta1)));
            let mut v = vec![S::zero(); d];
            v[2] = -S::one();
            v[n - 1] = v[n - 1].clone() + p.opt(&p.theta2);
            push_nonzero(&mut products, 0, 1, v);
            push_nonzero(&mut products, 1, 1, basis_vec(d, n - 1, p.opt(&p.theta3)));
            // Free skew part: [x_i, x_j] = -[x_j, x_i] in <x_{i+j+1}..x_n>.
            let mut skew_slots: BTreeMap<(usize, usize), Vec<S>> = BTreeMap::new();
            for (&(i, j, l), value) in &p.skew {
                if !(2 <= i && i < j && j <= n - 2) || l < i + j + 1 || l > n {
                    return Err(FamilyError::BadParameter(format!(
                        "skew coefficient c{i}_{j}_{l} outside the allowed range"
                    )));
                }
                skew_slots.entry((i, j)).or_insert_with(|| vec![S::zero(); d])[l - 1] =
                    value.clone();
            }
            for ((i, j), v) in skew_slots {
                let neg: Vec<S> = v.iter().map(|x| -x.clone()).collect();
                products.push((i - 1, j - 1, v));
                products.push((j - 1, i - 1, neg));
            }
        }
    }

    // The fixed slots: the whole even-even block and the x_1 action on the
    // odd part. Everything else is genuinely free in the theorem.
    let fixed = |left: usize, right: usize| right == 0 || (left < n && right < n);
    for (left, right, coeffs) in &spec.mixed {
        if *left >= d || *right >= d {
            return Err(FamilyError::from(AlgebraError::IndexOutOfRange {
                index: (*left).max(*right),
                dim: d,
            }));
        }
        if fixed(*left, *right) {
            return Err(FamilyError::FixedSlot {
                left: *left,
                right: *right,
            });
        }
        products.push((*left, *right, coeffs.clone()));
    }

    Ok(SuperAlgebra::from_products(n, m, &products)?)
}

fn push_nonzero<S: Scalar>(
    products: &mut Vec<(usize, usize, Vec<S>)>,
    i: usize,
    j: usize,
    v: Vec<S>,
) {
    if v.iter().any(|x| !x.is_zero()) {
        products.push((i, j, v));
    }
}

fn spec_params_for_class<S: Scalar>(
    class: Theorem22Class,
    p: &Theorem22Params<S>,
    n: usize,
) -> Result<(), FamilyError> {
    let reject = |what: &str| {
        Err(FamilyError::BadParameter(format!(
            "parameter {what} does not belong to class {}",
            class.name()
        )))
    };
    match class {
        Theorem22Class::A => {
            if !p.beta.is_empty() || p.gamma.is_some() {
                return reject("beta/gamma");
            }
            if p.theta1.is_some() || p.theta2.is_some() || p.theta3.is_some() || !p.skew.is_empty()
            {
                return reject("theta1/theta2/theta3/skew");
            }
            for &idx in p.alpha.keys() {
                if !(4..=n).contains(&idx) {
                    return Err(FamilyError::BadParameter(format!(
                        "alpha{idx} outside 4..={n}"
                    )));
                }
            }
        }
        Theorem22Class::B => {
            if !p.alpha.is_empty() || p.theta.is_some() {
                return reject("alpha/theta");
            }
            if p.theta1.is_some() || p.theta2.is_some() || p.theta3.is_some() || !p.skew.is_empty()
            {
                return reject("theta1/theta2/theta3/skew");
            }
            for &idx in p.beta.keys() {
                if !(4..=n).contains(&idx) {
                    return Err(FamilyError::BadParameter(format!(
                        "beta{idx} outside 4..={n}"
                    )));
                }
            }
        }
        Theorem22Class::C => {
            if !p.alpha.is_empty() || p.theta.is_some() || !p.beta.is_empty() || p.gamma.is_some()
            {
                return reject("alpha/theta/beta/gamma");
            }
        }
    }
    Ok(())
}
