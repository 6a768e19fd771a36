//! Right-multiplication operators, nilpotent Jordan-block sequences, the
//! characteristic sequence, and filiform detection with the three-way
//! equivalence cross-check.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{Homogeneity, SuperAlgebra};
use crate::linalg::{LinAlgError, Matrix};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantError {
    #[error("element is not even-homogeneous")]
    NotEvenHomogeneous,
    #[error("no admissible element: L0 equals [L0, L0]")]
    NoAdmissibleElement,
    #[error("operation needs a plain Leibniz algebra (m = 0), got m = {0}")]
    OddPartPresent(usize),
    #[error("dimension {0} too small for the filiform cross-check")]
    DimensionTooSmall(usize),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Matrices of the right multiplication `R_x : y -> [y, x]` restricted to
/// the even and odd parts, columns indexed by basis. Requires `x` even
/// (the zero element counts as even).
pub fn right_mult_operator<S: Scalar>(
    a: &SuperAlgebra<S>,
    x: &[S],
) -> Result<(Matrix<S>, Matrix<S>), InvariantError> {
    let (n, m) = (a.even_dim(), a.odd_dim());
    assert_eq!(x.len(), n + m, "element has wrong length");
    match crate::algebra::Element::from_coords(x.to_vec()).homogeneity(n) {
        Homogeneity::Even | Homogeneity::Zero => {}
        _ => return Err(InvariantError::NotEvenHomogeneous),
    }
    let mut even = Matrix::zeros(n, n);
    let mut odd = Matrix::zeros(m, m);
    for j in 0..n + m {
        let image = a.bracket_basis_vec(j, x);
        if j < n {
            for (r, value) in image[..n].iter().enumerate() {
                even.set(r, j, value.clone());
            }
        } else {
            for (r, value) in image[n..].iter().enumerate() {
                odd.set(r, j - n, value.clone());
            }
        }
    }
    Ok((even, odd))
}

/// Descending Jordan block sizes of a nilpotent matrix, from the ranks of
/// its powers: the number of blocks of size `>= k` is
/// `rank(M^{k-1}) - rank(M^k)`. Rejects non-nilpotent input.
pub fn jordan_sequence<S: Scalar>(m: &Matrix<S>) -> Result<Vec<usize>, InvariantError> {
    let ranks = m.rank_power_sequence()?;
    if *ranks.last().expect("nonempty") != 0 {
        return Err(InvariantError::LinAlg(LinAlgError::NotNilpotent {
            dim: m.rows(),
        }));
    }
    let rank_at = |k: usize| -> usize {
        if k < ranks.len() {
            ranks[k]
        } else {
            0
        }
    };
    let max_size = ranks.len() - 1;
    let blocks_ge = |k: usize| rank_at(k - 1) - rank_at(k);
    let mut sizes = Vec::new();
    for size in (1..=max_size).rev() {
        let exactly = blocks_ge(size) - if size < max_size { blocks_ge(size + 1) } else { 0 };
        for _ in 0..exactly {
            sizes.push(size);
        }
    }
    debug_assert_eq!(sizes.iter().sum::<usize>(), m.rows());
    Ok(sizes)
}

/// Lexicographic comparison of descending block sequences. On the
/// equal-sum sequences produced here a proper prefix never occurs; if it
/// does, the longer sequence is the smaller one.
pub fn lex_cmp(a: &[usize], b: &[usize]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    b.len().cmp(&a.len())
}

/// Characteristic sequence: the pair of descending block-size sequences
/// for the even and odd parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSeq {
    pub even: Vec<usize>,
    pub odd: Vec<usize>,
}

impl CharSeq {
    pub fn new(even: Vec<usize>, odd: Vec<usize>) -> Self {
        Self { even, odd }
    }

    fn cmp_joint(&self, other: &Self) -> Ordering {
        lex_cmp(&self.even, &other.even).then_with(|| lex_cmp(&self.odd, &other.odd))
    }
}

impl fmt::Display for CharSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            if v.is_empty() {
                "-".to_string()
            } else {
                v.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            }
        };
        write!(f, "({} | {})", join(&self.even), join(&self.odd))
    }
}

/// Deterministic realization of the supremum over `L_0 \ [L_0, L_0]`:
/// every even basis vector outside `[L_0, L_0]` plus `sample_count` seeded
/// random even combinations with coefficients from `pool`.
///
/// The Jordan type is lexicographically maximal on a Zariski-open set, so
/// random rational points attain the maximum with overwhelming
/// probability; this stays a heuristic and the fixed seed keeps it
/// reproducible. With `joint` set, the concatenated pair is maximized at a
/// single element instead of maximizing the two parts independently.
#[derive(Debug, Clone)]
pub struct SamplingConfig<S> {
    pub sample_count: usize,
    pub seed: u64,
    pub pool: Vec<S>,
    pub joint: bool,
}

impl<S: Scalar> SamplingConfig<S> {
    pub fn new(sample_count: usize, seed: u64) -> Self {
        assert!(sample_count >= 1, "sample_count must be at least 1");
        let pool = [-2i64, -1, 1, 2, 3]
            .iter()
            .map(|&p| S::from_int(p))
            .chain([S::from_ratio(1, 2), S::from_ratio(-1, 2)])
            .collect();
        Self {
            sample_count,
            seed,
            pool,
            joint: false,
        }
    }

    pub fn with_pool(mut self, pool: Vec<S>) -> Self {
        self.pool = pool;
        self
    }

    pub fn joint(mut self) -> Self {
        self.joint = true;
        self
    }
}

/// Span of all even-even products: the subspace `[L_0, L_0]` inside `L_0`.
fn even_product_space<S: Scalar>(a: &SuperAlgebra<S>) -> Subspace<S> {
    let n = a.even_dim();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = a.product(i, j);
            if p[..n].iter().any(|v| !v.is_zero()) {
                products.push(p[..n].to_vec());
            }
        }
    }
    Subspace::span(n, 0, &products)
}

/// The characteristic sequence evaluated over the deterministic candidate
/// set of `cfg`. Errors if no candidate exists (`L_0 = [L_0, L_0]`) or if
/// some right-multiplication operator is not nilpotent.
pub fn characteristic_sequence<S: Scalar>(
    a: &SuperAlgebra<S>,
    cfg: &SamplingConfig<S>,
) -> Result<CharSeq, InvariantError> {
    let (n, m) = (a.even_dim(), a.odd_dim());
    let derived = even_product_space(a);
    let mut candidates: Vec<Vec<S>> = Vec::new();
    for i in 0..n {
        let mut e = vec![S::zero(); n];
        e[i] = S::one();
        if !derived.contains(&e) {
            candidates.push(e);
        }
    }
    for index in 0..cfg.sample_count {
        // split the stream deterministically per candidate index, so
        // serial and parallel evaluations agree
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(index as u64 + 1);
        for _ in 0..16 {
            let v: Vec<S> = (0..n)
                .map(|_| cfg.pool[rng.random_range(0..cfg.pool.len())].clone())
                .collect();
            if v.iter().any(|x| !x.is_zero()) && !derived.contains(&v) {
                candidates.push(v);
                break;
            }
        }
    }
    if candidates.is_empty() {
        return Err(InvariantError::NoAdmissibleElement);
    }

    let mut best: Option<CharSeq> = None;
    let mut best_even: Option<Vec<usize>> = None;
    let mut best_odd: Option<Vec<usize>> = None;
    for cand in &candidates {
        let mut full = cand.clone();
        full.resize(n + m, S::zero());
        let (even_op, odd_op) = right_mult_operator(a, &full)?;
        let c0 = jordan_sequence(&even_op)?;
        let c1 = jordan_sequence(&odd_op)?;
        if cfg.joint {
            let cs = CharSeq::new(c0, c1);
            if best.as_ref().is_none_or(|b| cs.cmp_joint(b) == Ordering::Greater) {
                best = Some(cs);
            }
        } else {
            if best_even
                .as_ref()
                .is_none_or(|b| lex_cmp(&c0, b) == Ordering::Greater)
            {
                best_even = Some(c0);
            }
            if best_odd
                .as_ref()
                .is_none_or(|b| lex_cmp(&c1, b) == Ordering::Greater)
            {
                best_odd = Some(c1);
            }
        }
    }
    Ok(if cfg.joint {
        best.expect("candidates nonempty")
    } else {
        CharSeq::new(
            best_even.expect("candidates nonempty"),
            best_odd.expect("candidates nonempty"),
        )
    })
}

/// `dim L^i = n - i` for `2 <= i <= n`. Defined for plain Leibniz algebras
/// only.
pub fn is_filiform<S: Scalar>(a: &SuperAlgebra<S>) -> Result<bool, InvariantError> {
    if a.odd_dim() != 0 {
        return Err(InvariantError::OddPartPresent(a.odd_dim()));
    }
    let n = a.even_dim();
    let series = a.lower_central_series();
    let dim_at = |i: usize| series.get(i - 1).map_or(0, Subspace::dim);
    Ok((2..=n).all(|i| dim_at(i) == n - i))
}

/// The three equivalent filiform characterizations, evaluated
/// independently: characteristic sequence `(n-1, 1)`, the filiform
/// dimension profile, and `L^{n-1} != 0` with `L^n = 0`.
pub fn lemma21_crosscheck<S: Scalar>(
    a: &SuperAlgebra<S>,
    cfg: &SamplingConfig<S>,
) -> Result<[bool; 3], InvariantError> {
    if a.odd_dim() != 0 {
        return Err(InvariantError::OddPartPresent(a.odd_dim()));
    }
    let n = a.even_dim();
    if n < 2 {
        return Err(InvariantError::DimensionTooSmall(n));
    }
    let charseq_match = match characteristic_sequence(a, cfg) {
        Ok(cs) => cs.even == vec![n - 1, 1],
        Err(InvariantError::LinAlg(LinAlgError::NotNilpotent { .. })) => false,
        Err(e) => return Err(e),
    };
    let filiform = is_filiform(a)?;
    let series = a.lower_central_series();
    let dim_at = |i: usize| series.get(i - 1).map_or(0, Subspace::dim);
    let tail = dim_at(n - 1) != 0 && dim_at(n) == 0;
    Ok([charseq_match, filiform, tail])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_theorem21, FamilyKind, FamilySpec, Theorem21Variant};
    use crate::scalar::{rat, Rat};

    fn shift(dim: usize) -> Matrix<Rat> {
        Matrix::from_fn(dim, dim, |r, c| if r == c + 1 { rat(1) } else { rat(0) })
    }

    #[test]
    fn right_mult_on_null_filiform() {
        let a: SuperAlgebra<Rat> = build_theorem21(Theorem21Variant::First, 4, 0).unwrap();
        let mut x = vec![rat(0); 4];
        x[0] = rat(1);
        let (even, odd) = right_mult_operator(&a, &x).unwrap();
        assert_eq!(even, shift(4));
        assert_eq!(odd.rows(), 0);
    }

    #[test]
    fn right_mult_of_zero_element() {
        let a: SuperAlgebra<Rat> = build_theorem21(Theorem21Variant::Second, 2, 3).unwrap();
        let x = vec![rat(0); 5];
        let (even, odd) = right_mult_operator(&a, &x).unwrap();
        assert!(even.is_zero());
        assert!(odd.is_zero());
    }

    #[test]
    fn right_mult_rejects_odd_elements() {
        let a: SuperAlgebra<Rat> = build_theorem21(Theorem21Variant::Second, 2, 3).unwrap();
        let mut x = vec![rat(0); 5];
        x[3] = rat(1);
        assert_eq!(
            right_mult_operator(&a, &x),
            Err(InvariantError::NotEvenHomogeneous)
        );
    }

    #[test]
    fn remark21_odd_action_is_chain() {
        let a: SuperAlgebra<Rat> = build_theorem21(Theorem21Variant::Second, 3, 4).unwrap();
        let mut x = vec![rat(0); 7];
        x[0] = rat(1);
        let (_, odd) = right_mult_operator(&a, &x).unwrap();
        assert_eq!(odd, shift(4)); // y_j -> y_{j+1}, y_4 -> 0
    }

    #[test]
    fn jordan_of_zero_and_shift() {
        let z: Matrix<Rat> = Matrix::zeros(4, 4);
        assert_eq!(jordan_sequence(&z).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(jordan_sequence(&shift(5)).unwrap(), vec![5]);
        let id: Matrix<Rat> = Matrix::identity(3);
        assert!(jordan_sequence(&id).is_err());
    }

    #[test]
    fn jordan_is_conjugation_invariant() {
        // direct sum of blocks (3, 2, 1), conjugated by seeded invertible
        // rational matrices
        let mut block = Matrix::zeros(6, 6);
        for (r, c) in [(1, 0), (2, 1), (4, 3)] {
            block.set(r, c, rat(1));
        }
        assert_eq!(jordan_sequence(&block).unwrap(), vec![3, 2, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 100 {
            let t = Matrix::from_fn(6, 6, |_, _| rat(rng.random_range(-2..=2)));
            let Ok(tinv) = t.inverse() else { continue };
            let conj = tinv.mul(&block).mul(&t);
            assert_eq!(jordan_sequence(&conj).unwrap(), vec![3, 2, 1]);
            done += 1;
        }
    }

    #[test]
    fn lex_ordering() {
        assert_eq!(lex_cmp(&[3, 1], &[2, 2]), Ordering::Greater);
        assert_eq!(lex_cmp(&[2, 2], &[2, 1, 1]), Ordering::Greater);
        assert_eq!(lex_cmp(&[4], &[4]), Ordering::Equal);
        // prefix rule (unreachable for equal sums): longer is smaller
        assert_eq!(lex_cmp(&[2, 1], &[2, 1, 1]), Ordering::Greater);
    }

    #[test]
    fn charseq_of_abelian() {
        let a: SuperAlgebra<Rat> = SuperAlgebra::abelian(3, 2);
        let cs = characteristic_sequence(&a, &SamplingConfig::new(4, 3)).unwrap();
        assert_eq!(cs, CharSeq::new(vec![1, 1, 1], vec![1, 1]));
    }

    #[test]
    fn charseq_of_null_filiform_is_full_chain() {
        let a: SuperAlgebra<Rat> = build_theorem21(Theorem21Variant::First, 4, 0).unwrap();
        let cs = characteristic_sequence(&a, &SamplingConfig::new(8, 5)).unwrap();
        assert_eq!(cs, CharSeq::new(vec![4], vec![]));
        assert_eq!(cs.to_string(), "(4 | -)");
    }

    #[test]
    fn charseq_of_class_a_instance() {
        let spec: FamilySpec<Rat> = FamilySpec::new(FamilyKind::Thm22A, 4, vec![2, 1]);
        let (a, report) = spec.build().unwrap();
        assert!(report.holds());
        let cs = characteristic_sequence(&a, &SamplingConfig::new(6, 9)).unwrap();
        assert_eq!(cs, CharSeq::new(vec![3, 1], vec![2, 1]));
    }

    #[test]
    fn charseq_of_class_b_instance_with_gamma() {
        let mut spec: FamilySpec<Rat> = FamilySpec::new(FamilyKind::Thm22B, 4, vec![2, 1]);
        spec.params.set_named("gamma", rat(1)).unwrap();
        spec.params.set_named("beta4", rat(0)).unwrap();
        let (a, report) = spec.build().unwrap();
        assert!(report.holds());
        let cs = characteristic_sequence(&a, &SamplingConfig::new(6, 13)).unwrap();
        assert_eq!(cs, CharSeq::new(vec![3, 1], vec![2, 1]));
    }

    #[test]
    fn charseq_is_deterministic_for_fixed_seed() {
        let spec: FamilySpec<Rat> = FamilySpec::new(FamilyKind::Thm22B, 5, vec![2, 2]);
        let (a, _) = spec.build().unwrap();
        let cfg = SamplingConfig::new(10, 42);
        assert_eq!(
            characteristic_sequence(&a, &cfg).unwrap(),
            characteristic_sequence(&a, &cfg).unwrap()
        );
    }

    #[test]
    fn charseq_error_when_no_candidate() {
        let a: SuperAlgebra<Rat> = SuperAlgebra::abelian(0, 0);
        assert_eq!(
            characteristic_sequence(&a, &SamplingConfig::new(2, 1)),
            Err(InvariantError::NoAdmissibleElement)
        );
    }

    #[test]
    fn filiform_detection() {
        // class-a even parts are filiform
        let spec: FamilySpec<Rat> = FamilySpec::new(FamilyKind::Thm22A, 5, vec![]);
        let (a, _) = spec.build().unwrap();
        assert!(is_filiform(&a).unwrap());
        let cross = lemma21_crosscheck(&a, &SamplingConfig::new(6, 2)).unwrap();
        assert_eq!(cross, [true, true, true]);

        // null-filiform: all three fail for n >= 3
        let nf: SuperAlgebra<Rat> = build_theorem21(Theorem21Variant::First, 5, 0).unwrap();
        assert!(!is_filiform(&nf).unwrap());
        assert_eq!(
            lemma21_crosscheck(&nf, &SamplingConfig::new(6, 2)).unwrap(),
            [false, false, false]
        );

        // abelian of dimension >= 3: all three fail
        let ab: SuperAlgebra<Rat> = SuperAlgebra::abelian(4, 0);
        assert_eq!(
            lemma21_crosscheck(&ab, &SamplingConfig::new(6, 2)).unwrap(),
            [false, false, false]
        );
    }

    #[test]
    fn filiform_rejects_odd_part() {
        let a: SuperAlgebra<Rat> = SuperAlgebra::abelian(3, 1);
        assert_eq!(is_filiform(&a), Err(InvariantError::OddPartPresent(1)));
    }
}
