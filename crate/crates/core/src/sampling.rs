//! Seeded rejection sampling of valid superalgebras from the adapted-basis
//! classes, and the generator-placement trichotomy used by the theorem
//! harness.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{IdentityKind, Nilindex, SuperAlgebra};
use crate::families::{
    partition_heads, FamilyKind, FamilySpec, Theorem22Class,
};
use crate::invariants::{characteristic_sequence, CharSeq, SamplingConfig};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Where the generators sit relative to the parity split, decided via
/// `L^2` membership of `x_1`, `x_2` and the odd block heads. Odd non-heads
/// always lie in `L^2` (the chain generates them), so the heads are the
/// only possible odd generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Placement {
    BothEven,
    Mixed,
    BothOdd,
}

impl Placement {
    pub fn name(self) -> &'static str {
        match self {
            Placement::BothEven => "both_even",
            Placement::Mixed => "mixed",
            Placement::BothOdd => "both_odd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlacementInfo {
    pub placement: Placement,
    pub x1_in_l2: bool,
}

/// Classifies a nilpotent algebra by where its generators live. Returns
/// `None` for non-nilpotent input.
pub fn generator_placement<S: Scalar>(
    a: &SuperAlgebra<S>,
    partition: &[usize],
) -> Option<PlacementInfo> {
    let series = a.lower_central_series();
    if !series.last().expect("nonempty").is_zero() {
        return None;
    }
    let n = a.even_dim();
    let d = a.dim();
    let l2 = series
        .get(1)
        .cloned()
        .unwrap_or_else(|| Subspace::zero(n, a.odd_dim()));
    let contains_basis = |idx: usize| {
        let mut e = vec![S::zero(); d];
        e[idx] = S::one();
        l2.contains(&e)
    };
    let x1_in_l2 = contains_basis(0);
    let even_generator = !x1_in_l2 || (n >= 2 && !contains_basis(1));
    let odd_generator = partition_heads(partition)
        .iter()
        .any(|&h| !contains_basis(n + h - 1));
    let placement = match (even_generator, odd_generator) {
        (true, true) => Placement::Mixed,
        (false, true) => Placement::BothOdd,
        (_, false) => Placement::BothEven,
    };
    Some(PlacementInfo {
        placement,
        x1_in_l2,
    })
}

/// One sampling configuration: dimensions, coefficient pool and fill
/// bound. Trials are derived deterministically from `(seed, trial index)`.
#[derive(Debug, Clone)]
pub struct SampleSpec<S> {
    pub n: usize,
    pub partition: Vec<usize>,
    pub pool: Vec<S>,
    /// Upper bound on the number of free coefficients set per draw. Dense
    /// uniform fills essentially never satisfy the superidentity, so each
    /// trial draws a small random subset of the free slots; every written
    /// coefficient is still drawn uniformly from the pool.
    pub max_fill: usize,
    pub seed: u64,
}

impl<S: Scalar> SampleSpec<S> {
    pub fn new(n: usize, partition: Vec<usize>, pool: Vec<S>, seed: u64) -> Self {
        Self {
            n,
            partition,
            pool,
            max_fill: 4,
            seed,
        }
    }

    fn odd_dim(&self) -> usize {
        self.partition.iter().sum()
    }

    /// Sorted (descending) partition: the expected odd part of the
    /// characteristic sequence.
    pub fn target_charseq(&self) -> CharSeq {
        let mut odd = self.partition.clone();
        odd.sort_unstable_by(|a, b| b.cmp(a));
        CharSeq::new(vec![self.n - 1, 1], odd)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rejection {
    Identity,
    NotNilpotent,
    CharSeq,
}

impl Rejection {
    pub fn name(self) -> &'static str {
        match self {
            Rejection::Identity => "identity",
            Rejection::NotNilpotent => "not_nilpotent",
            Rejection::CharSeq => "charseq",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AcceptedSample<S> {
    pub algebra: SuperAlgebra<S>,
    pub class: Theorem22Class,
    pub info: PlacementInfo,
    pub nilindex: usize,
}

#[derive(Debug, Clone)]
pub enum TrialOutcome<S> {
    Accepted(Box<AcceptedSample<S>>),
    Rejected(Rejection),
}

/// The free coefficient positions the sampler draws into: the mixed and
/// odd products `[x_i, y_h]`, `[y_s, y_h]` (for every block head `y_h`)
/// and `[y_p, x_2]`, with targets restricted exactly as in the adapted
/// bases (`y` targets start at `y_2`, `x` targets are unrestricted).
fn free_positions(n: usize, m: usize, heads: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut positions = Vec::new();
    for &h in heads {
        let right = n + h - 1;
        for i in 0..n {
            for target in 1..m {
                positions.push((i, right, n + target));
            }
        }
        for s in 0..m {
            for target in 0..n {
                positions.push((n + s, right, target));
            }
        }
    }
    if n >= 2 {
        for p in 0..m {
            for target in 1..m {
                positions.push((n + p, 1, n + target));
            }
        }
    }
    positions
}

/// Runs a single seeded trial: builds a random-class, random-parameter
/// family member, fills a bounded random subset of the free coefficient
/// positions from the pool, and accepts iff the superidentity holds, the
/// algebra is nilpotent and the characteristic sequence matches the
/// target.
pub fn sample_trial<S: Scalar>(spec: &SampleSpec<S>, trial: u64) -> TrialOutcome<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(trial);
    let n = spec.n;
    let m = spec.odd_dim();
    let pool = &spec.pool;
    let draw = |rng: &mut ChaCha8Rng| pool[rng.random_range(0..pool.len())].clone();

    let class = match rng.random_range(0..3u8) {
        0 => Theorem22Class::A,
        1 => Theorem22Class::B,
        _ => Theorem22Class::C,
    };
    let kind = match class {
        Theorem22Class::A => FamilyKind::Thm22A,
        Theorem22Class::B => FamilyKind::Thm22B,
        Theorem22Class::C => FamilyKind::Thm22C,
    };
    let mut family = FamilySpec::<S>::new(kind, n, spec.partition.clone());
    match class {
        Theorem22Class::A => {
            for idx in 4..=n {
                family.params.alpha.insert(idx, draw(&mut rng));
            }
            family.params.theta = Some(draw(&mut rng));
        }
        Theorem22Class::B => {
            for idx in 4..=n {
                family.params.beta.insert(idx, draw(&mut rng));
            }
            family.params.gamma = Some(draw(&mut rng));
        }
        Theorem22Class::C => {
            family.params.theta1 = Some(draw(&mut rng));
            family.params.theta2 = Some(draw(&mut rng));
            family.params.theta3 = Some(draw(&mut rng));
            for i in 2..=n.saturating_sub(2) {
                for j in (i + 1)..=n.saturating_sub(2) {
                    for l in (i + j + 1)..=n {
                        family.params.skew.insert((i, j, l), draw(&mut rng));
                    }
                }
            }
        }
    }

    let heads = partition_heads(&spec.partition);
    let positions = free_positions(n, m, &heads);
    let mut chosen: BTreeMap<(usize, usize), Vec<S>> = BTreeMap::new();
    if !positions.is_empty() && spec.max_fill > 0 {
        let fill = rng.random_range(0..=spec.max_fill);
        for _ in 0..fill {
            let (i, j, k) = positions[rng.random_range(0..positions.len())];
            let slot = chosen
                .entry((i, j))
                .or_insert_with(|| vec![S::zero(); n + m]);
            slot[k] = draw(&mut rng);
        }
    }
    family.mixed = chosen
        .into_iter()
        .map(|((i, j), coeffs)| (i, j, coeffs))
        .collect();

    let algebra = match crate::families::build_theorem22_table(class, &family) {
        Ok(a) => a,
        Err(_) => return TrialOutcome::Rejected(Rejection::Identity),
    };
    if !algebra.satisfies_identity(IdentityKind::LeibnizSuper) {
        return TrialOutcome::Rejected(Rejection::Identity);
    }
    let nilindex = match algebra.nilindex() {
        Nilindex::Nilpotent(s) => s,
        Nilindex::NotNilpotent => return TrialOutcome::Rejected(Rejection::NotNilpotent),
    };
    let charseq_cfg = SamplingConfig::new(4, spec.seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    match characteristic_sequence(&algebra, &charseq_cfg) {
        Ok(cs) if cs == spec.target_charseq() => {}
        _ => return TrialOutcome::Rejected(Rejection::CharSeq),
    }
    let info = generator_placement(&algebra, &spec.partition).expect("nilpotent");
    TrialOutcome::Accepted(Box::new(AcceptedSample {
        algebra,
        class,
        info,
        nilindex,
    }))
}

/// Result of a bounded sampling run: the first accepted instance if any,
/// plus rejection statistics.
#[derive(Debug, Clone)]
pub struct SampleRun<S> {
    pub accepted: Option<AcceptedSample<S>>,
    pub attempts: usize,
    pub rejections: BTreeMap<&'static str, usize>,
}

/// Attempts up to `trials` seeded draws and returns the first accepted
/// instance or the rejection statistics. Running out of trials is a
/// reported outcome, not an error.
pub fn sample_valid_superalgebra<S: Scalar>(spec: &SampleSpec<S>, trials: usize) -> SampleRun<S> {
    let mut rejections = BTreeMap::new();
    for trial in 0..trials {
        match sample_trial(spec, trial as u64) {
            TrialOutcome::Accepted(sample) => {
                return SampleRun {
                    accepted: Some(*sample),
                    attempts: trial + 1,
                    rejections,
                }
            }
            TrialOutcome::Rejected(r) => {
                *rejections.entry(r.name()).or_insert(0) += 1;
            }
        }
    }
    SampleRun {
        accepted: None,
        attempts: trials,
        rejections,
    }
}
