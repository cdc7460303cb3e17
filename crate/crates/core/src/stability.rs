//! Intensional stability of identical concepts.
//!
//! `σ(A, B) = |{e ⊆ A : e′ = B}| / 2^|A|`. Small extents are counted exactly;
//! larger ones are estimated from a seeded low-discrepancy sample of the
//! subset lattice.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{CoinError, Result};
use crate::fca::{FormalConcept, FormalContext, IdenticalConcept};
use crate::graph::Graph;
use crate::set::NodeSet;

pub const DEFAULT_EXACT_THRESHOLD: usize = 20;
pub const DEFAULT_BUDGET: usize = 4096;
pub const MIN_BUDGET: usize = 64;
/// `C` in the declared sampling error `C · ln|S| / |S|`.
pub const DEFAULT_ERROR_CONSTANT: f64 = 8.0;

/// Exact counts never exceed 2^62 subsets.
const MAX_EXACT_SIZE: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplingConfig {
    /// Extents up to this size are counted exactly.
    pub exact_threshold: usize,
    /// Number of sampled subsets `|S|`.
    pub budget: usize,
    pub seed: u64,
    pub error_constant: f64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self {
            exact_threshold: DEFAULT_EXACT_THRESHOLD,
            budget: DEFAULT_BUDGET,
            seed: 0,
            error_constant: DEFAULT_ERROR_CONSTANT,
        }
    }
}

impl SamplingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.budget < MIN_BUDGET {
            return Err(CoinError::Budget {
                budget: self.budget,
                min: MIN_BUDGET,
            });
        }
        if self.exact_threshold > MAX_EXACT_SIZE {
            return Err(CoinError::Config(format!(
                "exact threshold {} is above {MAX_EXACT_SIZE}",
                self.exact_threshold
            )));
        }
        if !(self.error_constant > 0.0 && self.error_constant.is_finite()) {
            return Err(CoinError::Config("error constant must be positive".into()));
        }
        Ok(())
    }

    /// Declared sampling error for a budget of `samples`.
    pub fn error_bound(&self, samples: usize) -> f64 {
        let s = samples as f64;
        self.error_constant * s.ln() / s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum StabilityValue {
    /// `numerator / 2^extent_size`.
    Exact { numerator: u64, extent_size: usize },
    Sampled {
        estimate: f64,
        samples: usize,
        error_bound: f64,
        seed: u64,
    },
}

impl StabilityValue {
    pub fn value(&self) -> f64 {
        match *self {
            StabilityValue::Exact {
                numerator,
                extent_size,
            } => numerator as f64 / (extent_size as f64).exp2(),
            StabilityValue::Sampled { estimate, .. } => estimate,
        }
    }

    /// The exact value as a reduced fraction, when it was counted exactly.
    pub fn ratio(&self) -> Option<Ratio<u64>> {
        match *self {
            StabilityValue::Exact {
                numerator,
                extent_size,
            } => Some(Ratio::new(numerator, 1u64 << extent_size)),
            StabilityValue::Sampled { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, StabilityValue::Exact { .. })
    }

    pub fn method(&self) -> &'static str {
        match self {
            StabilityValue::Exact { .. } => "exact",
            StabilityValue::Sampled { .. } => "sampled",
        }
    }
}

/// `(2^k − 1) / 2^k`, the stability of an isolated maximal clique of size `k`.
pub fn expected_isolated_stability(k: usize) -> Ratio<u64> {
    assert!(
        (1..=MAX_EXACT_SIZE).contains(&k),
        "extent size {k} out of range"
    );
    let d = 1u64 << k;
    Ratio::new(d - 1, d)
}

/// Attributes outside the intent, projected onto those that some extent
/// member actually has. A subset `e` of the extent keeps the intent closed
/// exactly when the rows of `e` have no outside attribute in common.
struct OutsideRows {
    words: usize,
    // rows[i]: outside attributes of extent member i, packed
    rows: Vec<Vec<u64>>,
    // every outside attribute; what the empty subset derives to
    all: Vec<u64>,
}

impl OutsideRows {
    fn new(ctx: &FormalContext, extent: &[usize], intent: &NodeSet) -> Self {
        let outside: Vec<usize> = (0..ctx.num_attributes())
            .filter(|&m| !intent.contains(m))
            .collect();
        let mut relevant: Vec<usize> = outside
            .iter()
            .copied()
            .filter(|&m| extent.iter().any(|&g| ctx.incident(g, m)))
            .collect();
        relevant.sort_unstable();
        let words = relevant.len().div_ceil(64).max(1);
        let rows = extent
            .iter()
            .map(|&g| {
                let mut packed = vec![0u64; words];
                for (i, &m) in relevant.iter().enumerate() {
                    if ctx.incident(g, m) {
                        packed[i / 64] |= 1 << (i % 64);
                    }
                }
                packed
            })
            .collect();
        let mut all = vec![0u64; words];
        for i in 0..relevant.len() {
            all[i / 64] |= 1 << (i % 64);
        }
        // attributes no member has only block the empty subset
        if relevant.is_empty() && !outside.is_empty() {
            all[0] = 1;
        }
        Self { words, rows, all }
    }

    /// Number of subsets whose common outside attributes are empty.
    fn count_exact(&self) -> u64 {
        let k = self.rows.len();
        let mut stack = vec![vec![0u64; self.words]; k + 1];
        stack[0].copy_from_slice(&self.all);
        self.count_from(0, &mut stack)
    }

    fn count_from(&self, i: usize, stack: &mut [Vec<u64>]) -> u64 {
        let k = self.rows.len();
        if stack[i].iter().all(|&w| w == 0) {
            return 1u64 << (k - i);
        }
        if i == k {
            return 0;
        }
        // member i left out
        let (head, tail) = stack.split_at_mut(i + 1);
        tail[0].copy_from_slice(&head[i]);
        let without = self.count_from(i + 1, stack);
        // member i taken
        let (head, tail) = stack.split_at_mut(i + 1);
        for (dst, (cur, row)) in tail[0].iter_mut().zip(head[i].iter().zip(&self.rows[i])) {
            *dst = cur & row;
        }
        without + self.count_from(i + 1, stack)
    }

    fn qualifies(&self, chosen: impl Iterator<Item = usize>, scratch: &mut [u64]) -> bool {
        scratch.copy_from_slice(&self.all);
        for i in chosen {
            for (s, r) in scratch.iter_mut().zip(&self.rows[i]) {
                *s &= r;
            }
        }
        scratch.iter().all(|&w| w == 0)
    }
}

/// Exact stability of a concept by counting all `2^|A|` subsets of its
/// extent, with early acceptance once a partial subset already derives to
/// the intent.
pub fn stability_exact_concept(
    ctx: &FormalContext,
    concept: &FormalConcept,
    threshold: usize,
) -> Result<StabilityValue> {
    let k = concept.extent.len();
    if k > threshold.min(MAX_EXACT_SIZE) {
        return Err(CoinError::ExtentTooLarge {
            size: k,
            threshold: threshold.min(MAX_EXACT_SIZE),
        });
    }
    let members = concept.extent.to_vec();
    let rows = OutsideRows::new(ctx, &members, &concept.intent);
    Ok(StabilityValue::Exact {
        numerator: rows.count_exact(),
        extent_size: k,
    })
}

/// Exact stability of an identical concept (intent = extent), up to the
/// default threshold of 20 members.
pub fn stability_exact(ctx: &FormalContext, c: &IdenticalConcept) -> Result<StabilityValue> {
    stability_exact_concept(ctx, &identical_as_concept(c), DEFAULT_EXACT_THRESHOLD)
}

fn identical_as_concept(c: &IdenticalConcept) -> FormalConcept {
    FormalConcept {
        extent: c.members.clone(),
        intent: c.members.clone(),
    }
}

fn reverse_bits(i: u64, bits: u32) -> u64 {
    if bits == 0 {
        0
    } else {
        i.reverse_bits() >> (64 - bits)
    }
}

/// Sampled stability of a concept.
///
/// Sample `i` picks a subset of the extent whose first `r = ⌈log2 |S|⌉`
/// members (in a seeded order) follow the base-2 radical inverse of `i`
/// under a seeded digital shift; the remaining members are drawn from the
/// seeded stream. Every sample is uniform over the subset lattice and the
/// leading members are stratified. A budget that covers the whole powerset
/// falls back to exact counting.
pub fn stability_sampled_concept(
    ctx: &FormalContext,
    concept: &FormalConcept,
    cfg: &SamplingConfig,
) -> Result<StabilityValue> {
    if cfg.budget < MIN_BUDGET {
        return Err(CoinError::Budget {
            budget: cfg.budget,
            min: MIN_BUDGET,
        });
    }
    let k = concept.extent.len();
    if k <= MAX_EXACT_SIZE && (cfg.budget as u128) >= (1u128 << k) {
        return stability_exact_concept(ctx, concept, MAX_EXACT_SIZE);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut members = concept.extent.to_vec();
    members.shuffle(&mut rng);
    let rows = OutsideRows::new(ctx, &members, &concept.intent);

    let strata_bits = (cfg.budget as u64).next_power_of_two().trailing_zeros();
    let shift = rng.gen::<u64>() & ((1u64 << strata_bits) - 1);
    let mut scratch = vec![0u64; rows.words];
    let mut chosen = Vec::with_capacity(k);
    let mut hits = 0usize;
    for i in 0..cfg.budget as u64 {
        let lead = reverse_bits(i, strata_bits) ^ shift;
        chosen.clear();
        for b in 0..strata_bits as usize {
            if lead >> (strata_bits as usize - 1 - b) & 1 == 1 {
                chosen.push(b);
            }
        }
        for j in strata_bits as usize..k {
            if rng.gen::<bool>() {
                chosen.push(j);
            }
        }
        if rows.qualifies(chosen.iter().copied(), &mut scratch) {
            hits += 1;
        }
    }
    Ok(StabilityValue::Sampled {
        estimate: hits as f64 / cfg.budget as f64,
        samples: cfg.budget,
        error_bound: cfg.error_bound(cfg.budget),
        seed: cfg.seed,
    })
}

/// Sampled stability of an identical concept.
pub fn stability_sampled(
    ctx: &FormalContext,
    c: &IdenticalConcept,
    budget: usize,
    seed: u64,
) -> Result<StabilityValue> {
    let cfg = SamplingConfig {
        budget,
        seed,
        ..SamplingConfig::default()
    };
    stability_sampled_concept(ctx, &identical_as_concept(c), &cfg)
}

/// Exact when the extent is within `cfg.exact_threshold`, sampled otherwise.
pub fn stability(
    ctx: &FormalContext,
    c: &IdenticalConcept,
    cfg: &SamplingConfig,
) -> Result<StabilityValue> {
    let concept = identical_as_concept(c);
    if c.size() <= cfg.exact_threshold.min(MAX_EXACT_SIZE) {
        stability_exact_concept(ctx, &concept, cfg.exact_threshold)
    } else {
        stability_sampled_concept(ctx, &concept, cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    IsolatedMaxClique,
    NoisyBridge,
    RelevantClique,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredConcept {
    pub concept: IdenticalConcept,
    pub stability: StabilityValue,
    pub classification: Classification,
}

/// Sorts an identical concept into one of the three roles.
///
/// Isolated: exact numerator of at least `2^k − 1` (only the empty subset
/// may fail; it passes too when the clique is the whole graph). Under
/// sampling the structural check replaces the equality test. Noisy bridge:
/// two members and exactly one stable subset.
pub fn classify(
    _ctx: &FormalContext,
    c: &IdenticalConcept,
    stability: &StabilityValue,
    g: &Graph,
) -> Classification {
    match *stability {
        StabilityValue::Exact {
            numerator,
            extent_size,
        } => {
            if numerator >= (1u64 << extent_size) - 1 {
                Classification::IsolatedMaxClique
            } else if extent_size == 2 && numerator == 1 {
                Classification::NoisyBridge
            } else {
                Classification::RelevantClique
            }
        }
        StabilityValue::Sampled { .. } => {
            if g.is_isolated_set(&c.members) {
                Classification::IsolatedMaxClique
            } else {
                Classification::RelevantClique
            }
        }
    }
}

/// Scores and classifies one identical concept.
pub fn score(
    ctx: &FormalContext,
    g: &Graph,
    c: IdenticalConcept,
    cfg: &SamplingConfig,
) -> Result<ScoredConcept> {
    let stability = stability(ctx, &c, cfg)?;
    let classification = classify(ctx, &c, &stability, g);
    Ok(ScoredConcept {
        concept: c,
        stability,
        classification,
    })
}
