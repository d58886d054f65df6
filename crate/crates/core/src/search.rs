//! Smallest-k search: fit PCA on a sample, then binary-search the smallest
//! truncation whose sampled TLB clears the target.
//!
//! Binary search is sound only when the pass/fail predicate is monotone in
//! k. Per-pair ratios under nested orthonormal truncations are monotone, and
//! every probe within one search reuses the same seeded pair draws, so the
//! empirical predicate inherits that monotonicity instead of picking up
//! noise from independent sampling.

use crate::error::{Error, Result};
use crate::matrix::{DataMatrix, Transform};
use crate::pca::{pca_fit, PcaEngineKind, PcaFit};
use crate::rng::derive_seed;
use crate::tlb::{evaluate_tlb, tlb_sampled, TlbDecision, TlbEstimate};

/// Result of a smallest-k search.
#[derive(Debug, Clone)]
pub enum SearchOutcome {
    /// Smallest k whose evaluation passed, with the truncated transform.
    Found {
        k: usize,
        transform: Transform,
        tlb: TlbEstimate,
    },
    /// Even the widest candidate failed; carries its estimate.
    NotAchievable { best_estimate: TlbEstimate },
}

impl SearchOutcome {
    pub fn found_k(&self) -> Option<usize> {
        match self {
            SearchOutcome::Found { k, .. } => Some(*k),
            SearchOutcome::NotAchievable { .. } => None,
        }
    }
}

/// Bookkeeping from one binary search, used for cost accounting and the
/// evaluation-count invariant (<= ceil(log2(k_hi)) + 1 probes).
#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    pub evals: usize,
    pub pairs_total: usize,
    /// k values probed, in probe order.
    pub probed: Vec<usize>,
}

/// Tag deriving the pair-sampling seed from a search seed. Public so
/// harnesses can replay the exact predicate a search used.
pub const PAIR_SEED_TAG: u64 = 0x9A13;

/// Tag deriving the PCA-fit seed from a search seed.
pub const FIT_SEED_TAG: u64 = 0xF17;

pub(crate) struct SearchResult {
    pub found: Option<(usize, TlbEstimate)>,
    pub last_estimate: TlbEstimate,
    pub stats: SearchStats,
}

/// Least k in `[1, k_hi]` whose decision is `Pass`, probing each k at most
/// once. `decide` must be deterministic.
pub(crate) fn binary_search_smallest(
    k_hi: usize,
    mut decide: impl FnMut(usize) -> Result<TlbDecision>,
) -> Result<SearchResult> {
    let mut stats = SearchStats::default();
    let mut memo: Vec<Option<TlbDecision>> = vec![None; k_hi + 1];
    let mut probe = |k: usize, stats: &mut SearchStats| -> Result<TlbDecision> {
        if let Some(d) = memo[k] {
            return Ok(d);
        }
        let d = decide(k)?;
        stats.evals += 1;
        stats.pairs_total += d.estimate().pairs_used;
        stats.probed.push(k);
        memo[k] = Some(d);
        Ok(d)
    };
    let mut lo = 1usize;
    let mut hi = k_hi;
    while lo < hi {
        let mid = (lo + hi) / 2;
        if probe(mid, &mut stats)?.passed() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let final_decision = probe(lo, &mut stats)?;
    let last_estimate = *final_decision.estimate();
    Ok(SearchResult {
        found: final_decision.passed().then_some((lo, last_estimate)),
        last_estimate,
        stats,
    })
}

/// Smallest passing truncation of an existing transform (evaluated against
/// the full dataset `x`). Shared by the PCA search and work-reuse paths.
pub(crate) fn smallest_passing_truncation(
    x: &DataMatrix,
    t: &Transform,
    b: f64,
    k_hi: usize,
    confidence: f64,
    pair_seed: u64,
    pair_cap: usize,
) -> Result<SearchResult> {
    let k_hi = k_hi.min(t.k());
    binary_search_smallest(k_hi, |k| {
        evaluate_tlb(x, t, b, k, confidence, pair_seed, pair_cap)
    })
}

pub(crate) struct ComputeTransform {
    pub outcome: SearchOutcome,
    pub fit: PcaFit,
    pub stats: SearchStats,
}

pub(crate) fn compute_transform_inner(
    x: &DataMatrix,
    sample: &DataMatrix,
    b: f64,
    k_hi: usize,
    engine: &PcaEngineKind,
    confidence: f64,
    seed: u64,
    pair_cap: usize,
) -> Result<ComputeTransform> {
    if sample.cols() != x.cols() {
        return Err(Error::DimensionMismatch {
            context: "compute_transform sample",
            expected: x.cols(),
            got: sample.cols(),
        });
    }
    let limit = sample.rows().min(sample.cols());
    if k_hi == 0 || k_hi > limit {
        return Err(Error::invalid(format!(
            "k_hi must be in [1, {limit}], got {k_hi}"
        )));
    }
    if b > 1.0 {
        return Err(Error::invalid("target B must be in (0, 1]"));
    }
    // One fit at the cap; every smaller k is a truncation of it.
    let fit = pca_fit(sample, k_hi, engine, derive_seed(seed, FIT_SEED_TAG))?;
    let pair_seed = derive_seed(seed, PAIR_SEED_TAG);

    if b <= 0.0 {
        // Degenerate target: any direction satisfies it.
        let est = tlb_sampled(x, &fit.transform, 1, crate::tlb::INITIAL_PAIRS, confidence, pair_seed)?;
        let transform = fit.transform.truncated(1)?;
        return Ok(ComputeTransform {
            outcome: SearchOutcome::Found {
                k: 1,
                transform,
                tlb: est,
            },
            fit,
            stats: SearchStats {
                evals: 1,
                pairs_total: est.pairs_used,
                probed: vec![1],
            },
        });
    }

    let result =
        smallest_passing_truncation(x, &fit.transform, b, k_hi, confidence, pair_seed, pair_cap)?;
    let outcome = match result.found {
        Some((k, tlb)) => SearchOutcome::Found {
            k,
            transform: fit.transform.truncated(k)?,
            tlb,
        },
        None => SearchOutcome::NotAchievable {
            best_estimate: result.last_estimate,
        },
    };
    Ok(ComputeTransform {
        outcome,
        fit,
        stats: result.stats,
    })
}

/// Fits PCA once on `sample` at width `k_hi`, then binary-searches the
/// smallest k in `[1, k_hi]` whose sampled TLB over `x` passes `b`.
#[allow(clippy::too_many_arguments)]
pub fn compute_transform(
    x: &DataMatrix,
    sample: &DataMatrix,
    b: f64,
    k_hi: usize,
    engine: &PcaEngineKind,
    confidence: f64,
    seed: u64,
    pair_cap: usize,
) -> Result<SearchOutcome> {
    compute_transform_inner(x, sample, b, k_hi, engine, confidence, seed, pair_cap)
        .map(|r| r.outcome)
}
