//! Tightness of lower bounds: how well a contractive reduction preserves
//! average pairwise Euclidean distance.
//!
//! The metric over all pairs is
//! `TLB = 2/(m(m-1)) * sum_{i<j} |x~_i - x~_j| / |x_i - x_j|`,
//! which lives in [0, 1] for contractive transforms. Exact evaluation walks
//! every pair; production code uses [`tlb_sampled`], which samples pairs and
//! attaches a normal-approximation confidence interval, and [`evaluate_tlb`],
//! which doubles the pair budget until the interval clears the target on one
//! side or the budget runs out.
//!
//! Coincident points contribute ratio 1: their transformed distance is also
//! zero, so no distortion has occurred, and any aggressive alternative would
//! penalize datasets with duplicates.

use std::collections::HashSet;

use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::matrix::{apply_transform_k, euclidean, DataMatrix, Transform};
use crate::rng::Prng;

/// Default cap on pairs drawn by [`evaluate_tlb`].
pub const DEFAULT_PAIR_CAP: usize = 65_536;

/// Initial pair budget in [`evaluate_tlb`].
pub const INITIAL_PAIRS: usize = 100;

/// Sampled TLB with a two-sided confidence interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TlbEstimate {
    pub mean: f64,
    pub lo: f64,
    pub hi: f64,
    pub confidence: f64,
    pub pairs_used: usize,
}

/// Verdict of the adaptive evaluation loop against a target `B`.
///
/// `Pass` requires the interval's lower bound to clear `B`; `Fail` requires
/// the upper bound to fall short of it; `Inconclusive` means the budget was
/// exhausted with `B` still inside the interval (callers treat this as a
/// failure, the conservative reading).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TlbDecision {
    Pass(TlbEstimate),
    Fail(TlbEstimate),
    Inconclusive(TlbEstimate),
}

impl TlbDecision {
    pub fn passed(&self) -> bool {
        matches!(self, TlbDecision::Pass(_))
    }

    pub fn estimate(&self) -> &TlbEstimate {
        match self {
            TlbDecision::Pass(e) | TlbDecision::Fail(e) | TlbDecision::Inconclusive(e) => e,
        }
    }
}

fn total_pairs(m: usize) -> u64 {
    let m = m as u64;
    m * (m - 1) / 2
}

/// Distance ratio for one pair, clipped into [0, 1]; coincident originals
/// count as perfectly preserved.
fn pair_ratio(orig_a: &[f64], orig_b: &[f64], red_a: &[f64], red_b: &[f64]) -> f64 {
    let orig = euclidean(orig_a, orig_b);
    if orig == 0.0 {
        return 1.0;
    }
    let red = euclidean(red_a, red_b);
    (red / orig).clamp(0.0, 1.0)
}

/// Exact TLB of `t` truncated to `k` columns over all pairs of `x`.
pub fn tlb_exact(x: &DataMatrix, t: &Transform, k: usize) -> Result<f64> {
    if k == 0 || k > t.k() {
        return Err(Error::invalid(format!(
            "k must be in [1, {}], got {k}",
            t.k()
        )));
    }
    let reduced = apply_transform_k(x, t, k)?;
    tlb_exact_reduced(x, &reduced)
}

/// Exact TLB given the already-reduced data (shared with non-PCA reducers).
pub fn tlb_exact_reduced(x: &DataMatrix, reduced: &DataMatrix) -> Result<f64> {
    let m = x.rows();
    if m < 2 {
        return Err(Error::invalid("TLB needs at least 2 points"));
    }
    if reduced.rows() != m {
        return Err(Error::DimensionMismatch {
            context: "tlb_exact_reduced",
            expected: m,
            got: reduced.rows(),
        });
    }
    // Per-row partial sums computed independently, then reduced in row
    // order, so the result does not depend on thread scheduling.
    let partials: Vec<f64> = (0..m - 1)
        .into_par_iter()
        .map(|i| {
            let xi = x.row(i);
            let ri = reduced.row(i);
            let mut acc = 0.0;
            for j in (i + 1)..m {
                acc += pair_ratio(xi, x.row(j), ri, reduced.row(j));
            }
            acc
        })
        .collect();
    let sum: f64 = partials.iter().sum();
    Ok(sum / total_pairs(m) as f64)
}

/// Index pairs `(i, j)` with `i < j`, drawn uniformly: without replacement
/// while `pairs` fits in the pair population, with replacement otherwise.
fn sample_pairs(m: usize, pairs: usize, rng: &mut Prng) -> Vec<(usize, usize)> {
    let population = total_pairs(m);
    if pairs as u64 >= population {
        if pairs as u64 == population {
            // Exhaustive: enumerate every pair once.
            let mut out = Vec::with_capacity(pairs);
            for i in 0..m - 1 {
                for j in (i + 1)..m {
                    out.push((i, j));
                }
            }
            return out;
        }
        // Oversubscribed: uniform draws with replacement.
        return (0..pairs).map(|_| draw_pair(m, rng)).collect();
    }
    if (pairs as u64) * 2 >= population {
        // Dense request: partial Fisher-Yates over the enumerated population.
        let mut all = Vec::with_capacity(population as usize);
        for i in 0..m - 1 {
            for j in (i + 1)..m {
                all.push((i, j));
            }
        }
        for i in 0..pairs {
            let j = i + rng.uniform_usize(all.len() - i);
            all.swap(i, j);
        }
        all.truncate(pairs);
        return all;
    }
    // Sparse request: rejection sampling on encoded pairs.
    let mut seen = HashSet::with_capacity(pairs * 2);
    let mut out = Vec::with_capacity(pairs);
    while out.len() < pairs {
        let (i, j) = draw_pair(m, rng);
        if seen.insert((i as u64) * m as u64 + j as u64) {
            out.push((i, j));
        }
    }
    out
}

fn draw_pair(m: usize, rng: &mut Prng) -> (usize, usize) {
    let a = rng.uniform_usize(m);
    let mut b = rng.uniform_usize(m - 1);
    if b >= a {
        b += 1;
    }
    (a.min(b), a.max(b))
}

fn estimate_from_ratios(ratios: &[f64], confidence: f64) -> TlbEstimate {
    let n = ratios.len();
    let mean = ratios.iter().sum::<f64>() / n as f64;
    let var = if n > 1 {
        ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1) as f64
    } else {
        0.0
    };
    let z = Normal::standard().inverse_cdf(0.5 + confidence / 2.0);
    let half = z * (var / n as f64).sqrt();
    TlbEstimate {
        mean,
        lo: (mean - half).clamp(0.0, 1.0),
        hi: (mean + half).clamp(0.0, 1.0),
        confidence,
        pairs_used: n,
    }
}

fn check_sampling_args(m: usize, pairs: usize, confidence: f64) -> Result<()> {
    if m < 2 {
        return Err(Error::invalid("TLB needs at least 2 points"));
    }
    if pairs < 2 {
        return Err(Error::invalid("pairs must be >= 2"));
    }
    if !(0.0..1.0).contains(&confidence) || confidence <= 0.0 {
        return Err(Error::invalid("confidence must be in (0, 1)"));
    }
    Ok(())
}

/// Sampled TLB of `t` truncated to `k`, with a `confidence`-level interval.
/// Deterministic per seed; only the sampled rows are projected.
pub fn tlb_sampled(
    x: &DataMatrix,
    t: &Transform,
    k: usize,
    pairs: usize,
    confidence: f64,
    seed: u64,
) -> Result<TlbEstimate> {
    if k == 0 || k > t.k() {
        return Err(Error::invalid(format!(
            "k must be in [1, {}], got {k}",
            t.k()
        )));
    }
    if x.cols() != t.input_dim() {
        return Err(Error::DimensionMismatch {
            context: "tlb_sampled",
            expected: t.input_dim(),
            got: x.cols(),
        });
    }
    check_sampling_args(x.rows(), pairs, confidence)?;
    let mut rng = Prng::seed_from_u64(seed);
    let chosen = sample_pairs(x.rows(), pairs, &mut rng);
    // Project each distinct sampled row once.
    let mut row_ids: Vec<usize> = chosen.iter().flat_map(|&(i, j)| [i, j]).collect();
    row_ids.sort_unstable();
    row_ids.dedup();
    let mut projected = vec![0.0; row_ids.len() * k];
    let mut slot = vec![usize::MAX; x.rows()];
    for (s, &i) in row_ids.iter().enumerate() {
        t.project_row(x.row(i), k, &mut projected[s * k..(s + 1) * k]);
        slot[i] = s;
    }
    let ratios: Vec<f64> = chosen
        .iter()
        .map(|&(i, j)| {
            let ri = &projected[slot[i] * k..slot[i] * k + k];
            let rj = &projected[slot[j] * k..slot[j] * k + k];
            pair_ratio(x.row(i), x.row(j), ri, rj)
        })
        .collect();
    Ok(estimate_from_ratios(&ratios, confidence))
}

/// Sampled TLB for pre-reduced data.
pub fn tlb_sampled_reduced(
    x: &DataMatrix,
    reduced: &DataMatrix,
    pairs: usize,
    confidence: f64,
    seed: u64,
) -> Result<TlbEstimate> {
    if reduced.rows() != x.rows() {
        return Err(Error::DimensionMismatch {
            context: "tlb_sampled_reduced",
            expected: x.rows(),
            got: reduced.rows(),
        });
    }
    check_sampling_args(x.rows(), pairs, confidence)?;
    let mut rng = Prng::seed_from_u64(seed);
    let chosen = sample_pairs(x.rows(), pairs, &mut rng);
    let ratios: Vec<f64> = chosen
        .iter()
        .map(|&(i, j)| pair_ratio(x.row(i), x.row(j), reduced.row(i), reduced.row(j)))
        .collect();
    Ok(estimate_from_ratios(&ratios, confidence))
}

/// Adaptive decision against target `b`: start at [`INITIAL_PAIRS`] pairs and
/// double while the interval straddles `b`, up to `min(total pairs,
/// pair_cap)`. The same seed yields the same pair draws at each budget level,
/// independent of `k`.
pub fn evaluate_tlb(
    x: &DataMatrix,
    t: &Transform,
    b: f64,
    k: usize,
    confidence: f64,
    seed: u64,
    pair_cap: usize,
) -> Result<TlbDecision> {
    evaluate_with(b, x.rows(), pair_cap, |pairs| {
        tlb_sampled(x, t, k, pairs, confidence, seed)
    })
}

/// [`evaluate_tlb`] for pre-reduced data.
pub fn evaluate_tlb_reduced(
    x: &DataMatrix,
    reduced: &DataMatrix,
    b: f64,
    confidence: f64,
    seed: u64,
    pair_cap: usize,
) -> Result<TlbDecision> {
    evaluate_with(b, x.rows(), pair_cap, |pairs| {
        tlb_sampled_reduced(x, reduced, pairs, confidence, seed)
    })
}

fn evaluate_with(
    b: f64,
    m: usize,
    pair_cap: usize,
    mut sample: impl FnMut(usize) -> Result<TlbEstimate>,
) -> Result<TlbDecision> {
    if !(0.0..=1.0).contains(&b) || b <= 0.0 {
        return Err(Error::invalid("target B must be in (0, 1]"));
    }
    if m < 2 {
        return Err(Error::invalid("TLB needs at least 2 points"));
    }
    let budget = (total_pairs(m).min(pair_cap as u64) as usize).max(2);
    let mut pairs = INITIAL_PAIRS.min(budget);
    loop {
        let est = sample(pairs)?;
        if est.lo > b {
            return Ok(TlbDecision::Pass(est));
        }
        if est.hi < b {
            return Ok(TlbDecision::Fail(est));
        }
        if pairs >= budget {
            return Ok(TlbDecision::Inconclusive(est));
        }
        pairs = (pairs * 2).min(budget);
    }
}
