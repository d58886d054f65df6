//! The progressive-sampling optimization loop.
//!
//! Each iteration draws a fresh, larger uniform sample, fits PCA on it, and
//! binary-searches the smallest passing truncation (capped by the best k
//! found so far). Linear extrapolation over the last two completed
//! iterations predicts the next iteration's runtime and achieved dimension,
//! and the loop stops as soon as the predicted downstream saving
//! `C(k_i) - C(k_hat)` no longer covers the predicted iteration cost
//! `r_hat`. Without a cost model the loop instead runs until the achieved
//! dimension stops improving.
//!
//! Work reuse keeps a history matrix of every accepted basis; distilling it
//! (one SVD) can produce a candidate that passes at a smaller k than the
//! fresh fit, at the price of the distill SVD. The distilled candidate is
//! adopted only when it strictly beats the fresh one under the identical
//! seeded evaluation.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::cost::{flops, CostLedger, TimingMode, MIN_ITERATION_SECONDS};
use crate::downstream::CostModel;
use crate::error::{Error, Result};
use crate::matrix::{svd, DataMatrix, Transform};
use crate::pca::PcaEngineKind;
use crate::rng::{derive_seed, Prng};
use crate::search::{
    compute_transform_inner, smallest_passing_truncation, SearchOutcome, PAIR_SEED_TAG,
};
use crate::tlb::{TlbEstimate, DEFAULT_PAIR_CAP};

/// How sample sizes grow across iterations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SampleSchedule {
    /// Grow by a fixed fraction of the dataset per iteration.
    PercentLinear { start_frac: f64, step_frac: f64 },
    /// Grow by a fixed number of rows per iteration.
    FixedStep { start_n: usize, step_n: usize },
    /// Like `PercentLinear`, but the step is multiplied by
    /// `escalation_factor` after every `stall_threshold` consecutive
    /// iterations without an improvement in k.
    Escalating {
        start_frac: f64,
        step_frac: f64,
        escalation_factor: f64,
        stall_threshold: usize,
    },
}

impl SampleSchedule {
    fn validate(&self) -> Result<()> {
        let frac_ok = |f: f64| f > 0.0 && f <= 1.0;
        match *self {
            SampleSchedule::PercentLinear {
                start_frac,
                step_frac,
            } => {
                if frac_ok(start_frac) && frac_ok(step_frac) {
                    Ok(())
                } else {
                    Err(Error::invalid("schedule fractions must be in (0, 1]"))
                }
            }
            SampleSchedule::FixedStep { start_n, step_n } => {
                if start_n >= 1 && step_n >= 1 {
                    Ok(())
                } else {
                    Err(Error::invalid("schedule steps must be >= 1 point"))
                }
            }
            SampleSchedule::Escalating {
                start_frac,
                step_frac,
                escalation_factor,
                stall_threshold,
            } => {
                if !frac_ok(start_frac) || !frac_ok(step_frac) {
                    Err(Error::invalid("schedule fractions must be in (0, 1]"))
                } else if escalation_factor <= 1.0 {
                    Err(Error::invalid("escalation factor must be > 1"))
                } else if stall_threshold == 0 {
                    Err(Error::invalid("stall threshold must be >= 1"))
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// One completed loop iteration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IterationRecord {
    pub i: usize,
    pub m_i: usize,
    /// Achieved dimension; `None` when no truncation passed on this sample.
    pub k_i: Option<usize>,
    /// Iteration runtime in seconds (wall clock or analytic).
    pub r_i: f64,
    /// Objective `sum_{j<=i} r_j + C(k_i)`, when k exists and a cost model
    /// is in play.
    pub obj_i: Option<f64>,
    /// Whether the distilled (work-reuse) candidate beat the fresh fit.
    pub used_distilled: bool,
}

/// Why the loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    /// The cost rule fired: predicted benefit below predicted cost.
    CostOptimal,
    /// No cost model; achieved dimension stopped improving.
    Converged,
    /// Reached the full dataset with a passing transform.
    SampleExhausted,
    /// Reached the full dataset without any passing transform.
    NeverAchieved,
}

/// Final output of [`run_drop`].
#[derive(Debug, Clone)]
pub struct DropResult {
    pub transform: Transform,
    pub k: usize,
    /// Estimate attached to the returned transform's last evaluation.
    pub tlb: TlbEstimate,
    pub history: Vec<IterationRecord>,
    pub total_dr_seconds: f64,
    pub termination: Termination,
}

/// Accumulated basis history for concatenate-distill work reuse.
#[derive(Debug, Clone)]
pub struct WorkReuseState {
    h: DMatrix<f64>,
    /// Maximum history width kept after maintenance.
    pub shrink_limit: usize,
}

impl WorkReuseState {
    pub fn new(d: usize, shrink_limit: usize) -> Self {
        WorkReuseState {
            h: DMatrix::zeros(d, 0),
            shrink_limit: shrink_limit.max(1),
        }
    }

    pub fn history_cols(&self) -> usize {
        self.h.ncols()
    }
}

/// Appends `t_new`'s basis to the history, takes the SVD of the history,
/// and returns a transform built from its first `k` left singular vectors.
/// Shrinks the history back to `state.shrink_limit` columns (left singular
/// vectors scaled by their singular values) when it grows past the limit.
pub fn distill(state: &mut WorkReuseState, t_new: &Transform, k: usize) -> Result<Transform> {
    if t_new.k() == 0 {
        return Err(Error::invalid("distill needs at least one new column"));
    }
    let d = state.h.nrows();
    if t_new.input_dim() != d {
        return Err(Error::DimensionMismatch {
            context: "distill",
            expected: d,
            got: t_new.input_dim(),
        });
    }
    let mut h = DMatrix::zeros(d, state.h.ncols() + t_new.k());
    h.columns_mut(0, state.h.ncols()).copy_from(&state.h);
    h.columns_mut(state.h.ncols(), t_new.k())
        .copy_from(t_new.basis());
    let dec = svd(&h, None)?;
    let avail = dec.u.ncols();
    let k = k.min(avail).max(1);
    let basis = dec.u.columns(0, k).into_owned();
    if h.ncols() > state.shrink_limit {
        let keep = state.shrink_limit.min(avail);
        let mut shrunk = dec.u.columns(0, keep).into_owned();
        for j in 0..keep {
            shrunk.column_mut(j).scale_mut(dec.singular_values[j]);
        }
        state.h = shrunk;
    } else {
        state.h = h;
    }
    Transform::new(t_new.mean().to_vec(), basis)
}

/// Sample size for iteration `i` (1-based), clamped so sizes strictly
/// increase and never exceed `m`. Returning `m` signals the final,
/// full-data iteration.
pub fn schedule_next(
    schedule: &SampleSchedule,
    i: usize,
    m: usize,
    history: &[IterationRecord],
) -> Result<usize> {
    if i == 0 {
        return Err(Error::invalid("iterations are 1-based"));
    }
    schedule.validate()?;
    let prev = history.last().map(|r| r.m_i);
    let raw = match *schedule {
        SampleSchedule::PercentLinear {
            start_frac,
            step_frac,
        } => (m as f64 * (start_frac + (i - 1) as f64 * step_frac)).ceil() as usize,
        SampleSchedule::FixedStep { start_n, step_n } => start_n + (i - 1) * step_n,
        SampleSchedule::Escalating {
            start_frac,
            step_frac,
            escalation_factor,
            stall_threshold,
        } => match prev {
            None => (m as f64 * start_frac).ceil() as usize,
            Some(p) => {
                let stalls = trailing_non_improving(history);
                let escalations = (stalls / stall_threshold) as i32;
                let step = step_frac * escalation_factor.powi(escalations);
                p + (m as f64 * step).ceil().max(1.0) as usize
            }
        },
    };
    let lo = prev.map_or(1, |p| (p + 1).min(m));
    Ok(raw.clamp(lo, m))
}

/// Trailing iterations (achieved or not) that failed to improve on the best
/// k seen before them.
fn trailing_non_improving(history: &[IterationRecord]) -> usize {
    let mut best: Option<usize> = None;
    let mut improved = Vec::with_capacity(history.len());
    for rec in history {
        match (rec.k_i, best) {
            (Some(k), None) => {
                best = Some(k);
                improved.push(true);
            }
            (Some(k), Some(b)) if k < b => {
                best = Some(k);
                improved.push(true);
            }
            _ => improved.push(false),
        }
    }
    improved.iter().rev().take_while(|&&x| !x).count()
}

/// Draws `n` distinct rows uniformly at random, deterministic per seed.
pub fn draw_sample(x: &DataMatrix, n: usize, seed: u64) -> Result<DataMatrix> {
    if n == 0 || n > x.rows() {
        return Err(Error::invalid(format!(
            "sample size must be in [1, {}], got {n}",
            x.rows()
        )));
    }
    let mut rng = Prng::seed_from_u64(seed);
    let idx = rng.sample_indices(x.rows(), n);
    x.select_rows(&idx)
}

/// Linear extrapolation of the next iteration's achieved dimension and
/// runtime from the last two completed iterations.
pub fn estimate_next(
    prev: &IterationRecord,
    last: &IterationRecord,
    m_next: usize,
) -> Result<(f64, f64)> {
    if prev.m_i == last.m_i {
        return Err(Error::invalid(
            "progress estimation needs two iterations with distinct sample sizes",
        ));
    }
    let (k_prev, k_last) = match (prev.k_i, last.k_i) {
        (Some(a), Some(b)) => (a as f64, b as f64),
        _ => {
            return Err(Error::invalid(
                "progress estimation needs two iterations with achieved dimensions",
            ))
        }
    };
    let dm = last.m_i as f64 - prev.m_i as f64;
    let step = m_next as f64 - last.m_i as f64;
    let r_hat = last.r_i + (last.r_i - prev.r_i) / dm * step;
    let k_hat = k_last + (k_last - k_prev) / dm * step;
    Ok((k_hat.max(1.0), r_hat.max(MIN_ITERATION_SECONDS)))
}

/// The termination check: continue iff the predicted downstream saving of
/// reaching `k_hat` covers the predicted cost of one more iteration.
pub fn should_continue(cost_model: &CostModel, k_i: usize, k_hat: f64, r_hat: f64) -> bool {
    cost_model.evaluate(k_i as f64) - cost_model.evaluate(k_hat) >= r_hat
}

/// Full configuration for a [`run_drop`] call.
#[derive(Debug, Clone)]
pub struct DropConfig {
    /// Target TLB in (0, 1].
    pub b: f64,
    pub confidence: f64,
    pub schedule: SampleSchedule,
    pub engine: PcaEngineKind,
    pub reuse: bool,
    /// Downstream cost model; `None` switches to run-to-convergence.
    pub cost_model: Option<CostModel>,
    pub timing: TimingMode,
    pub seed: u64,
    pub pair_cap: usize,
}

impl Default for DropConfig {
    fn default() -> Self {
        DropConfig {
            b: 0.99,
            confidence: 0.95,
            schedule: SampleSchedule::PercentLinear {
                start_frac: 0.01,
                step_frac: 0.01,
            },
            engine: PcaEngineKind::randomized_default(),
            reuse: true,
            cost_model: None,
            timing: TimingMode::WallClock,
            seed: 0,
            pair_cap: DEFAULT_PAIR_CAP,
        }
    }
}

struct Candidate {
    transform: Transform,
    k: usize,
    tlb: TlbEstimate,
}

/// Runs the full progressive-sampling loop over `x`.
pub fn run_drop(x: &DataMatrix, config: &DropConfig) -> Result<DropResult> {
    if !(config.b > 0.0 && config.b <= 1.0) {
        return Err(Error::invalid("target B must be in (0, 1]"));
    }
    if !(config.confidence > 0.0 && config.confidence < 1.0) {
        return Err(Error::invalid("confidence must be in (0, 1)"));
    }
    if x.rows() < 2 {
        return Err(Error::invalid("need at least 2 points"));
    }
    config.schedule.validate()?;

    let (m, d) = (x.rows(), x.cols());
    let mut ledger = CostLedger::new(config.timing);
    let mut history: Vec<IterationRecord> = Vec::new();
    let mut k_cap: Option<usize> = None;
    let mut accepted: Option<Candidate> = None;
    let mut fallback: Option<Candidate> = None;
    let mut reuse_state = WorkReuseState::new(d, 4 * d.min(m));
    let mut stall = 0usize;
    let mut total_r = 0.0;
    let mut termination;

    let mut i = 0usize;
    loop {
        i += 1;
        let m_i = schedule_next(&config.schedule, i, m, &history)?;
        ledger.start_iteration();
        ledger.charge(flops::sample(m_i, d));
        let sample = draw_sample(x, m_i, derive_seed(config.seed, 0xA000 + i as u64))?;
        let k_hi = k_cap.unwrap_or(d).min(d).min(m_i);
        let search_seed = derive_seed(config.seed, 0xB000 + i as u64);
        let inner = compute_transform_inner(
            x,
            &sample,
            config.b,
            k_hi,
            &config.engine,
            config.confidence,
            search_seed,
            config.pair_cap,
        )?;
        ledger.charge(flops::pca_fit(m_i, d, k_hi, &config.engine));
        ledger.charge(flops::tlb_pairs(inner.stats.pairs_total, d, k_hi));

        let mut k_i = None;
        let mut used_distilled = false;
        match inner.outcome {
            SearchOutcome::Found { k, transform, tlb } => {
                let mut chosen = Candidate { transform, k, tlb };
                if config.reuse {
                    ledger.charge(flops::svd(d, reuse_state.history_cols() + chosen.k));
                    let distilled = distill(&mut reuse_state, &chosen.transform, chosen.k)?;
                    let pair_seed = derive_seed(search_seed, PAIR_SEED_TAG);
                    let res = smallest_passing_truncation(
                        x,
                        &distilled,
                        config.b,
                        chosen.k,
                        config.confidence,
                        pair_seed,
                        config.pair_cap,
                    )?;
                    ledger.charge(flops::tlb_pairs(res.stats.pairs_total, d, chosen.k));
                    if let Some((dk, dest)) = res.found {
                        // Ties go to the fresh fit.
                        if dk < chosen.k {
                            chosen = Candidate {
                                transform: distilled.truncated(dk)?,
                                k: dk,
                                tlb: dest,
                            };
                            used_distilled = true;
                        }
                    }
                }
                k_i = Some(chosen.k);
                accepted = Some(chosen);
            }
            SearchOutcome::NotAchievable { best_estimate } => {
                fallback = Some(Candidate {
                    k: inner.fit.transform.k(),
                    transform: inner.fit.transform,
                    tlb: best_estimate,
                });
            }
        }

        let r_i = ledger.elapsed_seconds();
        total_r += r_i;
        let obj_i = match (k_i, &config.cost_model) {
            (Some(k), Some(model)) => Some(total_r + model.evaluate(k as f64)),
            _ => None,
        };
        history.push(IterationRecord {
            i,
            m_i,
            k_i,
            r_i,
            obj_i,
            used_distilled,
        });
        log::debug!(
            "iteration {i}: m_i={m_i} k_i={k_i:?} r_i={r_i:.6}s distilled={used_distilled}"
        );

        if let Some(k) = k_i {
            let improved = k_cap.map_or(true, |c| k < c);
            stall = if improved { 0 } else { stall + 1 };
            k_cap = Some(k_cap.map_or(k, |c| c.min(k)));
            reuse_state.shrink_limit = 4 * k_cap.unwrap().max(1);

            if let Some(model) = &config.cost_model {
                // The check needs two completed iterations; iterations 1
                // and 2 therefore always continue past iteration 1.
                if m_i < m {
                    if let Some((prev, last)) = last_two_achieved(&history) {
                        let m_next = schedule_next(&config.schedule, i + 1, m, &history)?;
                        let (k_hat, r_hat) = estimate_next(prev, last, m_next)?;
                        if !should_continue(model, k, k_hat, r_hat) {
                            log::info!(
                                "stopping: predicted saving {:.6}s < predicted cost {r_hat:.6}s",
                                model.evaluate(k as f64) - model.evaluate(k_hat)
                            );
                            termination = Termination::CostOptimal;
                            break;
                        }
                    }
                }
            } else if stall >= 2 {
                termination = Termination::Converged;
                break;
            }
        }

        if m_i >= m {
            termination = if accepted.is_some() {
                Termination::SampleExhausted
            } else {
                Termination::NeverAchieved
            };
            break;
        }
    }

    let final_candidate = match accepted {
        Some(c) => c,
        None => {
            termination = Termination::NeverAchieved;
            fallback.expect("every iteration either achieves or records a fallback")
        }
    };
    Ok(DropResult {
        k: final_candidate.k,
        transform: final_candidate.transform,
        tlb: final_candidate.tlb,
        history,
        total_dr_seconds: total_r,
        termination,
    })
}

/// Last two records carrying achieved dimensions and distinct sample sizes.
fn last_two_achieved(history: &[IterationRecord]) -> Option<(&IterationRecord, &IterationRecord)> {
    let mut it = history.iter().rev().filter(|r| r.k_i.is_some());
    let last = it.next()?;
    let prev = it.find(|r| r.m_i != last.m_i)?;
    Some((prev, last))
}

/// One step of a scripted iteration trace: sample size, achieved dimension,
/// runtime.
#[derive(Debug, Clone, Copy)]
pub struct TraceStep {
    pub m: usize,
    pub k: usize,
    pub r: f64,
}

/// Applies the greedy termination rule to a fully scripted trace, returning
/// the 1-based index of the final executed iteration. Mirrors the decision
/// layer of [`run_drop`] with every iteration achieved.
pub fn greedy_stop(trace: &[TraceStep], model: &CostModel) -> usize {
    let n = trace.len();
    assert!(n >= 1);
    for idx in 1..n {
        if idx + 1 >= n + 1 {
            break;
        }
        let prev = trace[idx - 1];
        let last = trace[idx];
        if idx + 1 == n {
            // The trace ends here; there is no further iteration to predict.
            return n;
        }
        let m_next = trace[idx + 1].m;
        let rec = |s: TraceStep, i: usize| IterationRecord {
            i,
            m_i: s.m,
            k_i: Some(s.k),
            r_i: s.r,
            obj_i: None,
            used_distilled: false,
        };
        let (k_hat, r_hat) = match estimate_next(&rec(prev, idx), &rec(last, idx + 1), m_next) {
            Ok(v) => v,
            Err(_) => continue,
        };
        if !should_continue(model, last.k, k_hat, r_hat) {
            return idx + 1;
        }
    }
    n
}
