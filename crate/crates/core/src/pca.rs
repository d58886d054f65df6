//! Pluggable PCA engines.
//!
//! Three ways to obtain the leading right singular vectors of a centered
//! sample:
//!
//! * [`PcaEngineKind::ExactSvd`]: one dense SVD. The reference answer.
//! * [`PcaEngineKind::RandomizedSvd`]: Gaussian sketch + power iterations +
//!   small SVD (the Halko-Martinsson-Tropp scheme). The default engine.
//! * [`PcaEngineKind::SimultaneousIteration`]: block power iteration,
//!   growing the basis incrementally with [`project_off`] and compacting it
//!   with [`refine`].
//!
//! All engines emit the same [`Transform`] contract: orthonormal columns
//! ordered by non-increasing explained variance, with each column's
//! largest-magnitude entry forced positive so results are comparable across
//! engines.

use nalgebra::DMatrix;

use crate::config::TOL;
use crate::error::{Error, Result};
use crate::matrix::{
    center_columns, normalize_basis_signs, qr_orthonormalize, svd, DataMatrix, SvdResult,
    Transform,
};
use crate::rng::{derive_seed, Prng};

/// Which PCA subroutine [`pca_fit`] runs.
#[derive(Debug, Clone, PartialEq)]
pub enum PcaEngineKind {
    ExactSvd,
    RandomizedSvd {
        oversample: usize,
        power_iters: usize,
    },
    SimultaneousIteration {
        block: usize,
        tol: f64,
        max_sweeps: usize,
    },
}

impl PcaEngineKind {
    /// Randomized SVD with the standard oversampling and power-iteration
    /// defaults from the randomized linear algebra literature.
    pub fn randomized_default() -> Self {
        PcaEngineKind::RandomizedSvd {
            oversample: 10,
            power_iters: 2,
        }
    }

    pub fn subspace_default() -> Self {
        PcaEngineKind::SimultaneousIteration {
            block: 8,
            tol: 1e-8,
            max_sweeps: 100,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            PcaEngineKind::ExactSvd => Ok(()),
            PcaEngineKind::RandomizedSvd { oversample, .. } => {
                if oversample < 1 {
                    Err(Error::invalid("oversample must be >= 1"))
                } else {
                    Ok(())
                }
            }
            PcaEngineKind::SimultaneousIteration { block, tol, .. } => {
                if block < 1 {
                    Err(Error::invalid("block must be >= 1"))
                } else if tol <= 0.0 {
                    Err(Error::invalid("tol must be > 0"))
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl Default for PcaEngineKind {
    fn default() -> Self {
        PcaEngineKind::randomized_default()
    }
}

/// Threshold on retained singular values in [`refine`].
#[derive(Debug, Clone, Copy)]
pub struct RefineConfig {
    pub eps: f64,
}

/// Relative factor applied to an estimated leading singular value to obtain
/// the default refine threshold.
pub const REFINE_EPS_FACTOR: f64 = 1e-10;

/// A fitted PCA transform.
#[derive(Debug, Clone)]
pub struct PcaFit {
    pub transform: Transform,
    /// Trailing basis columns that exceed the sample's numerical rank; they
    /// are arbitrary orthonormal completions, not data directions.
    pub padded_columns: usize,
}

/// Fits PCA on `sample`, returning a transform with `k_max` orthonormal
/// columns (the leading right singular vectors of the centered sample).
/// Deterministic for a fixed `(engine, seed)`.
pub fn pca_fit(
    sample: &DataMatrix,
    k_max: usize,
    engine: &PcaEngineKind,
    seed: u64,
) -> Result<PcaFit> {
    engine.validate()?;
    let limit = sample.rows().min(sample.cols());
    if k_max == 0 || k_max > limit {
        return Err(Error::invalid(format!(
            "k_max must be in [1, {limit}] for a {} x {} sample, got {k_max}",
            sample.rows(),
            sample.cols()
        )));
    }
    let (centered, mean) = center_columns(sample);
    let a = centered.to_dmatrix();
    let (mut basis, rank) = match *engine {
        PcaEngineKind::ExactSvd => {
            let dec = svd(&a, None)?;
            let basis = dec.vt.rows(0, k_max).transpose();
            (basis, dec.rank().min(k_max))
        }
        PcaEngineKind::RandomizedSvd {
            oversample,
            power_iters,
        } => {
            // The sketch width is capped by the sample's smaller dimension.
            let oversample = oversample.min(limit - k_max);
            let dec = halko_truncated_svd(&a, k_max, oversample, power_iters, seed)?;
            let rank = effective_rank(&dec, k_max);
            (dec.vt.transpose(), rank)
        }
        PcaEngineKind::SimultaneousIteration {
            block,
            tol,
            max_sweeps,
        } => fit_by_subspace_iteration(&a, k_max, block, tol, max_sweeps, seed)?,
    };
    let padded_columns = pad_basis(&mut basis, rank, k_max, seed)?;
    normalize_basis_signs(&mut basis);
    let transform = Transform::new(mean, basis)?;
    Ok(PcaFit {
        transform,
        padded_columns,
    })
}

fn effective_rank(dec: &SvdResult, k: usize) -> usize {
    let smax = dec.singular_values.get(0).copied().unwrap_or(0.0);
    if smax <= 0.0 {
        return 0;
    }
    dec.singular_values
        .iter()
        .take(k)
        .filter(|&&s| s > smax * TOL.rank)
        .count()
}

/// Incremental fit: grow the basis in blocks of subspace iteration on the
/// deflated matrix, then compact with one refine pass.
fn fit_by_subspace_iteration(
    a: &DMatrix<f64>,
    k_max: usize,
    block: usize,
    tol: f64,
    max_sweeps: usize,
    seed: u64,
) -> Result<(DMatrix<f64>, usize)> {
    let d = a.ncols();
    let mut s = DMatrix::<f64>::zeros(d, 0);
    let mut round = 0u64;
    while s.ncols() < k_max {
        let want = block.min(k_max - s.ncols());
        let deflated = project_off(a, &s)?;
        let iter = simultaneous_iteration(
            &deflated,
            want,
            tol,
            max_sweeps,
            derive_seed(seed, 0x5100 + round),
        )?;
        if !iter.converged {
            log::debug!(
                "subspace iteration block {round} stopped at max_sweeps={max_sweeps} without \
                 reaching tol={tol}"
            );
        }
        s = concat_columns(&s, &iter.basis);
        round += 1;
    }
    // One refine pass orders the directions by singular value and drops any
    // below threshold.
    let sigma1 = leading_singular_value_estimate(a, derive_seed(seed, 0x51FF));
    let eps = (REFINE_EPS_FACTOR * sigma1).max(f64::MIN_POSITIVE);
    let refined = refine(a, &s, &RefineConfig { eps })?;
    let rank = refined.ncols().min(k_max);
    let basis = if refined.ncols() >= k_max {
        refined.columns(0, k_max).into_owned()
    } else {
        refined
    };
    Ok((basis, rank))
}

/// Crude spectral norm estimate: a few power iterations on `A'A`.
fn leading_singular_value_estimate(a: &DMatrix<f64>, seed: u64) -> f64 {
    let d = a.ncols();
    let mut rng = Prng::seed_from_u64(seed);
    let mut v = nalgebra::DVector::<f64>::from_fn(d, |_, _| rng.normal());
    let nrm = v.norm();
    if nrm == 0.0 {
        return 0.0;
    }
    v /= nrm;
    let mut sigma = 0.0;
    for _ in 0..8 {
        let w = a.transpose() * (a * &v);
        let n = w.norm();
        if n == 0.0 {
            return 0.0;
        }
        sigma = n.sqrt();
        v = w / n;
    }
    sigma
}

fn concat_columns(left: &DMatrix<f64>, right: &DMatrix<f64>) -> DMatrix<f64> {
    debug_assert!(left.ncols() == 0 || left.nrows() == right.nrows());
    let rows = right.nrows();
    let mut out = DMatrix::zeros(rows, left.ncols() + right.ncols());
    out.columns_mut(0, left.ncols()).copy_from(left);
    out.columns_mut(left.ncols(), right.ncols()).copy_from(right);
    out
}

/// Extends `basis` with arbitrary orthonormal completions when the data rank
/// fell short of `k_max`; returns how many columns are padding.
fn pad_basis(basis: &mut DMatrix<f64>, rank: usize, k_max: usize, seed: u64) -> Result<usize> {
    if basis.ncols() == k_max && rank >= k_max {
        return Ok(0);
    }
    let keep = basis.ncols().min(k_max).min(rank.max(1));
    let kept = basis.columns(0, keep).into_owned();
    let d = basis.nrows();
    let mut rng = Prng::seed_from_u64(derive_seed(seed, 0x9AD));
    let fill = DMatrix::from_fn(d, k_max - kept.ncols(), |_, _| rng.normal());
    let stacked = concat_columns(&kept, &fill);
    let qr = qr_orthonormalize(&stacked)?;
    *basis = qr.q.columns(0, k_max).into_owned();
    Ok(k_max - rank.min(k_max))
}

/// Approximate rank-`k` SVD via Gaussian sketching (Halko-Martinsson-Tropp).
///
/// `power_iters` rounds of re-orthonormalized power iteration sharpen the
/// sketch when the spectrum decays slowly.
pub fn halko_truncated_svd(
    a: &DMatrix<f64>,
    k: usize,
    oversample: usize,
    power_iters: usize,
    seed: u64,
) -> Result<SvdResult> {
    let (m, n) = (a.nrows(), a.ncols());
    let p = m.min(n);
    if k == 0 {
        return Err(Error::invalid("k must be >= 1"));
    }
    if k + oversample > p {
        return Err(Error::DimensionMismatch {
            context: "halko_truncated_svd sketch width",
            expected: p,
            got: k + oversample,
        });
    }
    let l = k + oversample;
    let mut rng = Prng::seed_from_u64(seed);
    let omega = DMatrix::from_fn(n, l, |_, _| rng.normal());
    let mut q = qr_orthonormalize(&(a * omega))?.q;
    for _ in 0..power_iters {
        let z = qr_orthonormalize(&(a.transpose() * &q))?.q;
        q = qr_orthonormalize(&(a * z))?.q;
    }
    let b = q.transpose() * a; // l x n
    let small = svd(&b, None)?;
    let keep = k.min(small.singular_values.len());
    let mut u = &q * small.u.columns(0, keep).into_owned();
    let mut vt = small.vt.rows(0, keep).into_owned();
    let s = small.singular_values.rows(0, keep).into_owned();
    crate::matrix::normalize_signs(&mut u, &mut vt);
    Ok(SvdResult {
        u,
        singular_values: s,
        vt,
    })
}

/// Outcome of block power iteration.
#[derive(Debug, Clone)]
pub struct SubspaceIteration {
    /// d x k with orthonormal columns.
    pub basis: DMatrix<f64>,
    /// Whether successive projectors got within `tol` before `max_sweeps`.
    pub converged: bool,
    pub sweeps: usize,
}

/// Block power iteration for the leading `k` right singular vectors of `a`:
/// repeat `Q <- qr(A'(A Q))` from a random orthonormal start until the
/// projector stops moving (Frobenius distance <= `tol`) or `max_sweeps`.
pub fn simultaneous_iteration(
    a: &DMatrix<f64>,
    k: usize,
    tol: f64,
    max_sweeps: usize,
    seed: u64,
) -> Result<SubspaceIteration> {
    let n = a.ncols();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("k must be in [1, {n}], got {k}")));
    }
    if tol <= 0.0 {
        return Err(Error::invalid("tol must be > 0"));
    }
    let mut rng = Prng::seed_from_u64(seed);
    let start = DMatrix::from_fn(n, k, |_, _| rng.normal());
    let mut q = qr_orthonormalize(&start)?.q;
    let mut projector = &q * q.transpose();
    for sweep in 1..=max_sweeps {
        let z = a.transpose() * (a * &q);
        let next = qr_orthonormalize(&z)?.q;
        let next_projector = &next * next.transpose();
        let dist = (&next_projector - &projector).norm();
        q = next;
        projector = next_projector;
        if dist <= tol {
            return Ok(SubspaceIteration {
                basis: q,
                converged: true,
                sweeps: sweep,
            });
        }
    }
    Ok(SubspaceIteration {
        basis: q,
        converged: false,
        sweeps: max_sweeps,
    })
}

/// Removes the component of every row of `a` that lies in span(V):
/// `A (I - V V')`. An empty `v` leaves `a` unchanged.
pub fn project_off(a: &DMatrix<f64>, v: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if v.ncols() == 0 {
        return Ok(a.clone());
    }
    if a.ncols() != v.nrows() {
        return Err(Error::DimensionMismatch {
            context: "project_off",
            expected: a.ncols(),
            got: v.nrows(),
        });
    }
    Ok(a - (a * v) * v.transpose())
}

/// Compacts a (possibly redundant) direction set `v` against the data:
/// orthonormalize `v`, rotate by the right singular vectors of `A Q`, and
/// keep only directions whose singular value exceeds `cfg.eps`.
///
/// Returns an empty matrix (zero columns) with a logged warning when every
/// direction falls below the threshold.
pub fn refine(a: &DMatrix<f64>, v: &DMatrix<f64>, cfg: &RefineConfig) -> Result<DMatrix<f64>> {
    if cfg.eps <= 0.0 {
        return Err(Error::invalid("refine eps must be > 0"));
    }
    if a.ncols() != v.nrows() {
        return Err(Error::DimensionMismatch {
            context: "refine",
            expected: a.ncols(),
            got: v.nrows(),
        });
    }
    if v.ncols() == 0 {
        return Ok(DMatrix::zeros(a.ncols(), 0));
    }
    let qr = qr_orthonormalize(v)?;
    // Padded columns are artifacts of dependent inputs, not directions of V.
    let kept_cols: Vec<usize> = (0..qr.q.ncols())
        .filter(|j| !qr.padded_columns.contains(j))
        .collect();
    if kept_cols.is_empty() {
        log::warn!("refine: all input directions are degenerate");
        return Ok(DMatrix::zeros(a.ncols(), 0));
    }
    let q = qr.q.select_columns(&kept_cols);
    let b = a * &q;
    let dec = svd(&b, None)?;
    let w = dec.vt.transpose();
    let keep: Vec<usize> = dec
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > cfg.eps)
        .map(|(j, _)| j)
        .collect();
    if keep.is_empty() {
        log::warn!(
            "refine: no direction exceeds eps={:.3e}; returning empty basis",
            cfg.eps
        );
        return Ok(DMatrix::zeros(a.ncols(), 0));
    }
    Ok(&q * w.select_columns(&keep))
}
