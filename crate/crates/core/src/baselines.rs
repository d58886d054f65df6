//! Classic reducers and the common smallest-k methodology.
//!
//! PAA and the truncated orthonormal DFT are both projections onto
//! orthonormal bases of `R^d`, so their reduced distances lower-bound the
//! originals and both become exact isometries at `k = d`:
//!
//! * PAA coordinate f is `sqrt(L_f) *` (mean of frame f), i.e. the inner
//!   product with the normalized indicator of the frame.
//! * DFT coordinates follow the real Fourier basis in the interleaved order
//!   `[DC, sqrt2*Re(c1), sqrt2*Im(c1), sqrt2*Re(c2), ...]` (Nyquist term
//!   unscaled for even d), with the orthonormal `1/sqrt(d)` convention, so
//!   "first k coefficients" is well-defined for odd k.
//!
//! [`smallest_k`] wraps each reducer with the same seeded binary search the
//! optimizer uses, for head-to-head comparisons.

use crate::error::{Error, Result};
use crate::matrix::{DataMatrix, Transform};
use crate::pca::PcaEngineKind;
use crate::rng::derive_seed;
use crate::search::{binary_search_smallest, SearchOutcome, SearchStats, PAIR_SEED_TAG};
use crate::tlb::{evaluate_tlb_reduced, tlb_sampled_reduced, TlbDecision};
use nalgebra::DMatrix;

/// Reduction method used by [`smallest_k`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReducerKind {
    Paa,
    Fft,
    FullPcaExact,
    FullPcaRandomized,
}

impl ReducerKind {
    pub fn name(&self) -> &'static str {
        match self {
            ReducerKind::Paa => "paa",
            ReducerKind::Fft => "fft",
            ReducerKind::FullPcaExact => "pca-exact",
            ReducerKind::FullPcaRandomized => "pca-randomized",
        }
    }
}

/// Frame boundaries for PAA: k contiguous frames with sizes differing by at
/// most one (longer frames first).
fn paa_frames(d: usize, k: usize) -> Vec<(usize, usize)> {
    let base = d / k;
    let extra = d % k;
    let mut frames = Vec::with_capacity(k);
    let mut start = 0;
    for f in 0..k {
        let len = base + usize::from(f < extra);
        frames.push((start, len));
        start += len;
    }
    frames
}

/// Piecewise aggregate approximation: each output coordinate is
/// `sqrt(frame_len) * frame_mean`, making the reduction contractive.
pub fn paa_reduce(x: &DataMatrix, k: usize) -> Result<DataMatrix> {
    let d = x.cols();
    if k == 0 || k > d {
        return Err(Error::invalid(format!("k must be in [1, {d}], got {k}")));
    }
    let frames = paa_frames(d, k);
    let mut values = Vec::with_capacity(x.rows() * k);
    for i in 0..x.rows() {
        let row = x.row(i);
        for &(start, len) in &frames {
            let sum: f64 = row[start..start + len].iter().sum();
            values.push(sum / (len as f64).sqrt());
        }
    }
    DataMatrix::from_vec(x.rows(), k, values)
}

/// The PAA basis as an explicit orthonormal d x k transform (zero mean).
pub fn paa_basis(d: usize, k: usize) -> Result<Transform> {
    if k == 0 || k > d {
        return Err(Error::invalid(format!("k must be in [1, {d}], got {k}")));
    }
    let mut basis = DMatrix::zeros(d, k);
    for (f, &(start, len)) in paa_frames(d, k).iter().enumerate() {
        let v = 1.0 / (len as f64).sqrt();
        for r in start..start + len {
            basis[(r, f)] = v;
        }
    }
    Transform::new(vec![0.0; d], basis)
}

/// Row of the real orthonormal Fourier basis for coefficient index `j` of
/// dimension `d`, in the interleaved ordering.
fn fourier_basis_column(d: usize, j: usize) -> Vec<f64> {
    let n = d as f64;
    let mut col = vec![0.0; d];
    if j == 0 {
        let v = 1.0 / n.sqrt();
        col.iter_mut().for_each(|c| *c = v);
        return col;
    }
    // Even d has a lone Nyquist coefficient at the last position.
    if d % 2 == 0 && j == d - 1 {
        let v = 1.0 / n.sqrt();
        for (t, c) in col.iter_mut().enumerate() {
            *c = if t % 2 == 0 { v } else { -v };
        }
        return col;
    }
    let pair = (j + 1) / 2; // harmonic index p >= 1
    let scale = (2.0 / n).sqrt();
    let is_re = j % 2 == 1;
    for (t, c) in col.iter_mut().enumerate() {
        let angle = 2.0 * std::f64::consts::PI * pair as f64 * t as f64 / n;
        *c = if is_re {
            scale * angle.cos()
        } else {
            -scale * angle.sin()
        };
    }
    col
}

/// Truncated orthonormal discrete Fourier transform: keeps the first `k`
/// coefficients of the interleaved real spectrum. Direct O(d^2) evaluation.
pub fn fft_reduce(x: &DataMatrix, k: usize) -> Result<DataMatrix> {
    let d = x.cols();
    if k == 0 || k > d {
        return Err(Error::invalid(format!("k must be in [1, {d}], got {k}")));
    }
    let columns: Vec<Vec<f64>> = (0..k).map(|j| fourier_basis_column(d, j)).collect();
    let mut values = Vec::with_capacity(x.rows() * k);
    for i in 0..x.rows() {
        let row = x.row(i);
        for col in &columns {
            let mut acc = 0.0;
            for t in 0..d {
                acc += row[t] * col[t];
            }
            values.push(acc);
        }
    }
    DataMatrix::from_vec(x.rows(), k, values)
}

/// The truncated Fourier basis as an explicit orthonormal transform.
pub fn fft_basis(d: usize, k: usize) -> Result<Transform> {
    if k == 0 || k > d {
        return Err(Error::invalid(format!("k must be in [1, {d}], got {k}")));
    }
    let mut basis = DMatrix::zeros(d, k);
    for j in 0..k {
        let col = fourier_basis_column(d, j);
        for r in 0..d {
            basis[(r, j)] = col[r];
        }
    }
    Transform::new(vec![0.0; d], basis)
}

/// [`smallest_k`] outcome plus search bookkeeping (for cost accounting).
pub struct BaselineSearch {
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
}

/// [`smallest_k`] with the probe statistics attached.
pub fn smallest_k_detailed(
    reducer: ReducerKind,
    x: &DataMatrix,
    b: f64,
    confidence: f64,
    seed: u64,
    pair_cap: usize,
) -> Result<BaselineSearch> {
    if !(b > 0.0 && b <= 1.0) {
        return Err(Error::invalid("target B must be in (0, 1]"));
    }
    let d = x.cols();
    let k_hi = d.min(x.rows());
    let pair_seed = derive_seed(seed, PAIR_SEED_TAG);
    match reducer {
        ReducerKind::FullPcaExact | ReducerKind::FullPcaRandomized => {
            let engine = if reducer == ReducerKind::FullPcaExact {
                PcaEngineKind::ExactSvd
            } else {
                PcaEngineKind::randomized_default()
            };
            let inner = crate::search::compute_transform_inner(
                x, x, b, k_hi, &engine, confidence, seed, pair_cap,
            )?;
            Ok(BaselineSearch {
                outcome: inner.outcome,
                stats: inner.stats,
            })
        }
        ReducerKind::Paa | ReducerKind::Fft => {
            let reduce = |k: usize| -> Result<DataMatrix> {
                match reducer {
                    ReducerKind::Paa => paa_reduce(x, k),
                    ReducerKind::Fft => fft_reduce(x, k),
                    _ => unreachable!(),
                }
            };
            let result = binary_search_smallest(k_hi, |k| -> Result<TlbDecision> {
                let reduced = reduce(k)?;
                evaluate_tlb_reduced(x, &reduced, b, confidence, pair_seed, pair_cap)
            })?;
            let outcome = match result.found {
                Some((k, tlb)) => SearchOutcome::Found {
                    k,
                    transform: match reducer {
                        ReducerKind::Paa => paa_basis(d, k)?,
                        ReducerKind::Fft => fft_basis(d, k)?,
                        _ => unreachable!(),
                    },
                    tlb,
                },
                None => SearchOutcome::NotAchievable {
                    best_estimate: result.last_estimate,
                },
            };
            Ok(BaselineSearch {
                outcome,
                stats: result.stats,
            })
        }
    }
}

/// Binary search for the smallest k at which `reducer` meets the TLB target
/// `b`, using the same seeded pair predicate as the optimizer. PCA reducers
/// fit once on the full data; PAA/FFT recompute the reduction per probe.
pub fn smallest_k(
    reducer: ReducerKind,
    x: &DataMatrix,
    b: f64,
    confidence: f64,
    seed: u64,
    pair_cap: usize,
) -> Result<SearchOutcome> {
    smallest_k_detailed(reducer, x, b, confidence, seed, pair_cap).map(|r| r.outcome)
}

/// Sampled TLB of a reducer at a fixed k (used by benchmark reports).
pub fn reducer_tlb(
    reducer: ReducerKind,
    x: &DataMatrix,
    k: usize,
    pairs: usize,
    confidence: f64,
    seed: u64,
) -> Result<crate::tlb::TlbEstimate> {
    let reduced = match reducer {
        ReducerKind::Paa => paa_reduce(x, k)?,
        ReducerKind::Fft => fft_reduce(x, k)?,
        _ => {
            return Err(Error::invalid(
                "reducer_tlb covers the non-PCA reducers only",
            ))
        }
    };
    tlb_sampled_reduced(x, &reduced, pairs, confidence, derive_seed(seed, PAIR_SEED_TAG))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::euclidean;
    use crate::rng::Prng;
    use crate::test_util::{low_rank_data, random_data};
    use crate::tlb::{tlb_exact_reduced, DEFAULT_PAIR_CAP};

    #[test]
    fn paa_hand_example() {
        let x = DataMatrix::from_rows(vec![vec![1.0, 3.0, 5.0, 7.0]]).unwrap();
        let y = paa_reduce(&x, 2).unwrap();
        let s2 = 2.0f64.sqrt();
        assert!((y.row(0)[0] - 2.0 * s2).abs() < 1e-12);
        assert!((y.row(0)[1] - 6.0 * s2).abs() < 1e-12);
    }

    #[test]
    fn paa_at_full_dimension_is_identity() {
        let mut rng = Prng::seed_from_u64(1);
        let x = random_data(&mut rng, 5, 7);
        let y = paa_reduce(&x, 7).unwrap();
        for i in 0..5 {
            for j in 0..7 {
                assert!((x.row(i)[j] - y.row(i)[j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn paa_uneven_frames_differ_by_at_most_one() {
        let frames = paa_frames(10, 3);
        assert_eq!(frames, vec![(0, 4), (4, 3), (7, 3)]);
        let frames = paa_frames(7, 7);
        assert!(frames.iter().all(|&(_, len)| len == 1));
    }

    #[test]
    fn paa_lower_bounds_distances() {
        let mut rng = Prng::seed_from_u64(2);
        for _ in 0..1000 {
            let d = 2 + rng.uniform_usize(14);
            let k = 1 + rng.uniform_usize(d);
            let x = random_data(&mut rng, 2, d);
            let y = paa_reduce(&x, k).unwrap();
            let orig = euclidean(x.row(0), x.row(1));
            let red = euclidean(y.row(0), y.row(1));
            assert!(red <= orig + 1e-9, "d={d} k={k}: {red} > {orig}");
        }
    }

    #[test]
    fn fft_constant_row_is_dc_only() {
        let c = 3.5;
        let x = DataMatrix::from_rows(vec![vec![c; 9]]).unwrap();
        let y = fft_reduce(&x, 9).unwrap();
        assert!((y.row(0)[0] - 3.0 * c).abs() < 1e-12, "DC = sqrt(9)*c");
        for j in 1..9 {
            assert!(y.row(0)[j].abs() < 1e-12);
        }
    }

    #[test]
    fn fft_full_dimension_is_isometry() {
        let mut rng = Prng::seed_from_u64(3);
        for d in [4usize, 5, 8, 9, 16] {
            let x = random_data(&mut rng, 6, d);
            let y = fft_reduce(&x, d).unwrap();
            for i in 0..6 {
                for j in (i + 1)..6 {
                    let orig = euclidean(x.row(i), x.row(j));
                    let red = euclidean(y.row(i), y.row(j));
                    assert!((orig - red).abs() <= 1e-9, "d={d}");
                }
            }
        }
    }

    #[test]
    fn fft_lower_bounds_distances() {
        let mut rng = Prng::seed_from_u64(4);
        for _ in 0..1000 {
            let d = 2 + rng.uniform_usize(14);
            let k = 1 + rng.uniform_usize(d);
            let x = random_data(&mut rng, 2, d);
            let y = fft_reduce(&x, k).unwrap();
            let orig = euclidean(x.row(0), x.row(1));
            let red = euclidean(y.row(0), y.row(1));
            assert!(red <= orig + 1e-9, "d={d} k={k}");
        }
    }

    #[test]
    fn fft_bases_are_orthonormal_and_nested() {
        for d in [6usize, 7, 12] {
            let full = fft_basis(d, d).unwrap();
            let gram = full.basis().transpose() * full.basis();
            assert!((gram - DMatrix::identity(d, d)).norm() < 1e-10, "d={d}");
            // Truncations are literal prefixes.
            let part = fft_basis(d, 3).unwrap();
            for j in 0..3 {
                for r in 0..d {
                    assert_eq!(part.basis()[(r, j)], full.basis()[(r, j)]);
                }
            }
        }
    }

    #[test]
    fn fft_reduce_matches_basis_projection() {
        let mut rng = Prng::seed_from_u64(5);
        let x = random_data(&mut rng, 4, 10);
        let k = 5;
        let direct = fft_reduce(&x, k).unwrap();
        let t = fft_basis(10, k).unwrap();
        let projected = crate::matrix::apply_transform(&x, &t).unwrap();
        for i in 0..4 {
            for j in 0..k {
                assert!((direct.row(i)[j] - projected.row(i)[j]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn fft_tlb_is_monotone_in_k() {
        let mut rng = Prng::seed_from_u64(6);
        let x = random_data(&mut rng, 25, 11);
        let mut prev = 0.0;
        for k in 1..=11 {
            let y = fft_reduce(&x, k).unwrap();
            let v = tlb_exact_reduced(&x, &y).unwrap();
            assert!(v + 1e-12 >= prev, "k={k}");
            prev = v;
        }
    }

    #[test]
    fn paa_tlb_monotone_on_nested_frames() {
        let mut rng = Prng::seed_from_u64(7);
        let x = random_data(&mut rng, 25, 16);
        // k and 2k with k | d: frames nest, so TLB must not decrease.
        for k in [1usize, 2, 4, 8] {
            let a = tlb_exact_reduced(&x, &paa_reduce(&x, k).unwrap()).unwrap();
            let b = tlb_exact_reduced(&x, &paa_reduce(&x, 2 * k).unwrap()).unwrap();
            assert!(b + 1e-12 >= a, "k={k}: {b} < {a}");
        }
    }

    #[test]
    fn smallest_k_degenerate_target_is_one() {
        let mut rng = Prng::seed_from_u64(8);
        let x = random_data(&mut rng, 40, 8);
        for reducer in [
            ReducerKind::Paa,
            ReducerKind::Fft,
            ReducerKind::FullPcaExact,
            ReducerKind::FullPcaRandomized,
        ] {
            let out = smallest_k(reducer, &x, 1e-9, 0.95, 3, DEFAULT_PAIR_CAP).unwrap();
            assert_eq!(out.found_k(), Some(1), "{reducer:?}");
        }
    }

    #[test]
    fn smallest_k_matches_linear_scan() {
        let mut rng = Prng::seed_from_u64(9);
        let mut x = low_rank_data(&mut rng, 60, 12, &[4.0, 2.0, 1.0]);
        let noisy: Vec<f64> = x.values().iter().map(|v| v + rng.normal() * 0.05).collect();
        x = DataMatrix::from_vec(60, 12, noisy).unwrap();
        let b = 0.9;
        for reducer in [ReducerKind::Paa, ReducerKind::Fft] {
            let seed = 17;
            let got = smallest_k(reducer, &x, b, 0.95, seed, DEFAULT_PAIR_CAP)
                .unwrap()
                .found_k();
            let pair_seed = derive_seed(seed, PAIR_SEED_TAG);
            let mut linear = None;
            for k in 1..=12 {
                let reduced = match reducer {
                    ReducerKind::Paa => paa_reduce(&x, k).unwrap(),
                    _ => fft_reduce(&x, k).unwrap(),
                };
                if evaluate_tlb_reduced(&x, &reduced, b, 0.95, pair_seed, DEFAULT_PAIR_CAP)
                    .unwrap()
                    .passed()
                {
                    linear = Some(k);
                    break;
                }
            }
            assert_eq!(got, linear, "{reducer:?}");
        }
    }

    #[test]
    fn pca_needs_no_more_dimensions_than_paa_or_fft() {
        let mut rng = Prng::seed_from_u64(10);
        // Low intrinsic dimension, dense mixing: the regime where PCA wins.
        let mut x = low_rank_data(&mut rng, 150, 24, &[1.0; 4]);
        let noisy: Vec<f64> = x.values().iter().map(|v| v + rng.normal() * 1e-3).collect();
        x = DataMatrix::from_vec(150, 24, noisy).unwrap();
        let b = 0.99;
        let k_pca = smallest_k(ReducerKind::FullPcaExact, &x, b, 0.95, 5, DEFAULT_PAIR_CAP)
            .unwrap()
            .found_k()
            .unwrap();
        let k_paa = smallest_k(ReducerKind::Paa, &x, b, 0.95, 5, DEFAULT_PAIR_CAP)
            .unwrap()
            .found_k()
            .unwrap();
        let k_fft = smallest_k(ReducerKind::Fft, &x, b, 0.95, 5, DEFAULT_PAIR_CAP)
            .unwrap()
            .found_k()
            .unwrap();
        assert!(k_pca <= k_paa, "pca {k_pca} vs paa {k_paa}");
        assert!(k_pca <= k_fft, "pca {k_pca} vs fft {k_fft}");
    }
}
