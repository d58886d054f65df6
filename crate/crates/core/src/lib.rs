//! Workload-aware dimensionality reduction for dense time-series-style data.
//!
//! The centerpiece is a progressive-sampling PCA optimizer: it fits PCA on
//! growing uniform samples, binary-searches the smallest output dimension
//! that preserves average pairwise distance (the TLB metric) to a target,
//! estimates the marginal benefit of another iteration, and stops when that
//! benefit no longer pays for itself under a downstream cost model.
//!
//! The crate also ships the classic reducers the optimizer is benchmarked
//! against (PAA, truncated orthonormal DFT, full-data PCA via exact and
//! randomized SVD), downstream operators (1-NN classification, DBSCAN) with
//! a profile-able dimension-to-runtime cost model, seeded synthetic data
//! generation, and report emission for benchmark harnesses.
//!
//! All randomized code paths take explicit seeds and are bit-reproducible
//! across runs; see [`rng`] for the pinned generator.

pub mod baselines;
pub mod config;
#[cfg(test)]
pub(crate) mod test_util;
pub mod cost;
pub mod data;
pub mod downstream;
pub mod driver;
pub mod error;
pub mod matrix;
pub mod pca;
pub mod rng;
pub mod search;
pub mod tlb;

pub use error::{Error, Result};
pub use matrix::{DataMatrix, SvdResult, Transform};
pub use pca::PcaEngineKind;
pub use tlb::{TlbDecision, TlbEstimate};
