//! Library-wide numerical tolerances.
//!
//! Every orthonormality, reconstruction, and contraction check in the crate
//! reads from this one record so property tests and implementations cannot
//! drift apart.

/// Shared tolerance constants.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Frobenius tolerance for `basis' * basis = I` checks.
    pub orthonormality: f64,
    /// Relative Frobenius tolerance for SVD reconstruction.
    pub reconstruction: f64,
    /// Additive slack allowed on contractive per-pair distance ratios.
    pub contraction_slack: f64,
    /// Per-column residual scale after mean centering.
    pub centering: f64,
    /// Relative threshold under which a singular value counts as zero.
    pub rank: f64,
}

pub const TOL: Tolerances = Tolerances {
    orthonormality: 1e-8,
    reconstruction: 1e-6,
    contraction_slack: 1e-9,
    centering: 1e-9,
    rank: 1e-12,
};
