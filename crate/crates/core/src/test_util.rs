//! Shared fixtures for unit tests.

use nalgebra::DMatrix;

use crate::matrix::{qr_orthonormalize, DataMatrix};
use crate::rng::Prng;

pub(crate) fn random_dmatrix(rng: &mut Prng, m: usize, n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(m, n, |_, _| rng.normal())
}

/// Random d x k matrix with orthonormal columns.
pub(crate) fn random_orthonormal(rng: &mut Prng, d: usize, k: usize) -> DMatrix<f64> {
    let g = random_dmatrix(rng, d, k);
    qr_orthonormalize(&g).unwrap().q
}

pub(crate) fn random_data(rng: &mut Prng, m: usize, d: usize) -> DataMatrix {
    DataMatrix::from_vec(m, d, (0..m * d).map(|_| rng.normal()).collect()).unwrap()
}

/// m x d data of exact rank `r` (rows in a random r-dimensional subspace),
/// with singular values roughly `scales`.
pub(crate) fn low_rank_data(rng: &mut Prng, m: usize, d: usize, scales: &[f64]) -> DataMatrix {
    let r = scales.len();
    assert!(r <= d && r <= m);
    let mut g = random_dmatrix(rng, m, r);
    for (j, s) in scales.iter().enumerate() {
        g.column_mut(j).scale_mut(*s);
    }
    let p = random_orthonormal(rng, d, r);
    DataMatrix::from_dmatrix(&(g * p.transpose())).unwrap()
}

/// Matrix with a prescribed spectrum: U * diag(spectrum) * V'.
pub(crate) fn matrix_with_spectrum(rng: &mut Prng, m: usize, n: usize, spectrum: &[f64]) -> DMatrix<f64> {
    let r = spectrum.len();
    assert!(r <= m.min(n));
    let u = random_orthonormal(rng, m, r);
    let v = random_orthonormal(rng, n, r);
    let mut us = u;
    for (j, s) in spectrum.iter().enumerate() {
        us.column_mut(j).scale_mut(*s);
    }
    us * v.transpose()
}
