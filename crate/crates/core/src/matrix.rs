//! Dense matrix primitives: centering, orthonormal projection, QR, and SVD.
//!
//! [`DataMatrix`] stores points as contiguous row-major slices because the
//! hot loops in this crate (pairwise distance ratios, per-row projection)
//! walk rows. Decompositions go through `nalgebra`'s column-major types; the
//! conversion cost is irrelevant next to the factorizations themselves.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::config::TOL;
use crate::error::{Error, Result};

/// Dense m x d dataset; row i is data point x_i.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl DataMatrix {
    /// Builds a matrix from row-major values, rejecting empty shapes and
    /// non-finite entries.
    pub fn from_vec(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid("matrix must have at least one row and column"));
        }
        if values.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "DataMatrix::from_vec",
                expected: rows * cols,
                got: values.len(),
            });
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    context: "DataMatrix::from_vec",
                    row: i / cols,
                    col: i % cols,
                });
            }
        }
        Ok(DataMatrix { rows, cols, values })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::invalid("matrix must have at least one row"));
        }
        let d = rows[0].len();
        let mut values = Vec::with_capacity(m * d);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != d {
                return Err(Error::DimensionMismatch {
                    context: "DataMatrix::from_rows",
                    expected: d,
                    got: r.len(),
                });
            }
            let _ = i;
            values.extend_from_slice(r);
        }
        Self::from_vec(m, d, values)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Copies the selected rows (in the given order) into a new matrix.
    pub fn select_rows(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::invalid("row selection must be non-empty"));
        }
        let mut values = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            if i >= self.rows {
                return Err(Error::invalid(format!("row index {i} out of bounds")));
            }
            values.extend_from_slice(self.row(i));
        }
        DataMatrix::from_vec(indices.len(), self.cols, values)
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.values)
    }

    pub fn from_dmatrix(m: &DMatrix<f64>) -> Result<Self> {
        let mut values = Vec::with_capacity(m.nrows() * m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                values.push(m[(i, j)]);
            }
        }
        DataMatrix::from_vec(m.nrows(), m.ncols(), values)
    }
}

/// Affine-then-orthonormal projection: subtract `mean`, multiply by `basis`.
///
/// `basis` is d x k with orthonormal columns, so any column prefix is itself
/// a valid transform; truncation never needs a refit.
#[derive(Debug, Clone)]
pub struct Transform {
    mean: Vec<f64>,
    basis: DMatrix<f64>,
}

impl Transform {
    pub fn new(mean: Vec<f64>, basis: DMatrix<f64>) -> Result<Self> {
        let d = basis.nrows();
        let k = basis.ncols();
        if k == 0 || k > d {
            return Err(Error::invalid(format!(
                "transform requires 1 <= k <= d, got k={k}, d={d}"
            )));
        }
        if mean.len() != d {
            return Err(Error::DimensionMismatch {
                context: "Transform::new mean",
                expected: d,
                got: mean.len(),
            });
        }
        let gram = basis.transpose() * &basis;
        let mut err_sq = 0.0;
        for i in 0..k {
            for j in 0..k {
                let target = if i == j { 1.0 } else { 0.0 };
                let diff = gram[(i, j)] - target;
                err_sq += diff * diff;
            }
        }
        if err_sq.sqrt() > TOL.orthonormality {
            return Err(Error::invalid(format!(
                "basis columns not orthonormal (Frobenius residual {:.3e})",
                err_sq.sqrt()
            )));
        }
        Ok(Transform { mean, basis })
    }

    /// Identity transform on `R^d` (zero mean, standard basis).
    pub fn identity(d: usize) -> Self {
        Transform {
            mean: vec![0.0; d],
            basis: DMatrix::identity(d, d),
        }
    }

    pub fn input_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn k(&self) -> usize {
        self.basis.ncols()
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Transform restricted to its first `k` columns.
    pub fn truncated(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.k() {
            return Err(Error::invalid(format!(
                "cannot truncate k={} transform to {k} columns",
                self.k()
            )));
        }
        Ok(Transform {
            mean: self.mean.clone(),
            basis: self.basis.columns(0, k).into_owned(),
        })
    }

    /// Projects one row into the first `k` output coordinates.
    pub fn project_row(&self, row: &[f64], k: usize, out: &mut [f64]) {
        debug_assert_eq!(row.len(), self.input_dim());
        debug_assert!(k <= self.k() && out.len() >= k);
        let d = self.input_dim();
        for (j, o) in out.iter_mut().take(k).enumerate() {
            let col = self.basis.column(j);
            let mut acc = 0.0;
            for i in 0..d {
                acc += (row[i] - self.mean[i]) * col[i];
            }
            *o = acc;
        }
    }

    /// `basis * basis'`, the projector onto the spanned subspace.
    pub fn projector(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }
}

/// Result of a (possibly truncated) singular value decomposition.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub u: DMatrix<f64>,
    /// Non-increasing, non-negative.
    pub singular_values: DVector<f64>,
    pub vt: DMatrix<f64>,
}

impl SvdResult {
    pub fn rank(&self) -> usize {
        let smax = self.singular_values.get(0).copied().unwrap_or(0.0);
        if smax <= 0.0 {
            return 0;
        }
        self.singular_values
            .iter()
            .filter(|&&s| s > smax * TOL.rank)
            .count()
    }

    /// `U * diag(S) * Vt`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let mut us = self.u.clone();
        for (j, s) in self.singular_values.iter().enumerate() {
            us.column_mut(j).scale_mut(*s);
        }
        us * &self.vt
    }
}

/// Subtracts per-column means; returns the centered matrix and the means.
pub fn center_columns(x: &DataMatrix) -> (DataMatrix, Vec<f64>) {
    let (m, d) = (x.rows(), x.cols());
    let mut mean = vec![0.0; d];
    for i in 0..m {
        for (j, v) in x.row(i).iter().enumerate() {
            mean[j] += v;
        }
    }
    for v in mean.iter_mut() {
        *v /= m as f64;
    }
    let mut values = Vec::with_capacity(m * d);
    for i in 0..m {
        for (j, v) in x.row(i).iter().enumerate() {
            values.push(v - mean[j]);
        }
    }
    let centered = DataMatrix {
        rows: m,
        cols: d,
        values,
    };
    (centered, mean)
}

/// Applies the transform to every row: `(X - 1*mean') * basis`.
pub fn apply_transform(x: &DataMatrix, t: &Transform) -> Result<DataMatrix> {
    apply_transform_k(x, t, t.k())
}

/// Same as [`apply_transform`], keeping only the first `k` output columns.
pub fn apply_transform_k(x: &DataMatrix, t: &Transform, k: usize) -> Result<DataMatrix> {
    if x.cols() != t.input_dim() {
        return Err(Error::DimensionMismatch {
            context: "apply_transform",
            expected: t.input_dim(),
            got: x.cols(),
        });
    }
    if k == 0 || k > t.k() {
        return Err(Error::invalid(format!(
            "cannot project onto {k} of {} basis columns",
            t.k()
        )));
    }
    let m = x.rows();
    let mut values = vec![0.0; m * k];
    for i in 0..m {
        t.project_row(x.row(i), k, &mut values[i * k..(i + 1) * k]);
    }
    Ok(DataMatrix {
        rows: m,
        cols: k,
        values,
    })
}

/// QR factorization returning a full set of orthonormal columns.
#[derive(Debug, Clone)]
pub struct QrOrtho {
    pub q: DMatrix<f64>,
    pub r: DMatrix<f64>,
    /// Columns of `q` that do not correspond to independent input columns
    /// (|r[j,j]| below the rank tolerance); they are arbitrary orthonormal
    /// completions of the range.
    pub padded_columns: Vec<usize>,
}

/// Householder QR of `a` (rows >= cols). `q` always has exactly `cols(a)`
/// orthonormal columns; exactly dependent input columns yield padded
/// directions, which are flagged.
pub fn qr_orthonormalize(a: &DMatrix<f64>) -> Result<QrOrtho> {
    let (m, n) = (a.nrows(), a.ncols());
    if m < n {
        return Err(Error::invalid(format!(
            "qr_orthonormalize requires rows >= cols, got {m} x {n}"
        )));
    }
    if n == 0 {
        return Ok(QrOrtho {
            q: DMatrix::zeros(m, 0),
            r: DMatrix::zeros(0, 0),
            padded_columns: Vec::new(),
        });
    }
    let qr = a.clone().qr();
    let q = qr.q();
    let r = qr.r();
    let scale = a.iter().fold(0.0f64, |acc, v| acc.max(v.abs())).max(1.0);
    let padded_columns = (0..n)
        .filter(|&j| r[(j, j)].abs() <= scale * (m as f64) * f64::EPSILON * 16.0)
        .collect();
    Ok(QrOrtho {
        q,
        r,
        padded_columns,
    })
}

/// Full (or truncated) SVD with singular values sorted non-increasing and a
/// deterministic sign convention: the largest-magnitude entry of each right
/// singular vector is positive.
pub fn svd(a: &DMatrix<f64>, truncate_to: Option<usize>) -> Result<SvdResult> {
    let (m, n) = (a.nrows(), a.ncols());
    let p = m.min(n);
    let decomp = a
        .clone()
        .try_svd(true, true, f64::EPSILON, 0)
        .ok_or(Error::SvdFailed)?;
    let u_raw = decomp.u.ok_or(Error::SvdFailed)?;
    let vt_raw = decomp.v_t.ok_or(Error::SvdFailed)?;
    let s_raw = decomp.singular_values;

    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&i, &j| s_raw[j].partial_cmp(&s_raw[i]).unwrap());

    let keep = truncate_to.unwrap_or(p);
    if keep == 0 || keep > p {
        return Err(Error::invalid(format!(
            "truncate_to must be in [1, {p}], got {keep}"
        )));
    }

    let mut u = DMatrix::zeros(m, keep);
    let mut vt = DMatrix::zeros(keep, n);
    let mut s = DVector::zeros(keep);
    for (dst, &src) in order.iter().take(keep).enumerate() {
        s[dst] = s_raw[src].max(0.0);
        u.set_column(dst, &u_raw.column(src));
        vt.set_row(dst, &vt_raw.row(src));
    }
    normalize_signs(&mut u, &mut vt);
    Ok(SvdResult {
        u,
        singular_values: s,
        vt,
    })
}

/// Flips paired singular vector signs so each right singular vector's
/// largest-magnitude entry (first such index on ties) is positive.
pub(crate) fn normalize_signs(u: &mut DMatrix<f64>, vt: &mut DMatrix<f64>) {
    for j in 0..vt.nrows() {
        let row = vt.row(j);
        let mut best = 0;
        let mut best_abs = -1.0;
        for (idx, v) in row.iter().enumerate() {
            if v.abs() > best_abs {
                best_abs = v.abs();
                best = idx;
            }
        }
        if vt[(j, best)] < 0.0 {
            vt.row_mut(j).neg_mut();
            if j < u.ncols() {
                u.column_mut(j).neg_mut();
            }
        }
    }
}

/// Flips basis column signs in place (largest-magnitude entry positive).
pub(crate) fn normalize_basis_signs(basis: &mut DMatrix<f64>) {
    for j in 0..basis.ncols() {
        let col = basis.column(j);
        let mut best = 0;
        let mut best_abs = -1.0;
        for (idx, v) in col.iter().enumerate() {
            if v.abs() > best_abs {
                best_abs = v.abs();
                best = idx;
            }
        }
        if basis[(best, j)] < 0.0 {
            basis.column_mut(j).neg_mut();
        }
    }
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0.0;
    for i in 0..a.len() {
        let d = a[i] - b[i];
        acc += d * d;
    }
    acc.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Prng;
    use proptest::prelude::*;

    fn random_matrix(rng: &mut Prng, m: usize, n: usize) -> DMatrix<f64> {
        DMatrix::from_fn(m, n, |_, _| rng.normal())
    }

    /// Random d x k matrix with orthonormal columns.
    pub(crate) fn random_orthonormal(rng: &mut Prng, d: usize, k: usize) -> DMatrix<f64> {
        let g = random_matrix(rng, d, k);
        qr_orthonormalize(&g).unwrap().q
    }

    #[test]
    fn center_small_example() {
        let x = DataMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let (c, mean) = center_columns(&x);
        assert_eq!(mean, vec![2.0, 3.0]);
        assert_eq!(c.row(0), &[-1.0, -1.0]);
        assert_eq!(c.row(1), &[1.0, 1.0]);
    }

    #[test]
    fn center_zero_matrix_unchanged() {
        let x = DataMatrix::from_vec(3, 2, vec![0.0; 6]).unwrap();
        let (c, mean) = center_columns(&x);
        assert_eq!(mean, vec![0.0, 0.0]);
        assert_eq!(c.values(), x.values());
    }

    #[test]
    fn center_single_row_is_zero() {
        let x = DataMatrix::from_rows(vec![vec![4.0, -1.0, 7.0]]).unwrap();
        let (c, mean) = center_columns(&x);
        assert_eq!(mean, vec![4.0, -1.0, 7.0]);
        assert!(c.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn column_sums_vanish_after_centering() {
        let mut rng = Prng::seed_from_u64(11);
        let x = DataMatrix::from_vec(40, 7, (0..280).map(|_| rng.normal() * 3.0).collect()).unwrap();
        let (c, _) = center_columns(&x);
        let max_abs = x.values().iter().fold(0.0f64, |a, v| a.max(v.abs()));
        for j in 0..7 {
            let s: f64 = (0..40).map(|i| c.row(i)[j]).sum();
            assert!(s.abs() <= TOL.centering * 40.0 * max_abs);
        }
    }

    #[test]
    fn apply_identity_is_noop() {
        let x = DataMatrix::from_rows(vec![vec![1.0, 2.0], vec![-1.0, 0.5]]).unwrap();
        let t = Transform::identity(2);
        let y = apply_transform(&x, &t).unwrap();
        assert_eq!(y.values(), x.values());
    }

    #[test]
    fn apply_axis_projection() {
        let x = DataMatrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let basis = DMatrix::from_column_slice(2, 1, &[1.0, 0.0]);
        let t = Transform::new(vec![0.0, 0.0], basis).unwrap();
        let y = apply_transform(&x, &t).unwrap();
        assert_eq!(y.values(), &[1.0, 0.0]);
    }

    #[test]
    fn apply_rejects_dimension_mismatch() {
        let x = DataMatrix::from_rows(vec![vec![1.0, 2.0, 3.0]]).unwrap();
        let t = Transform::identity(2);
        assert!(matches!(
            apply_transform(&x, &t),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn full_orthonormal_basis_preserves_distances() {
        let mut rng = Prng::seed_from_u64(5);
        let x = DataMatrix::from_vec(5, 4, (0..20).map(|_| rng.normal()).collect()).unwrap();
        let q = random_orthonormal(&mut rng, 4, 4);
        let t = Transform::new(vec![0.0; 4], q).unwrap();
        let y = apply_transform(&x, &t).unwrap();
        for i in 0..5 {
            for j in (i + 1)..5 {
                let before = euclidean(x.row(i), x.row(j));
                let after = euclidean(y.row(i), y.row(j));
                assert!((before - after).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn qr_of_orthonormal_input_is_identity_up_to_signs() {
        let mut rng = Prng::seed_from_u64(9);
        let a = random_orthonormal(&mut rng, 6, 3);
        let qr = qr_orthonormalize(&a).unwrap();
        assert!(qr.padded_columns.is_empty());
        // R must be diagonal with +-1 entries.
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((qr.r[(i, j)].abs() - expect).abs() < 1e-10);
            }
        }
        // Q equals A up to column signs.
        for j in 0..3 {
            let dot: f64 = a.column(j).dot(&qr.q.column(j));
            assert!((dot.abs() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn qr_scaled_unit_columns() {
        let a = DMatrix::from_row_slice(3, 2, &[2.0, 0.0, 0.0, 0.0, 0.0, 3.0]);
        let qr = qr_orthonormalize(&a).unwrap();
        assert!(qr.padded_columns.is_empty());
        assert!((qr.r[(0, 0)].abs() - 2.0).abs() < 1e-12);
        assert!((qr.r[(1, 1)].abs() - 3.0).abs() < 1e-12);
        let back = &qr.q * &qr.r;
        assert!((back - &a).norm() < 1e-8);
    }

    #[test]
    fn qr_random_is_orthonormal() {
        let mut rng = Prng::seed_from_u64(2);
        let a = random_matrix(&mut rng, 20, 5);
        let qr = qr_orthonormalize(&a).unwrap();
        let gram = qr.q.transpose() * &qr.q;
        assert!((gram - DMatrix::identity(5, 5)).norm() < 1e-10);
        let back = &qr.q * &qr.r;
        assert!((back - &a).norm() <= 1e-8 * a.norm().max(1.0));
    }

    #[test]
    fn qr_flags_dependent_columns() {
        let mut a = DMatrix::zeros(4, 3);
        a[(0, 0)] = 1.0;
        a[(1, 1)] = 1.0;
        // Column 2 duplicates column 0.
        a[(0, 2)] = 1.0;
        let qr = qr_orthonormalize(&a).unwrap();
        assert_eq!(qr.padded_columns, vec![2]);
        let gram = qr.q.transpose() * &qr.q;
        assert!((gram - DMatrix::identity(3, 3)).norm() < 1e-10);
    }

    #[test]
    fn svd_of_diagonal() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 2.0, 1.0]));
        let r = svd(&a, None).unwrap();
        assert!((r.singular_values[0] - 3.0).abs() < 1e-12);
        assert!((r.singular_values[1] - 2.0).abs() < 1e-12);
        assert!((r.singular_values[2] - 1.0).abs() < 1e-12);
        assert!((r.reconstruct() - &a).norm() < 1e-10);
    }

    #[test]
    fn svd_rank_one_outer_product() {
        let u = DVector::from_vec(vec![1.0, 2.0, -2.0]);
        let v = DVector::from_vec(vec![3.0, 0.0, 4.0, 0.0]);
        let a = &u * v.transpose();
        let r = svd(&a, None).unwrap();
        assert!((r.singular_values[0] - u.norm() * v.norm()).abs() < 1e-10);
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn svd_matches_gram_eigendecomposition() {
        let mut rng = Prng::seed_from_u64(17);
        let a = random_matrix(&mut rng, 8, 6);
        let r = svd(&a, None).unwrap();
        // Independent oracle: eigenvalues of A'A are squared singular values.
        let gram = a.transpose() * &a;
        let mut eigs: Vec<f64> = gram.symmetric_eigen().eigenvalues.iter().copied().collect();
        eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (s, lam) in r.singular_values.iter().zip(eigs.iter()) {
            assert!((s * s - lam).abs() <= 1e-6 * lam.abs().max(1.0));
        }
        assert!((r.reconstruct() - &a).norm() <= TOL.reconstruction * a.norm());
    }

    #[test]
    fn svd_truncation_is_optimal_rank_t() {
        let mut rng = Prng::seed_from_u64(23);
        let a = random_matrix(&mut rng, 10, 7);
        let full = svd(&a, None).unwrap();
        let t = 3;
        let trunc = svd(&a, Some(t)).unwrap();
        let err = (trunc.reconstruct() - &a).norm();
        let optimal: f64 = full
            .singular_values
            .iter()
            .skip(t)
            .map(|s| s * s)
            .sum::<f64>()
            .sqrt();
        assert!((err - optimal).abs() <= 1e-6 * a.norm());
    }

    #[test]
    fn transform_rejects_non_orthonormal_basis() {
        let basis = DMatrix::from_column_slice(2, 1, &[1.0, 1.0]);
        assert!(Transform::new(vec![0.0, 0.0], basis).is_err());
    }

    #[test]
    fn truncated_transform_is_valid() {
        let mut rng = Prng::seed_from_u64(31);
        let q = random_orthonormal(&mut rng, 6, 4);
        let t = Transform::new(vec![0.0; 6], q).unwrap();
        for k in 1..=4 {
            let tk = t.truncated(k).unwrap();
            assert_eq!(tk.k(), k);
        }
        assert!(t.truncated(0).is_err());
        assert!(t.truncated(5).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        /// Projection onto orthonormal columns never expands distances.
        #[test]
        fn projection_is_contractive(seed in 0u64..1000, k in 1usize..5) {
            let mut rng = Prng::seed_from_u64(seed);
            let d = 6;
            let x = DataMatrix::from_vec(8, d, (0..48).map(|_| rng.normal()).collect()).unwrap();
            let q = random_orthonormal(&mut rng, d, k);
            let t = Transform::new(vec![0.0; d], q).unwrap();
            let y = apply_transform(&x, &t).unwrap();
            for i in 0..8 {
                for j in (i + 1)..8 {
                    let before = euclidean(x.row(i), x.row(j));
                    let after = euclidean(y.row(i), y.row(j));
                    prop_assert!(after <= before + TOL.contraction_slack);
                }
            }
        }

        /// Changing the mean shifts all projected points identically, so
        /// pairwise distances are unchanged.
        #[test]
        fn mean_translation_equivariance(seed in 0u64..1000) {
            let mut rng = Prng::seed_from_u64(seed);
            let d = 5;
            let x = DataMatrix::from_vec(6, d, (0..30).map(|_| rng.normal()).collect()).unwrap();
            let q = random_orthonormal(&mut rng, d, 3);
            let mean: Vec<f64> = (0..d).map(|_| rng.normal()).collect();
            let t0 = Transform::new(vec![0.0; d], q.clone()).unwrap();
            let t1 = Transform::new(mean, q).unwrap();
            let y0 = apply_transform(&x, &t0).unwrap();
            let y1 = apply_transform(&x, &t1).unwrap();
            let shift: Vec<f64> = (0..3).map(|j| y0.row(0)[j] - y1.row(0)[j]).collect();
            for i in 0..6 {
                for j in 0..3 {
                    prop_assert!((y0.row(i)[j] - y1.row(i)[j] - shift[j]).abs() < 1e-9);
                }
            }
        }
    }
}
