//! Downstream analytics operators and the dimension-to-runtime cost model.
//!
//! The optimizer's stopping rule needs `C_m(k)`: predicted downstream
//! runtime as a function of output dimension. [`CostModel`] is a monotone
//! piecewise-linear interpolant over profiled knots, amortized over a query
//! count. [`fit_cost_model`] profiles a task (1-NN or DBSCAN) at a few
//! dimensions and builds the model; isotonic regression irons out timing
//! jitter so monotonicity holds by construction.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::matrix::{euclidean, DataMatrix};

/// Monotone map from output dimension to downstream seconds.
///
/// Knots store per-query seconds; [`CostModel::evaluate`] scales by the
/// query multiplier `q`, so the model predicts the whole workload.
#[derive(Debug, Clone, PartialEq)]
pub struct CostModel {
    knots: Vec<(usize, f64)>,
    query_multiplier: usize,
}

impl CostModel {
    /// Builds a model from raw `(k, per-query seconds)` knots. Knots must
    /// have strictly increasing `k` and positive seconds; non-monotone
    /// seconds are corrected by isotonic regression (pool adjacent
    /// violators).
    pub fn new(mut knots: Vec<(usize, f64)>, query_multiplier: usize) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::invalid("cost model needs at least one knot"));
        }
        if query_multiplier == 0 {
            return Err(Error::invalid("query multiplier must be >= 1"));
        }
        knots.sort_by_key(|&(k, _)| k);
        for w in knots.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::invalid(format!("duplicate knot k={}", w[0].0)));
            }
        }
        if knots.iter().any(|&(_, s)| !(s > 0.0) || !s.is_finite()) {
            return Err(Error::invalid("knot seconds must be positive and finite"));
        }
        let seconds: Vec<f64> = knots.iter().map(|&(_, s)| s).collect();
        let adjusted = isotonic(&seconds);
        for (knot, s) in knots.iter_mut().zip(adjusted) {
            knot.1 = s;
        }
        Ok(CostModel {
            knots,
            query_multiplier,
        })
    }

    pub fn knots(&self) -> &[(usize, f64)] {
        &self.knots
    }

    pub fn query_multiplier(&self) -> usize {
        self.query_multiplier
    }

    pub fn with_query_multiplier(&self, q: usize) -> Result<Self> {
        CostModel::new(self.knots.clone(), q)
    }

    /// Predicted workload seconds at (possibly fractional) dimension `k`:
    /// piecewise-linear between knots, constant below the first, linear
    /// continuation above the last, times the query multiplier.
    pub fn evaluate(&self, k: f64) -> f64 {
        let per_query = self.evaluate_per_query(k);
        per_query * self.query_multiplier as f64
    }

    fn evaluate_per_query(&self, k: f64) -> f64 {
        let first = self.knots[0];
        let last = self.knots[self.knots.len() - 1];
        if k <= first.0 as f64 {
            return first.1;
        }
        if k >= last.0 as f64 {
            if self.knots.len() == 1 {
                return last.1;
            }
            let prev = self.knots[self.knots.len() - 2];
            let slope =
                ((last.1 - prev.1) / (last.0 as f64 - prev.0 as f64)).max(0.0);
            return last.1 + slope * (k - last.0 as f64);
        }
        let idx = self.knots.partition_point(|&(kk, _)| (kk as f64) <= k);
        let (k0, s0) = self.knots[idx - 1];
        let (k1, s1) = self.knots[idx];
        let w = (k - k0 as f64) / (k1 as f64 - k0 as f64);
        s0 + w * (s1 - s0)
    }

    /// Serializes as a line-oriented text file:
    /// `costmodel v1 task=<name> q=<int>` then `k<TAB>seconds` rows.
    pub fn write(&self, path: &Path, task: &str) -> Result<()> {
        let mut out = format!("costmodel v1 task={task} q={}\n", self.query_multiplier);
        for &(k, s) in &self.knots {
            let _ = writeln!(out, "{k}\t{s:.17e}");
        }
        fs::write(path, out).map_err(|e| Error::io(path, e))
    }

    /// Reads a cost-model file; returns the model and its task name.
    pub fn read(path: &Path) -> Result<(Self, String)> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            message: "empty cost-model file".into(),
        })?;
        let mut task = None;
        let mut q = None;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("costmodel") || parts.next() != Some("v1") {
            return Err(Error::Parse {
                line: 1,
                message: "expected `costmodel v1` header".into(),
            });
        }
        for p in parts {
            if let Some(t) = p.strip_prefix("task=") {
                task = Some(t.to_string());
            } else if let Some(v) = p.strip_prefix("q=") {
                q = Some(v.parse::<usize>().map_err(|_| Error::Parse {
                    line: 1,
                    message: format!("bad query multiplier {v:?}"),
                })?);
            }
        }
        let (task, q) = match (task, q) {
            (Some(t), Some(q)) => (t, q),
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    message: "header must carry task= and q=".into(),
                })
            }
        };
        let mut knots = Vec::new();
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut fields = line.split('\t');
            let bad = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let k = fields
                .next()
                .and_then(|f| f.trim().parse::<usize>().ok())
                .ok_or_else(|| bad(format!("bad knot line {line:?}")))?;
            let s = fields
                .next()
                .and_then(|f| f.trim().parse::<f64>().ok())
                .ok_or_else(|| bad(format!("bad knot line {line:?}")))?;
            knots.push((k, s));
        }
        Ok((CostModel::new(knots, q)?, task))
    }
}

/// Free-function spelling of [`CostModel::evaluate`].
pub fn evaluate_cost(model: &CostModel, k: f64) -> f64 {
    model.evaluate(k)
}

/// Pool-adjacent-violators: least-squares non-decreasing fit.
fn isotonic(values: &[f64]) -> Vec<f64> {
    // Blocks of (sum, count) merged whenever means would decrease.
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(values.len());
    for &v in values {
        blocks.push((v, 1));
        while blocks.len() >= 2 {
            let (s1, n1) = blocks[blocks.len() - 1];
            let (s0, n0) = blocks[blocks.len() - 2];
            if s0 / n0 as f64 > s1 / n1 as f64 {
                blocks.pop();
                blocks.pop();
                blocks.push((s0 + s1, n0 + n1));
            } else {
                break;
            }
        }
    }
    let mut out = Vec::with_capacity(values.len());
    for (s, n) in blocks {
        let mean = s / n as f64;
        out.extend(std::iter::repeat(mean).take(n));
    }
    out
}

/// Task profiled by [`fit_cost_model`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Knn,
    Dbscan,
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Knn => "knn",
            Task::Dbscan => "dbscan",
        }
    }
}

/// Labeled points a nearest-neighbor query runs against.
#[derive(Debug, Clone)]
pub struct KnnIndex {
    points: DataMatrix,
    labels: Vec<String>,
}

impl KnnIndex {
    pub fn new(points: DataMatrix, labels: Vec<String>) -> Result<Self> {
        if labels.len() != points.rows() {
            return Err(Error::DimensionMismatch {
                context: "KnnIndex labels",
                expected: points.rows(),
                got: labels.len(),
            });
        }
        Ok(KnnIndex { points, labels })
    }

    pub fn points(&self) -> &DataMatrix {
        &self.points
    }
}

/// 1-nearest-neighbor labels for each query row (brute force, ties broken
/// by lowest index-row number).
pub fn knn_classify(index: &KnnIndex, queries: &DataMatrix) -> Result<Vec<String>> {
    if queries.cols() != index.points.cols() {
        return Err(Error::DimensionMismatch {
            context: "knn_classify",
            expected: index.points.cols(),
            got: queries.cols(),
        });
    }
    let mut labels = Vec::with_capacity(queries.rows());
    for qi in 0..queries.rows() {
        let q = queries.row(qi);
        let mut best = 0usize;
        let mut best_dist = f64::INFINITY;
        for i in 0..index.points.rows() {
            let d = euclidean(q, index.points.row(i));
            if d < best_dist {
                best_dist = d;
                best = i;
            }
        }
        labels.push(index.labels[best].clone());
    }
    Ok(labels)
}

/// DBSCAN cluster assignment for one row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterAssignment {
    Noise,
    Cluster(usize),
}

/// Density-based clustering with Euclidean eps-neighborhoods. Deterministic
/// for a fixed row order: seeds are expanded in row order and clusters are
/// numbered in discovery order.
pub fn dbscan(data: &DataMatrix, eps: f64, min_pts: usize) -> Result<Vec<ClusterAssignment>> {
    if eps <= 0.0 {
        return Err(Error::invalid("eps must be > 0"));
    }
    if min_pts == 0 {
        return Err(Error::invalid("min_pts must be >= 1"));
    }
    let m = data.rows();
    let neighbors = |i: usize| -> Vec<usize> {
        (0..m)
            .filter(|&j| euclidean(data.row(i), data.row(j)) <= eps)
            .collect()
    };
    let mut assignment = vec![None::<ClusterAssignment>; m];
    let mut next_cluster = 0usize;
    for i in 0..m {
        if assignment[i].is_some() {
            continue;
        }
        let seed_neighbors = neighbors(i);
        if seed_neighbors.len() < min_pts {
            assignment[i] = Some(ClusterAssignment::Noise);
            continue;
        }
        let cluster = next_cluster;
        next_cluster += 1;
        assignment[i] = Some(ClusterAssignment::Cluster(cluster));
        let mut frontier = std::collections::VecDeque::from(seed_neighbors);
        while let Some(j) = frontier.pop_front() {
            match assignment[j] {
                Some(ClusterAssignment::Cluster(_)) => continue,
                Some(ClusterAssignment::Noise) | None => {
                    let was_unvisited = assignment[j].is_none();
                    assignment[j] = Some(ClusterAssignment::Cluster(cluster));
                    if was_unvisited {
                        let nn = neighbors(j);
                        if nn.len() >= min_pts {
                            frontier.extend(nn);
                        }
                    }
                }
            }
        }
    }
    Ok(assignment.into_iter().map(|a| a.unwrap()).collect())
}

/// Profiles `task` on `representative` data truncated to each dimension in
/// `dims`, timing `q` queries per run and taking the median of
/// `repetitions`; returns the fitted isotonic cost model with per-query
/// knots and multiplier `q`.
pub fn fit_cost_model(
    task: Task,
    representative: &DataMatrix,
    dims: &[usize],
    q: usize,
    repetitions: usize,
) -> Result<CostModel> {
    if dims.is_empty() {
        return Err(Error::invalid("dims must be non-empty"));
    }
    if q == 0 || repetitions == 0 {
        return Err(Error::invalid("q and repetitions must be >= 1"));
    }
    let mut dims = dims.to_vec();
    dims.sort_unstable();
    dims.dedup();
    if *dims.last().unwrap() > representative.cols() {
        return Err(Error::invalid(format!(
            "dimension {} exceeds representative width {}",
            dims.last().unwrap(),
            representative.cols()
        )));
    }
    let mut knots = Vec::with_capacity(dims.len());
    for &k in &dims {
        let truncated = truncate_columns(representative, k);
        let mut times = Vec::with_capacity(repetitions);
        for _ in 0..repetitions {
            let started = Instant::now();
            match task {
                Task::Knn => {
                    // black_box keeps the optimizer from deleting the timed
                    // work.
                    std::hint::black_box(run_knn_queries(std::hint::black_box(&truncated), q));
                }
                Task::Dbscan => {
                    let eps = 0.5 * (k as f64).sqrt();
                    let _ = dbscan(&truncated, eps, 4)?;
                }
            }
            times.push(started.elapsed().as_secs_f64());
        }
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = times[times.len() / 2];
        let per_query = (median / q as f64).max(1e-12);
        knots.push((k, per_query));
    }
    CostModel::new(knots, q)
}

fn truncate_columns(x: &DataMatrix, k: usize) -> DataMatrix {
    let mut values = Vec::with_capacity(x.rows() * k);
    for i in 0..x.rows() {
        values.extend_from_slice(&x.row(i)[..k]);
    }
    DataMatrix::from_vec(x.rows(), k, values).expect("truncation preserves validity")
}

/// Runs `q` brute-force queries, cycling through the index's own rows.
fn run_knn_queries(index_points: &DataMatrix, q: usize) -> f64 {
    let m = index_points.rows();
    let mut sink = 0.0;
    for qi in 0..q {
        let query = index_points.row(qi % m);
        let mut best = f64::INFINITY;
        for i in 0..m {
            let d = euclidean(query, index_points.row(i));
            if d < best {
                best = d;
            }
        }
        sink += best;
    }
    sink
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Prng;
    use crate::test_util::random_data;

    #[test]
    fn cost_interpolates_between_knots() {
        let model = CostModel::new(vec![(2, 10.0), (4, 20.0)], 1).unwrap();
        assert!((model.evaluate(3.0) - 15.0).abs() < 1e-12);
    }

    #[test]
    fn isotonic_adjustment_enforces_monotonicity() {
        let model = CostModel::new(vec![(4, 20.0), (8, 18.0)], 1).unwrap();
        assert!(model.evaluate(8.0) >= model.evaluate(4.0));
        // PAVA pools the violating pair to its mean.
        assert!((model.evaluate(4.0) - 19.0).abs() < 1e-12);
    }

    #[test]
    fn extrapolation_rules() {
        let model = CostModel::new(vec![(2, 10.0), (4, 20.0)], 1).unwrap();
        assert_eq!(model.evaluate(1.0), 10.0);
        // Above the last knot: linear continuation of the last segment.
        assert!((model.evaluate(6.0) - 30.0).abs() < 1e-12);
        let single = CostModel::new(vec![(3, 7.0)], 1).unwrap();
        assert_eq!(single.evaluate(10.0), 7.0);
    }

    #[test]
    fn query_multiplier_scales_output() {
        let model = CostModel::new(vec![(2, 10.0), (4, 20.0)], 5).unwrap();
        assert!((model.evaluate(3.0) - 75.0).abs() < 1e-12);
    }

    #[test]
    fn evaluate_is_monotone_everywhere() {
        let model =
            CostModel::new(vec![(1, 5.0), (4, 3.0), (8, 9.0), (16, 8.5), (32, 20.0)], 2).unwrap();
        let mut prev = 0.0;
        for i in 0..500 {
            let k = 0.5 + i as f64 * 0.1;
            let v = model.evaluate(k);
            assert!(v + 1e-12 >= prev, "k={k}");
            prev = v;
        }
    }

    #[test]
    fn model_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("knn.cost");
        let model = CostModel::new(vec![(1, 0.001), (8, 0.0042), (64, 0.03)], 50).unwrap();
        model.write(&path, "knn").unwrap();
        let (back, task) = CostModel::read(&path).unwrap();
        assert_eq!(task, "knn");
        assert_eq!(back, model);
    }

    #[test]
    fn model_rejects_bad_knots() {
        assert!(CostModel::new(vec![], 1).is_err());
        assert!(CostModel::new(vec![(1, 1.0), (1, 2.0)], 1).is_err());
        assert!(CostModel::new(vec![(1, 0.0)], 1).is_err());
        assert!(CostModel::new(vec![(1, 1.0)], 0).is_err());
    }

    #[test]
    fn knn_exact_match_returns_its_label() {
        let points = DataMatrix::from_rows(vec![vec![0.0, 0.0], vec![5.0, 5.0]]).unwrap();
        let index = KnnIndex::new(points, vec!["a".into(), "b".into()]).unwrap();
        let queries = DataMatrix::from_rows(vec![vec![5.0, 5.0]]).unwrap();
        assert_eq!(knn_classify(&index, &queries).unwrap(), vec!["b"]);
    }

    #[test]
    fn knn_one_dimensional_boundary() {
        let points = DataMatrix::from_rows(vec![vec![0.0], vec![10.0]]).unwrap();
        let index = KnnIndex::new(points, vec!["A".into(), "B".into()]).unwrap();
        let queries = DataMatrix::from_rows(vec![vec![4.0], vec![6.0]]).unwrap();
        assert_eq!(knn_classify(&index, &queries).unwrap(), vec!["A", "B"]);
    }

    #[test]
    fn knn_tie_breaks_to_lowest_row() {
        let points =
            DataMatrix::from_rows(vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let index =
            KnnIndex::new(points, vec!["first".into(), "mirror".into(), "dup".into()]).unwrap();
        let queries = DataMatrix::from_rows(vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        // Query 0 is equidistant from rows 0 and 1; query 1 matches rows 0
        // and 2 exactly.
        assert_eq!(
            knn_classify(&index, &queries).unwrap(),
            vec!["first", "first"]
        );
    }

    #[test]
    fn knn_matches_independent_loop() {
        let mut rng = Prng::seed_from_u64(1);
        let points = random_data(&mut rng, 50, 4);
        let labels: Vec<String> = (0..50).map(|i| format!("c{}", i % 5)).collect();
        let queries = random_data(&mut rng, 20, 4);
        let index = KnnIndex::new(points.clone(), labels.clone()).unwrap();
        let got = knn_classify(&index, &queries).unwrap();
        for (qi, got_label) in got.iter().enumerate() {
            let mut best = usize::MAX;
            let mut best_d = f64::INFINITY;
            for i in 0..50 {
                let mut d = 0.0;
                for c in 0..4 {
                    let diff = queries.row(qi)[c] - points.row(i)[c];
                    d += diff * diff;
                }
                if d < best_d {
                    best_d = d;
                    best = i;
                }
            }
            assert_eq!(got_label, &labels[best]);
        }
    }

    #[test]
    fn knn_empty_query_dim_mismatch_is_error() {
        let points = DataMatrix::from_rows(vec![vec![0.0, 0.0]]).unwrap();
        let index = KnnIndex::new(points, vec!["x".into()]).unwrap();
        let queries = DataMatrix::from_rows(vec![vec![1.0]]).unwrap();
        assert!(knn_classify(&index, &queries).is_err());
    }

    #[test]
    fn dbscan_two_blobs() {
        let mut rng = Prng::seed_from_u64(2);
        let mut rows = Vec::new();
        for _ in 0..20 {
            rows.push(vec![rng.normal() * 0.05, rng.normal() * 0.05]);
        }
        for _ in 0..20 {
            rows.push(vec![10.0 + rng.normal() * 0.05, rng.normal() * 0.05]);
        }
        let data = DataMatrix::from_rows(rows).unwrap();
        let got = dbscan(&data, 1.0, 3).unwrap();
        let c0 = got[0];
        let c1 = got[20];
        assert_ne!(c0, c1);
        assert!(got[..20].iter().all(|&c| c == c0));
        assert!(got[20..].iter().all(|&c| c == c1));
        assert!(!got.contains(&ClusterAssignment::Noise));
    }

    #[test]
    fn dbscan_min_pts_above_m_is_all_noise() {
        let mut rng = Prng::seed_from_u64(3);
        let data = random_data(&mut rng, 10, 3);
        let got = dbscan(&data, 100.0, 11).unwrap();
        assert!(got.iter().all(|&c| c == ClusterAssignment::Noise));
    }

    #[test]
    fn dbscan_matches_reference_implementation() {
        let mut rng = Prng::seed_from_u64(4);
        let data = random_data(&mut rng, 40, 2);
        let eps = 0.8;
        let min_pts = 3;
        let got = dbscan(&data, eps, min_pts).unwrap();

        // Reference: connected components over core points, border points
        // attached to any reachable core cluster.
        let m = data.rows();
        let neighbor = |i: usize, j: usize| euclidean(data.row(i), data.row(j)) <= eps;
        let core: Vec<bool> = (0..m)
            .map(|i| (0..m).filter(|&j| neighbor(i, j)).count() >= min_pts)
            .collect();
        let mut comp = vec![usize::MAX; m];
        let mut next = 0;
        for i in 0..m {
            if !core[i] || comp[i] != usize::MAX {
                continue;
            }
            let mut stack = vec![i];
            comp[i] = next;
            while let Some(u) = stack.pop() {
                for v in 0..m {
                    if core[v] && comp[v] == usize::MAX && neighbor(u, v) {
                        comp[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        for i in 0..m {
            match got[i] {
                ClusterAssignment::Noise => {
                    assert!(!core[i]);
                    assert!((0..m).all(|j| !core[j] || !neighbor(i, j)));
                }
                ClusterAssignment::Cluster(_) => {
                    if core[i] {
                        // Core structure must match up to relabeling: all
                        // same-component cores share a cluster id.
                        for j in 0..m {
                            if core[j] && comp[j] == comp[i] {
                                assert_eq!(got[i], got[j]);
                            }
                        }
                    } else {
                        // Border point: must touch a core point of its
                        // cluster.
                        assert!((0..m).any(|j| core[j] && got[j] == got[i] && neighbor(i, j)));
                    }
                }
            }
        }
    }

    #[test]
    fn dbscan_core_structure_invariant_under_permutation() {
        let mut rng = Prng::seed_from_u64(5);
        let data = random_data(&mut rng, 30, 2);
        let eps = 0.9;
        let min_pts = 3;
        let base = dbscan(&data, eps, min_pts).unwrap();

        let perm: Vec<usize> = {
            let mut p = rng.sample_indices(30, 30);
            p.reverse();
            p
        };
        let permuted = data.select_rows(&perm).unwrap();
        let shuffled = dbscan(&permuted, eps, min_pts).unwrap();

        let m = data.rows();
        let neighbor = |i: usize, j: usize| euclidean(data.row(i), data.row(j)) <= eps;
        let core: Vec<bool> = (0..m)
            .map(|i| (0..m).filter(|&j| neighbor(i, j)).count() >= min_pts)
            .collect();
        // Two core points share a cluster in the base run iff their images
        // share one in the permuted run.
        for a in 0..m {
            for b in 0..m {
                if core[a] && core[b] {
                    let same_base = base[a] == base[b];
                    let (pa, pb) = (
                        perm.iter().position(|&x| x == a).unwrap(),
                        perm.iter().position(|&x| x == b).unwrap(),
                    );
                    let same_perm = shuffled[pa] == shuffled[pb];
                    assert_eq!(same_base, same_perm);
                }
            }
        }
    }

    #[test]
    fn fitted_knn_cost_grows_linearly_in_k() {
        let mut rng = Prng::seed_from_u64(6);
        let data = random_data(&mut rng, 1500, 256);
        let dims = [16, 64, 128, 256];
        let model = fit_cost_model(Task::Knn, &data, &dims, 40, 3).unwrap();
        let ys: Vec<f64> = model.knots().iter().map(|&(_, s)| s).collect();
        let xs: Vec<f64> = model.knots().iter().map(|&(k, _)| k as f64).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let slope = sxy / sxx;
        assert!(slope > 0.0, "knots {ys:?}");
        let ss_res: f64 = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| {
                let pred = my + slope * (x - mx);
                (y - pred) * (y - pred)
            })
            .sum();
        let ss_tot: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
        let r2 = 1.0 - ss_res / ss_tot;
        assert!(r2 >= 0.9, "R^2 = {r2}, knots {ys:?}");
    }
}
