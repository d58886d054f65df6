//! Dataset ingestion, synthetic generation, and report emission.
//!
//! Delimited files follow the classification-archive convention: one row
//! per point, first field the class label, the rest real-valued
//! coordinates; tab or comma delimited (auto-detected).
//!
//! Synthetic data is `X = G * P + E`: latent Gaussian rows `G` scaled by a
//! chosen spectrum, a random projection `P` with orthonormal rows, plus
//! isotropic noise. Draws come from the pinned generator in [`crate::rng`]
//! in a documented order (G column-major, then P, then E row-major), so a
//! spec is bit-reproducible anywhere IEEE-754 doubles behave the same.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::driver::{DropResult, IterationRecord};
use crate::error::{Error, Result};
use crate::matrix::{qr_orthonormalize, DataMatrix};
use crate::rng::Prng;
use crate::search::SearchOutcome;
use crate::tlb::TlbEstimate;

/// Class labels plus the data matrix.
#[derive(Debug, Clone)]
pub struct LabeledDataset {
    pub labels: Vec<String>,
    pub x: DataMatrix,
}

impl LabeledDataset {
    pub fn new(labels: Vec<String>, x: DataMatrix) -> Result<Self> {
        if labels.len() != x.rows() {
            return Err(Error::DimensionMismatch {
                context: "LabeledDataset",
                expected: x.rows(),
                got: labels.len(),
            });
        }
        Ok(LabeledDataset { labels, x })
    }
}

/// Singular-value profile of the latent block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Spectrum {
    /// `scale_j = ratio^j`, ratio in (0, 1).
    Geometric { ratio: f64 },
    /// `scale_j = (r - j) / r`: linear decay from 1 to 1/r.
    Linear,
    /// Explicit positive scales, one per intrinsic dimension.
    Custom(Vec<f64>),
}

impl Spectrum {
    fn scales(&self, r: usize) -> Result<Vec<f64>> {
        match self {
            Spectrum::Geometric { ratio } => {
                if !(*ratio > 0.0 && *ratio < 1.0) {
                    return Err(Error::invalid("geometric ratio must be in (0, 1)"));
                }
                Ok((0..r).map(|j| ratio.powi(j as i32)).collect())
            }
            Spectrum::Linear => Ok((0..r).map(|j| (r - j) as f64 / r as f64).collect()),
            Spectrum::Custom(scales) => {
                if scales.len() != r {
                    return Err(Error::invalid(format!(
                        "custom spectrum needs {r} scales, got {}",
                        scales.len()
                    )));
                }
                if scales.iter().any(|s| !(*s > 0.0) || !s.is_finite()) {
                    return Err(Error::invalid("custom scales must be positive"));
                }
                Ok(scales.clone())
            }
        }
    }
}

/// Recipe for a synthetic dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub m: usize,
    pub d: usize,
    pub intrinsic_dim: usize,
    pub spectrum: Spectrum,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    fn validate(&self) -> Result<()> {
        if self.m == 0 || self.d == 0 {
            return Err(Error::invalid("m and d must be >= 1"));
        }
        if self.intrinsic_dim == 0 || self.intrinsic_dim > self.d {
            return Err(Error::invalid("intrinsic_dim must be in [1, d]"));
        }
        if !(self.noise_sigma >= 0.0) {
            return Err(Error::invalid("noise_sigma must be >= 0"));
        }
        Ok(())
    }
}

/// Generates `X = G * P + E` per the spec; bit-identical across runs for a
/// fixed spec.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<DataMatrix> {
    spec.validate()?;
    let mut rng = Prng::seed_from_u64(spec.seed);
    generate_latent_model(spec, &mut rng)
}

/// Synthetic labeled data: latent Gaussian blobs at `n_classes` separated
/// centers (label = blob id), projected and perturbed like
/// [`generate_synthetic`].
pub fn generate_labeled_blobs(
    spec: &SyntheticSpec,
    n_classes: usize,
    separation: f64,
) -> Result<LabeledDataset> {
    spec.validate()?;
    if n_classes == 0 {
        return Err(Error::invalid("need at least one class"));
    }
    let mut rng = Prng::seed_from_u64(spec.seed);
    let r = spec.intrinsic_dim;
    let mut centers = vec![0.0; n_classes * r];
    for c in centers.iter_mut() {
        *c = rng.normal() * separation;
    }
    let scales = spec.spectrum.scales(r)?;
    let mut g = DMatrix::zeros(spec.m, r);
    for j in 0..r {
        for i in 0..spec.m {
            let class = i % n_classes;
            g[(i, j)] = centers[class * r + j] + rng.normal() * scales[j];
        }
    }
    let p = random_row_orthonormal(&mut rng, r, spec.d)?;
    let mut x = g * p;
    if spec.noise_sigma > 0.0 {
        for i in 0..spec.m {
            for j in 0..spec.d {
                x[(i, j)] += rng.normal() * spec.noise_sigma;
            }
        }
    }
    let labels = (0..spec.m).map(|i| (i % n_classes).to_string()).collect();
    LabeledDataset::new(labels, DataMatrix::from_dmatrix(&x)?)
}

fn generate_latent_model(spec: &SyntheticSpec, rng: &mut Prng) -> Result<DataMatrix> {
    let r = spec.intrinsic_dim;
    let scales = spec.spectrum.scales(r)?;
    // G: column-by-column scaled normals.
    let mut g = DMatrix::zeros(spec.m, r);
    for j in 0..r {
        for i in 0..spec.m {
            g[(i, j)] = rng.normal() * scales[j];
        }
    }
    let p = random_row_orthonormal(rng, r, spec.d)?;
    let mut x = &g * &p;
    // E: row-major noise.
    if spec.noise_sigma > 0.0 {
        for i in 0..spec.m {
            for j in 0..spec.d {
                x[(i, j)] += rng.normal() * spec.noise_sigma;
            }
        }
    }
    DataMatrix::from_dmatrix(&x)
}

/// Random r x d matrix with orthonormal rows.
fn random_row_orthonormal(rng: &mut Prng, r: usize, d: usize) -> Result<DMatrix<f64>> {
    let mut gauss = DMatrix::zeros(d, r);
    for j in 0..r {
        for i in 0..d {
            gauss[(i, j)] = rng.normal();
        }
    }
    Ok(qr_orthonormalize(&gauss)?.q.transpose())
}

/// Parses a delimited dataset file: first field per row is the label, the
/// rest are coordinates. Delimiter auto-detected (tab if the first data
/// line contains one, else comma). Line numbers in errors are 1-based.
pub fn parse_delimited(path: &Path) -> Result<LabeledDataset> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_delimited_str(&text)
}

pub fn parse_delimited_str(text: &str) -> Result<LabeledDataset> {
    let mut labels = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width: Option<usize> = None;
    let mut delimiter: Option<char> = None;
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let delim = *delimiter.get_or_insert_with(|| if line.contains('\t') { '\t' } else { ',' });
        let fields: Vec<&str> = line.split(delim).collect();
        if fields.len() < 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected at least 2 fields, got {}", fields.len()),
            });
        }
        match width {
            None => width = Some(fields.len()),
            Some(w) if w != fields.len() => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {} fields, got {}", w, fields.len()),
                });
            }
            _ => {}
        }
        labels.push(fields[0].trim().to_string());
        let mut row = Vec::with_capacity(fields.len() - 1);
        for f in &fields[1..] {
            let v: f64 = f.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("unparseable value {f:?}"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("non-finite value {f:?}"),
                });
            }
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "empty file".into(),
        });
    }
    LabeledDataset::new(labels, DataMatrix::from_rows(rows)?)
}

/// Writes a labeled dataset in the same delimited format, with 17
/// significant digits so parsing reproduces every value exactly.
pub fn write_delimited(path: &Path, data: &LabeledDataset, delimiter: char) -> Result<()> {
    let mut out = String::new();
    for i in 0..data.x.rows() {
        let _ = write!(out, "{}", data.labels[i]);
        for v in data.x.row(i) {
            let _ = write!(out, "{delimiter}{v:.16e}");
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// One run's result in report form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub dataset: String,
    pub method: String,
    #[serde(rename = "B")]
    pub b: f64,
    pub confidence: f64,
    pub k: Option<usize>,
    pub tlb_mean: f64,
    pub tlb_lo: f64,
    pub tlb_hi: f64,
    pub dr_seconds: f64,
    pub downstream_seconds: Option<f64>,
    pub iterations: Vec<ReportIteration>,
    pub termination: String,
    pub seed: u64,
    /// Index:query ratio for benchmark cells, e.g. "1:5".
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ratio: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportIteration {
    pub m_i: usize,
    pub k_i: Option<usize>,
    pub r_i: f64,
}

impl From<&IterationRecord> for ReportIteration {
    fn from(r: &IterationRecord) -> Self {
        ReportIteration {
            m_i: r.m_i,
            k_i: r.k_i,
            r_i: r.r_i,
        }
    }
}

impl Report {
    pub fn from_drop(
        dataset: &str,
        result: &DropResult,
        b: f64,
        confidence: f64,
        seed: u64,
    ) -> Self {
        Report {
            dataset: dataset.to_string(),
            method: "drop".to_string(),
            b,
            confidence,
            k: Some(result.k),
            tlb_mean: result.tlb.mean,
            tlb_lo: result.tlb.lo,
            tlb_hi: result.tlb.hi,
            dr_seconds: result.total_dr_seconds,
            downstream_seconds: None,
            iterations: result.history.iter().map(ReportIteration::from).collect(),
            termination: format!("{:?}", result.termination),
            seed,
            ratio: None,
        }
    }

    pub fn from_search(
        dataset: &str,
        method: &str,
        outcome: &SearchOutcome,
        b: f64,
        confidence: f64,
        seed: u64,
        dr_seconds: f64,
    ) -> Self {
        let (k, est, termination): (Option<usize>, TlbEstimate, &str) = match outcome {
            SearchOutcome::Found { k, tlb, .. } => (Some(*k), *tlb, "Found"),
            SearchOutcome::NotAchievable { best_estimate } => {
                (None, *best_estimate, "NotAchievable")
            }
        };
        Report {
            dataset: dataset.to_string(),
            method: method.to_string(),
            b,
            confidence,
            k,
            tlb_mean: est.mean,
            tlb_lo: est.lo,
            tlb_hi: est.hi,
            dr_seconds,
            downstream_seconds: None,
            iterations: Vec::new(),
            termination: termination.to_string(),
            seed,
            ratio: None,
        }
    }
}

/// Writes a report as pretty-printed JSON.
pub fn write_report(report: &Report, path: &Path) -> Result<()> {
    let json = serde_json::to_string_pretty(report)
        .map_err(|e| Error::invalid(format!("report serialization failed: {e}")))?;
    fs::write(path, json + "\n").map_err(|e| Error::io(path, e))
}

pub fn read_report(path: &Path) -> Result<Report> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })
}

/// Renders reports as a deterministic tab-separated table (sorted by
/// dataset, method, ratio). Re-running over the same reports reproduces the
/// bytes exactly.
pub fn aggregate_reports(reports: &[Report]) -> String {
    let mut rows: Vec<&Report> = reports.iter().collect();
    rows.sort_by(|a, b| {
        (&a.dataset, &a.method, &a.ratio).cmp(&(&b.dataset, &b.method, &b.ratio))
    });
    let mut out = String::from(
        "dataset\tmethod\tratio\tB\tk\ttlb_mean\tdr_seconds\tdownstream_seconds\ttotal_seconds\n",
    );
    for r in rows {
        let k = r.k.map_or("-".to_string(), |k| k.to_string());
        let ds = r.downstream_seconds;
        let downstream = ds.map_or("-".to_string(), |s| format!("{s:.6e}"));
        let total = ds.map_or("-".to_string(), |s| format!("{:.6e}", s + r.dr_seconds));
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{:.6}\t{:.6e}\t{}\t{}",
            r.dataset,
            r.method,
            r.ratio.as_deref().unwrap_or("-"),
            r.b,
            k,
            r.tlb_mean,
            r.dr_seconds,
            downstream,
            total,
        );
    }
    out
}
