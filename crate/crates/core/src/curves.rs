//! Risk-curve experiments: feature curves (sweep N at fixed n), learning
//! curves (sweep n at fixed N) and α-curves (sweep α = n/N at fixed N), with
//! Monte Carlo repetition, aggregation and peak detection.
//!
//! Every random draw is seeded by [`mix`] from the base seed and the
//! (repetition, grid point) it belongs to, so results do not depend on the
//! order in which repetitions execute.

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{
    append_random_columns, gen_two_gaussians, load_csv, split, stratified_indices, subsample, take_features, Dataset,
    GaussianSpec, Standardizer,
};
use crate::error::{Error, Result};
use crate::learners::{squared_risk, zero_one_risk, LearnerSpec};
use crate::linalg::Matrix;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

const STREAM_POOL: u64 = 1;
const STREAM_SPLIT: u64 = 2;
const STREAM_UNLABELED: u64 = 3;
const STREAM_SUBSAMPLE: u64 = 4;
const STREAM_AUGMENT: u64 = 5;
const STREAM_TEST: u64 = 6;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a seed from a base seed and a path of integers.
///
/// `h₀ = splitmix64(base)`, then `hᵢ = splitmix64(hᵢ₋₁ ⊕ splitmix64(partᵢ))`.
/// Pure 64-bit wrapping arithmetic, so identical on every platform.
pub fn mix(base: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(splitmix64(base), |h, &p| splitmix64(h ^ splitmix64(p)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    FeatureCurve,
    LearningCurve,
    AlphaCurve,
}

impl CurveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveKind::FeatureCurve => "feature_curve",
            CurveKind::LearningCurve => "learning_curve",
            CurveKind::AlphaCurve => "alpha_curve",
        }
    }

    /// Name of the swept variable.
    pub fn x_name(self) -> &'static str {
        match self {
            CurveKind::FeatureCurve => "N",
            CurveKind::LearningCurve => "n",
            CurveKind::AlphaCurve => "alpha",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RiskMetric {
    #[default]
    ZeroOne,
    /// Mean squared error of the decision values against ±1 targets.
    Squared,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DataSource {
    /// Fresh draws from the two-Gaussian family for every repetition.
    Gaussian { dim: usize, informative: usize, separation: f64 },
    /// A fixed two-class table, re-split for every repetition.
    Csv { path: PathBuf, label_column: String, positive_label: String, standardize: bool },
}

impl DataSource {
    pub fn benchmark() -> Self {
        DataSource::Gaussian { dim: 120, informative: 10, separation: 2.5 }
    }
}

/// Noise columns appended to every design after feature selection.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomFeatures {
    pub count: usize,
    pub sigma: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub kind: CurveKind,
    pub grid: Vec<f64>,
    /// Training size of a feature curve.
    pub fixed_n: Option<usize>,
    /// Feature count of a learning or α-curve.
    #[serde(rename = "fixed_N")]
    pub fixed_dim: Option<usize>,
    pub learners: Vec<LearnerSpec>,
    pub data: DataSource,
    pub random_features: Option<RandomFeatures>,
    /// Held-out points per repetition (for tables: at most this many of the non-training rows; 0 = all).
    pub test_size: usize,
    pub reps: usize,
    pub base_seed: u64,
    pub risk_metric: RiskMetric,
}

fn violation(field: &str, reason: impl Into<String>) -> Error {
    Error::InvariantViolation { field: field.to_string(), reason: reason.into() }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(violation("grid", "must not be empty"));
        }
        if self.grid.iter().any(|g| !g.is_finite() || *g <= 0.0) {
            return Err(violation("grid", "values must be positive and finite"));
        }
        if self.grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(violation("grid", "must be strictly increasing"));
        }
        if self.reps == 0 {
            return Err(violation("reps", "must be at least 1"));
        }
        if self.learners.is_empty() {
            return Err(violation("learners", "at least one learner is required"));
        }
        for (i, l) in self.learners.iter().enumerate() {
            l.kind.validate().map_err(|e| violation(&format!("learners[{i}]"), e.to_string()))?;
            if l.name.is_empty() || l.name.contains([',', '\n', '\r']) {
                return Err(violation(&format!("learners[{i}].name"), "must be non-empty without commas or newlines"));
            }
            if self.learners[..i].iter().any(|o| o.name == l.name) {
                return Err(violation("learners", format!("duplicate learner name {:?}", l.name)));
            }
        }
        if let Some(rf) = &self.random_features {
            if rf.count == 0 {
                return Err(violation("random_features.count", "must be at least 1"));
            }
            if !(rf.sigma > 0.0 && rf.sigma.is_finite()) {
                return Err(violation("random_features.sigma", "must be positive"));
            }
        }
        match &self.data {
            DataSource::Gaussian { dim, informative, separation } => {
                if *dim == 0 {
                    return Err(violation("data.dim", "must be at least 1"));
                }
                if *informative == 0 || informative > dim {
                    return Err(violation("data.informative", format!("must lie in 1..={dim}")));
                }
                if !(*separation > 0.0 && separation.is_finite()) {
                    return Err(violation("data.separation", "must be positive"));
                }
                if self.test_size == 0 {
                    return Err(violation("test_size", "must be at least 1 for generated data"));
                }
            }
            DataSource::Csv { label_column, positive_label, .. } => {
                if label_column.is_empty() || positive_label.is_empty() {
                    return Err(violation("data", "label_column and positive_label are required"));
                }
            }
        }

        let integral = |field: &str| -> Result<()> {
            if self.grid.iter().any(|g| g.fract() != 0.0) {
                return Err(violation(field, "values must be whole numbers"));
            }
            Ok(())
        };
        match self.kind {
            CurveKind::FeatureCurve => {
                integral("grid")?;
                let n = self.fixed_n.ok_or_else(|| violation("fixed_n", "required for a feature curve"))?;
                if n < 2 {
                    return Err(violation("fixed_n", "must be at least 2"));
                }
            }
            CurveKind::LearningCurve => {
                integral("grid")?;
                self.fixed_dim.ok_or_else(|| violation("fixed_N", "required for a learning curve"))?;
                if self.grid[0] < 2.0 {
                    return Err(violation("grid", "training sizes must be at least 2"));
                }
            }
            CurveKind::AlphaCurve => {
                let dim = self.fixed_dim.ok_or_else(|| violation("fixed_N", "required for an alpha curve"))?;
                if dim < 2 {
                    return Err(violation("fixed_N", "must be at least 2"));
                }
                if let Some(a) = self.grid.iter().find(|&&a| alpha_to_n(a, dim) < 2) {
                    return Err(violation("grid", format!("alpha {a} gives fewer than 2 training points")));
                }
            }
        }
        if let Some(dim) = self.fixed_dim.filter(|_| self.kind != CurveKind::FeatureCurve) {
            if dim == 0 {
                return Err(violation("fixed_N", "must be at least 1"));
            }
        }
        if let DataSource::Gaussian { dim, .. } = self.data {
            self.check_dimension(dim)?;
        }
        Ok(())
    }

    fn check_dimension(&self, dim: usize) -> Result<()> {
        let needed = match self.kind {
            CurveKind::FeatureCurve => *self.grid.last().expect("validated non-empty") as usize,
            _ => self.fixed_dim.unwrap_or(0),
        };
        if needed > dim {
            return Err(Error::GridExceedsDimension { value: needed, dim });
        }
        Ok(())
    }

    /// Location of the interpolation threshold on the x axis.
    pub fn threshold(&self) -> f64 {
        match self.kind {
            CurveKind::FeatureCurve => self.fixed_n.unwrap_or(0) as f64,
            CurveKind::LearningCurve => self.fixed_dim.unwrap_or(0) as f64,
            CurveKind::AlphaCurve => 1.0,
        }
    }

    /// Training-set sizes along the grid (learning and α-curves).
    pub fn train_sizes(&self) -> Vec<usize> {
        match self.kind {
            CurveKind::FeatureCurve => vec![self.fixed_n.unwrap_or(0); self.grid.len()],
            CurveKind::LearningCurve => self.grid.iter().map(|&g| g as usize).collect(),
            CurveKind::AlphaCurve => {
                let dim = self.fixed_dim.unwrap_or(0);
                self.grid.iter().map(|&a| alpha_to_n(a, dim)).collect()
            }
        }
    }

    fn unlabeled_needed(&self) -> usize {
        self.learners.iter().map(|l| l.kind.unlabeled_count()).max().unwrap_or(0)
    }
}

/// `round(α·N)`, halves rounded away from zero.
pub fn alpha_to_n(alpha: f64, dim: usize) -> usize {
    (alpha * dim as f64).round() as usize
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LearnerStats {
    pub learner: String,
    pub mean_risk: f64,
    /// Sample standard deviation over repetitions (0 for a single repetition).
    pub std_risk: f64,
    pub stderr_risk: f64,
    pub min_risk: f64,
    pub max_risk: f64,
    pub rep_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep_risks: Option<Vec<f64>>,
}

impl LearnerStats {
    pub fn from_risks(learner: &str, risks: &[f64], keep: bool) -> Self {
        let n = risks.len() as f64;
        let min = risks.iter().copied().fold(f64::INFINITY, f64::min);
        let max = risks.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = (risks.iter().sum::<f64>() / n).clamp(min, max);
        let std = if risks.len() > 1 {
            (risks.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Self {
            learner: learner.to_string(),
            mean_risk: mean,
            std_risk: std,
            stderr_risk: std / n.sqrt(),
            min_risk: min,
            max_risk: max,
            rep_count: risks.len(),
            rep_risks: keep.then(|| risks.to_vec()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub x_value: f64,
    pub stats: Vec<LearnerStats>,
}

impl CurvePoint {
    pub fn learner(&self, name: &str) -> Option<&LearnerStats> {
        self.stats.iter().find(|s| s.learner == name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub base_seed: u64,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveResult {
    pub spec: SweepSpec,
    pub points: Vec<CurvePoint>,
    pub provenance: Provenance,
}

impl CurveResult {
    pub fn point_at(&self, x: f64) -> Option<&CurvePoint> {
        self.points.iter().find(|p| p.x_value == x)
    }

    pub fn stats_at(&self, x: f64, learner: &str) -> Option<&LearnerStats> {
        self.point_at(x).and_then(|p| p.learner(learner))
    }

    pub fn learner_names(&self) -> Vec<&str> {
        self.spec.learners.iter().map(|l| l.name.as_str()).collect()
    }

    /// `(x, stats)` along the curve for one learner.
    pub fn series(&self, learner: &str) -> Result<Vec<(f64, &LearnerStats)>> {
        self.points
            .iter()
            .map(|p| p.learner(learner).map(|s| (p.x_value, s)).ok_or_else(|| Error::UnknownLearner(learner.into())))
            .collect()
    }
}

/// Execution knobs that do not change the numbers produced.
#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub parallel: bool,
    /// Keep every per-repetition risk in the result.
    pub keep_reps: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { parallel: true, keep_reps: false }
    }
}

pub fn run_feature_curve(spec: &SweepSpec) -> Result<CurveResult> {
    expect_kind(spec, CurveKind::FeatureCurve)?;
    run_curve(spec, RunOptions::default())
}

pub fn run_learning_curve(spec: &SweepSpec) -> Result<CurveResult> {
    expect_kind(spec, CurveKind::LearningCurve)?;
    run_curve(spec, RunOptions::default())
}

pub fn run_alpha_curve(spec: &SweepSpec) -> Result<CurveResult> {
    expect_kind(spec, CurveKind::AlphaCurve)?;
    run_curve(spec, RunOptions::default())
}

fn expect_kind(spec: &SweepSpec, kind: CurveKind) -> Result<()> {
    if spec.kind != kind {
        return Err(violation("kind", format!("expected {}, got {}", kind.as_str(), spec.kind.as_str())));
    }
    Ok(())
}

enum Source {
    Gaussian(GaussianSpec),
    Table { ds: Dataset<f64>, standardize: bool },
}

struct Draw {
    train: Dataset<f64>,
    test: Dataset<f64>,
    unlabeled: Matrix<f64>,
}

impl Source {
    fn prepare(spec: &SweepSpec) -> Result<Self> {
        match &spec.data {
            DataSource::Gaussian { dim, informative, separation } => Ok(Source::Gaussian(GaussianSpec {
                dim: *dim,
                informative: *informative,
                separation: *separation,
                seed: spec.base_seed,
            })),
            DataSource::Csv { path, label_column, positive_label, standardize } => {
                let ds = load_csv(path, label_column, positive_label)?;
                spec.check_dimension(ds.n_features())?;
                let max_train = spec.train_sizes().into_iter().max().unwrap_or(0);
                if max_train >= ds.len() {
                    return Err(violation(
                        "grid",
                        format!("{max_train} training rows leave no test rows out of {}", ds.len()),
                    ));
                }
                Ok(Source::Table { ds, standardize: *standardize })
            }
        }
    }

    fn standardize(&self) -> bool {
        matches!(self, Source::Table { standardize: true, .. })
    }

    /// Training pool of `n_train` rows, a test set and unlabelled points for repetition `rep`.
    fn draw(&self, spec: &SweepSpec, rep: u64, n_train: usize) -> Result<Draw> {
        let seed = |stream: u64| mix(spec.base_seed, &[stream, rep]);
        let n_unlab = spec.unlabeled_needed();
        match self {
            Source::Gaussian(g) => {
                let total = n_train + spec.test_size;
                let pool = gen_two_gaussians(&g.with_seed(seed(STREAM_POOL)), total + total % 2)?;
                let (train, test) = split(&pool, n_train, seed(STREAM_SPLIT))?;
                let unlabeled = if n_unlab > 0 {
                    let u: Dataset<f64> =
                        gen_two_gaussians(&g.with_seed(seed(STREAM_UNLABELED)), n_unlab + n_unlab % 2)?;
                    u.x.select_rows(&(0..n_unlab).collect::<Vec<_>>())
                } else {
                    Matrix::zeros(0, g.dim)
                };
                Ok(Draw { train, test, unlabeled })
            }
            Source::Table { ds, .. } => {
                let (train, rest) = split(ds, n_train, seed(STREAM_SPLIT))?;
                let test = if spec.test_size > 0 && spec.test_size < rest.len() {
                    let (idx, _) = stratified_indices(&rest.y, spec.test_size, seed(STREAM_TEST));
                    rest.select(&idx)
                } else {
                    rest.clone()
                };
                if n_unlab > rest.len() {
                    return Err(violation(
                        "learners",
                        format!("{n_unlab} unlabelled points requested but only {} non-training rows", rest.len()),
                    ));
                }
                let mut idx: Vec<usize> = (0..rest.len()).collect();
                idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed(STREAM_UNLABELED)));
                idx.truncate(n_unlab);
                Ok(Draw { train, test, unlabeled: rest.x.select_rows(&idx) })
            }
        }
    }
}

/// Runs the sweep described by `spec`, dispatching on its kind.
pub fn run_curve(spec: &SweepSpec, opts: RunOptions) -> Result<CurveResult> {
    spec.validate()?;
    let source = Source::prepare(spec)?;

    let one_rep = |r: usize| run_rep(spec, &source, r);
    let per_rep: Vec<Result<Vec<Vec<f64>>>> = if opts.parallel {
        (0..spec.reps).into_par_iter().map(one_rep).collect()
    } else {
        (0..spec.reps).map(one_rep).collect()
    };
    let per_rep = per_rep.into_iter().collect::<Result<Vec<_>>>()?;

    let points = spec
        .grid
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let stats = spec
                .learners
                .iter()
                .enumerate()
                .map(|(l, learner)| {
                    let risks: Vec<f64> = per_rep.iter().map(|rep| rep[i][l]).collect();
                    LearnerStats::from_risks(&learner.name, &risks, opts.keep_reps)
                })
                .collect();
            CurvePoint { x_value: x, stats }
        })
        .collect();

    Ok(CurveResult {
        spec: spec.clone(),
        points,
        provenance: Provenance { base_seed: spec.base_seed, version: ARTIFACT_VERSION.to_string() },
    })
}

/// Risks of every learner at every grid point for one repetition.
fn run_rep(spec: &SweepSpec, source: &Source, rep: usize) -> Result<Vec<Vec<f64>>> {
    let r = rep as u64;
    match spec.kind {
        CurveKind::FeatureCurve => {
            let n = spec.fixed_n.expect("validated");
            let draw = source.draw(spec, r, n)?;
            spec.grid
                .iter()
                .enumerate()
                .map(|(i, &g)| {
                    let features = g as usize;
                    let cell = Draw {
                        train: take_features(&draw.train, features)?,
                        test: take_features(&draw.test, features)?,
                        unlabeled: draw.unlabeled.column_prefix(features),
                    };
                    evaluate_cell(spec, source, cell, r, i)
                })
                .collect()
        }
        CurveKind::LearningCurve | CurveKind::AlphaCurve => {
            let dim = spec.fixed_dim.expect("validated");
            let sizes = spec.train_sizes();
            let largest = *sizes.iter().max().expect("validated non-empty");
            let draw = source.draw(spec, r, largest)?;
            let pool = take_features(&draw.train, dim)?;
            let test = take_features(&draw.test, dim)?;
            let unlabeled = draw.unlabeled.column_prefix(dim);
            sizes
                .iter()
                .enumerate()
                .map(|(i, &n)| {
                    let train = if n == pool.len() {
                        pool.clone()
                    } else {
                        subsample(&pool, n, mix(spec.base_seed, &[STREAM_SUBSAMPLE, r, i as u64]))?
                    };
                    let cell = Draw { train, test: test.clone(), unlabeled: unlabeled.clone() };
                    evaluate_cell(spec, source, cell, r, i)
                })
                .collect()
        }
    }
}

fn evaluate_cell(spec: &SweepSpec, source: &Source, mut cell: Draw, rep: u64, point: usize) -> Result<Vec<f64>> {
    if source.standardize() {
        let st = Standardizer::fit(&cell.train.x);
        cell.train = st.apply(&cell.train)?;
        cell.test = st.apply(&cell.test)?;
        if cell.unlabeled.rows() > 0 {
            cell.unlabeled = st.apply_matrix(&cell.unlabeled)?;
        }
    }
    if let Some(rf) = spec.random_features {
        let seed = |part: u64| mix(spec.base_seed, &[STREAM_AUGMENT, rep, point as u64, part]);
        cell.train.x = append_random_columns(&cell.train.x, rf.count, rf.sigma, seed(0))?;
        cell.test.x = append_random_columns(&cell.test.x, rf.count, rf.sigma, seed(1))?;
        cell.unlabeled = append_random_columns(&cell.unlabeled, rf.count, rf.sigma, seed(2))?;
    }

    let x_value = spec.grid[point];
    spec.learners
        .iter()
        .map(|learner| {
            let risk = || -> Result<f64> {
                let model = learner.fit(&cell.train.x, &cell.train.y, Some(&cell.unlabeled))?;
                match spec.risk_metric {
                    RiskMetric::ZeroOne => zero_one_risk(&model.predict(&cell.test.x)?, &cell.test.y),
                    RiskMetric::Squared => {
                        squared_risk(&model.decision_values(&cell.test.x)?, &cell.test.y.targets::<f64>())
                    }
                }
            };
            risk().map_err(|e| Error::Learner {
                learner: learner.name.clone(),
                x_name: spec.kind.x_name(),
                x_value,
                rep: rep as usize,
                source: Box::new(e),
            })
        })
        .collect()
}

/// A local maximum of a learner's mean-risk curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeakReport {
    pub learner: String,
    pub peak_x: f64,
    pub peak_mean: f64,
    pub peak_stderr: f64,
    /// Height above the higher of the two bases reached before climbing higher (or hitting the grid edge).
    pub prominence: f64,
    /// The threshold lies between the grid neighbours of the peak.
    pub at_interpolation: bool,
}

/// Every interior local maximum of the mean risk (plateaus reported at their first point).
pub fn local_peaks(result: &CurveResult, learner: &str) -> Result<Vec<PeakReport>> {
    let series = result.series(learner)?;
    if series.len() < 3 {
        return Err(Error::TooFewPoints(series.len()));
    }
    let means: Vec<f64> = series.iter().map(|(_, s)| s.mean_risk).collect();
    let xs: Vec<f64> = series.iter().map(|(x, _)| *x).collect();
    let threshold = result.spec.threshold();
    let last = means.len() - 1;

    let mut peaks = Vec::new();
    let mut i = 1;
    while i < last {
        let mut j = i;
        while j < last && means[j + 1] == means[i] {
            j += 1;
        }
        if j < last && means[i - 1] < means[i] && means[j + 1] < means[j] {
            let left_base =
                means[..i].iter().rev().take_while(|&&m| m <= means[i]).copied().fold(f64::INFINITY, f64::min);
            let right_base =
                means[j + 1..].iter().take_while(|&&m| m <= means[i]).copied().fold(f64::INFINITY, f64::min);
            let prominence = (means[i] - left_base.max(right_base)).max(0.0);
            let lo = xs[i - 1];
            let hi = xs[(j + 1).min(last)];
            peaks.push(PeakReport {
                learner: learner.to_string(),
                peak_x: xs[i],
                peak_mean: means[i],
                peak_stderr: series[i].1.stderr_risk,
                prominence,
                at_interpolation: lo <= threshold && threshold <= hi,
            });
        }
        i = j + 1;
    }
    Ok(peaks)
}

/// The most prominent interior local maximum; if there is none, the global
/// maximum with zero prominence and `at_interpolation = false`.
pub fn detect_peak(result: &CurveResult, learner: &str) -> Result<PeakReport> {
    let peaks = local_peaks(result, learner)?;
    if let Some(best) = peaks.into_iter().reduce(|a, b| if b.prominence > a.prominence { b } else { a }) {
        return Ok(best);
    }
    let series = result.series(learner)?;
    let (x, s) = series
        .iter()
        .copied()
        .reduce(|a, b| if b.1.mean_risk > a.1.mean_risk { b } else { a })
        .expect("at least three points");
    Ok(PeakReport {
        learner: learner.to_string(),
        peak_x: x,
        peak_mean: s.mean_risk,
        peak_stderr: s.stderr_risk,
        prominence: 0.0,
        at_interpolation: false,
    })
}

/// Difference of two mean risks with the combined standard error `√(se_a² + se_b²)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub a: String,
    pub b: String,
    pub mean_a: f64,
    pub mean_b: f64,
    pub stderr: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Lower,
    Higher,
    Unresolved,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Lower => "lower",
            Direction::Higher => "higher",
            Direction::Unresolved => "unresolved",
        }
    }
}

impl Comparison {
    pub fn between(a: &LearnerStats, b: &LearnerStats) -> Self {
        Self {
            a: a.learner.clone(),
            b: b.learner.clone(),
            mean_a: a.mean_risk,
            mean_b: b.mean_risk,
            stderr: a.stderr_risk.hypot(b.stderr_risk),
        }
    }

    /// `mean_a − mean_b`
    pub fn diff(&self) -> f64 {
        self.mean_a - self.mean_b
    }

    /// Gap in units of the combined standard error.
    pub fn z(&self) -> f64 {
        if self.stderr > 0.0 {
            self.diff() / self.stderr
        } else if self.diff() == 0.0 {
            0.0
        } else {
            self.diff().signum() * f64::INFINITY
        }
    }

    /// Whether `a` is resolved below or above `b` at `2·stderr`.
    pub fn direction(&self) -> Direction {
        if self.diff().abs() <= 2.0 * self.stderr {
            Direction::Unresolved
        } else if self.diff() < 0.0 {
            Direction::Lower
        } else {
            Direction::Higher
        }
    }
}
