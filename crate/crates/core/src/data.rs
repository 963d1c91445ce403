//! Datasets: synthetic two-Gaussian generators, feature prefixes, random
//! feature augmentation, stratified splitting, CSV ingestion and
//! standardisation. Every randomised operation is a pure function of its
//! inputs and seed.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::learners::Labels;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Dataset<T> {
    pub x: Matrix<T>,
    pub y: Labels,
}

impl<T: Scalar> Dataset<T> {
    pub fn new(x: Matrix<T>, y: Labels) -> Result<Self> {
        if x.rows() != y.len() {
            return Err(Error::DimensionMismatch(format!("{} rows but {} labels", x.rows(), y.len())));
        }
        Ok(Self { x, y })
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.x.cols()
    }

    pub fn select(&self, idx: &[usize]) -> Self {
        Self { x: self.x.select_rows(idx), y: self.y.select(idx) }
    }
}

/// Two equal-prior isotropic Gaussians `Normal(±μ, I)` in `dim` dimensions,
/// with the signal spread evenly over the first `informative` coordinates:
/// `μⱼ = separation/√informative` for `j < informative`, zero otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpec {
    pub dim: usize,
    pub informative: usize,
    pub separation: f64,
    pub seed: u64,
}

impl GaussianSpec {
    pub fn validate(&self) -> Result<()> {
        if self.informative == 0 || self.informative > self.dim {
            return Err(Error::out_of_range("informative", self.informative, format!("1..={}", self.dim)));
        }
        if !(self.separation >= 0.0 && self.separation.is_finite()) {
            return Err(Error::InvalidParameter(format!("separation must be non-negative, got {}", self.separation)));
        }
        Ok(())
    }

    pub fn class_mean<T: Scalar>(&self) -> Vec<T> {
        let v = self.separation / (self.informative as f64).sqrt();
        (0..self.dim).map(|j| if j < self.informative { T::of(v) } else { T::zero() }).collect()
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

/// Draws `n` points, alternating labels +1, −1, +1, …
///
/// Zero separation is accepted so that the no-signal case can be generated.
pub fn gen_two_gaussians<T: Scalar>(spec: &GaussianSpec, n: usize) -> Result<Dataset<T>> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::OddSampleSize(n));
    }
    spec.validate()?;
    let mu = spec.class_mean::<f64>();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut data = Vec::with_capacity(n * spec.dim);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let c: i8 = if i % 2 == 0 { 1 } else { -1 };
        labels.push(c);
        for &m in &mu {
            let z: f64 = StandardNormal.sample(&mut rng);
            data.push(T::of(c as f64 * m + z));
        }
    }
    Ok(Dataset { x: Matrix::from_vec_unchecked(n, spec.dim, data), y: Labels::new(labels)? })
}

/// Keeps the first `n_features` columns.
pub fn take_features<T: Scalar>(ds: &Dataset<T>, n_features: usize) -> Result<Dataset<T>> {
    if n_features == 0 || n_features > ds.n_features() {
        return Err(Error::out_of_range("n_features", n_features, format!("1..={}", ds.n_features())));
    }
    Ok(Dataset { x: ds.x.column_prefix(n_features), y: ds.y.clone() })
}

/// Appends `k` columns of independent `Normal(0, sigma²)` noise.
pub fn append_random_features<T: Scalar>(ds: &Dataset<T>, k: usize, sigma: f64, seed: u64) -> Result<Dataset<T>> {
    if k == 0 {
        return Err(Error::InvalidParameter("at least one random feature must be appended".into()));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
    }
    Ok(Dataset { x: ds.x.hstack(&noise_block(ds.len(), k, sigma, seed))?, y: ds.y.clone() })
}

/// Appends noise columns to a feature matrix without labels.
pub fn append_random_columns<T: Scalar>(x: &Matrix<T>, k: usize, sigma: f64, seed: u64) -> Result<Matrix<T>> {
    x.hstack(&noise_block(x.rows(), k, sigma, seed))
}

fn noise_block<T: Scalar>(rows: usize, k: usize, sigma: f64, seed: u64) -> Matrix<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..rows * k)
        .map(|_| {
            let z: f64 = StandardNormal.sample(&mut rng);
            T::of(sigma * z)
        })
        .collect();
    Matrix::from_vec_unchecked(rows, k, data)
}

/// Stratified choice of `n_take` row indices (sorted) and the sorted remainder.
///
/// Each class contributes `round(n_take · class share)` rows, nudged so that a
/// class present in the data is represented whenever `n_take ≥ 2`.
pub fn stratified_indices(y: &Labels, n_take: usize, seed: u64) -> (Vec<usize>, Vec<usize>) {
    let n = y.len();
    assert!(n_take <= n);
    let mut pos: Vec<usize> = (0..n).filter(|&i| y.as_slice()[i] > 0).collect();
    let mut neg: Vec<usize> = (0..n).filter(|&i| y.as_slice()[i] < 0).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pos.shuffle(&mut rng);
    neg.shuffle(&mut rng);

    let share = pos.len() as f64 / n as f64;
    let mut take_pos = (n_take as f64 * share).round() as usize;
    if n_take >= 2 {
        if take_pos == 0 && !pos.is_empty() {
            take_pos = 1;
        }
        if take_pos == n_take && !neg.is_empty() {
            take_pos = n_take - 1;
        }
    }
    take_pos = take_pos.min(pos.len()).max(n_take.saturating_sub(neg.len()));
    let take_neg = n_take - take_pos;

    let mut chosen: Vec<usize> = pos[..take_pos].iter().chain(&neg[..take_neg]).copied().collect();
    let mut rest: Vec<usize> = pos[take_pos..].iter().chain(&neg[take_neg..]).copied().collect();
    chosen.sort_unstable();
    rest.sort_unstable();
    (chosen, rest)
}

/// Stratified train/test partition with `n_train` training rows.
pub fn split<T: Scalar>(ds: &Dataset<T>, n_train: usize, seed: u64) -> Result<(Dataset<T>, Dataset<T>)> {
    if n_train == 0 || n_train >= ds.len() {
        return Err(Error::out_of_range("n_train", n_train, format!("1..{}", ds.len())));
    }
    let (train, test) = stratified_indices(&ds.y, n_train, seed);
    Ok((ds.select(&train), ds.select(&test)))
}

/// Stratified draw of `n` rows without replacement.
pub fn subsample<T: Scalar>(ds: &Dataset<T>, n: usize, seed: u64) -> Result<Dataset<T>> {
    if n < 2 || n > ds.len() {
        return Err(Error::out_of_range("n", n, format!("2..={}", ds.len())));
    }
    let (chosen, _) = stratified_indices(&ds.y, n, seed);
    Ok(ds.select(&chosen))
}

/// Loads a two-class CSV file: header row, `,` separator, no quoting.
///
/// Every column except `label_column` must be numeric; labels equal to
/// `positive_label` become +1 and the other token −1.
pub fn load_csv<T: Scalar>(path: impl AsRef<Path>, label_column: &str, positive_label: &str) -> Result<Dataset<T>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile(path.to_path_buf()),
        _ => Error::io(path, e),
    })?;
    parse_csv(&text, label_column, positive_label)
}

pub fn parse_csv<T: Scalar>(text: &str, label_column: &str, positive_label: &str) -> Result<Dataset<T>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::MalformedCsv("missing header row".into()))?;
    let names: Vec<&str> = header.split(',').map(str::trim).collect();
    let label_idx = names
        .iter()
        .position(|&n| n == label_column)
        .ok_or_else(|| Error::MalformedCsv(format!("no column named {label_column:?}")))?;

    let mut data = Vec::new();
    let mut tokens: Vec<String> = Vec::new();
    let mut raw_labels = Vec::new();
    for (line_no, line) in lines {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != names.len() {
            return Err(Error::MalformedCsv(format!(
                "line {} has {} fields, header has {}",
                line_no + 1,
                cells.len(),
                names.len()
            )));
        }
        for (j, cell) in cells.iter().enumerate() {
            let cell = cell.trim();
            if j == label_idx {
                if !tokens.iter().any(|t| t == cell) {
                    tokens.push(cell.to_string());
                    if tokens.len() > 2 {
                        return Err(Error::MoreThanTwoClasses(label_column.to_string()));
                    }
                }
                raw_labels.push(cell == positive_label);
            } else {
                let v: f64 = cell.parse().ok().filter(|v: &f64| v.is_finite()).ok_or_else(|| {
                    Error::NonNumericFeature { row: line_no + 1, column: names[j].to_string(), value: cell.to_string() }
                })?;
                data.push(T::of(v));
            }
        }
    }
    if tokens.len() != 2 {
        return Err(Error::MalformedCsv(format!("label column {label_column:?} needs exactly two classes")));
    }
    if !tokens.iter().any(|t| t == positive_label) {
        return Err(Error::MalformedCsv(format!("positive label {positive_label:?} does not occur")));
    }
    let rows = raw_labels.len();
    let y = Labels::new(raw_labels.into_iter().map(|p| if p { 1 } else { -1 }).collect())?;
    Ok(Dataset { x: Matrix::from_vec_unchecked(rows, names.len() - 1, data), y })
}

/// Per-column shift and scale estimated on a training set.
#[derive(Clone, Debug, PartialEq)]
pub struct Standardizer<T> {
    pub mean: Vec<T>,
    /// Population standard deviation, or 1 for constant columns.
    pub scale: Vec<T>,
}

impl<T: Scalar> Standardizer<T> {
    pub fn fit(x: &Matrix<T>) -> Self {
        let mean = x.column_means();
        let n = T::of(x.rows().max(1) as f64);
        let mut var = vec![T::zero(); x.cols()];
        for r in x.row_iter() {
            for ((v, &xi), &m) in var.iter_mut().zip(r).zip(&mean) {
                *v += (xi - m) * (xi - m);
            }
        }
        let scale = var
            .into_iter()
            .map(|v| {
                let s = (v / n).sqrt();
                if s > T::zero() {
                    s
                } else {
                    T::one()
                }
            })
            .collect();
        Self { mean, scale }
    }

    pub fn apply_matrix(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        if x.cols() != self.mean.len() {
            return Err(Error::DimensionMismatch(format!(
                "standardizer fitted on {} columns, got {}",
                self.mean.len(),
                x.cols()
            )));
        }
        let data = x
            .row_iter()
            .flat_map(|r| r.iter().zip(&self.mean).zip(&self.scale).map(|((&v, &m), &s)| (v - m) / s))
            .collect();
        Ok(Matrix::from_vec_unchecked(x.rows(), x.cols(), data))
    }

    pub fn apply(&self, ds: &Dataset<T>) -> Result<Dataset<T>> {
        Ok(Dataset { x: self.apply_matrix(&ds.x)?, y: ds.y.clone() })
    }
}

/// Standardises both sets with statistics from `train` only.
pub fn standardize<T: Scalar>(
    train: &Dataset<T>,
    test: &Dataset<T>,
) -> Result<(Dataset<T>, Dataset<T>, Standardizer<T>)> {
    if train.n_features() != test.n_features() {
        return Err(Error::DimensionMismatch(format!(
            "train has {} features, test {}",
            train.n_features(),
            test.n_features()
        )));
    }
    let st = Standardizer::fit(&train.x);
    Ok((st.apply(train)?, st.apply(test)?, st))
}
