//! Linear two-class learners built on minimum-norm least squares, plus a
//! hinge-loss max-margin learner that serves as the monotone contrast.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{check_lambda, dot, min_norm_least_squares, ridge_least_squares, thin_svd, Matrix, Vector};
use crate::scalar::Scalar;

/// Two-class labels, each exactly −1 or +1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labels(Vec<i8>);

impl Labels {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        match values.iter().find(|&&v| v != 1 && v != -1) {
            Some(&bad) => Err(Error::InvalidLabel(bad as f64)),
            None => Ok(Self(values)),
        }
    }

    pub fn from_signs<T: Scalar>(values: &[T]) -> Result<Self> {
        values
            .iter()
            .map(|&v| {
                if v == T::one() {
                    Ok(1)
                } else if v == -T::one() {
                    Ok(-1)
                } else {
                    Err(Error::InvalidLabel(v.as_f64()))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn targets<T: Scalar>(&self) -> Vec<T> {
        self.0.iter().map(|&v| if v > 0 { T::one() } else { -T::one() }).collect()
    }

    pub fn count_positive(&self) -> usize {
        self.0.iter().filter(|&&v| v > 0).count()
    }

    pub fn has_both_classes(&self) -> bool {
        let pos = self.count_positive();
        pos > 0 && pos < self.len()
    }

    pub fn select(&self, idx: &[usize]) -> Self {
        Self(idx.iter().map(|&i| self.0[i]).collect())
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|&v| -v).collect())
    }
}

/// Affine decision function `x ↦ wᵀx + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearModel<T> {
    pub weights: Vector<T>,
    pub bias: T,
}

impl<T: Scalar> LinearModel<T> {
    pub fn new(weights: Vector<T>, bias: T) -> Result<Self> {
        if !bias.is_finite() {
            return Err(Error::NonFinite(weights.len()));
        }
        Ok(Self { weights, bias })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn decision_values(&self, x: &Matrix<T>) -> Result<Vec<T>> {
        if x.cols() != self.dim() {
            return Err(Error::DimensionMismatch(format!("model expects {} features, got {}", self.dim(), x.cols())));
        }
        Ok(x.row_iter().map(|r| dot(r, &self.weights) + self.bias).collect())
    }

    pub fn predict(&self, x: &Matrix<T>) -> Result<Labels> {
        predict(self, x)
    }
}

/// Splits a solution of the bias-augmented system into weights and bias.
fn split_augmented<T: Scalar>(mut coef: Vec<T>) -> LinearModel<T> {
    let bias = coef.pop().expect("augmented system has a bias coefficient");
    LinearModel { weights: Vector::from_vec_unchecked(coef), bias }
}

fn check_rows<T: Scalar>(x: &Matrix<T>, y: &Labels) -> Result<()> {
    if x.rows() != y.len() {
        return Err(Error::DimensionMismatch(format!("{} rows but {} labels", x.rows(), y.len())));
    }
    if y.is_empty() {
        return Err(Error::DimensionMismatch("no training rows".into()));
    }
    Ok(())
}

/// Minimum-norm linear regression on ±1 targets with a constant column appended.
///
/// The bias coefficient takes part in the norm being minimised.
pub fn fit_mnlr<T: Scalar>(x: &Matrix<T>, y: &Labels, rel_tol: T) -> Result<LinearModel<T>> {
    check_rows(x, y)?;
    let coef = min_norm_least_squares(&x.with_ones_column(), &y.targets(), rel_tol)?;
    Ok(split_augmented(coef.into_inner()))
}

/// Pseudo-Fisher linear discriminant: MNLR on globally centred features.
///
/// With both columns of the centred design orthogonal to the constant column,
/// the bias decouples and equals the mean target; the weights are
/// `Xc⁺·y`, i.e. the pseudo-inverse of the total scatter applied to the class
/// mean difference.
pub fn fit_pfld<T: Scalar>(x: &Matrix<T>, y: &Labels, rel_tol: T) -> Result<LinearModel<T>> {
    check_rows(x, y)?;
    if !y.has_both_classes() {
        return Err(Error::SingleClassInput);
    }
    let mean = x.column_means();
    let centred = fit_mnlr(&x.shifted(&mean), y, rel_tol)?;
    Ok(uncentre(centred, &mean))
}

/// Folds a model trained on `x − shift` back into raw feature space.
fn uncentre<T: Scalar>(m: LinearModel<T>, shift: &[T]) -> LinearModel<T> {
    let bias = m.bias - dot(&m.weights, shift);
    LinearModel { weights: m.weights, bias }
}

/// Ridge regression on ±1 targets with an unpenalised bias.
///
/// Features and targets are centred, the penalised problem is solved through
/// the SVD, and the bias is recovered as `ȳ − wᵀx̄`.
pub fn fit_ridge<T: Scalar>(x: &Matrix<T>, y: &Labels, lambda: T) -> Result<LinearModel<T>> {
    check_lambda(lambda)?;
    check_rows(x, y)?;
    let mean = x.column_means();
    let targets: Vec<T> = y.targets();
    let y_mean = targets.iter().copied().sum::<T>() / T::of(targets.len() as f64);
    let centred_targets: Vec<T> = targets.iter().map(|&t| t - y_mean).collect();
    let w = ridge_least_squares(&x.shifted(&mean), &centred_targets, lambda)?;
    let bias = y_mean - dot(&w, &mean);
    Ok(LinearModel { weights: w, bias })
}

/// PFLD with the total scatter estimated from labelled and unlabelled points.
///
/// The total scatter needs no labels, so it is estimated on the pooled sample
/// (centred at the pooled mean, rescaled to the labelled count) and its
/// rank-truncated pseudo-inverse is applied to the labelled cross moment
/// `Σ (xᵢ − x̄)(yᵢ − ȳ)`. The bias places the threshold at the pooled mean.
/// Without unlabelled points this reproduces [`fit_pfld`].
pub fn fit_semisup_pfld<T: Scalar>(
    x_lab: &Matrix<T>,
    y: &Labels,
    x_unlab: &Matrix<T>,
    rel_tol: T,
) -> Result<LinearModel<T>> {
    check_rows(x_lab, y)?;
    if x_unlab.rows() > 0 && x_unlab.cols() != x_lab.cols() {
        return Err(Error::DimensionMismatch(format!(
            "labelled data has {} features, unlabelled {}",
            x_lab.cols(),
            x_unlab.cols()
        )));
    }
    let d = x_lab.cols();
    if d == 0 {
        return fit_mnlr(x_lab, y, rel_tol);
    }
    let targets: Vec<T> = y.targets();
    let n = T::of(targets.len() as f64);
    let y_mean = targets.iter().copied().sum::<T>() / n;
    let centred_targets: Vec<T> = targets.iter().map(|&t| t - y_mean).collect();
    let cross = x_lab.shifted(&x_lab.column_means()).tr_matvec(&centred_targets)?;

    let pooled = if x_unlab.rows() > 0 { x_lab.vstack(x_unlab)? } else { x_lab.clone() };
    let mean = pooled.column_means();
    let svd = thin_svd(&pooled.shifted(&mean))?;
    let rank = svd.rank(rel_tol);
    let scale = T::of(pooled.rows() as f64) / n;

    // w = (m/n) · V_r · diag(1/s²) · V_rᵀ · cross
    let mut weights = vec![T::zero(); d];
    for l in 0..rank {
        let s = svd.singular_values[l];
        let coef = scale * (0..d).map(|i| svd.v[(i, l)] * cross[i]).sum::<T>() / (s * s);
        for (i, w) in weights.iter_mut().enumerate() {
            *w += coef * svd.v[(i, l)];
        }
    }
    let bias = y_mean - dot(&weights, &mean);
    Ok(LinearModel { weights: Vector::from_vec_unchecked(weights), bias })
}

/// Result of the subgradient max-margin solver with its optimisation trace.
#[derive(Clone, Debug)]
pub struct MaxMarginFit<T> {
    pub model: LinearModel<T>,
    /// Objective at the returned model.
    pub objective: T,
    /// Best objective seen up to each iteration (non-increasing).
    pub best_objective_trace: Vec<T>,
    /// Whether the returned model is the averaged iterate (otherwise the best one).
    pub averaged: bool,
}

/// Soft-margin objective `½‖w‖² + c·Σ max(0, 1 − yᵢ(wᵀxᵢ + b))`.
pub fn hinge_objective<T: Scalar>(x: &Matrix<T>, y: &Labels, model: &LinearModel<T>, c: T) -> T {
    let hinge: T = x
        .row_iter()
        .zip(y.as_slice())
        .map(|(r, &yi)| {
            let m = T::of(yi as f64) * (dot(r, &model.weights) + model.bias);
            (T::one() - m).max(T::zero())
        })
        .sum();
    T::of(0.5) * dot(&model.weights, &model.weights) + c * hinge
}

pub fn fit_max_margin<T: Scalar>(
    x: &Matrix<T>,
    y: &Labels,
    c: T,
    max_iters: usize,
    step_decay: T,
) -> Result<LinearModel<T>> {
    max_margin_path(x, y, c, max_iters, step_decay).map(|f| f.model)
}

/// Deterministic full-batch subgradient descent on the soft-margin objective.
///
/// The bias is unpenalised, so for every `w` it is set to the exact minimiser
/// of the hinge sum ([`optimal_bias`]); the iteration then runs on the
/// 1-strongly convex function `F(w) = min_b objective(w, b)` with step
/// `ηₜ = 1/(step_decay·t)`, projecting onto the ball `‖w‖ ≤ √(2·F(0))` that
/// holds the optimum. The second half of the iterates is averaged. The
/// averaged iterate is returned unless its objective is more than 1% above the
/// best iterate seen, in which case the best iterate is returned instead.
pub fn max_margin_path<T: Scalar>(
    x: &Matrix<T>,
    y: &Labels,
    c: T,
    max_iters: usize,
    step_decay: T,
) -> Result<MaxMarginFit<T>> {
    check_rows(x, y)?;
    if !y.has_both_classes() {
        return Err(Error::SingleClassInput);
    }
    if c <= T::zero() || !c.is_finite() {
        return Err(Error::InvalidParameter(format!("max-margin c must be positive, got {c}")));
    }
    if max_iters == 0 {
        return Err(Error::InvalidParameter("max-margin needs at least one iteration".into()));
    }
    if step_decay <= T::zero() || !step_decay.is_finite() {
        return Err(Error::InvalidParameter(format!("step_decay must be positive, got {step_decay}")));
    }

    let d = x.cols();
    let ys: Vec<T> = y.targets();
    let mut scores = vec![T::zero(); ys.len()];
    let mut scratch = Vec::with_capacity(ys.len());

    let mut w = vec![T::zero(); d];
    let b0 = optimal_bias(&scores, &ys, &mut scratch);
    let radius = (T::of(2.0) * c * hinge_sum(&scores, &ys, b0)).sqrt();

    let mut grad = vec![T::zero(); d];
    let mut best = (w.clone(), T::zero(), T::infinity());
    let mut trace = Vec::with_capacity(max_iters);
    let avg_from = max_iters / 2 + 1;
    let mut avg_w = vec![T::zero(); d];
    let mut avg_count = 0usize;

    for t in 1..=max_iters {
        for (s, r) in scores.iter_mut().zip(x.row_iter()) {
            *s = dot(r, &w);
        }
        let b = optimal_bias(&scores, &ys, &mut scratch);
        grad.copy_from_slice(&w);
        let mut hinge = T::zero();
        for ((r, &yi), &s) in x.row_iter().zip(&ys).zip(&scores) {
            let margin = yi * (s + b);
            if margin < T::one() {
                hinge += T::one() - margin;
                let f = c * yi;
                grad.iter_mut().zip(r).for_each(|(g, &xi)| *g -= f * xi);
            }
        }
        let obj = T::of(0.5) * dot(&w, &w) + c * hinge;
        if !obj.is_finite() {
            return Err(Error::NonConvergence(t));
        }
        if obj < best.2 {
            best = (w.clone(), b, obj);
        }
        trace.push(best.2);

        let eta = T::one() / (step_decay * T::of(t as f64));
        w.iter_mut().zip(&grad).for_each(|(wi, &g)| *wi -= eta * g);
        let wn = crate::linalg::norm(&w);
        if wn > radius {
            let s = radius / wn;
            w.iter_mut().for_each(|v| *v *= s);
        }
        if t >= avg_from {
            avg_w.iter_mut().zip(&w).for_each(|(a, &v)| *a += v);
            avg_count += 1;
        }
    }

    let with_bias = |w: Vec<T>, scratch: &mut Vec<(T, bool)>| {
        let scores: Vec<T> = x.row_iter().map(|r| dot(r, &w)).collect();
        let b = optimal_bias(&scores, &ys, scratch);
        LinearModel { weights: Vector::from_vec_unchecked(w), bias: b }
    };

    // the final iterate has not been scored yet
    let last = with_bias(w, &mut scratch);
    let last_obj = hinge_objective(x, y, &last, c);
    if !last_obj.is_finite() {
        return Err(Error::NonConvergence(max_iters + 1));
    }
    if last_obj < best.2 {
        best = (last.weights.to_vec(), last.bias, last_obj);
    }

    let k = T::of(avg_count as f64);
    let averaged = with_bias(avg_w.into_iter().map(|v| v / k).collect(), &mut scratch);
    let avg_obj = hinge_objective(x, y, &averaged, c);
    if avg_obj.is_finite() && avg_obj <= best.2 * T::of(1.01) {
        Ok(MaxMarginFit { model: averaged, objective: avg_obj, best_objective_trace: trace, averaged: true })
    } else {
        let (bw, bb, bo) = best;
        let model = LinearModel { weights: Vector::from_vec_unchecked(bw), bias: bb };
        Ok(MaxMarginFit { model, objective: bo, best_objective_trace: trace, averaged: false })
    }
}

fn hinge_sum<T: Scalar>(scores: &[T], ys: &[T], b: T) -> T {
    scores.iter().zip(ys).map(|(&s, &y)| (T::one() - y * (s + b)).max(T::zero())).sum()
}

/// Minimiser of `b ↦ Σ max(0, 1 − yᵢ(sᵢ + b))` (midpoint of the flat stretch).
///
/// The sum is piecewise linear with a kink at `yᵢ − sᵢ` for every point and
/// slope `−P` far to the left (`P` = number of positives); each kink raises the
/// slope by one, so the slope vanishes between the `P`-th and `(P+1)`-th kinks.
pub fn optimal_bias<T: Scalar>(scores: &[T], ys: &[T], scratch: &mut Vec<(T, bool)>) -> T {
    scratch.clear();
    scratch.extend(scores.iter().zip(ys).map(|(&s, &y)| (y - s, y > T::zero())));
    let positives = scratch.iter().filter(|k| k.1).count();
    debug_assert!(positives > 0 && positives < scratch.len());
    scratch.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite scores"));
    (scratch[positives - 1].0 + scratch[positives].0) * T::of(0.5)
}

/// `sign(wᵀxᵢ + b)` per row, with `sign(0) = +1`.
pub fn predict<T: Scalar>(model: &LinearModel<T>, x: &Matrix<T>) -> Result<Labels> {
    let values = model.decision_values(x)?;
    Ok(Labels(values.into_iter().map(|v| if v >= T::zero() { 1 } else { -1 }).collect()))
}

/// Fraction of mismatched labels.
pub fn zero_one_risk(pred: &Labels, truth: &Labels) -> Result<f64> {
    if pred.len() != truth.len() || pred.is_empty() {
        return Err(Error::DimensionMismatch(format!("{} predictions for {} labels", pred.len(), truth.len())));
    }
    let wrong = pred.0.iter().zip(&truth.0).filter(|(a, b)| a != b).count();
    Ok(wrong as f64 / pred.len() as f64)
}

/// Mean squared difference.
pub fn squared_risk<T: Scalar>(values: &[T], targets: &[T]) -> Result<T> {
    if values.len() != targets.len() || values.is_empty() {
        return Err(Error::DimensionMismatch(format!("{} values for {} targets", values.len(), targets.len())));
    }
    let sum: T = values.iter().zip(targets).map(|(&v, &t)| (v - t) * (v - t)).sum();
    Ok(sum / T::of(values.len() as f64))
}

pub const DEFAULT_MAX_MARGIN_C: f64 = 100.0;
pub const DEFAULT_MAX_MARGIN_ITERS: usize = 20_000;
pub const DEFAULT_STEP_DECAY: f64 = 1.0;
pub const DEFAULT_UNLABELED_COUNT: usize = 400;

/// Which learner to train, with its hyperparameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum LearnerKind {
    Mnlr { rel_tol: f64 },
    Pfld { rel_tol: f64 },
    Ridge { lambda: f64 },
    SemisupPfld { rel_tol: f64, unlabeled_count: usize },
    MaxMargin { c: f64, max_iters: usize, step_decay: f64 },
}

impl LearnerKind {
    pub fn default_name(&self) -> &'static str {
        match self {
            LearnerKind::Mnlr { .. } => "mnlr",
            LearnerKind::Pfld { .. } => "pfld",
            LearnerKind::Ridge { .. } => "ridge",
            LearnerKind::SemisupPfld { .. } => "semisup_pfld",
            LearnerKind::MaxMargin { .. } => "max_margin",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            LearnerKind::Mnlr { rel_tol }
            | LearnerKind::Pfld { rel_tol }
            | LearnerKind::SemisupPfld { rel_tol, .. }
                if !(rel_tol > 0.0 && rel_tol.is_finite()) =>
            {
                bad(format!("rel_tol must be positive, got {rel_tol}"))
            }
            LearnerKind::Ridge { lambda } if !(lambda > 0.0 && lambda.is_finite()) => {
                Err(Error::NonPositiveLambda(lambda))
            }
            LearnerKind::MaxMargin { c, .. } if !(c > 0.0 && c.is_finite()) => {
                bad(format!("c must be positive, got {c}"))
            }
            LearnerKind::MaxMargin { max_iters: 0, .. } => bad("max_iters must be at least 1".into()),
            LearnerKind::MaxMargin { step_decay, .. } if !(step_decay > 0.0 && step_decay.is_finite()) => {
                bad(format!("step_decay must be positive, got {step_decay}"))
            }
            _ => Ok(()),
        }
    }

    /// Unlabelled points this learner consumes (zero for supervised learners).
    pub fn unlabeled_count(&self) -> usize {
        match *self {
            LearnerKind::SemisupPfld { unlabeled_count, .. } => unlabeled_count,
            _ => 0,
        }
    }
}

/// A named learner configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LearnerSpec {
    pub name: String,
    #[serde(flatten)]
    pub kind: LearnerKind,
}

impl LearnerSpec {
    pub fn new(kind: LearnerKind) -> Self {
        Self { name: kind.default_name().to_string(), kind }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn mnlr() -> Self {
        Self::new(LearnerKind::Mnlr { rel_tol: crate::linalg::DEFAULT_REL_TOL })
    }

    pub fn pfld() -> Self {
        Self::new(LearnerKind::Pfld { rel_tol: crate::linalg::DEFAULT_REL_TOL })
    }

    pub fn ridge(lambda: f64) -> Self {
        Self::new(LearnerKind::Ridge { lambda })
    }

    pub fn semisup_pfld(unlabeled_count: usize) -> Self {
        Self::new(LearnerKind::SemisupPfld { rel_tol: crate::linalg::DEFAULT_REL_TOL, unlabeled_count })
    }

    pub fn max_margin() -> Self {
        Self::new(LearnerKind::MaxMargin {
            c: DEFAULT_MAX_MARGIN_C,
            max_iters: DEFAULT_MAX_MARGIN_ITERS,
            step_decay: DEFAULT_STEP_DECAY,
        })
    }

    /// Trains on `(x, y)`; `unlabeled` is only read by the semi-supervised learner,
    /// which uses its first `unlabeled_count` rows.
    pub fn fit<T: Scalar>(&self, x: &Matrix<T>, y: &Labels, unlabeled: Option<&Matrix<T>>) -> Result<LinearModel<T>> {
        match self.kind {
            LearnerKind::Mnlr { rel_tol } => fit_mnlr(x, y, T::of(rel_tol)),
            LearnerKind::Pfld { rel_tol } => fit_pfld(x, y, T::of(rel_tol)),
            LearnerKind::Ridge { lambda } => fit_ridge(x, y, T::of(lambda)),
            LearnerKind::SemisupPfld { rel_tol, unlabeled_count } => {
                let pool = unlabeled.map_or_else(|| Matrix::zeros(0, x.cols()), |u| u.clone());
                if pool.rows() < unlabeled_count {
                    return Err(Error::InvalidParameter(format!(
                        "{unlabeled_count} unlabelled points requested, {} available",
                        pool.rows()
                    )));
                }
                let idx: Vec<usize> = (0..unlabeled_count).collect();
                fit_semisup_pfld(x, y, &pool.select_rows(&idx), T::of(rel_tol))
            }
            LearnerKind::MaxMargin { c, max_iters, step_decay } => {
                fit_max_margin(x, y, T::of(c), max_iters, T::of(step_decay))
            }
        }
    }
}
