//! Independent reference computations used to cross-check the solvers and
//! the experiment harness: normal equations by elimination, a brute-force
//! minimum-norm search, and closed-form risks for the two-Gaussian family.
//!
//! Nothing here goes through the SVD in [`crate::linalg`].

use crate::data::GaussianSpec;
use crate::error::{Error, Result};
use crate::learners::LinearModel;
use crate::linalg::{dot, norm, Matrix, Vector};
use crate::scalar::Scalar;

/// Ratio below which `AᵀA` is rejected as numerically singular.
pub const NORMAL_EQUATION_EIGEN_GUARD: f64 = 1e-10;

/// Half-width of the coefficient box searched by [`min_norm_bruteforce`].
pub const BRUTEFORCE_BOX: f64 = 3.0;

/// Largest system accepted by [`min_norm_bruteforce`].
pub const BRUTEFORCE_MAX_SHAPE: (usize, usize) = (4, 6);

/// `(AᵀA)⁻¹Aᵀb` by Gaussian elimination with partial pivoting.
pub fn normal_equation_solve<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<Vector<T>> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!("{} rows, rhs of length {}", a.rows(), b.len())));
    }
    if a.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let ata = a.transpose().matmul(a)?;
    let atb = a.tr_matvec(b)?;

    let eig = symmetric_eigenvalues(&ata);
    let hi = eig.iter().fold(T::zero(), |m, &v| m.max(v));
    let lo = eig.iter().fold(T::infinity(), |m, &v| m.min(v));
    if hi <= T::zero() || lo <= T::of(NORMAL_EQUATION_EIGEN_GUARD) * hi {
        let ratio = if hi > T::zero() { (lo / hi).as_f64() } else { 0.0 };
        return Err(Error::SingularSystem(ratio));
    }
    Ok(Vector::from_vec_unchecked(gaussian_elimination(ata, atb)))
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations (unsorted).
pub fn symmetric_eigenvalues<T: Scalar>(sym: &Matrix<T>) -> Vec<T> {
    let n = sym.rows();
    assert_eq!(n, sym.cols(), "square matrix required");
    let mut a = sym.clone();
    for _ in 0..100 {
        let off: T = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)] * a[(p, q)])
            .sum();
        let total: T = (0..n).map(|p| a[(p, p)] * a[(p, p)]).sum::<T>() + off;
        if off <= T::epsilon() * T::epsilon() * total {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (apq + apq);
                let t = theta.signum() / (theta.abs() + T::one().hypot(theta));
                let c = T::one() / T::one().hypot(t);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[(i, i)]).collect()
}

fn gaussian_elimination<T: Scalar>(mut m: Matrix<T>, mut rhs: Vec<T>) -> Vec<T> {
    let n = m.rows();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[(i, col)].abs().partial_cmp(&m[(j, col)].abs()).expect("finite"))
            .expect("non-empty range");
        if pivot != col {
            for k in 0..n {
                let tmp = m[(col, k)];
                m[(col, k)] = m[(pivot, k)];
                m[(pivot, k)] = tmp;
            }
            rhs.swap(col, pivot);
        }
        for r in col + 1..n {
            let f = m[(r, col)] / m[(col, col)];
            if f == T::zero() {
                continue;
            }
            for k in col..n {
                let v = m[(col, k)];
                m[(r, k)] -= f * v;
            }
            let v = rhs[col];
            rhs[r] -= f * v;
        }
    }
    let mut x = vec![T::zero(); n];
    for r in (0..n).rev() {
        let tail: T = (r + 1..n).map(|k| m[(r, k)] * x[k]).sum();
        x[r] = (rhs[r] - tail) / m[(r, r)];
    }
    x
}

/// Grid spacing used by [`min_norm_bruteforce`] for a given candidate count per axis.
pub fn bruteforce_grid_step(candidates: usize) -> f64 {
    2.0 * BRUTEFORCE_BOX / (candidates.max(2) - 1) as f64
}

/// Lowest-norm exact solution found on a grid over the null space.
///
/// A particular solution is taken from the reduced row echelon form (free
/// variables set to zero); the null space gets an orthonormal basis by
/// Gram–Schmidt, and every coefficient combination on a `candidates`-per-axis
/// grid over `[−3, 3]` is evaluated. The returned norm is never below the true
/// minimum, and approaches it as `candidates` grows.
pub fn min_norm_bruteforce<T: Scalar>(a: &Matrix<T>, b: &[T], candidates: usize) -> Result<Vector<T>> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!("{} rows, rhs of length {}", a.rows(), b.len())));
    }
    let (max_r, max_c) = BRUTEFORCE_MAX_SHAPE;
    if a.rows() > max_r || a.cols() > max_c || a.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "brute force handles at most {max_r}x{max_c} systems, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if candidates < 2 {
        return Err(Error::InvalidParameter("need at least 2 candidates per axis".into()));
    }

    let (particular, null_basis) = particular_and_null_space(a, b)?;
    let k = null_basis.len();
    if k == 0 {
        return Ok(Vector::from_vec_unchecked(particular));
    }
    let total = candidates
        .checked_pow(k as u32)
        .filter(|&t| t <= 50_000_000)
        .ok_or_else(|| Error::InvalidParameter(format!("{candidates}^{k} grid points is too many")))?;

    let step = T::of(bruteforce_grid_step(candidates));
    let lo = T::of(-BRUTEFORCE_BOX);
    let mut best = particular.clone();
    let mut best_norm = norm(&particular);
    let mut x = vec![T::zero(); particular.len()];
    for flat in 0..total {
        let mut rem = flat;
        x.copy_from_slice(&particular);
        for basis in &null_basis {
            let c = lo + step * T::of((rem % candidates) as f64);
            rem /= candidates;
            x.iter_mut().zip(basis).for_each(|(xi, &bi)| *xi += c * bi);
        }
        let nx = norm(&x);
        if nx < best_norm {
            best_norm = nx;
            best.copy_from_slice(&x);
        }
    }
    Ok(Vector::from_vec_unchecked(best))
}

fn particular_and_null_space<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<(Vec<T>, Vec<Vec<T>>)> {
    let (m, n) = a.shape();
    let mut r = a.clone();
    let mut rhs = b.to_vec();
    let tiny = T::of(1e-12) * a.max_abs().max(T::one());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let p = (row..m)
            .max_by(|&i, &j| r[(i, col)].abs().partial_cmp(&r[(j, col)].abs()).expect("finite"))
            .expect("non-empty range");
        if r[(p, col)].abs() <= tiny {
            continue;
        }
        for k in 0..n {
            let tmp = r[(row, k)];
            r[(row, k)] = r[(p, k)];
            r[(p, k)] = tmp;
        }
        rhs.swap(row, p);
        let inv = T::one() / r[(row, col)];
        for k in 0..n {
            r[(row, k)] *= inv;
        }
        rhs[row] *= inv;
        for i in 0..m {
            if i != row {
                let f = r[(i, col)];
                if f != T::zero() {
                    for k in 0..n {
                        let v = r[(row, k)];
                        r[(i, k)] -= f * v;
                    }
                    let v = rhs[row];
                    rhs[i] -= f * v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let scale = norm(b).max(T::one());
    let residual = rhs[row..].iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    if residual > T::of(1e-9) * scale {
        return Err(Error::InconsistentSystem(residual.as_f64()));
    }

    let mut particular = vec![T::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = rhs[i];
    }
    let mut basis: Vec<Vec<T>> = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![T::zero(); n];
        v[free] = T::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -r[(i, free)];
        }
        for _ in 0..2 {
            for q in &basis {
                let d = dot(&v, q);
                v.iter_mut().zip(q).for_each(|(vi, &qi)| *vi -= d * qi);
            }
        }
        let nv = norm(&v);
        if nv > T::of(1e-8) {
            basis.push(v.into_iter().map(|x| x / nv).collect());
        }
    }
    Ok((particular, basis))
}

/// Standard normal CDF, `Φ(x) = ½·erfc(−x/√2)`.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Equal-prior classes `Normal(±μ, I)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticProblem<T> {
    pub mu: Vector<T>,
}

impl<T: Scalar> AnalyticProblem<T> {
    pub fn new(mu: Vector<T>) -> Self {
        Self { mu }
    }

    /// The problem seen through the first `n_features` coordinates of a generator.
    pub fn from_spec(spec: &GaussianSpec, n_features: usize) -> Self {
        let mean = spec.class_mean::<T>();
        let m = n_features.min(mean.len());
        Self { mu: Vector::from_vec_unchecked(mean[..m].to_vec()) }
    }

    pub fn risk(&self, model: &LinearModel<T>) -> Result<f64> {
        analytic_gaussian_risk(model, &self.mu)
    }

    /// Risk of the optimal rule `sign(μᵀx)`: `Φ(−‖μ‖)`.
    pub fn bayes_risk(&self) -> f64 {
        std_normal_cdf(-self.mu.norm().as_f64())
    }
}

/// Expected 0–1 risk of `sign(wᵀx + b)` under equal-prior `Normal(±μ, I)`.
///
/// A zero weight vector is scored 0.5 regardless of the bias.
pub fn analytic_gaussian_risk<T: Scalar>(model: &LinearModel<T>, mu: &[T]) -> Result<f64> {
    if model.weights.len() != mu.len() {
        return Err(Error::DimensionMismatch(format!(
            "model has {} weights, mean has {} coordinates",
            model.weights.len(),
            mu.len()
        )));
    }
    let w: Vec<f64> = model.weights.iter().map(|v| v.as_f64()).collect();
    let wn = norm(&w);
    if wn == 0.0 {
        return Ok(0.5);
    }
    let mu: Vec<f64> = mu.iter().map(|v| v.as_f64()).collect();
    let proj = dot(&w, &mu) / wn;
    let b = model.bias.as_f64() / wn;
    Ok(0.5 * std_normal_cdf(-(proj + b)) + 0.5 * std_normal_cdf(-(proj - b)))
}

/// Bayes risk of the first-`m`-features problem of a generator: `Φ(−δ·√(min(m,k)/k))`.
pub fn prefix_bayes_risk(spec: &GaussianSpec, m: usize) -> f64 {
    let k = spec.informative as f64;
    let used = m.min(spec.informative) as f64;
    std_normal_cdf(-spec.separation * (used / k).sqrt())
}
