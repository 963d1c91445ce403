//! Thin singular value decomposition by one-sided (Hestenes) Jacobi rotations.
//!
//! The rotations orthogonalise the columns of the taller orientation of the
//! input; column norms converge to the singular values and the accumulated
//! rotations form the right singular vectors. Convergence is declared once a
//! full sweep applies no rotation, i.e. every column pair is orthogonal to
//! working precision relative to the column norms.

use crate::error::{Error, Result};
use crate::linalg::matrix::{dot, norm, Matrix, Vector};
use crate::scalar::Scalar;

pub const DEFAULT_MAX_SWEEPS: usize = 60;

/// `A = U·diag(s)·Vᵀ` with `k = min(rows, cols)` retained triplets.
#[derive(Clone, Debug)]
pub struct SvdFactorization<T> {
    /// rows × k, orthonormal columns
    pub u: Matrix<T>,
    /// length k, non-negative and non-increasing
    pub singular_values: Vector<T>,
    /// cols × k, orthonormal columns
    pub v: Matrix<T>,
}

impl<T: Scalar> SvdFactorization<T> {
    pub fn rank(&self, rel_tol: T) -> usize {
        numeric_rank(&self.singular_values, rel_tol)
    }

    /// `U·diag(s)·Vᵀ`
    pub fn reconstruct(&self) -> Matrix<T> {
        let (m, k) = self.u.shape();
        let n = self.v.rows();
        let mut out = Matrix::zeros(m, n);
        for l in 0..k {
            let s = self.singular_values[l];
            if s == T::zero() {
                continue;
            }
            for i in 0..m {
                let us = self.u[(i, l)] * s;
                for j in 0..n {
                    out[(i, j)] += us * self.v[(j, l)];
                }
            }
        }
        out
    }

    /// Applies `V·diag(f(sᵢ))·Uᵀ` to `b`, summing only the first `rank` triplets.
    pub(crate) fn apply_filtered(&self, b: &[T], rank: usize, filter: impl Fn(T) -> T) -> Vec<T> {
        let n = self.v.rows();
        let mut w = vec![T::zero(); n];
        for l in 0..rank {
            let s = self.singular_values[l];
            let ub = (0..self.u.rows()).fold(T::zero(), |acc, i| acc + self.u[(i, l)] * b[i]);
            let coef = ub * filter(s);
            for (j, wj) in w.iter_mut().enumerate() {
                *wj += self.v[(j, l)] * coef;
            }
        }
        w
    }

    /// Rank-truncated Moore–Penrose inverse `V·diag(1/sᵢ)·Uᵀ` (cols × rows).
    pub fn pseudo_inverse(&self, rel_tol: T) -> Matrix<T> {
        let rank = self.rank(rel_tol);
        let (m, n) = (self.u.rows(), self.v.rows());
        let mut out = Matrix::zeros(n, m);
        for l in 0..rank {
            let inv = T::one() / self.singular_values[l];
            for i in 0..n {
                let vi = self.v[(i, l)] * inv;
                for j in 0..m {
                    out[(i, j)] += vi * self.u[(j, l)];
                }
            }
        }
        out
    }
}

/// Number of singular values strictly above `rel_tol · s₀`.
pub fn numeric_rank<T: Scalar>(s: &[T], rel_tol: T) -> usize {
    match s.first() {
        Some(&s0) if s0 > T::zero() => {
            let cut = rel_tol * s0;
            s.iter().take_while(|&&v| v > cut).count()
        }
        _ => 0,
    }
}

pub fn thin_svd<T: Scalar>(a: &Matrix<T>) -> Result<SvdFactorization<T>> {
    thin_svd_with_sweeps(a, DEFAULT_MAX_SWEEPS)
}

pub fn thin_svd_with_sweeps<T: Scalar>(a: &Matrix<T>, max_sweeps: usize) -> Result<SvdFactorization<T>> {
    if a.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let wide = a.rows() < a.cols();
    let tall = if wide { a.transpose() } else { a.clone() };
    let (m, n) = tall.shape();

    // Inner products of entries near the overflow or underflow limits are
    // not representable; rescale by an exact power of two first.
    let max_abs = tall.max_abs();
    let safe_hi = T::max_value().sqrt() / T::of((2 * m) as f64);
    let safe_lo = T::min_positive_value().sqrt() * T::of((2 * m) as f64);
    let pow2 = if max_abs > safe_hi || (max_abs > T::zero() && max_abs < safe_lo) {
        T::of(2.0).powi(max_abs.log2().floor().to_i32().expect("finite exponent"))
    } else {
        T::one()
    };
    let tall = if pow2 == T::one() {
        tall
    } else {
        Matrix::from_vec_unchecked(m, n, tall.as_slice().iter().map(|&x| x / pow2).collect())
    };

    let mut cols: Vec<Vec<T>> = (0..n).map(|j| tall.column(j)).collect();
    let mut rot: Vec<Vec<T>> = (0..n)
        .map(|j| {
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            e
        })
        .collect();

    let tol = T::epsilon();
    let mut converged = n < 2;
    for _ in 0..max_sweeps {
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let (alpha, beta, gamma) = {
                    let (cp, cq) = (&cols[p], &cols[q]);
                    (dot(cp, cp), dot(cq, cq), dot(cp, cq))
                };
                if alpha == T::zero() || beta == T::zero() || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (gamma + gamma);
                let t = zeta.signum() / (zeta.abs() + T::one().hypot(zeta));
                let c = T::one() / T::one().hypot(t);
                let s = c * t;
                rotate(&mut cols, p, q, c, s);
                rotate(&mut rot, p, q, c, s);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure(max_sweeps));
    }

    let norms: Vec<T> = cols.iter().map(|c| norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).expect("finite norms"));
    let s_max = norms[order[0]];
    let reortho_below = s_max * T::epsilon().sqrt();

    let mut left: Vec<Vec<T>> = Vec::with_capacity(n);
    for &j in &order {
        let sj = norms[j];
        let mut u: Vec<T> = if sj.is_normal() { cols[j].iter().map(|&x| x / sj).collect() } else { vec![T::zero(); m] };
        if !sj.is_normal() || sj <= reortho_below {
            u = orthonormal_completion(u, &left);
        }
        left.push(u);
    }

    let singular: Vec<T> = order.iter().map(|&j| norms[j] * pow2).collect();
    if let Some(pos) = singular.iter().position(|s| !s.is_finite()) {
        return Err(Error::NonFinite(pos));
    }
    let u_tall = columns_to_matrix(&left, m);
    let v_tall = columns_to_matrix(&order.iter().map(|&j| rot[j].clone()).collect::<Vec<_>>(), n);

    let (u, v) = if wide { (v_tall, u_tall) } else { (u_tall, v_tall) };
    Ok(SvdFactorization { u, singular_values: Vector::from_vec_unchecked(singular), v })
}

fn rotate<T: Scalar>(cols: &mut [Vec<T>], p: usize, q: usize, c: T, s: T) {
    let (head, tail) = cols.split_at_mut(q);
    let (cp, cq) = (&mut head[p], &mut tail[0]);
    for (xp, xq) in cp.iter_mut().zip(cq.iter_mut()) {
        let (a, b) = (*xp, *xq);
        *xp = c * a - s * b;
        *xq = s * a + c * b;
    }
}

/// Orthogonalises `u` against `basis` (two Gram–Schmidt passes) and normalises it,
/// falling back to canonical vectors when `u` carries no usable direction.
fn orthonormal_completion<T: Scalar>(u: Vec<T>, basis: &[Vec<T>]) -> Vec<T> {
    let m = u.len();
    let project_out = |mut x: Vec<T>| {
        for _ in 0..2 {
            for b in basis {
                let c = dot(&x, b);
                x.iter_mut().zip(b).for_each(|(xi, &bi)| *xi -= c * bi);
            }
        }
        x
    };
    let half = T::of(0.5);
    let start = norm(&u);
    let x = project_out(u);
    let nx = norm(&x);
    if start > T::zero() && nx > half * start {
        return x.into_iter().map(|v| v / nx).collect();
    }
    for k in 0..m {
        let mut e = vec![T::zero(); m];
        e[k] = T::one();
        let x = project_out(e);
        let nx = norm(&x);
        if nx > half {
            return x.into_iter().map(|v| v / nx).collect();
        }
    }
    unreachable!("basis of {} vectors cannot span R^{m}", basis.len())
}

fn columns_to_matrix<T: Scalar>(cols: &[Vec<T>], rows: usize) -> Matrix<T> {
    let mut out = Matrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, &v) in c.iter().enumerate() {
            out[(i, j)] = v;
        }
    }
    out
}
