use crate::error::{Error, Result};
use crate::linalg::matrix::{Matrix, Vector};
use crate::linalg::svd::{thin_svd, SvdFactorization};
use crate::scalar::Scalar;

/// Singular values at or below this fraction of the largest are treated as zero.
pub const DEFAULT_REL_TOL: f64 = 1e-10;

fn check_rhs<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<()> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    if let Some(pos) = b.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(pos));
    }
    Ok(())
}

fn check_tol<T: Scalar>(rel_tol: T) -> Result<()> {
    if rel_tol > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("rel_tol must be positive, got {rel_tol}")))
    }
}

/// Minimum-norm least-squares solution `A⁺·b` via the rank-truncated SVD.
///
/// A zero (or numerically zero) matrix yields `w = 0`.
pub fn min_norm_least_squares<T: Scalar>(a: &Matrix<T>, b: &[T], rel_tol: T) -> Result<Vector<T>> {
    check_rhs(a, b)?;
    check_tol(rel_tol)?;
    if a.is_empty() {
        return Ok(Vector::zeros(a.cols()));
    }
    let svd = thin_svd(a)?;
    Ok(min_norm_from_svd(&svd, b, rel_tol))
}

pub fn min_norm_from_svd<T: Scalar>(svd: &SvdFactorization<T>, b: &[T], rel_tol: T) -> Vector<T> {
    let rank = svd.rank(rel_tol);
    Vector::from_vec_unchecked(svd.apply_filtered(b, rank, |s| T::one() / s))
}

/// Unique minimiser of `‖Aw − b‖² + λ‖w‖²`, computed as `V·diag(sᵢ/(sᵢ²+λ))·Uᵀ·b`.
pub fn ridge_least_squares<T: Scalar>(a: &Matrix<T>, b: &[T], lambda: T) -> Result<Vector<T>> {
    check_rhs(a, b)?;
    check_lambda(lambda)?;
    if a.is_empty() {
        return Ok(Vector::zeros(a.cols()));
    }
    let svd = thin_svd(a)?;
    Ok(ridge_from_svd(&svd, b, lambda))
}

pub fn ridge_from_svd<T: Scalar>(svd: &SvdFactorization<T>, b: &[T], lambda: T) -> Vector<T> {
    let k = svd.singular_values.len();
    Vector::from_vec_unchecked(svd.apply_filtered(b, k, |s| s / (s * s + lambda)))
}

pub(crate) fn check_lambda<T: Scalar>(lambda: T) -> Result<()> {
    if lambda > T::zero() && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveLambda(lambda.as_f64()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::norm;
    use crate::oracle::normal_equation_solve;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[f64]]) -> Matrix<f64> {
        Matrix::from_rows(rows).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn pinv_examples() {
        let w = min_norm_least_squares(&m(&[&[1.0, 1.0]]), &[2.0], 1e-10).unwrap();
        assert!(close(&w, &[1.0, 1.0], 1e-14));
        let w = min_norm_least_squares(&Matrix::identity(2), &[3.0, 4.0], 1e-10).unwrap();
        assert!(close(&w, &[3.0, 4.0], 1e-14));
        let w = min_norm_least_squares(&m(&[&[2.0, 0.0], &[0.0, 0.0]]), &[4.0, 5.0], 1e-10).unwrap();
        assert!(close(&w, &[2.0, 0.0], 1e-14));
    }

    #[test]
    fn zero_matrix_gives_zero_solution() {
        let a = Matrix::<f64>::zeros(3, 2);
        let w = min_norm_least_squares(&a, &[1.0, -2.0, 3.0], 1e-10).unwrap();
        assert_eq!(&*w, &[0.0, 0.0]);
        let residual: Vec<f64> = a.matvec(&w).unwrap().iter().zip([1.0, -2.0, 3.0]).map(|(p, b)| b - p).collect();
        assert!((norm(&residual) - 14f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn input_errors() {
        let a = Matrix::<f64>::identity(2);
        assert!(matches!(min_norm_least_squares(&a, &[1.0], 1e-10), Err(Error::DimensionMismatch(_))));
        assert!(matches!(ridge_least_squares(&a, &[1.0], 1.0), Err(Error::DimensionMismatch(_))));
        assert!(matches!(ridge_least_squares(&a, &[1.0, 2.0], 0.0), Err(Error::NonPositiveLambda(_))));
        assert!(matches!(ridge_least_squares(&a, &[1.0, 2.0], -1.0), Err(Error::NonPositiveLambda(_))));
        assert!(min_norm_least_squares(&a, &[1.0, 2.0], 0.0).is_err());
    }

    #[test]
    fn ridge_examples() {
        let w = ridge_least_squares(&m(&[&[1.0], &[1.0]]), &[1.0, 1.0], 2.0).unwrap();
        assert!(close(&w, &[0.5], 1e-15));
        let w = ridge_least_squares(&Matrix::identity(2), &[2.0, 4.0], 1.0).unwrap();
        assert!(close(&w, &[1.0, 2.0], 1e-15));

        let a = m(&[&[1.0, 2.0], &[0.5, -1.0], &[3.0, 0.0]]);
        let b = [1.0, 2.0, -1.0];
        let w = ridge_least_squares(&a, &b, 1e12).unwrap();
        let bound = norm(&a.tr_matvec(&b).unwrap()) / 1e12;
        assert!(w.norm() <= bound);
    }

    #[test]
    fn ridge_matches_regularised_normal_equations() {
        // (AᵀA + λI) w = Aᵀb solved as an augmented least-squares problem [A; √λ I] w = [b; 0]
        let a = m(&[&[1.0, 2.0, 0.0], &[0.5, -1.0, 2.0], &[3.0, 0.0, 1.0], &[1.0, 1.0, 1.0]]);
        let b = [1.0, 2.0, -1.0, 0.5];
        let lambda: f64 = 0.3;
        let stacked = a.vstack(&Matrix::identity(3).scaled(lambda.sqrt())).unwrap();
        let mut rhs = b.to_vec();
        rhs.extend([0.0; 3]);
        let expected = normal_equation_solve(&stacked, &rhs).unwrap();
        let w = ridge_least_squares(&a, &b, lambda).unwrap();
        assert!(close(&w, &expected, 1e-12));
    }

    #[test]
    fn ridge_tends_to_pinv() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (rows, cols) in [(8, 3), (3, 7), (5, 5)] {
            let a = Matrix::new(rows, cols, (0..rows * cols).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap();
            let b: Vec<f64> = (0..rows).map(|_| rng.random_range(-1.0..1.0)).collect();
            let pinv = min_norm_least_squares(&a, &b, 1e-10).unwrap();
            let ridge = ridge_least_squares(&a, &b, 1e-12).unwrap();
            assert!(close(&pinv, &ridge, 1e-6), "{rows}x{cols}");
        }
    }

    #[test]
    fn overdetermined_matches_normal_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = Matrix::new(5, 3, (0..15).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap();
        let b: Vec<f64> = (0..5).map(|_| rng.random_range(-1.0..1.0)).collect();
        let w = min_norm_least_squares(&a, &b, 1e-10).unwrap();
        let oracle = normal_equation_solve(&a, &b).unwrap();
        assert!(close(&w, &oracle, 1e-8));
    }

    proptest! {
        #[test]
        fn null_space_perturbations_increase_norm(
            entries in prop::collection::vec(-1.0f64..1.0, 12),
            x in prop::collection::vec(-1.0f64..1.0, 6),
            coef in prop::collection::vec(-1.0f64..1.0, 6),
            scale in 1e-6f64..3.0,
        ) {
            let a = Matrix::new(2, 6, entries).unwrap();
            let b = a.matvec(&x).unwrap();
            let svd = thin_svd(&a).unwrap();
            let w = min_norm_from_svd(&svd, &b, 1e-10);
            // project a random direction onto the null space of A: v - A⁺A v
            let av = a.matvec(&coef).unwrap();
            let back = min_norm_from_svd(&svd, &av, 1e-10);
            let null: Vec<f64> = coef.iter().zip(back.iter()).map(|(c, p)| c - p).collect();
            let nn = norm(&null);
            prop_assume!(nn > 1e-3);
            let v: Vec<f64> = null.iter().map(|e| e * scale / nn).collect();
            let perturbed: Vec<f64> = w.iter().zip(&v).map(|(a, b)| a + b).collect();
            prop_assert!(norm(&perturbed) > w.norm());
        }

        #[test]
        fn ridge_shrinks_monotonically(
            entries in prop::collection::vec(-2.0f64..2.0, 12),
            b in prop::collection::vec(-2.0f64..2.0, 4),
            l1 in 1e-6f64..10.0,
            factor in 1.0f64..100.0,
        ) {
            let a = Matrix::new(4, 3, entries).unwrap();
            let w1 = ridge_least_squares(&a, &b, l1).unwrap();
            let w2 = ridge_least_squares(&a, &b, l1 * factor).unwrap();
            prop_assert!(w2.norm() <= w1.norm() * (1.0 + 1e-12));
        }
    }
}
