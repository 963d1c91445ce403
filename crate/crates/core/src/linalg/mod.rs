//! Dense linear algebra: matrices, thin SVD and SVD-backed least squares.

mod lstsq;
mod matrix;
mod svd;

pub(crate) use lstsq::check_lambda;
pub use lstsq::{min_norm_from_svd, min_norm_least_squares, ridge_from_svd, ridge_least_squares, DEFAULT_REL_TOL};
pub use matrix::{dot, norm, Matrix, Vector};
pub use svd::{numeric_rank, thin_svd, thin_svd_with_sweeps, SvdFactorization, DEFAULT_MAX_SWEEPS};
