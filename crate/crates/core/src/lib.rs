//! Minimum-norm linear learners and the risk curves they trace around the
//! interpolation threshold.
//!
//! The numerical core ([`linalg`], [`learners`], [`data`], [`oracle`]) is
//! generic over the scalar type; the experiment harness ([`curves`]) and the
//! file formats ([`io`]) work in `f64`.

pub mod curves;
pub mod data;
pub mod error;
pub mod io;
pub mod learners;
pub mod linalg;
pub mod oracle;
pub mod scalar;

pub use error::{Error, ErrorKind, Result};
pub use scalar::Scalar;

pub type Matrix = linalg::Matrix<f64>;
pub type Vector = linalg::Vector<f64>;
pub type SvdFactorization = linalg::SvdFactorization<f64>;
pub type LinearModel = learners::LinearModel<f64>;
pub type Dataset = data::Dataset<f64>;

pub type Matrix32 = linalg::Matrix<f32>;
pub type Vector32 = linalg::Vector<f32>;
pub type LinearModel32 = learners::LinearModel<f32>;
pub type Dataset32 = data::Dataset<f32>;
