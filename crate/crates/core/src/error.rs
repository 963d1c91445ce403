use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite entry at position {0}")]
    NonFinite(usize),
    #[error("empty matrix")]
    EmptyMatrix,
    #[error("singular value decomposition did not converge after {0} sweeps")]
    ConvergenceFailure(usize),
    #[error("lambda must be positive, got {0}")]
    NonPositiveLambda(f64),
    #[error("training labels contain a single class")]
    SingleClassInput,
    #[error("max-margin objective became non-finite at iteration {0}")]
    NonConvergence(usize),
    #[error("label must be -1 or +1, got {0}")]
    InvalidLabel(f64),
    #[error("sample size must be even and at least 2, got {0}")]
    OddSampleSize(usize),
    #[error("{what} = {value} out of range {range}")]
    OutOfRange { what: &'static str, value: String, range: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("missing file {}", .0.display())]
    MissingFile(PathBuf),
    #[error("non-numeric feature {value:?} at row {row}, column {column:?}")]
    NonNumericFeature { row: usize, column: String, value: String },
    #[error("label column {0:?} has more than two classes")]
    MoreThanTwoClasses(String),
    #[error("malformed csv: {0}")]
    MalformedCsv(String),
    #[error("normal equations are singular (eigenvalue ratio {0:e})")]
    SingularSystem(f64),
    #[error("linear system is inconsistent (residual {0:e})")]
    InconsistentSystem(f64),
    #[error("grid value {value} exceeds data dimension {dim}")]
    GridExceedsDimension { value: usize, dim: usize },
    #[error("peak detection needs at least 3 grid points, got {0}")]
    TooFewPoints(usize),
    #[error("unknown learner {0:?}")]
    UnknownLearner(String),
    #[error("learner {learner:?} failed at {x_name}={x_value}, rep {rep}: {source}")]
    Learner {
        learner: String,
        x_name: &'static str,
        x_value: f64,
        rep: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown configuration key {0:?}")]
    UnknownKey(String),
    #[error("invalid configuration field {field:?}: {reason}")]
    InvariantViolation { field: String, reason: String },
    #[error("i/o error on {}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Coarse failure class, used by the command line to pick an exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Numerical,
    Io,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. }
            | Error::UnknownKey(_)
            | Error::InvariantViolation { .. }
            | Error::UnknownLearner(_)
            | Error::GridExceedsDimension { .. }
            | Error::MissingFile(_)
            | Error::NonNumericFeature { .. }
            | Error::MoreThanTwoClasses(_)
            | Error::MalformedCsv(_)
            | Error::InvalidParameter(_)
            | Error::OddSampleSize(_)
            | Error::OutOfRange { .. } => ErrorKind::Config,
            Error::Io { .. } => ErrorKind::Io,
            Error::Learner { source, .. } => source.kind(),
            _ => ErrorKind::Numerical,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn out_of_range(what: &'static str, value: impl ToString, range: impl ToString) -> Self {
        Error::OutOfRange { what, value: value.to_string(), range: range.to_string() }
    }
}
