use core::fmt;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The requested operation needs arithmetic the algebra does not
    /// support (sampling and matrix products are only defined for β ≤ 4).
    UnsupportedAlgebra { beta: u32 },
    /// Matrix shapes are incompatible for the requested operation.
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// The two operands live over different algebras.
    AlgebraMismatch,
    /// A pivot column collapsed during orthonormalization.
    DegenerateInput,
    /// The matrix fails the `‖B − B*‖_max ≤ tol` contract.
    NonHermitian { deviation: f64 },
    /// A generalized Pochhammer parameter violates its domain condition or
    /// produces a zero denominator factor.
    PochhammerDomain { a: f64 },
    /// Multivariate gamma evaluated at or beyond a pole.
    GammaDomain { a: f64 },
    /// A series or partition sum was requested beyond the table weight.
    TableTooSmall { needed: usize, have: usize },
    /// The truncated series tail is too large for the requested comparison.
    TruncationTooCoarse { last_shell: f64 },
    /// Partitions of different weights were compared under dominance.
    WeightMismatch,
    /// Catch-all for argument contract violations.
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedAlgebra { beta } => {
                write!(f, "operation not supported for algebra with beta = {beta}")
            }
            Error::ShapeMismatch { left, right } => write!(
                f,
                "incompatible shapes {}x{} and {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::AlgebraMismatch => write!(f, "operands belong to different algebras"),
            Error::DegenerateInput => write!(f, "input is numerically rank deficient"),
            Error::NonHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (max deviation {deviation:e})")
            }
            Error::PochhammerDomain { a } => {
                write!(f, "generalized Pochhammer parameter {a} out of domain")
            }
            Error::GammaDomain { a } => {
                write!(f, "multivariate gamma parameter {a} at or beyond a pole")
            }
            Error::TableTooSmall { needed, have } => {
                write!(f, "Jack table of weight {have} too small, need {needed}")
            }
            Error::TruncationTooCoarse { last_shell } => {
                write!(f, "series truncation too coarse (last shell {last_shell:e})")
            }
            Error::WeightMismatch => write!(f, "partitions have different weights"),
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
        }
    }
}

impl core::error::Error for Error {}
