use thiserror::Error;

/// Errors raised by the algebra toolkit.
///
/// Variants mirror the failure modes of the individual operations; callers
/// that need a coarse classification (for example to pick a process exit
/// code) can use [`Error::is_input_error`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("grading error: {0}")]
    Grading(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("characteristic polynomial has a factor without rational roots")]
    IrrationalSpectrum,
    #[error("not nilpotent")]
    NotNilpotent,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    JacobiFailure(usize, usize, usize),
    #[error("map {0} is not a derivation")]
    NotDerivation(usize),
    #[error("derivations {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("derivation {0} is not triangular in the common basis flag")]
    NotTriangular(usize),
    #[error("operation requires a different algebra kind: {0}")]
    WrongKind(String),
    #[error("dimension {dim} exceeds the guard {limit} for this computation")]
    DimensionGuard { dim: usize, limit: usize },
    #[error("diagonal torus is zero; no non-nilpotent extension exists in this basis")]
    ZeroTorus,
    #[error("normalization failed: {0}")]
    InconsistentCorrection(String),
    #[error("not a maximal solvable extension: {0}")]
    NotMaximalExtension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("cancelled")]
    Cancelled,
}

impl Error {
    /// Stable upper-case identifier of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "PARSE_ERROR",
            Error::Grading(_) => "GRADING_ERROR",
            Error::Validation(_) => "VALIDATION_ERROR",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::IrrationalSpectrum => "IRRATIONAL_SPECTRUM",
            Error::NotNilpotent => "NOT_NILPOTENT",
            Error::NotAnIdeal => "NOT_AN_IDEAL",
            Error::JacobiFailure(..) => "JACOBI_FAILURE",
            Error::NotDerivation(_) => "NOT_DERIVATION",
            Error::NotCommuting(..) => "NOT_COMMUTING",
            Error::NotTriangular(_) => "NOT_TRIANGULAR",
            Error::WrongKind(_) => "WRONG_KIND",
            Error::DimensionGuard { .. } => "DIMENSION_GUARD",
            Error::ZeroTorus => "ZERO_TORUS",
            Error::InconsistentCorrection(_) => "INCONSISTENT_CORRECTION",
            Error::NotMaximalExtension(_) => "NOT_MAXIMAL_EXTENSION",
            Error::Singular => "SINGULAR",
            Error::Cancelled => "CANCELLED",
        }
    }

    /// True for errors caused by malformed or unsuitable input files, as
    /// opposed to a mathematical check that ran and failed.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Grading(_)
                | Error::Validation(_)
                | Error::DimensionMismatch { .. }
                | Error::WrongKind(_)
                | Error::DimensionGuard { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
