use thiserror::Error;

pub type Result<T> = std::result::Result<T, FrameError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("matrix shape {rows}x{cols} is invalid (both dimensions must be positive)")]
    EmptyShape { rows: usize, cols: usize },

    #[error("expected {expected} entries for the given shape, found {found}")]
    EntryCount { expected: usize, found: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |M - M*| = {deviation:e} exceeds {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("matrix is not invertible: smallest eigenvalue {min_eigenvalue:e} <= {threshold:e}")]
    NotInvertible { min_eigenvalue: f64, threshold: f64 },

    #[error("input vectors span only the zero subspace")]
    ZeroSpan,

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a frame: lower frame bound {lower_bound:e} <= {tolerance:e}")]
    NotAFrame { lower_bound: f64, tolerance: f64 },

    #[error("frame vector {index} leaves the subspace: residual {residual:e} exceeds {tolerance:e}")]
    NotContained {
        index: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("vector is not in the subspace: out-of-subspace residual norm {residual:e} exceeds {tolerance:e}")]
    NotInSubspace { residual: f64, tolerance: f64 },

    #[error("frame does not span the subspace: lower bound of the coordinate frame {lower_bound:e} <= {tolerance:e}")]
    DoesNotSpan { lower_bound: f64, tolerance: f64 },
}

pub(crate) fn check_tolerance(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(FrameError::InvalidTolerance(tol))
    }
}
