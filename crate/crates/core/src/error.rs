use thiserror::Error;

/// Errors produced by validation and by operations whose preconditions fail.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("structure constants are not antisymmetric (residual {residual:.3e})")]
    NotAntisymmetric { residual: f64 },

    #[error("Jacobi identity violated (residual {residual:.3e})")]
    JacobiViolated { residual: f64 },

    #[error("metric matrix is not symmetric (asymmetry {asymmetry:.3e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("metric is not positive definite (eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("deformation field is degenerate (norm {norm:.3e} below tolerance)")]
    DegenerateField { norm: f64 },

    #[error("Randers bound violated: |X| = {norm} must be < 1")]
    RandersBound { norm: f64 },

    #[error(
        "deformed-metric validity bound violated: |X|(1+|X|) = {bound} must be < 1 \
         (sqrt of g_X(X,X))"
    )]
    DeformedBound { bound: f64 },

    #[error("input is not of Douglas type (normalized residual {residual:.3e})")]
    NotDouglas { residual: f64 },

    #[error(
        "input is not of Berwald type (douglas residual {douglas_residual:.3e}, \
         berwald residual {berwald_residual:.3e})"
    )]
    NotBerwald {
        douglas_residual: f64,
        berwald_residual: f64,
    },

    #[error("degenerate plane: spanning vectors are linearly dependent")]
    DegeneratePlane,

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
