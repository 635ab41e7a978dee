use thiserror::Error;

/// Errors raised by the geometry routines.
///
/// Diagnostic operations (validation, identity suites) never return these for
/// a failing identity; they report residuals instead. These variants cover
/// inputs that make an operation meaningless.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("algebra is not unimodular (max |tr ad| = {0:.3e}); invariant codifferential is not the adjoint of d")]
    NotUnimodular(f64),

    #[error("metric is not positive definite")]
    MetricNotPositive,

    #[error("J does not square to -Id (residual {0:.3e})")]
    NotComplexStructure(f64),

    #[error("torus rejected: {0}")]
    BadTorus(String),

    #[error("Samelson construction failed: {0}")]
    Samelson(String),

    #[error("structure is not bi-invariant (residual {0:.3e})")]
    NotBiInvariant(f64),

    #[error("coframe is not orthonormal and J-adapted (residual {0:.3e})")]
    NotAdaptedFrame(f64),

    #[error("Lee form undefined: complex dimension n = {0} (needs n > 1)")]
    LeeFormDegenerate(usize),

    #[error("spec file error: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
