use thiserror::Error;

/// Errors raised by the geometry, correction and estimation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("squared length must be non-negative, got {0}")]
    NegativeLength(f64),

    #[error("direction is not tangent to the surface (normal component {residual:e})")]
    NotTangent { residual: f64 },

    #[error("no unique geodesic between the given points")]
    AmbiguousGeodesic,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("squared chord {chord_sq} is inconsistent with |dx|^2 = {delta_sq}")]
    InconsistentChord { chord_sq: f64, delta_sq: f64 },

    #[error("geodesic left the chart domain after arclength {arclen}")]
    ChartEscape { arclen: f64 },

    #[error("newton solve did not converge after {iterations} iterations (residual {residual_norm:e})")]
    NonConvergence { residual_norm: f64, iterations: usize },

    #[error("singular jacobian: degenerate vertex star")]
    SingularJacobian,

    #[error("invalid vertex star: {0}")]
    InvalidStar(String),

    #[error("slope fit: {0}")]
    SlopeFit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
