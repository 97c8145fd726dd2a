use thiserror::Error;

pub type Result<T, E = CcdError> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CcdError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid window: {0}")]
    InvalidWindow(&'static str),

    #[error("displacement {displacement} is not below the window extent {extent}")]
    OutOfDomain { displacement: f64, extent: f64 },

    #[error("need at least {required} points, got {found}")]
    TooFewPoints { required: usize, found: usize },

    #[error("point {0} lies outside the window")]
    OutsideWindow(usize),

    #[error("operation not defined in dimension {0}")]
    UnsupportedDimension(usize),

    #[error("invalid value for `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    #[error("envelope table has no entry for sample size {0}")]
    MissingEnvelope(usize),

    #[error("exhaustive search refused for {found} vertices (limit {limit})")]
    TooLarge { limit: usize, found: usize },

    #[error("rejection sampling gave up after {0} proposals")]
    Infeasible(usize),

    #[error("no fixed-center layout for K={k}, d={d}")]
    UnsupportedLayout { k: usize, d: usize },

    #[error("clustering model has no centers")]
    EmptyModel,
}
