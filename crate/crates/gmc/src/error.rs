use thiserror::Error;

/// Errors produced by cone construction, measure validation, quadrature and
/// the variational solver.
#[derive(Error, Debug)]
pub enum GmcError {
    #[error("cone is not pointed: {0}")]
    NotPointed(String),

    #[error("cone is not full-dimensional: {0}")]
    NotFullDim(String),

    #[error("unsupported cone description: {0}")]
    Unsupported(String),

    #[error("grid scheme {scheme} is not available for this cone: {reason}")]
    UnsupportedScheme { scheme: String, reason: String },

    #[error("direction is not strictly inside the cone's spherical patch")]
    DirectionOutsideCone,

    #[error("operation requires dimension {required}, cone has dimension {actual}")]
    DimensionUnsupported { required: usize, actual: usize },

    #[error("root bracketing failed: {0}")]
    NoConvergence(String),

    #[error("constraint level {level} is not below the cone mass {beta}; the feasibility radius is unbounded")]
    Unbounded { level: f64, beta: f64 },

    #[error("restriction index set is empty")]
    EmptySubset,

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("co-volume {covolume} exceeds the cone mass {beta}; evaluation is infeasible")]
    InfeasibleEval { covolume: f64, beta: f64 },

    #[error("initialization probe failed after {halvings} halvings (objective never positive)")]
    ProbeFailed { halvings: usize },

    #[error("invalid exhaustion plan: {0}")]
    InvalidPlan(String),

    #[error("exhaustion stage {stage} failed: {reason}")]
    StageFailed { stage: usize, reason: String },

    #[error("problem file error at {field}: {message}")]
    Validation { field: String, message: String },

    #[error("could not parse problem file: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, GmcError>;
