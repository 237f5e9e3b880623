use thiserror::Error;

/// Library-wide error type.
///
/// Solver outcomes that are mathematically meaningful (no solution exists,
/// the closed form does not apply) are carried here as structured variants so
/// callers can branch on them without string matching.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("order {n} exceeds the supported maximum {max}")]
    OrderOverflow { n: u32, max: u32 },

    #[error("argument out of range: {0}")]
    Range(String),

    #[error("invalid material: {0}")]
    InvalidMaterial(String),

    #[error("temporal separation constant tau must be nonzero")]
    TauZero,

    #[error("kappa = 0 is outside this branch; use the decoupled axial pair")]
    KappaZero,

    #[error("kappa = 0 not allowed here; use the decoupled-pair builder")]
    KappaZeroNotAllowed,

    #[error("angular separation constant {eta_theta} > 0 requires an integer order; sqrt = {sqrt}")]
    NonIntegerOrder { eta_theta: f64, sqrt: f64 },

    #[error("field is singular on the axis r = 0")]
    AxisSingularity,

    #[error("stress/strain closed forms require an axisymmetric family (n = 0), got n = {n}")]
    NotAxisymmetric { n: u32 },

    #[error("boundary system is ill-conditioned: |det| = {det:.3e} against scale {scale:.3e}")]
    IllConditioned { det: f64, scale: f64 },

    #[error("no solution: {reason}")]
    NoSolution { reason: String },

    #[error("lambda = 0 is excluded here: {0}")]
    LambdaZeroExcluded(String),

    #[error("free constant required but the supplied value is unusable: {0}")]
    MissingFreeParameter(String),

    #[error("parameters are off the closed-form surface: {report}")]
    NotClosedForm { report: String },

    #[error("end data incompatible with the closed-form solution: {0}")]
    IncompatibleEndData(String),

    #[error("sample domain too small: {0}")]
    DomainTooSmall(String),
}

pub type Result<T> = std::result::Result<T, Error>;
