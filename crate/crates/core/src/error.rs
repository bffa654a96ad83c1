use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot differentiate formal degree 0")]
    FormalDegreeZero,

    #[error("target degree {target} exceeds formal degree {formal}")]
    TargetDegree { target: usize, formal: usize },

    #[error("formal degrees differ: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("singular Möbius map (ad - bc = 0)")]
    SingularMobius,

    #[error("polynomial is not real-rooted: {real_roots} real roots (with multiplicity) for precise degree {degree}")]
    NotRealRooted { degree: usize, real_roots: usize },

    #[error("incompatible root counts: {left} and {right}")]
    IncompatibleCounts { left: usize, right: usize },

    #[error("push not representable; convert to Empirical first")]
    PushNotRepresentable,

    #[error("bridge degree too small: {degree} / {power} leaves no roots")]
    BridgeDegree { degree: usize, power: String },

    #[error("inverse polar power not available: {0}")]
    InversePowerUnavailable(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("evaluation point must be off the real axis")]
    RealEvaluationPoint,

    #[error("pole collision: {0}")]
    Pole(String),

    #[error("empty root profile")]
    EmptyProfile,

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid config field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
