use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate mode label `{0}`")]
    DuplicateLabel(String),
    #[error("mode `{0}` has cutoff 0; every cutoff must be at least 1")]
    ZeroCutoff(String),
    #[error("space has no factors")]
    EmptySpace,
    #[error("unknown mode label `{0}`")]
    UnknownLabel(String),
    #[error("factor position {position} out of range for a {factors}-factor space")]
    FactorOutOfRange { position: usize, factors: usize },
    #[error("operands live on different spaces")]
    SpaceMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation needs a two-factor space, found {0} factors")]
    NotTwoFactor(usize),
    #[error("two-factor space has unequal cutoffs {0} and {1}")]
    UnequalCutoffs(usize, usize),
    #[error("keep set must be a nonempty proper subset of the factors")]
    InvalidKeepSet,
    #[error("state norm {norm} is not 1 within tolerance")]
    NotNormalized { norm: f64 },
    #[error("matrix is not a valid density matrix: {0}")]
    NotDensityMatrix(String),
    #[error(
        "matrix exponential series did not settle: order doubling changed the result by {change:e}"
    )]
    ExpNotConverged { change: f64 },
    #[error("invalid deformation parameter q = {re}{im:+}i: q must be real or of unit modulus")]
    InvalidDeformation { re: f64, im: f64 },
    #[error("theta = 0 makes ln sinh^2(theta) diverge; the entropy operator is undefined there")]
    DegenerateTheta,
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("coproduct combination and closed Bogoliubov form disagree by {deviation:e}")]
    TwistedAdjointMismatch { deviation: f64 },
    #[error("translated operator deviates by {deviation:e} (tolerance {tolerance:e}); truncation tail estimate {tail:e}")]
    TranslationBreach {
        deviation: f64,
        tolerance: f64,
        tail: f64,
    },
    #[error("truncation tail {tail:e} at cutoff {cutoff} exceeds the bound {bound:e}")]
    TailBound {
        tail: f64,
        cutoff: usize,
        bound: f64,
    },
    #[error("vacuum constructions disagree: {0}")]
    ConstructionMismatch(String),
    #[error("vacua have different layouts")]
    LayoutMismatch,
    #[error("time {t} is not interior to the schedule grid")]
    BoundaryTime { t: f64 },
    #[error("schedule drives theta through zero or below (theta = {theta} at t = {t})")]
    ThetaNotPositive { t: f64, theta: f64 },
    #[error("root bracket [{lo}, {hi}] does not contain a sign change")]
    NoBracket { lo: f64, hi: f64 },
    #[error("serialization: {0}")]
    Serialization(String),
}
