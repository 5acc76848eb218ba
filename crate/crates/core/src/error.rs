use thiserror::Error;

/// Errors raised by the kneading toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid kneading sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid angle: {0}")]
    InvalidAngle(String),

    #[error("horizon must be at least 1")]
    ZeroHorizon,

    #[error("the trivial sequence (*) is not accepted here")]
    TrivialSequence,

    #[error("operation requires a *-periodic sequence")]
    NotStarPeriodic,

    #[error("periodic sequence without * has no critical orbit: {0}")]
    PeriodicWithoutStar(String),

    #[error("sequence contains * where a *-free sequence is required")]
    UnexpectedStar,

    #[error("invalid internal address: {0}")]
    InvalidAddress(String),

    #[error("upper/lower split is ambiguous for {0}: {1}")]
    AmbiguousProjection(String, String),

    #[error("Diff is infinite: the sequences are related by bifurcation")]
    InfiniteDiff,

    #[error("precedence is not certified for {mu} < {nu}")]
    Uncertified { mu: String, nu: String },

    #[error("horizon too small: need at least {needed}, got {got}")]
    HorizonTooSmall { needed: usize, got: usize },

    #[error("count overflow at depth {0}")]
    CountOverflow(usize),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("tuning produced an invalid kneading word: {0}")]
    InvalidTuning(String),

    #[error("entropy identity violated for {nu}: h(nu)={h_nu}, h(mu)={h_mu}, h(eta)/p={h_eta_over_p}")]
    IdentityViolation {
        nu: String,
        h_nu: f64,
        h_mu: f64,
        h_eta_over_p: f64,
    },

    #[error("monotonicity violated for {mu} < {nu} at depth {depth}: {count_mu} > {count_nu}")]
    MonotonicityViolation {
        mu: String,
        nu: String,
        depth: usize,
        count_mu: u128,
        count_nu: u128,
    },

    #[error("monotonicity violated for {mu} < {nu}: h(mu)={h_mu} > h(nu)={h_nu}")]
    EntropyOrderViolation {
        mu: String,
        nu: String,
        h_mu: f64,
        h_nu: f64,
    },

    #[error("degenerate scan: {0}")]
    DegenerateScan(String),

    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
