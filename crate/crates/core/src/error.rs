use thiserror::Error;

/// Everything that can go wrong inside the core library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty sample")]
    EmptySample,
    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },
    #[error("sample too small: need at least {needed} observations, got {got}")]
    TooFewObservations { needed: usize, got: usize },
    #[error("window size must be a positive integer")]
    ZeroWindow,
    #[error("window size m={m} must be less than n/2 (n={n})")]
    WindowTooLarge { m: usize, n: usize },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: i64, n: usize },
    #[error("tied spacing at i={index}; {estimator} undefined")]
    TiedSpacing { estimator: &'static str, index: usize },
    #[error("zero local variance in the window centred at i={index}")]
    ZeroLocalVariance { index: usize },
    #[error("degenerate sample: zero variance")]
    DegenerateSample,
    #[error("bandwidth must be finite and positive, got {0}")]
    InvalidBandwidth(f64),
    #[error("quadrature did not converge after {intervals} intervals (last relative change {last_change:e})")]
    QuadratureNotConverged { intervals: usize, last_change: f64 },
    #[error("divergent integral")]
    DivergentIntegral,
    #[error("invalid parameter {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("u={0} must lie strictly inside (0, 1)")]
    OutsideOpenUnit(f64),
    #[error("probability {0} must lie in [0, 1]")]
    InvalidProbability(f64),
    #[error("significance level {0} must lie strictly inside (0, 1)")]
    InvalidAlpha(f64),
    #[error("support violation: value {value} at position {index} is outside [0, 1]")]
    SupportViolation { index: usize, value: f64 },
    #[error("record order requires n_rec >= 1 and k >= 1")]
    InvalidRecordOrder,
    #[error("at least {min} Monte Carlo replicates are required, got {got}")]
    TooFewReplicates { min: usize, got: usize },
    #[error("integrand power must be 2 or 3, got {0}")]
    UnsupportedPower(u32),
}

impl Error {
    /// True for failures of a numerical routine rather than of the input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNotConverged { .. } | Error::DivergentIntegral
        )
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
