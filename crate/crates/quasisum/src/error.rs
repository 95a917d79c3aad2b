use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Construction with a coefficient vector whose length disagrees with the
    /// truncation order (a series of order M stores exactly M-1 coefficients).
    #[error("series of order {order} needs {need} coefficients, got {got}")]
    CoefficientCount {
        order: usize,
        need: usize,
        got: usize,
    },

    /// Binary operation on series with different truncation orders.
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A bisection bracket whose endpoints do not straddle a sign change.
    /// Carries both endpoint values so the caller can see why.
    #[error(
        "bracket [{lo}, {hi}] does not straddle a sign change: \
         min at {lo} is {f_lo:e}, min at {hi} is {f_hi:e}"
    )]
    BracketFailure {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
