use thiserror::Error;

use crate::coin::CoinKind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("expected a {expected:?} coin, got a {found:?} coin")]
    Kind { expected: CoinKind, found: CoinKind },

    #[error("path enumeration limited to {max} steps, got {steps}")]
    Size { steps: u64, max: u64 },

    #[error("parity error: {0}")]
    Parity(String),

    #[error("coefficient grid of {points} points is too small for n = {n} (need at least {required})")]
    Grid { points: usize, n: u64, required: usize },

    #[error("degenerate coin: {0}")]
    DegenerateCoin(String),

    #[error("coin is not symmetric (a = {a}, d = {d}); the two-sum formula needs a = d")]
    AsymmetricCoin { a: f64, d: f64 },

    #[error("n = {0} is below the smallest final time the formula supports")]
    SmallN(u64),

    #[error("regime error: {0}")]
    Regime(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("route disagreement at n = {n}: exact = {exact:e}, closed form = {closed:e} (|diff| = {diff:e})")]
    RouteDisagreement { n: u64, exact: f64, closed: f64, diff: f64 },
}

impl WalkError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        WalkError::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        WalkError::Config(msg.into())
    }
}

pub type Result<T, E = WalkError> = std::result::Result<T, E>;
