use thiserror::Error;

use crate::bridge::Bid;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is not a probability in [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("non-finite amplitude or angle")]
    NonFinite,

    /// The bias lies outside the region where the optimal measurement angle exists.
    #[error("bias (p={p}, q={q}) is outside the quantum region: {}", describe_cos_beta(*.cos_beta))]
    OutOfRegion {
        p: f64,
        q: f64,
        cos_beta: Option<f64>,
    },

    #[error("{0} is not a message bid (expected 5♣ or 5♦)")]
    NotAMessageBid(Bid),

    #[error("bid level {0} is outside 1..=7")]
    InvalidBidLevel(u8),

    #[error("{0} key cards is outside 0..=5")]
    InvalidKeycards(u8),

    #[error("invalid simulation config: {0}")]
    InvalidSimulation(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn describe_cos_beta(cos_beta: Option<f64>) -> String {
    match cos_beta {
        Some(c) => format!("cos beta = {c:.7}"),
        None => "cos beta is undefined (q(1-q) = 0 or p in {0, 1})".to_string(),
    }
}

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::InvalidProbability { name, value })
    }
}
