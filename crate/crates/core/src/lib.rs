//! Classical and entanglement-assisted one-bit signalling for bridge.
//!
//! A responder holds two bits `a0`, `a1`; the asker wants bit `a_b` and may
//! receive a single message bit. [`strategy`] computes the best classical and
//! quantum success probabilities, [`protocol`] samples the entangled XOR
//! protocol, and [`bridge`] maps the bits onto key-card answers and defensive
//! signals.

pub mod bridge;
pub mod error;
pub mod format;
pub mod protocol;
pub mod quantum;
pub mod strategy;

pub use error::{Error, Result};
