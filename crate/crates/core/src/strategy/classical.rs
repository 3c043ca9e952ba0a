//! Classical one-bit strategies: the closed-form optimum and the exhaustive
//! search over deterministic encoder/decoder tables.

use std::fmt;

use super::dist::JointInputDistribution;
use crate::error::{check_probability, Result};

/// Ties within this tolerance of the maximum are all reported.
pub const TIE_TOL: f64 = 1e-12;

/// Number of (encoder, decoder) pairs in the search.
pub const STRATEGY_COUNT: usize = 256;

/// Encoder `m(a0, a1)` stored at index `2·a0 + a1`, decoder `R(b, m)` at `2·b + m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeterministicStrategy {
    pub encoder: [u8; 4],
    pub decoder: [u8; 4],
}

impl DeterministicStrategy {
    /// Unpacks `index = (encoder bits << 4) | decoder bits`, bit `i` of each
    /// nibble holding table entry `i`.
    pub fn from_index(index: u8) -> Self {
        let bits = |nibble: u8| std::array::from_fn(|i| (nibble >> i) & 1);
        Self {
            encoder: bits(index >> 4),
            decoder: bits(index & 0x0f),
        }
    }

    pub fn index(&self) -> u8 {
        let pack = |t: &[u8; 4]| t.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (b << i));
        (pack(&self.encoder) << 4) | pack(&self.decoder)
    }

    pub fn message(&self, a0: u8, a1: u8) -> u8 {
        self.encoder[(2 * a0 + a1) as usize]
    }

    pub fn guess(&self, b: u8, m: u8) -> u8 {
        self.decoder[(2 * b + m) as usize]
    }

    /// Average probability that the guess equals `a_b`.
    pub fn success_probability(&self, dist: &JointInputDistribution) -> f64 {
        dist.cells()
            .filter(|&(a0, a1, b, _)| {
                let wanted = if b == 0 { a0 } else { a1 };
                self.guess(b, self.message(a0, a1)) == wanted
            })
            .map(|(_, _, _, p)| p)
            .sum()
    }
}

impl fmt::Display for DeterministicStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.encoder;
        let d = &self.decoder;
        write!(
            f,
            "m(a0,a1): 00->{} 01->{} 10->{} 11->{} | R(b,m): 00->{} 01->{} 10->{} 11->{}",
            e[0], e[1], e[2], e[3], d[0], d[1], d[2], d[3]
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalOptimum {
    pub value: f64,
    /// Ordered by [`DeterministicStrategy::index`].
    pub optima: Vec<DeterministicStrategy>,
    pub candidates: usize,
}

/// `max{ q + (1−q)·max(P(a1=0|b=1), ·c), (1−q) + q·max(P(a0=0|b=0), ·c) }`.
pub fn classical_value_closed_form(q: f64, a0_zero_given_b0: f64, a1_zero_given_b1: f64) -> Result<f64> {
    let q = check_probability("q", q)?;
    let p0 = check_probability("p(a0=0|b=0)", a0_zero_given_b0)?;
    let p1 = check_probability("p(a1=0|b=1)", a1_zero_given_b1)?;
    let send_a0 = q + (1.0 - q) * p1.max(1.0 - p1);
    let send_a1 = (1.0 - q) + q * p0.max(1.0 - p0);
    Ok(send_a0.max(send_a1))
}

/// Exhaustive search over all 16 encoders × 16 decoders.
pub fn classical_value_enumerated(dist: &JointInputDistribution) -> ClassicalOptimum {
    let scored: Vec<(DeterministicStrategy, f64)> = (0..=u8::MAX)
        .map(DeterministicStrategy::from_index)
        .map(|s| (s, s.success_probability(dist)))
        .collect();
    let value = scored.iter().map(|&(_, v)| v).fold(f64::NEG_INFINITY, f64::max);
    let mut optima: Vec<_> = scored
        .iter()
        .filter(|&&(_, v)| v >= value - TIE_TOL)
        .map(|&(s, _)| s)
        .collect();
    optima.sort_by_key(DeterministicStrategy::index);
    ClassicalOptimum {
        value: value.clamp(0.0, 1.0),
        optima,
        candidates: scored.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::dist::ProductForm;

    #[test]
    fn index_round_trip() {
        for i in 0..=u8::MAX {
            assert_eq!(DeterministicStrategy::from_index(i).index(), i);
        }
    }

    #[test]
    fn closed_form_examples() {
        let v = classical_value_closed_form(0.75, 0.5, 0.55).unwrap();
        assert!((v - 0.8875).abs() < 1e-15);
        assert_eq!(classical_value_closed_form(0.5, 0.5, 0.5).unwrap(), 0.75);
        assert_eq!(classical_value_closed_form(1.0, 0.3, 0.9).unwrap(), 1.0);
        assert!(classical_value_closed_form(1.5, 0.5, 0.5).is_err());
        assert!(classical_value_closed_form(0.5, -0.5, 0.5).is_err());
    }

    #[test]
    fn enumeration_on_key_card_estimates() {
        let dist = ProductForm::new(0.5, 0.55, 0.75).unwrap().expand();
        let opt = classical_value_enumerated(&dist);
        assert_eq!(opt.candidates, STRATEGY_COUNT);
        assert!((opt.value - 0.8875).abs() < 1e-12);
        // m = a0, R(0,m) = m, R(1,m) = 0.
        let send_a0 = DeterministicStrategy {
            encoder: [0, 0, 1, 1],
            decoder: [0, 1, 0, 0],
        };
        assert!(opt.optima.contains(&send_a0));
    }

    #[test]
    fn enumeration_uniform() {
        let opt = classical_value_enumerated(&JointInputDistribution::uniform());
        assert!((opt.value - 0.75).abs() < 1e-12);
        let mut sorted = opt.optima.clone();
        sorted.sort_by_key(DeterministicStrategy::index);
        assert_eq!(sorted, opt.optima);
    }

    #[test]
    fn enumeration_beats_closed_form_on_correlated_bits() {
        // a0 = a1 always, uniform marginals, q = 0.5.
        let mut probs = [0.0; 8];
        for b in 0..2 {
            probs[b] = 0.25; // a0 = a1 = 0
            probs[6 + b] = 0.25; // a0 = a1 = 1
        }
        let dist = JointInputDistribution::new(probs).unwrap();
        let opt = classical_value_enumerated(&dist);
        assert!((opt.value - 1.0).abs() < 1e-12);
        let copy_a0 = DeterministicStrategy {
            encoder: [0, 0, 1, 1],
            decoder: [0, 1, 0, 1],
        };
        assert!(opt.optima.contains(&copy_a0));

        let closed = classical_value_closed_form(dist.q(), dist.a0_zero_given_b0(), dist.a1_zero_given_b1()).unwrap();
        assert!((closed - 0.75).abs() < 1e-12);
    }
}
