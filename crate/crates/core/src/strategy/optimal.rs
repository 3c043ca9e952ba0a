//! Entanglement-assisted strategy: optimal x–z measurements on Φ+, the
//! biased CHSH expression and the success probability of the XOR protocol.

use std::f64::consts::SQRT_2;

use super::classical::classical_value_closed_form;
use super::dist::{BiasPair, JointInputDistribution};
use crate::error::{Error, Result};
use crate::quantum::{bell_phi_plus, correlation, normalize_angle, XZObservable};

/// Result of solving for the optimal angle of Bob's second observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalBeta {
    /// `None` when `q(1−q) = 0`.
    pub cos_beta: Option<f64>,
    /// `Some` only inside the region `|cos β| ≤ 1` with non-degenerate bias.
    pub beta: Option<f64>,
}

impl OptimalBeta {
    pub fn in_region(&self) -> bool {
        self.beta.is_some()
    }
}

/// `cos β = ½ (q²+(1−q)²)(p²−(1−p)²) / (q(1−q)(p²+(1−p)²))`.
pub fn optimal_beta(bias: BiasPair) -> OptimalBeta {
    let BiasPair { p, q } = bias;
    let q_spread = q * (1.0 - q);
    if q_spread <= 0.0 {
        return OptimalBeta {
            cos_beta: None,
            beta: None,
        };
    }
    let q_norm = q * q + (1.0 - q) * (1.0 - q);
    let p_norm = p * p + (1.0 - p) * (1.0 - p);
    let p_diff = p * p - (1.0 - p) * (1.0 - p);
    let c = 0.5 * q_norm * p_diff / (q_spread * p_norm);
    let degenerate_p = p <= 0.0 || p >= 1.0;
    let beta = (!degenerate_p && c.abs() <= 1.0).then(|| c.acos());
    OptimalBeta {
        cos_beta: Some(c),
        beta,
    }
}

/// Bloch angles of Alice's (`alpha`) and Bob's (`gamma`) observables for
/// each setting bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSettings {
    pub alpha0: f64,
    pub alpha1: f64,
    pub gamma0: f64,
    pub gamma1: f64,
    /// Present for settings built by [`optimal_settings`].
    pub beta: Option<f64>,
}

impl MeasurementSettings {
    pub fn new(alpha0: f64, alpha1: f64, gamma0: f64, gamma1: f64) -> Result<Self> {
        if ![alpha0, alpha1, gamma0, gamma1].iter().all(|a| a.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            alpha0: normalize_angle(alpha0),
            alpha1: normalize_angle(alpha1),
            gamma0: normalize_angle(gamma0),
            gamma1: normalize_angle(gamma1),
            beta: None,
        })
    }

    pub fn alice(&self, a: u8) -> XZObservable {
        let theta = if a == 0 { self.alpha0 } else { self.alpha1 };
        XZObservable::new(theta).expect("settings angles are finite")
    }

    pub fn bob(&self, b: u8) -> XZObservable {
        let theta = if b == 0 { self.gamma0 } else { self.gamma1 };
        XZObservable::new(theta).expect("settings angles are finite")
    }

    /// `E(a, b)` on Φ+, indexed by `2·a + b`.
    pub fn correlations(&self) -> [f64; 4] {
        let psi = bell_phi_plus();
        std::array::from_fn(|i| {
            let (a, b) = ((i >> 1) as u8, (i & 1) as u8);
            correlation(self.alice(a), self.bob(b), &psi).value()
        })
    }
}

/// `B1 = σx`, `B2 = cos β σx + sin β σz`, and Alice's directions aligned with
/// `q·B1 ± (1−q)·B2`.
pub fn optimal_settings(bias: BiasPair) -> Result<MeasurementSettings> {
    let solution = optimal_beta(bias);
    let beta = solution.beta.ok_or(Error::OutOfRegion {
        p: bias.p,
        q: bias.q,
        cos_beta: solution.cos_beta,
    })?;
    let q = bias.q;
    let (sin_b, cos_b) = beta.sin_cos();
    let alpha0 = ((1.0 - q) * sin_b).atan2(q + (1.0 - q) * cos_b);
    let alpha1 = (-(1.0 - q) * sin_b).atan2(q - (1.0 - q) * cos_b);
    Ok(MeasurementSettings {
        alpha0,
        alpha1,
        gamma0: 0.0,
        gamma1: beta,
        beta: Some(beta),
    })
}

/// Success probability of the XOR protocol:
/// `Σ p(a,b) (1 + (−1)^{ab} E(a,b)) / 2` with `a = a0⊕a1`.
pub fn protocol_success(dist: &JointInputDistribution, settings: &MeasurementSettings) -> f64 {
    let weights = dist.xor_marginal();
    let corr = settings.correlations();
    let total: f64 = (0..4)
        .map(|i| {
            let sign = if i == 3 { -1.0 } else { 1.0 };
            weights[i] * 0.5 * (1.0 + sign * corr[i])
        })
        .sum();
    total.clamp(0.0, 1.0)
}

/// `Q = Σ p(a) p(b) (−1)^{ab} E(a,b)` for independent `a` and `b`.
pub fn biased_chsh_value(bias: BiasPair, settings: &MeasurementSettings) -> f64 {
    let pa = [bias.p, 1.0 - bias.p];
    let pb = [bias.q, 1.0 - bias.q];
    let corr = settings.correlations();
    (0..4)
        .map(|i| {
            let (a, b) = (i >> 1, i & 1);
            let sign = if a & b == 1 { -1.0 } else { 1.0 };
            pa[a] * pb[b] * sign * corr[i]
        })
        .sum()
}

/// Maximal biased CHSH value `√2 · √(q²+(1−q)²) · √(p²+(1−p)²)`. Only
/// meaningful inside the region of [`optimal_beta`].
pub fn biased_chsh_bound(bias: BiasPair) -> f64 {
    let BiasPair { p, q } = bias;
    SQRT_2 * (q * q + (1.0 - q) * (1.0 - q)).sqrt() * (p * p + (1.0 - p) * (1.0 - p)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumValue {
    /// Best achievable success probability with the entangled strategy
    /// available, never below the classical optimum.
    pub value: f64,
    pub in_region: bool,
    /// `(1 + Q_max)/2` of the XOR protocol; `None` outside the region.
    pub protocol_value: Option<f64>,
}

/// Quantum value against an explicit classical baseline.
pub fn quantum_value_over(bias: BiasPair, classical: f64) -> QuantumValue {
    let solution = optimal_beta(bias);
    if solution.in_region() {
        let protocol = (0.5 * (1.0 + biased_chsh_bound(bias))).clamp(0.0, 1.0);
        QuantumValue {
            value: protocol.max(classical),
            in_region: true,
            protocol_value: Some(protocol),
        }
    } else {
        QuantumValue {
            value: classical,
            in_region: false,
            protocol_value: None,
        }
    }
}

/// Quantum value for a bias pair, using the classical optimum of
/// [`BiasPair::matching_product`] as the baseline.
pub fn quantum_value_closed_form(bias: BiasPair) -> QuantumValue {
    let form = bias.matching_product();
    let classical = classical_value_closed_form(form.q, form.p0_prime, form.p1_prime)
        .expect("matching product probabilities are valid");
    quantum_value_over(bias, classical)
}
