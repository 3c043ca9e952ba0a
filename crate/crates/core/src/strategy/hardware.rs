//! Half-wave-plate orientations for the optimal measurements.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use super::dist::BiasPair;
use super::optimal::optimal_settings;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HwpAngles {
    pub phi_a1: f64,
    pub phi_a2: f64,
    pub phi_b1: f64,
    pub phi_b2: f64,
    /// Disagreement, modulo π, between `φ_A1` and the Bloch angle of A1.
    /// Zero iff the plate tangent equals the σz/σx component ratio.
    pub residual_a1: f64,
    pub residual_a2: f64,
    /// `max(residual_a1, residual_a2)`.
    pub consistency_residual: f64,
}

/// Plate angles with `θ = π/2 − β`:
///
/// ```text
/// tan φ_A1 = (1−q) cos θ / (q + (1−q) sin θ)
/// tan φ_A2 = −(1−q) sin θ / (q − (1−q) cos θ)
/// φ_B1 = π/4,  φ_B2 = θ
/// ```
///
/// The formulas are evaluated as written; any mismatch with the observables
/// is reported in `consistency_residual` rather than corrected.
pub fn hwp_angles(bias: BiasPair) -> Result<HwpAngles> {
    let settings = optimal_settings(bias)?;
    let beta = settings.beta.expect("optimal settings carry beta");
    let q = bias.q;
    let theta = FRAC_PI_2 - beta;
    let (sin_t, cos_t) = theta.sin_cos();
    let phi_a1 = ((1.0 - q) * cos_t).atan2(q + (1.0 - q) * sin_t);
    let phi_a2 = (-(1.0 - q) * sin_t).atan2(q - (1.0 - q) * cos_t);
    let residual_a1 = angle_gap_mod_pi(phi_a1, settings.alpha0);
    let residual_a2 = angle_gap_mod_pi(phi_a2, settings.alpha1);
    Ok(HwpAngles {
        phi_a1,
        phi_a2,
        phi_b1: FRAC_PI_4,
        phi_b2: theta,
        residual_a1,
        residual_a2,
        consistency_residual: residual_a1.max(residual_a2),
    })
}

fn angle_gap_mod_pi(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(std::f64::consts::PI);
    d.min(std::f64::consts::PI - d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_card_point() {
        let h = hwp_angles(BiasPair::new(0.5, 0.75).unwrap()).unwrap();
        assert!((h.phi_a1 - 0.3217506).abs() < 1e-7);
        assert!(h.phi_b2.abs() < 1e-15);
        assert_eq!(h.phi_b1, FRAC_PI_4);
        assert!(h.residual_a1 < 1e-12);
        // The A2 plate formula gives φ = 0 while the observable sits at
        // −atan(1/3).
        assert!(h.phi_a2.abs() < 1e-15);
        assert!((h.residual_a2 - 0.3217506).abs() < 1e-7);
        assert_eq!(h.consistency_residual, h.residual_a2);
    }

    #[test]
    fn b1_is_fixed() {
        for &(p, q) in &[(0.5, 0.2), (0.55, 0.5), (0.6, 0.6)] {
            let h = hwp_angles(BiasPair::new(p, q).unwrap()).unwrap();
            assert_eq!(h.phi_b1, FRAC_PI_4);
        }
    }

    #[test]
    fn only_the_a2_plate_disagrees() {
        for &(p, q) in &[(0.6, 0.5), (0.5, 0.3), (0.45, 0.8)] {
            let h = hwp_angles(BiasPair::new(p, q).unwrap()).unwrap();
            assert!(h.residual_a1 < 1e-12);
            assert!(h.residual_a2 > 1e-3);
        }
    }

    #[test]
    fn out_of_region_is_an_error() {
        assert!(hwp_angles(BiasPair::new(0.9, 0.9).unwrap()).is_err());
    }
}
