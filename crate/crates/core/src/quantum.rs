//! Two-qubit pure states and dichotomic observables in the x–z plane.
//!
//! Everything here is dimension 4, so expectation values are computed by
//! explicit contraction of the 4×4 operator `A ⊗ B` against the state vector.
//! Outcome bit 0 corresponds to eigenvalue +1 and bit 1 to eigenvalue −1.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance used for normalization and idempotence checks.
pub const NORM_TOL: f64 = 1e-12;

pub type ComplexAmplitude = Complex64;

type Matrix2 = [[Complex64; 2]; 2];
type Matrix4 = [[Complex64; 4]; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Normalized state over the basis `|00⟩, |01⟩, |10⟩, |11⟩` (Alice's qubit first).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    amplitudes: [ComplexAmplitude; 4],
}

impl TwoQubitState {
    pub fn new(amplitudes: [ComplexAmplitude; 4]) -> Result<Self> {
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { sum: norm });
        }
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[ComplexAmplitude; 4] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨ψ| M |ψ⟩` for a 4×4 operator.
    fn expectation(&self, op: &Matrix4) -> Complex64 {
        let psi = &self.amplitudes;
        let mut acc = ZERO;
        for (r, row) in op.iter().enumerate() {
            let mut col_sum = ZERO;
            for (c, entry) in row.iter().enumerate() {
                col_sum += entry * psi[c];
            }
            acc += psi[r].conj() * col_sum;
        }
        acc
    }
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn bell_phi_plus() -> TwoQubitState {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    TwoQubitState {
        amplitudes: [h, ZERO, ZERO, h],
    }
}

/// The observable `cos θ σ_x + sin θ σ_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XZObservable {
    theta: f64,
}

impl XZObservable {
    /// Builds the observable with `theta` wrapped into `(−π, π]`.
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            theta: normalize_angle(theta),
        })
    }

    pub fn sigma_x() -> Self {
        Self { theta: 0.0 }
    }

    pub fn sigma_z() -> Self {
        Self { theta: PI / 2.0 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn matrix(&self) -> [[ComplexAmplitude; 2]; 2] {
        let (s, c) = self.theta.sin_cos();
        [
            [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
            [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        ]
    }

    /// Eigenprojector for outcome bit `bit` (0 ↔ +1, 1 ↔ −1), i.e. `(I ± O)/2`.
    pub fn projector(&self, bit: u8) -> [[ComplexAmplitude; 2]; 2] {
        let sign = if bit == 0 { 1.0 } else { -1.0 };
        let m = self.matrix();
        let mut p = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let id = if i == j { ONE } else { ZERO };
                p[i][j] = (id + m[i][j] * sign) * 0.5;
            }
        }
        p
    }
}

/// Wraps an angle into `(−π, π]`.
pub fn normalize_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = theta.rem_euclid(two_pi);
    if t > PI {
        t -= two_pi;
    }
    t
}

/// `E = P(A=B) − P(A≠B)`, clamped into `[−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Correlation(f64);

impl Correlation {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Joint outcome probabilities indexed by `2·A + B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeDistribution {
    probs: [f64; 4],
}

impl OutcomeDistribution {
    pub fn probs(&self) -> &[f64; 4] {
        &self.probs
    }

    pub fn get(&self, alice: u8, bob: u8) -> f64 {
        self.probs[(2 * alice + bob) as usize]
    }

    pub fn p_equal(&self) -> f64 {
        self.probs[0] + self.probs[3]
    }

    pub fn correlation(&self) -> f64 {
        self.p_equal() - (self.probs[1] + self.probs[2])
    }

    pub fn alice_marginal(&self, bit: u8) -> f64 {
        self.get(bit, 0) + self.get(bit, 1)
    }

    pub fn bob_marginal(&self, bit: u8) -> f64 {
        self.get(0, bit) + self.get(1, bit)
    }
}

fn kron(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// `⟨ψ| A ⊗ B |ψ⟩` by explicit contraction.
pub fn correlation(alice: XZObservable, bob: XZObservable, state: &TwoQubitState) -> Correlation {
    let op = kron(&alice.matrix(), &bob.matrix());
    let value = state.expectation(&op).re;
    Correlation(value.clamp(-1.0, 1.0))
}

/// `P(A, B) = ⟨ψ| Π_A ⊗ Π_B |ψ⟩` for the four outcome pairs.
pub fn joint_outcome_distribution(
    alice: XZObservable,
    bob: XZObservable,
    state: &TwoQubitState,
) -> OutcomeDistribution {
    let mut probs = [0.0; 4];
    for a in 0..2u8 {
        let pa = alice.projector(a);
        for b in 0..2u8 {
            let op = kron(&pa, &bob.projector(b));
            probs[(2 * a + b) as usize] = state.expectation(&op).re.max(0.0);
        }
    }
    OutcomeDistribution { probs }
}
