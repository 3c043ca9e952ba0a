//! Classical and entanglement-assisted success probabilities for the
//! two-bit, one-message random access task.

mod classical;
mod dist;
mod hardware;
mod optimal;

pub use classical::{
    classical_value_closed_form, classical_value_enumerated, ClassicalOptimum, DeterministicStrategy,
    STRATEGY_COUNT, TIE_TOL,
};
pub use dist::{bias_pair, expand_product, BiasPair, JointInputDistribution, ProductForm, SUM_TOL};
pub use hardware::{hwp_angles, HwpAngles};
pub use optimal::{
    biased_chsh_bound, biased_chsh_value, optimal_beta, optimal_settings, protocol_success,
    quantum_value_closed_form, quantum_value_over, MeasurementSettings, OptimalBeta, QuantumValue,
};

/// Classical and quantum values for one input distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyReport {
    pub classical_value: f64,
    pub classical_optima: Vec<DeterministicStrategy>,
    pub quantum_value: f64,
    pub quantum_in_region: bool,
    /// Success probability of the XOR protocol at its optimal settings.
    pub protocol_value: Option<f64>,
    pub settings: Option<MeasurementSettings>,
    pub advantage: f64,
}

impl StrategyReport {
    /// Mixes in a branch that always succeeds with probability `weight`.
    pub fn with_certain_branch(mut self, weight: f64) -> Self {
        let mix = |v: f64| weight + (1.0 - weight) * v;
        self.classical_value = mix(self.classical_value);
        self.quantum_value = mix(self.quantum_value);
        self.protocol_value = self.protocol_value.map(mix);
        self.advantage = self.quantum_value - self.classical_value;
        self
    }
}

/// Evaluates independent hand bits: the classical value from the closed form
/// (equal to the exhaustive optimum for product inputs), the optimal tables
/// from the enumeration, and the quantum value from the biased CHSH bound.
pub fn evaluate_product(form: ProductForm) -> StrategyReport {
    let dist = form.expand();
    let classical_value = classical_value_closed_form(form.q, form.p0_prime, form.p1_prime)
        .expect("ProductForm fields are probabilities");
    let optimum = classical_value_enumerated(&dist);
    let bias = form.bias();
    let quantum = quantum_value_over(bias, classical_value);
    StrategyReport {
        classical_value,
        classical_optima: optimum.optima,
        quantum_value: quantum.value,
        quantum_in_region: quantum.in_region,
        protocol_value: quantum.protocol_value,
        settings: optimal_settings(bias).ok(),
        advantage: quantum.value - classical_value,
    }
}
