//! Python bindings for `qbridge-core`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qbridge_core::bridge::{self, RkbAnswer, RkbHolding, ScenarioConfig, ScenarioKind};
use qbridge_core::protocol::{self, SimulationConfig};
use qbridge_core::quantum::{self, bell_phi_plus, XZObservable};
use qbridge_core::strategy::{self, BiasPair, JointInputDistribution, MeasurementSettings, ProductForm};

fn py_err(e: qbridge_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn bias(p: f64, q: f64) -> PyResult<BiasPair> {
    BiasPair::new(p, q).map_err(py_err)
}

/// Joint distribution of `(a0, a1, b)`, indexed `4·a0 + 2·a1 + b`.
#[pyclass(name = "Distribution", frozen)]
struct PyDistribution(JointInputDistribution);

#[pymethods]
impl PyDistribution {
    #[new]
    fn new(probs: [f64; 8]) -> PyResult<Self> {
        JointInputDistribution::new(probs).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn uniform() -> Self {
        Self(JointInputDistribution::uniform())
    }

    /// Independent `a0`, `a1`, `b` with `P(a0=0)=p0_prime`, `P(a1=0)=p1_prime`, `P(b=0)=q`.
    #[staticmethod]
    fn product(p0_prime: f64, p1_prime: f64, q: f64) -> PyResult<Self> {
        let form = ProductForm::new(p0_prime, p1_prime, q).map_err(py_err)?;
        Ok(Self(strategy::expand_product(form)))
    }

    #[getter]
    fn probs(&self) -> [f64; 8] {
        *self.0.probs()
    }

    #[getter]
    fn q(&self) -> f64 {
        self.0.q()
    }

    fn get(&self, a0: u8, a1: u8, b: u8) -> f64 {
        self.0.get(a0 & 1, a1 & 1, b & 1)
    }

    fn a0_zero_given_b0(&self) -> f64 {
        self.0.a0_zero_given_b0()
    }

    fn a1_zero_given_b1(&self) -> f64 {
        self.0.a1_zero_given_b1()
    }

    /// `(p, q)` with `p = P(a0 ⊕ a1 = 0)`.
    fn bias(&self) -> (f64, f64) {
        let b = strategy::bias_pair(&self.0);
        (b.p, b.q)
    }

    fn __repr__(&self) -> String {
        format!("Distribution({:?})", self.0.probs())
    }
}

/// Bloch angles of the four x–z measurements.
#[pyclass(name = "Settings", frozen)]
struct PySettings(MeasurementSettings);

#[pymethods]
impl PySettings {
    #[new]
    fn new(alpha0: f64, alpha1: f64, gamma0: f64, gamma1: f64) -> PyResult<Self> {
        MeasurementSettings::new(alpha0, alpha1, gamma0, gamma1)
            .map(Self)
            .map_err(py_err)
    }

    #[getter]
    fn alpha0(&self) -> f64 {
        self.0.alpha0
    }

    #[getter]
    fn alpha1(&self) -> f64 {
        self.0.alpha1
    }

    #[getter]
    fn gamma0(&self) -> f64 {
        self.0.gamma0
    }

    #[getter]
    fn gamma1(&self) -> f64 {
        self.0.gamma1
    }

    #[getter]
    fn beta(&self) -> Option<f64> {
        self.0.beta
    }

    /// `E(a, b)` on the Bell state, indexed `2·a + b`.
    fn correlations(&self) -> [f64; 4] {
        self.0.correlations()
    }

    fn __repr__(&self) -> String {
        let s = &self.0;
        format!(
            "Settings(alpha0={}, alpha1={}, gamma0={}, gamma1={})",
            s.alpha0, s.alpha1, s.gamma0, s.gamma1
        )
    }
}

#[pyclass(name = "QuantumValue", frozen)]
struct PyQuantumValue {
    #[pyo3(get)]
    value: f64,
    #[pyo3(get)]
    in_region: bool,
    #[pyo3(get)]
    protocol_value: Option<f64>,
}

#[pyclass(name = "HwpAngles", frozen)]
struct PyHwpAngles {
    #[pyo3(get)]
    phi_a1: f64,
    #[pyo3(get)]
    phi_a2: f64,
    #[pyo3(get)]
    phi_b1: f64,
    #[pyo3(get)]
    phi_b2: f64,
    #[pyo3(get)]
    residual_a1: f64,
    #[pyo3(get)]
    residual_a2: f64,
    #[pyo3(get)]
    consistency_residual: f64,
}

#[pyclass(name = "SimulationResult", frozen)]
struct PySimulationResult(protocol::SimulationResult);

#[pymethods]
impl PySimulationResult {
    #[getter]
    fn shots(&self) -> u64 {
        self.0.shots
    }

    #[getter]
    fn successes(&self) -> u64 {
        self.0.successes
    }

    #[getter]
    fn empirical_i(&self) -> f64 {
        self.0.empirical_i
    }

    #[getter]
    fn std_error(&self) -> f64 {
        self.0.std_error
    }

    #[getter]
    fn mean_herald_attempts(&self) -> f64 {
        self.0.mean_herald_attempts
    }

    fn z_score(&self, expected: f64) -> f64 {
        self.0.z_score(expected)
    }

    fn __repr__(&self) -> String {
        format!(
            "SimulationResult(shots={}, successes={}, empirical_i={})",
            self.0.shots, self.0.successes, self.0.empirical_i
        )
    }
}

#[pyclass(name = "StrategyReport", frozen)]
struct PyStrategyReport {
    #[pyo3(get)]
    classical_value: f64,
    /// Indices of the optimal deterministic strategies.
    #[pyo3(get)]
    classical_optima: Vec<u8>,
    #[pyo3(get)]
    quantum_value: f64,
    #[pyo3(get)]
    quantum_in_region: bool,
    #[pyo3(get)]
    protocol_value: Option<f64>,
    #[pyo3(get)]
    advantage: f64,
}

impl From<strategy::StrategyReport> for PyStrategyReport {
    fn from(r: strategy::StrategyReport) -> Self {
        Self {
            classical_value: r.classical_value,
            classical_optima: r.classical_optima.iter().map(|s| s.index()).collect(),
            quantum_value: r.quantum_value,
            quantum_in_region: r.quantum_in_region,
            protocol_value: r.protocol_value,
            advantage: r.advantage,
        }
    }
}

/// Answer to the key-card question: protocol inputs or a bypass bid.
#[pyclass(name = "RkbAnswer", frozen)]
struct PyRkbAnswer {
    #[pyo3(get)]
    inputs: Option<(u8, u8)>,
    #[pyo3(get)]
    bypass_bid: Option<String>,
}

#[pymethods]
impl PyRkbAnswer {
    fn __repr__(&self) -> String {
        match (&self.inputs, &self.bypass_bid) {
            (Some((a0, a1)), _) => format!("RkbAnswer(a0={a0}, a1={a1})"),
            (_, Some(bid)) => format!("RkbAnswer(bypass={bid})"),
            _ => "RkbAnswer()".into(),
        }
    }
}

/// `E = ⟨Φ+| A ⊗ B |Φ+⟩` for x–z observables at Bloch angles `theta_a`, `theta_b`.
#[pyfunction]
fn correlation(theta_a: f64, theta_b: f64) -> PyResult<f64> {
    let a = XZObservable::new(theta_a).map_err(py_err)?;
    let b = XZObservable::new(theta_b).map_err(py_err)?;
    Ok(quantum::correlation(a, b, &bell_phi_plus()).value())
}

#[pyfunction]
fn classical_value_closed_form(q: f64, a0_zero_given_b0: f64, a1_zero_given_b1: f64) -> PyResult<f64> {
    strategy::classical_value_closed_form(q, a0_zero_given_b0, a1_zero_given_b1).map_err(py_err)
}

/// `(value, optimal strategy indices)` from all 256 deterministic strategies.
#[pyfunction]
fn classical_value_enumerated(dist: PyRef<'_, PyDistribution>) -> (f64, Vec<u8>) {
    let opt = strategy::classical_value_enumerated(&dist.0);
    (opt.value, opt.optima.iter().map(|s| s.index()).collect())
}

#[pyfunction]
fn quantum_value_closed_form(p: f64, q: f64) -> PyResult<PyQuantumValue> {
    let v = strategy::quantum_value_closed_form(bias(p, q)?);
    Ok(PyQuantumValue {
        value: v.value,
        in_region: v.in_region,
        protocol_value: v.protocol_value,
    })
}

/// `(cos β, β)`; `β` is `None` outside the quantum region.
#[pyfunction]
fn optimal_beta(p: f64, q: f64) -> PyResult<(Option<f64>, Option<f64>)> {
    let b = strategy::optimal_beta(bias(p, q)?);
    Ok((b.cos_beta, b.beta))
}

#[pyfunction]
fn optimal_settings(p: f64, q: f64) -> PyResult<PySettings> {
    strategy::optimal_settings(bias(p, q)?).map(PySettings).map_err(py_err)
}

#[pyfunction]
fn protocol_success(dist: PyRef<'_, PyDistribution>, settings: PyRef<'_, PySettings>) -> f64 {
    strategy::protocol_success(&dist.0, &settings.0)
}

#[pyfunction]
fn hwp_angles(p: f64, q: f64) -> PyResult<PyHwpAngles> {
    let h = strategy::hwp_angles(bias(p, q)?).map_err(py_err)?;
    Ok(PyHwpAngles {
        phi_a1: h.phi_a1,
        phi_a2: h.phi_a2,
        phi_b1: h.phi_b1,
        phi_b2: h.phi_b2,
        residual_a1: h.residual_a1,
        residual_a2: h.residual_a2,
        consistency_residual: h.consistency_residual,
    })
}

#[pyfunction]
#[pyo3(signature = (dist, settings, shots, seed, efficiency = 1.0))]
fn run_trials(
    py: Python<'_>,
    dist: PyRef<'_, PyDistribution>,
    settings: PyRef<'_, PySettings>,
    shots: u64,
    seed: u64,
    efficiency: f64,
) -> PyResult<PySimulationResult> {
    let cfg = SimulationConfig::new(dist.0, settings.0, shots, seed).with_efficiency(efficiency);
    py.detach(|| protocol::run_trials(&cfg))
        .map(PySimulationResult)
        .map_err(py_err)
}

#[pyfunction]
fn rkb_encode(keycards: u8, has_trump_queen: bool) -> PyResult<PyRkbAnswer> {
    let holding = RkbHolding::new(keycards, has_trump_queen).map_err(py_err)?;
    Ok(match bridge::rkb_encode(holding) {
        RkbAnswer::ProtocolInputs { a0, a1 } => PyRkbAnswer {
            inputs: Some((a0, a1)),
            bypass_bid: None,
        },
        RkbAnswer::Bypass(bid) => PyRkbAnswer {
            inputs: None,
            bypass_bid: Some(bid.to_string()),
        },
    })
}

/// Evaluates `"rkb"` or `"defense"`; omitted parameters take the scenario defaults.
#[pyfunction]
#[pyo3(signature = (kind = "rkb", p0_prime = None, p1_prime = None, q = None, bypass_probability = 0.0))]
fn scenario_evaluate(
    kind: &str,
    p0_prime: Option<f64>,
    p1_prime: Option<f64>,
    q: Option<f64>,
    bypass_probability: f64,
) -> PyResult<PyStrategyReport> {
    let kind = match kind {
        "rkb" => ScenarioKind::Rkb,
        "defense" => ScenarioKind::Defense,
        other => return Err(PyValueError::new_err(format!("unknown scenario `{other}`"))),
    };
    let base = ScenarioConfig::default_for(kind);
    let cfg = ScenarioConfig {
        kind,
        p0_prime: p0_prime.unwrap_or(base.p0_prime),
        p1_prime: p1_prime.unwrap_or(base.p1_prime),
        q: q.unwrap_or(base.q),
        bypass_probability,
    };
    bridge::scenario_evaluate(&cfg).map(Into::into).map_err(py_err)
}

#[pymodule]
fn qbridge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDistribution>()?;
    m.add_class::<PySettings>()?;
    m.add_class::<PyQuantumValue>()?;
    m.add_class::<PyHwpAngles>()?;
    m.add_class::<PySimulationResult>()?;
    m.add_class::<PyStrategyReport>()?;
    m.add_class::<PyRkbAnswer>()?;
    m.add_function(wrap_pyfunction!(correlation, m)?)?;
    m.add_function(wrap_pyfunction!(classical_value_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(classical_value_enumerated, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_value_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_beta, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_settings, m)?)?;
    m.add_function(wrap_pyfunction!(protocol_success, m)?)?;
    m.add_function(wrap_pyfunction!(hwp_angles, m)?)?;
    m.add_function(wrap_pyfunction!(run_trials, m)?)?;
    m.add_function(wrap_pyfunction!(rkb_encode, m)?)?;
    m.add_function(wrap_pyfunction!(scenario_evaluate, m)?)?;
    Ok(())
}
