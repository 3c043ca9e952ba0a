//! Seeded Monte Carlo execution of the XOR protocol with heralded detection.
//!
//! Every shot draws from its own ChaCha8 stream: the generator is keyed by
//! the 64-bit seed and the stream id is the shot index. Results therefore do
//! not depend on how shots are split across worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use rayon::prelude::*;

use crate::error::{check_probability, Error, Result};
use crate::quantum::{bell_phi_plus, joint_outcome_distribution, OutcomeDistribution};
use crate::strategy::{JointInputDistribution, MeasurementSettings};

/// One protocol round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundRecord {
    pub a0: u8,
    pub a1: u8,
    pub b: u8,
    /// Alice's setting, `a0 ⊕ a1`.
    pub a: u8,
    pub alice_outcome: u8,
    pub bob_outcome: u8,
    /// `alice_outcome ⊕ a0`.
    pub message: u8,
    /// `bob_outcome ⊕ message`.
    pub guess: u8,
    pub success: bool,
    pub herald_attempts: u64,
}

impl RoundRecord {
    /// Completes a round from inputs and measurement outcomes.
    pub fn from_outcomes(inputs: (u8, u8, u8), alice_outcome: u8, bob_outcome: u8, herald_attempts: u64) -> Self {
        let (a0, a1, b) = inputs;
        let a = a0 ^ a1;
        let message = alice_outcome ^ a0;
        let guess = bob_outcome ^ message;
        let wanted = if b == 0 { a0 } else { a1 };
        Self {
            a0,
            a1,
            b,
            a,
            alice_outcome,
            bob_outcome,
            message,
            guess,
            success: guess == wanted,
            herald_attempts,
        }
    }

    pub fn is_consistent(&self) -> bool {
        let wanted = if self.b == 0 { self.a0 } else { self.a1 };
        self.a == self.a0 ^ self.a1
            && self.message == self.alice_outcome ^ self.a0
            && self.guess == self.bob_outcome ^ self.message
            && self.success == (self.guess == wanted)
            && self.herald_attempts >= 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    pub dist: JointInputDistribution,
    pub settings: MeasurementSettings,
    pub shots: u64,
    pub seed: u64,
    /// Per-party, per-attempt detection probability.
    pub efficiency: f64,
}

impl SimulationConfig {
    pub fn new(dist: JointInputDistribution, settings: MeasurementSettings, shots: u64, seed: u64) -> Self {
        Self {
            dist,
            settings,
            shots,
            seed,
            efficiency: 1.0,
        }
    }

    pub fn with_efficiency(mut self, efficiency: f64) -> Self {
        self.efficiency = efficiency;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::InvalidSimulation("shots must be at least 1".into()));
        }
        check_efficiency(self.efficiency)
    }
}

fn check_efficiency(efficiency: f64) -> Result<()> {
    check_probability("efficiency", efficiency)?;
    if efficiency == 0.0 {
        return Err(Error::InvalidSimulation("efficiency must be positive".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationResult {
    pub shots: u64,
    pub successes: u64,
    pub empirical_i: f64,
    pub std_error: f64,
    pub mean_herald_attempts: f64,
}

impl SimulationResult {
    fn from_tally(shots: u64, tally: Tally) -> Self {
        let n = shots as f64;
        let empirical_i = tally.successes as f64 / n;
        Self {
            shots,
            successes: tally.successes,
            empirical_i,
            std_error: (empirical_i * (1.0 - empirical_i) / n).sqrt(),
            mean_herald_attempts: tally.herald_attempts as f64 / n,
        }
    }

    /// `(empirical_i − expected) / std_error`; zero when both sides agree exactly.
    pub fn z_score(&self, expected: f64) -> f64 {
        let diff = self.empirical_i - expected;
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }
}

/// Precomputed sampling tables for one `(settings, efficiency)` pair.
#[derive(Debug, Clone)]
pub struct RoundSampler {
    outcomes: [OutcomeDistribution; 4],
    heralding: Geometric,
}

impl RoundSampler {
    pub fn new(settings: &MeasurementSettings, efficiency: f64) -> Result<Self> {
        check_efficiency(efficiency)?;
        let psi = bell_phi_plus();
        let outcomes = std::array::from_fn(|i| {
            let (a, b) = ((i >> 1) as u8, (i & 1) as u8);
            joint_outcome_distribution(settings.alice(a), settings.bob(b), &psi)
        });
        // Both detectors must click on the same attempt.
        let heralding = Geometric::new(efficiency * efficiency)
            .map_err(|e| Error::InvalidSimulation(e.to_string()))?;
        Ok(Self { outcomes, heralding })
    }

    /// Heralds a pair, measures with settings `(a0⊕a1, b)` and decodes.
    pub fn run_round<R: Rng + ?Sized>(&self, inputs: (u8, u8, u8), rng: &mut R) -> RoundRecord {
        let herald_attempts = 1 + self.heralding.sample(rng);
        let (a0, a1, b) = inputs;
        let dist = &self.outcomes[(2 * (a0 ^ a1) + b) as usize];
        let cell = sample_index(dist.probs(), rng.random::<f64>());
        let (alice, bob) = ((cell >> 1) as u8, (cell & 1) as u8);
        RoundRecord::from_outcomes(inputs, alice, bob, herald_attempts)
    }
}

/// Runs a single round with freshly built sampling tables.
pub fn run_round<R: Rng + ?Sized>(
    inputs: (u8, u8, u8),
    settings: &MeasurementSettings,
    efficiency: f64,
    rng: &mut R,
) -> Result<RoundRecord> {
    Ok(RoundSampler::new(settings, efficiency)?.run_round(inputs, rng))
}

/// Generator for shot `index` under `seed`.
pub fn shot_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Inverse-CDF draw; the last cell with positive mass absorbs rounding.
fn sample_index(probs: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    let mut last = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        acc += p;
        last = i;
        if u < acc {
            return i;
        }
    }
    last
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    successes: u64,
    herald_attempts: u64,
}

impl Tally {
    fn merge(self, other: Self) -> Self {
        Self {
            successes: self.successes + other.successes,
            herald_attempts: self.herald_attempts + other.herald_attempts,
        }
    }
}

const CHUNK: u64 = 4096;

fn run_chunk(config: &SimulationConfig, sampler: &RoundSampler, base: &ChaCha8Rng, start: u64) -> Tally {
    let end = (start + CHUNK).min(config.shots);
    let mut tally = Tally::default();
    for index in start..end {
        let mut rng = base.clone();
        rng.set_stream(index);
        let cell = sample_index(config.dist.probs(), rng.random::<f64>()) as u8;
        let inputs = (cell >> 2, (cell >> 1) & 1, cell & 1);
        let record = sampler.run_round(inputs, &mut rng);
        if index % CHUNK == 0 {
            debug_assert!(record.is_consistent(), "inconsistent round {record:?}");
        }
        tally.successes += u64::from(record.success);
        tally.herald_attempts += record.herald_attempts;
    }
    tally
}

/// Runs all shots on the global rayon pool.
pub fn run_trials(config: &SimulationConfig) -> Result<SimulationResult> {
    config.validate()?;
    let sampler = RoundSampler::new(&config.settings, config.efficiency)?;
    let base = ChaCha8Rng::seed_from_u64(config.seed);
    let chunks = config.shots.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| run_chunk(config, &sampler, &base, c * CHUNK))
        .reduce(Tally::default, Tally::merge);
    Ok(SimulationResult::from_tally(config.shots, tally))
}

/// Runs all shots on a dedicated pool of `workers` threads.
pub fn run_trials_with_workers(config: &SimulationConfig, workers: usize) -> Result<SimulationResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidSimulation(e.to_string()))?;
    pool.install(|| run_trials(config))
}

/// Runs all shots sequentially on the calling thread.
pub fn run_trials_serial(config: &SimulationConfig) -> Result<SimulationResult> {
    config.validate()?;
    let sampler = RoundSampler::new(&config.settings, config.efficiency)?;
    let base = ChaCha8Rng::seed_from_u64(config.seed);
    let chunks = config.shots.div_ceil(CHUNK);
    let tally = (0..chunks)
        .map(|c| run_chunk(config, &sampler, &base, c * CHUNK))
        .fold(Tally::default(), Tally::merge);
    Ok(SimulationResult::from_tally(config.shots, tally))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::{optimal_settings, BiasPair};

    fn uniform_config(shots: u64, seed: u64) -> SimulationConfig {
        let settings = optimal_settings(BiasPair::new(0.5, 0.5).unwrap()).unwrap();
        SimulationConfig::new(JointInputDistribution::uniform(), settings, shots, seed)
    }

    #[test]
    fn xor_algebra_example() {
        let r = RoundRecord::from_outcomes((1, 0, 0), 1, 1, 1);
        assert_eq!((r.a, r.message, r.guess), (1, 0, 1));
        assert!(r.success);
        assert!(r.is_consistent());
    }

    #[test]
    fn forced_outcomes_always_succeed() {
        for i in 0..16u8 {
            let (a0, a1, b, alice) = (i >> 3, (i >> 2) & 1, (i >> 1) & 1, i & 1);
            let bob = alice ^ ((a0 ^ a1) & b);
            let r = RoundRecord::from_outcomes((a0, a1, b), alice, bob, 1);
            assert!(r.success, "{r:?}");
        }
    }

    #[test]
    fn perfect_detectors_herald_once() {
        let cfg = uniform_config(1, 0);
        let sampler = RoundSampler::new(&cfg.settings, 1.0).unwrap();
        let mut rng = shot_rng(3, 0);
        for _ in 0..1000 {
            assert_eq!(sampler.run_round((0, 1, 1), &mut rng).herald_attempts, 1);
        }
    }

    #[test]
    fn rejects_bad_config() {
        assert!(run_trials(&uniform_config(0, 1)).is_err());
        assert!(run_trials(&uniform_config(10, 1).with_efficiency(0.0)).is_err());
        assert!(run_trials(&uniform_config(10, 1).with_efficiency(1.5)).is_err());
    }

    #[test]
    fn deterministic_and_partition_independent() {
        let cfg = uniform_config(50_000, 99).with_efficiency(0.7);
        let a = run_trials(&cfg).unwrap();
        let b = run_trials_with_workers(&cfg, 3).unwrap();
        let c = run_trials_serial(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        let other = run_trials(&SimulationConfig { seed: 100, ..cfg }).unwrap();
        assert_ne!(a.successes, other.successes);
    }

    #[test]
    fn sample_index_skips_empty_cells() {
        assert_eq!(sample_index(&[0.0, 1.0, 0.0], 0.0), 1);
        assert_eq!(sample_index(&[0.5, 0.5, 0.0], 0.999_999_999_999), 1);
        assert_eq!(sample_index(&[0.25, 0.25, 0.25, 0.25], 0.6), 2);
    }

    #[test]
    fn result_statistics() {
        let r = SimulationResult::from_tally(
            100,
            Tally {
                successes: 80,
                herald_attempts: 250,
            },
        );
        assert_eq!(r.empirical_i, 0.8);
        assert!((r.std_error - 0.04).abs() < 1e-15);
        assert_eq!(r.mean_herald_attempts, 2.5);
        assert!((r.z_score(0.76) - 1.0).abs() < 1e-12);
    }
}
