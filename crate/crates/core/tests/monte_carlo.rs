//! Statistical checks of the sampled protocol against the exact success
//! probability.

use qbridge_core::protocol::*;
use qbridge_core::strategy::*;

fn rkb() -> (JointInputDistribution, MeasurementSettings) {
    let form = ProductForm::new(0.5, 0.55, 0.75).unwrap();
    (form.expand(), optimal_settings(form.bias()).unwrap())
}

#[test]
fn same_config_same_result() {
    let (dist, settings) = rkb();
    let cfg = SimulationConfig::new(dist, settings, 20_000, 7).with_efficiency(0.4);
    assert_eq!(run_trials(&cfg).unwrap(), run_trials(&cfg).unwrap());
    assert_eq!(run_trials(&cfg).unwrap(), run_trials_with_workers(&cfg, 4).unwrap());
}

#[test]
fn calibration_over_seeds() {
    let (dist, settings) = rkb();
    let exact = protocol_success(&dist, &settings);
    let within = (0..100u64)
        .filter(|&seed| {
            let r = run_trials(&SimulationConfig::new(dist, settings, 100_000, seed)).unwrap();
            r.z_score(exact).abs() <= 4.0
        })
        .count();
    assert!(within >= 99, "{within}/100 seeds within 4 standard errors");
}

#[test]
fn correlated_inputs_are_sampled_from_the_joint_table() {
    // a0 = a1 always: the protocol always uses setting a = 0.
    let mut probs = [0.0; 8];
    probs[0] = 0.3;
    probs[1] = 0.2;
    probs[6] = 0.1;
    probs[7] = 0.4;
    let dist = JointInputDistribution::new(probs).unwrap();
    let settings = optimal_settings(BiasPair::new(0.5, 0.5).unwrap()).unwrap();
    let exact = protocol_success(&dist, &settings);
    let r = run_trials(&SimulationConfig::new(dist, settings, 200_000, 11)).unwrap();
    assert!(r.z_score(exact).abs() < 4.0, "z = {}", r.z_score(exact));
}

#[test]
fn aligned_settings_on_uniform_inputs() {
    let settings = MeasurementSettings::new(0.0, 0.0, 0.0, 0.0).unwrap();
    let dist = JointInputDistribution::uniform();
    let exact = protocol_success(&dist, &settings);
    assert!((exact - 0.75).abs() < 1e-12);
    let r = run_trials(&SimulationConfig::new(dist, settings, 100_000, 5)).unwrap();
    assert!(r.z_score(exact).abs() <= 3.0, "z = {}", r.z_score(exact));
}

#[test]
fn heralding_mean_and_invariance() {
    let (dist, settings) = rkb();
    let exact = protocol_success(&dist, &settings);
    let r = run_trials(&SimulationConfig::new(dist, settings, 200_000, 3).with_efficiency(0.3)).unwrap();
    assert!((r.mean_herald_attempts - 1.0 / 0.09).abs() / (1.0 / 0.09) < 0.02);
    assert!(r.z_score(exact).abs() < 4.0);
}

#[test]
fn sampled_rounds_respect_the_xor_rules() {
    let (_, settings) = rkb();
    let sampler = RoundSampler::new(&settings, 0.8).unwrap();
    for index in 0..2_000u64 {
        let mut rng = shot_rng(17, index);
        let code = (index % 8) as u8;
        let r = sampler.run_round((code >> 2, (code >> 1) & 1, code & 1), &mut rng);
        assert!(r.is_consistent(), "{r:?}");
        assert_eq!(r.success, (r.alice_outcome ^ r.bob_outcome) == (r.a & r.b));
    }
}
