//! Cross-checks between the closed forms, the exhaustive classical search and
//! the quantum expressions.

use proptest::prelude::*;
use qbridge_core::quantum::{bell_phi_plus, correlation, XZObservable};
use qbridge_core::strategy::*;

/// Brute-force `I` for one deterministic strategy, written independently of
/// `DeterministicStrategy` so it can act as an oracle for the search.
fn brute_force_optimum(dist: &JointInputDistribution) -> f64 {
    let mut best: f64 = 0.0;
    for encoder in 0..16u32 {
        for decoder in 0..16u32 {
            let mut total = 0.0;
            for a0 in 0..2u32 {
                for a1 in 0..2u32 {
                    for b in 0..2u32 {
                        let m = (encoder >> (2 * a0 + a1)) & 1;
                        let r = (decoder >> (2 * b + m)) & 1;
                        let wanted = if b == 0 { a0 } else { a1 };
                        if r == wanted {
                            total += dist.get(a0 as u8, a1 as u8, b as u8);
                        }
                    }
                }
            }
            best = best.max(total);
        }
    }
    best
}

fn grid(n: usize) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |i| i as f64 / (n - 1) as f64)
}

#[test]
fn enumeration_matches_closed_form_on_product_grid() {
    let mut checked = 0;
    for p0 in grid(6) {
        for p1 in grid(6) {
            for q in grid(6) {
                let form = ProductForm::new(p0, p1, q).unwrap();
                let dist = form.expand();
                let opt = classical_value_enumerated(&dist);
                let closed = classical_value_closed_form(q, p0, p1).unwrap();
                assert!((opt.value - closed).abs() < 1e-12, "({p0}, {p1}, {q})");
                assert!((opt.value - brute_force_optimum(&dist)).abs() < 1e-12);
                assert_eq!(opt.candidates, 256);
                checked += 1;
            }
        }
    }
    assert!(checked >= 100);
}

#[test]
fn optima_are_listed_in_index_order_and_attain_the_value() {
    let dist = ProductForm::new(0.5, 0.5, 0.5).unwrap().expand();
    let opt = classical_value_enumerated(&dist);
    assert!(opt.optima.windows(2).all(|w| w[0].index() < w[1].index()));
    for s in &opt.optima {
        assert!((s.success_probability(&dist) - opt.value).abs() <= TIE_TOL);
    }
}

#[test]
fn quantum_dominates_classical_in_region() {
    let mut in_region = 0;
    for i in 1..40 {
        for j in 1..40 {
            let bias = BiasPair::new(i as f64 / 40.0, j as f64 / 40.0).unwrap();
            let v = quantum_value_closed_form(bias);
            let form = bias.matching_product();
            let classical = classical_value_closed_form(form.q, form.p0_prime, form.p1_prime).unwrap();
            assert!(v.value >= classical - 1e-12);
            assert!((0.0..=1.0).contains(&v.value));
            in_region += usize::from(v.in_region);
        }
    }
    assert!(in_region > 100);
    let center = quantum_value_closed_form(BiasPair::new(0.5, 0.5).unwrap());
    assert!(center.value > 0.75 + 0.1);
}

#[test]
fn protocol_matches_chsh_chain_on_in_region_grid() {
    let mut points = 0;
    for i in 1..=40 {
        for j in 1..=40 {
            let p = i as f64 / 41.0;
            let q = j as f64 / 41.0;
            let bias = BiasPair::new(p, q).unwrap();
            let Ok(settings) = optimal_settings(bias) else { continue };
            // Product distribution with the same p: a1 deterministic, a0 biased.
            let dist = ProductForm::new(p, 1.0, q).unwrap().expand();
            let success = protocol_success(&dist, &settings);
            let chsh = biased_chsh_value(bias, &settings);
            let eq6 = 0.5 * (1.0 + biased_chsh_bound(bias));
            assert!((success - eq6).abs() < 1e-9, "({p}, {q})");
            assert!((success - 0.5 * (1.0 + chsh)).abs() < 1e-12);
            points += 1;
        }
    }
    assert!(points >= 400, "only {points} in-region points");
}

#[test]
fn xor_decoding_identity_is_exhaustive() {
    for code in 0..16u8 {
        let (a0, a1, b, alice) = (code >> 3, (code >> 2) & 1, (code >> 1) & 1, code & 1);
        let bob = alice ^ ((a0 ^ a1) & b);
        let guess = bob ^ (alice ^ a0);
        assert_eq!(guess, if b == 0 { a0 } else { a1 });
    }
}

#[test]
fn optimal_observables_are_unitary_reflections() {
    let settings = optimal_settings(BiasPair::new(0.55, 0.35).unwrap()).unwrap();
    let psi = bell_phi_plus();
    for a in 0..2 {
        let o = settings.alice(a);
        assert!((correlation(o, o, &psi).value() - 1.0).abs() < 1e-12);
    }
    let b2 = XZObservable::new(settings.gamma1).unwrap();
    assert_eq!(settings.bob(1), b2);
}

fn joint_strategy() -> impl Strategy<Value = JointInputDistribution> {
    prop::array::uniform8(0.0f64..1.0).prop_filter_map("positive mass", |w| {
        let total: f64 = w.iter().sum();
        if total <= 1e-9 {
            return None;
        }
        let mut probs = w.map(|x| x / total);
        let drift = 1.0 - probs.iter().sum::<f64>();
        probs[0] = (probs[0] + drift).max(0.0);
        JointInputDistribution::new(probs).ok()
    })
}

proptest! {
    #[test]
    fn enumeration_dominates_closed_form_for_any_joint(dist in joint_strategy()) {
        let opt = classical_value_enumerated(&dist);
        let closed = classical_value_closed_form(dist.q(), dist.a0_zero_given_b0(), dist.a1_zero_given_b1()).unwrap();
        prop_assert!(opt.value >= closed - 1e-12);
        prop_assert!((opt.value - brute_force_optimum(&dist)).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&opt.value));
    }

    #[test]
    fn reported_values_are_probabilities(p0 in 0.0f64..=1.0, p1 in 0.0f64..=1.0, q in 0.0f64..=1.0) {
        let r = evaluate_product(ProductForm::new(p0, p1, q).unwrap());
        prop_assert!((0.0..=1.0).contains(&r.classical_value));
        prop_assert!((0.0..=1.0).contains(&r.quantum_value));
        prop_assert!(r.quantum_value >= r.classical_value - 1e-12);
        prop_assert!((r.advantage - (r.quantum_value - r.classical_value)).abs() < 1e-15);
        if !r.quantum_in_region {
            prop_assert_eq!(r.quantum_value, r.classical_value);
        }
    }

    #[test]
    fn protocol_success_is_probability(a in prop::array::uniform4(-4.0f64..4.0), dist in joint_strategy()) {
        let s = MeasurementSettings::new(a[0], a[1], a[2], a[3]).unwrap();
        let i = protocol_success(&dist, &s);
        prop_assert!((0.0..=1.0).contains(&i));
    }
}
