use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tribell::inequality::correlation::Correlator;
use tribell::inequality::{catalog, ModularTable, Party, Triple};
use tribell::local::white_noise_lhs;
use tribell::quantum::*;

fn random_phases(d: usize, rng: &mut impl Rng) -> PhaseSettings {
    let mut v = || (0..d).map(|_| rng.random_range(-PI..PI)).collect::<Vec<f64>>();
    PhaseSettings::new(d, [[v(), v()], [v(), v()], [v(), v()]]).unwrap()
}

#[test]
fn closed_form_agrees_with_contraction_for_100_settings() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for d in 2..=6 {
        let ghz = PureState::ghz(d).unwrap();
        for _ in 0..100 {
            let s = random_phases(d, &mut rng);
            let diff = quantum_table(&ghz, &s).unwrap().max_abs_diff(&ghz_closed_form_table(&s));
            assert!(diff < 1e-12, "d={d} diff={diff}");
        }
    }
}

#[test]
fn distributions_ignore_constant_phase_offsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for d in [2, 3, 4, 5] {
        let state = PureState::random(d, rng.random()).unwrap();
        let s = random_phases(d, &mut rng);
        let mut shifted = s.clone();
        let offset = rng.random_range(-PI..PI);
        for x in shifted.get_mut(Party::B, 2) {
            *x += offset;
        }
        for t in Triple::ALL {
            let a = joint_distribution(&state, &s, t).unwrap();
            let b = joint_distribution(&state, &shifted, t).unwrap();
            let worst = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            assert!(worst < 1e-12);
        }
    }
}

#[test]
fn distributions_are_normalized_and_nonnegative() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for d in 2..=5 {
        let state = PureState::random(d, rng.random()).unwrap();
        let s = random_phases(d, &mut rng);
        for t in Triple::ALL {
            let p = joint_distribution(&state, &s, t).unwrap();
            assert!(p.iter().all(|&x| x >= 0.0));
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn two_port_devices_match_bloch_observables() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..20 {
        let state = PureState::random(2, rng.random()).unwrap();
        let s = random_phases(2, &mut rng);
        let table = quantum_table(&state, &s).unwrap();
        let obs = QubitSettings {
            obs: std::array::from_fn(|p| {
                std::array::from_fn(|k| {
                    let v = s.get(Party::from_index(p), k as u8 + 1);
                    QubitObservable::from_multiport([v[0], v[1]])
                })
            }),
        };
        let e = qubit_expectations(&state, &obs).unwrap();
        for t in Triple::ALL {
            let [i, j, k] = t.0;
            let want = table.get(t, 0) - table.get(t, 1);
            let got = e.get(Correlator::triple(i, j, k)).unwrap();
            assert!((want - got).abs() < 1e-10, "{t}: {want} vs {got}");
        }
    }
}

#[test]
fn noise_acts_affinely_on_every_catalog_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for ineq in catalog::all_probability() {
        let d = ineq.d();
        let t = ghz_closed_form_table(&random_phases(d, &mut rng));
        for f in [0.0, 0.1, 0.47, 0.9, 1.0] {
            let noisy = mix_white_noise(&t, NoiseParameter::new(f).unwrap());
            let lhs = ineq.evaluate_lhs(&noisy).unwrap();
            let want = (1.0 - f) * ineq.evaluate_lhs(&t).unwrap() + f * white_noise_lhs(&ineq);
            assert!((lhs - want).abs() < 1e-12, "{} F={f}", ineq.label());
        }
    }
    assert!(ModularTable::uniform(3).values().iter().all(|&x| x == 1.0 / 3.0));
}

#[test]
fn qubit_expectations_are_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for _ in 0..50 {
        let state = PureState::random(2, rng.random()).unwrap();
        let x: Vec<f64> = (0..12).map(|_| rng.random_range(-PI..PI)).collect();
        let e = qubit_expectations(&state, &QubitSettings::from_angles(&x).unwrap()).unwrap();
        e.validate().unwrap();
    }
}

#[test]
fn ghz_x_correlation_via_joint_distribution() {
    let state = PureState::generalized_ghz(PI / 4.0).unwrap();
    let obs = QubitSettings { obs: [[QubitObservable::x(); 2]; 3] };
    let b = qubit_behavior(&state, &obs).unwrap();
    let e = tribell::inequality::correlation::expectations_from_joint(&b).unwrap();
    assert!((e.get(Correlator::triple(1, 1, 1)).unwrap() - 1.0).abs() < 1e-12);
}
