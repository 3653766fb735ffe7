use num_complex::Complex64;
use proptest::prelude::*;
use qhopf::fock::{cutoff_for_tail, DEFAULT_TAIL};
use qhopf::thermofield::{
    bose_occupation, entanglement_entropy, entropy_closed_form, entropy_expectation,
    entropy_gradient_relation, overlap, overlap_per_mode, stationary_theta, vacuum_closed,
    vacuum_closed_pair, vacuum_exponential, weights, ModeSpec, Sector,
};

#[test]
fn constructions_agree_up_to_theta_one() {
    for theta in [0.1, 0.5, 1.0] {
        let n = cutoff_for_tail(theta, DEFAULT_TAIL).max(30);
        let modes = vec![ModeSpec::new("k", 1.0, theta).unwrap()];
        let e = vacuum_exponential(&modes, &[n]).unwrap();
        let c = vacuum_closed(&modes, &[n], DEFAULT_TAIL).unwrap();
        let ov = overlap(&e, &c).unwrap();
        assert!(
            (ov - Complex64::new(1.0, 0.0)).norm() < 1e-10,
            "theta={theta}"
        );
        assert!(e.annihilation_residual().unwrap() < e.annihilation_bound());
        assert!((e.norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn gradient_relation_at_larger_angle() {
    let r = entropy_gradient_relation(1.0, 60).unwrap();
    assert!(r.entropy < 1e-5, "{}", r.entropy);
    assert!(r.generator < 1e-5);
}

#[test]
fn overlap_factorizes_over_global_product() {
    let modes = vec![
        ModeSpec::new("p", 1.0, 0.2).unwrap(),
        ModeSpec::new("q", 2.0, 0.4).unwrap(),
        ModeSpec::new("r", 0.5, 0.3).unwrap(),
    ];
    let shifted: Vec<ModeSpec> = modes
        .iter()
        .map(|m| ModeSpec {
            theta: m.theta + 0.25,
            ..m.clone()
        })
        .collect();
    let cut = [4, 4, 4];
    let a = vacuum_closed(&modes, &cut, 1.0).unwrap();
    let b = vacuum_closed(&shifted, &cut, 1.0).unwrap();
    let global = a
        .global_state()
        .unwrap()
        .inner(&b.global_state().unwrap())
        .unwrap();
    let product: Complex64 = overlap_per_mode(&a, &b).unwrap().into_iter().product();
    assert!((global - product).norm() < 1e-12);
    assert!((overlap(&a, &b).unwrap() - global).norm() < 1e-12);
}

#[test]
fn thermal_identification() {
    for (beta, omega) in [(1.0, 1.0), (0.5, 2.0), (2.0, 0.3)] {
        let theta = stationary_theta(beta, omega).unwrap();
        let n = cutoff_for_tail(theta, 1e-14);
        let v = vacuum_closed(&[ModeSpec::new("k", omega, theta).unwrap()], &[n], 1e-13).unwrap();
        let occ = v.occupation(0, 0).unwrap();
        assert!((occ - bose_occupation(beta, omega)).abs() < 1e-10, "{occ}");
    }
}

#[test]
fn entropy_is_entanglement_entropy() {
    for theta in [0.1, 0.5, 1.0] {
        let v = vacuum_closed_pair(theta, cutoff_for_tail(theta, DEFAULT_TAIL)).unwrap();
        let s = entropy_expectation(&v, Sector::A).unwrap();
        assert!((s - entanglement_entropy(&v).unwrap()).abs() < 1e-8);
        assert!((s - entropy_closed_form(theta)).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn single_mode_overlap_closed_form(theta in -1.0..1.0f64, theta_prime in -1.0..1.0f64) {
        let n = cutoff_for_tail(theta.abs().max(theta_prime.abs()), DEFAULT_TAIL).max(4);
        let a = vacuum_closed_pair(theta, n).unwrap();
        let b = vacuum_closed_pair(theta_prime, n).unwrap();
        let ov = overlap(&a, &b).unwrap();
        prop_assert!((ov.re - 1.0 / (theta - theta_prime).cosh()).abs() < 1e-10);
        prop_assert!(ov.im.abs() < 1e-15);
    }

    #[test]
    fn weights_sum_to_one_and_decrease(theta in 0.05..1.2f64) {
        let n_max = cutoff_for_tail(theta, 1e-13);
        let d = weights(&[theta], n_max).unwrap();
        prop_assert!((d.total() - 1.0).abs() < 1e-12);
        prop_assert!(d.tail() < 1e-13);
        let w: Vec<f64> = d.entries().map(|(_, w)| w).collect();
        prop_assert!(w.windows(2).all(|p| p[1] < p[0]));
        prop_assert!(w.iter().all(|&x| x > 0.0 && x < 1.0));
    }

    #[test]
    fn amplitudes_are_geometric(theta in 0.05..1.0f64) {
        let cutoff = cutoff_for_tail(theta, DEFAULT_TAIL);
        let v = vacuum_closed_pair(theta, cutoff).unwrap();
        let psi = v.mode_state(0);
        for n in 0..cutoff {
            let r = psi.amplitude(&[n + 1, n + 1]).unwrap().re / psi.amplitude(&[n, n]).unwrap().re;
            prop_assert!((r - theta.tanh()).abs() < 1e-10);
        }
    }
}
