use num_complex::Complex64;
use proptest::prelude::*;
use qhopf::bogoliubov::{
    closed_a, closed_b, make_pair, number_difference_residual, pair_space, translate,
    translation_block, TRANSLATION_TOL,
};
use qhopf::hopf::{
    coproduct_deformed_a, coproduct_deformed_adag, primitive_homomorphism_residual, q_number,
    DeformationParameter,
};
use qhopf::Operator;

const THETA_GRID: [f64; 7] = [0.0, 0.25, -0.25, 0.5, -0.5, 1.0, -1.0];

proptest! {
    #[test]
    fn q_number_inversion_symmetry(x in -4.0..4.0f64, theta in -1.5..1.5f64, phase in 0.05..3.0f64) {
        let q = DeformationParameter::from_theta(theta);
        let a = q_number(x, q);
        let b = q_number(x, q.inverse());
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
        let u = DeformationParameter::unit(phase);
        prop_assert!((q_number(x, u) - q_number(x, u.inverse())).norm() < 1e-10 * q_number(x, u).norm().max(1.0));
    }

    #[test]
    fn q_number_matches_defining_quotient(x in -3.0..3.0f64, theta in 0.05..1.5f64) {
        let q = DeformationParameter::from_theta(theta);
        let z = q.q().re;
        let direct = (z.powf(x) - z.powf(-x)) / (z - 1.0 / z);
        prop_assert!((q_number(x, q).re - direct).abs() < 1e-11 * direct.abs().max(1.0));
    }
}

#[test]
fn deformed_closure_on_theta_grid() {
    let s = pair_space(20).unwrap();
    let low = s.low_indices(2);
    let dn = qhopf::hopf::coproduct_primitive(qhopf::hopf::Generator::N, &s).unwrap();
    for theta in THETA_GRID {
        let q = DeformationParameter::from_theta(theta);
        let da = coproduct_deformed_a(q, &s).unwrap();
        let dad = coproduct_deformed_adag(q, &s).unwrap();
        let z = q.q().re;
        let want = Operator::identity(&s).scale_real(z + 1.0 / z);
        assert!(
            da.commutator(&dad)
                .unwrap()
                .deviation_on(&want, &low)
                .unwrap()
                < 1e-10
        );
        assert!(
            dn.commutator(&da)
                .unwrap()
                .deviation_on(&(-&da), &low)
                .unwrap()
                < 1e-10
        );
    }
    assert!(primitive_homomorphism_residual(&s).unwrap() < 1e-10);
}

#[test]
fn bogoliubov_pairs_are_canonical_on_grid() {
    let s = pair_space(10).unwrap();
    for theta in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let p = make_pair(&s, theta).unwrap();
        assert!(p.ccr_residual().unwrap() < 1e-10, "theta={theta}");
        assert!(p.form_deviation < 1e-12);
        assert!(p.generator.hermiticity_residual() < 1e-12);
    }
    assert!(number_difference_residual(&s).unwrap() < 1e-10);
}

#[test]
fn closed_forms_by_coefficient() {
    // A(theta) = cosh a1 - sinh a2^dag, read off entry by entry
    let s = pair_space(4).unwrap();
    let theta: f64 = -0.7;
    let a = closed_a(&s, theta).unwrap();
    let b = closed_b(&s, theta).unwrap();
    for i in 0..s.total_dim() {
        for j in 0..s.total_dim() {
            let (bra, ket) = (s.occupations(i), s.occupations(j));
            let mut want_a = 0.0;
            let mut want_b = 0.0;
            if bra[1] == ket[1] && bra[0] + 1 == ket[0] {
                want_a += theta.cosh() * (ket[0] as f64).sqrt();
            }
            if bra[0] == ket[0] && bra[1] == ket[1] + 1 {
                want_a -= theta.sinh() * (bra[1] as f64).sqrt();
            }
            if bra[0] == ket[0] && bra[1] + 1 == ket[1] {
                want_b += theta.cosh() * (ket[1] as f64).sqrt();
            }
            if bra[1] == ket[1] && bra[0] == ket[0] + 1 {
                want_b -= theta.sinh() * (bra[0] as f64).sqrt();
            }
            assert!((a.get(i, j) - Complex64::new(want_a, 0.0)).norm() < 1e-15);
            assert!((b.get(i, j) - Complex64::new(want_b, 0.0)).norm() < 1e-15);
        }
    }
}

#[test]
fn translation_and_group_property() {
    let s = pair_space(30).unwrap();
    let p = make_pair(&s, 0.2).unwrap();
    let moved = translate(&p, 0.3, TRANSLATION_TOL).unwrap();
    let block = translation_block(&s);
    let want = closed_a(&s, 0.5).unwrap();
    assert!(moved.a_theta.deviation_on(&want, &block).unwrap() < 1e-6);
    assert!((moved.theta - 0.5).abs() < 1e-15);

    let twice = translate(
        &translate(&p, 0.1, TRANSLATION_TOL).unwrap(),
        0.1,
        TRANSLATION_TOL,
    )
    .unwrap();
    let once = translate(&p, 0.2, TRANSLATION_TOL).unwrap();
    assert!(twice.a_theta.deviation_on(&once.a_theta, &block).unwrap() < 1e-6);
}
