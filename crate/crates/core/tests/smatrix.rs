use std::f64::consts::PI;

use gamov::smatrix::descriptor::ModelDescriptor;
use gamov::smatrix::{friedrichs_line_roots, FriedrichsSpec, ScatteringModel, Side};
use gamov::{Error, Mat};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn s(model: &ScatteringModel, z: Complex64) -> Complex64 {
    model.eval(z).unwrap()[(0, 0)]
}

#[test]
fn one_dim_perturbation_values() {
    let m = ScatteringModel::one_dim_perturbation();
    // (1 − i)/(1 + i) = −i at both z = 0 and z = 1
    assert!((s(&m, c(0.0, 0.0)) - c(0.0, -1.0)).norm() < 1e-15);
    assert!((s(&m, c(1.0, 0.0)) - c(0.0, -1.0)).norm() < 1e-15);
    assert!((s(&m, c(5.0, 0.0)).norm() - 1.0).abs() < 1e-15);
    // (−i)² − (−i) + 1 − i = 0, so S(−i) = 0 and S(i)⁻¹ = S(−i)* = 0
    let inv = m.eval_inverse(c(0.0, 1.0));
    assert!(matches!(inv, Err(Error::PoleProximity { .. })) || inv.unwrap()[(0, 0)].norm() < 1e-14);
    assert!(s(&m, c(0.0, -1.0)).norm() < 1e-15);
    assert!(matches!(m.eval(c(0.0, 1.0)), Err(Error::PoleProximity { .. })));
}

#[test]
fn friedrichs_line_roots_solve_the_quadratic() {
    let [zp, zm] = friedrichs_line_roots();
    for z in [zp, zm] {
        assert!((z * z - z * c(1.0, -1.0) - c(1.0, 1.0)).norm() < 1e-14);
        assert!(z.im < 0.0);
    }
    assert!((zp - c(1.52909, -0.25707)).norm() < 1e-5);
    assert!((zm - c(-0.52909, -0.74293)).norm() < 1e-5);
}

#[test]
fn blaschke_values() {
    let m = ScatteringModel::blaschke(&[c(0.0, -1.0)]).unwrap();
    assert!(s(&m, c(0.0, 1.0)).norm() < 1e-15);
    assert!((s(&m, c(0.0, 0.0)) + 1.0).norm() < 1e-15);
    assert!(matches!(m.eval(c(0.0, -1.0)), Err(Error::PoleProximity { .. })));
    assert!(matches!(ScatteringModel::blaschke(&[c(2.0, 0.0)]), Err(Error::RealPole(_))));
    let id = ScatteringModel::identity();
    assert!((s(&id, c(3.0, -2.0)) - 1.0).norm() == 0.0);
}

#[test]
fn cut_exponential_boundary_moduli() {
    let m = ScatteringModel::cut_exponential();
    // log(−1 ± i0) = ±iπ, so S(−1 ± i0) = exp(∓π/(−2))
    let up = m.boundary_value(-1.0, Side::Upper).unwrap()[(0, 0)];
    let down = m.boundary_value(-1.0, Side::Lower).unwrap()[(0, 0)];
    assert!((up.norm() - (-PI / -2.0).exp()).abs() < 1e-10);
    assert!((down.norm() - (PI / -2.0).exp()).abs() < 1e-10);
    assert!(matches!(m.eval(c(-1.0, 0.0)), Err(Error::BranchCutViolation { .. })));
    let (cut, size) = m.has_actual_cut(&[-0.5, -1.0, -2.0]).unwrap();
    assert!(cut && size > 1e-3);
}

#[test]
fn models_without_cut_have_no_jump() {
    for m in [ScatteringModel::friedrichs_line(), ScatteringModel::one_dim_perturbation()] {
        let (cut, size) = m.has_actual_cut(&[-0.5, -1.0, -2.0]).unwrap();
        assert!(!cut && size < 1e-14);
    }
}

#[test]
fn halfline_normalization_constant() {
    let m = ScatteringModel::friedrichs_halfline_log().unwrap();
    let (_, scale) = m.log_coupling(c(1.0, 1.0), Side::Upper).unwrap();
    assert!((scale * scale - 3.0 / (2.0 * PI * PI)).abs() < 1e-10);
}

#[test]
fn halfline_boundary_values_match_the_explicit_formulas() {
    let m = ScatteringModel::friedrichs_halfline_log().unwrap();
    let (_, scale) = m.log_coupling(c(1.0, 1.0), Side::Upper).unwrap();
    let c2 = scale * scale;
    for l in [-0.5, -1.0, -2.0, -7.0] {
        let mu_up = m.mu_pair(c(l, 0.0), Side::Upper).unwrap().1;
        let mu_down = m.mu_pair(c(l, 0.0), Side::Lower).unwrap().0;
        assert!((mu_up - mu_down).norm() < 1e-10, "μ₊(λ+i0) = μ₋(λ−i0) at {l}");
        let log_up = c(l.abs().ln(), PI);
        let log_down = c(l.abs().ln(), -PI);
        let expected_up = 1.0 - c(0.0, 2.0 * PI * c2) * log_up * log_up / ((l - 1.0) * (l - 1.0) * mu_up);
        let expected_down = 1.0 / (1.0 + c(0.0, 2.0 * PI * c2) * log_down * log_down / ((l - 1.0) * (l - 1.0) * mu_down));
        assert!((m.boundary_value(l, Side::Upper).unwrap()[(0, 0)] - expected_up).norm() < 1e-10);
        assert!((m.boundary_value(l, Side::Lower).unwrap()[(0, 0)] - expected_down).norm() < 1e-10);
    }
    let (cut, size) = m.has_actual_cut(&[-0.5, -1.0, -2.0]).unwrap();
    assert!(cut && size > 1e-3);
}

#[test]
fn halfline_coupling_bounded_on_the_axis() {
    let m = ScatteringModel::friedrichs_halfline_log().unwrap();
    let (_, scale) = m.log_coupling(c(1.0, 1.0), Side::Upper).unwrap();
    let worst = (1..2000).map(|j| j as f64 * 0.01).map(|l: f64| (scale * l.ln() / (l - 1.0)).abs()).fold(0.0, f64::max);
    assert!(worst.is_finite() && worst < 10.0);
}

#[test]
fn general_builder_reproduces_closed_forms() {
    let line = ScatteringModel::general_friedrichs(FriedrichsSpec::lorentzian_line()).unwrap();
    let closed = ScatteringModel::friedrichs_line();
    for z in [c(2.0, 0.0), c(0.3, 0.0), c(-1.0, 0.0), c(0.5, 1.5), c(1.0, -0.5)] {
        assert!((s(&line, z) - s(&closed, z)).norm() < 1e-8, "line model at {z}");
    }
    let half = ScatteringModel::general_friedrichs(FriedrichsSpec::log_halfline()).unwrap();
    let log = ScatteringModel::friedrichs_halfline_log().unwrap();
    for z in [c(2.0, 0.0), c(0.5, 0.0), c(1.0, 1.0), c(-1.0, 0.5)] {
        assert!((s(&half, z) - s(&log, z)).norm() < 1e-8, "half-line model at {z}");
    }
    for side in [Side::Upper, Side::Lower] {
        let a = half.boundary_value(-1.5, side).unwrap()[(0, 0)];
        let b = log.boundary_value(-1.5, side).unwrap()[(0, 0)];
        assert!((a - b).norm() < 1e-8);
    }
}

#[test]
fn descriptor_round_trip_for_builtins() {
    let models = [
        ScatteringModel::one_dim_perturbation(),
        ScatteringModel::friedrichs_line(),
        ScatteringModel::cut_exponential(),
        ScatteringModel::general_friedrichs(FriedrichsSpec::lorentzian_line()).unwrap(),
    ];
    for m in models {
        let d = m.descriptor();
        let text = d.to_json().unwrap();
        let back = ModelDescriptor::from_json(&text).unwrap();
        assert_eq!(back, d);
        let rebuilt = back.build().unwrap();
        let z = c(0.7, 0.4);
        assert!((s(&rebuilt, z) - s(&m, z)).norm() < 1e-12);
    }
}

fn pole() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, 0.1..3.0f64, any::<bool>()).prop_map(|(re, im, up)| c(re, if up { im } else { -im }))
}

proptest! {
    #[test]
    fn blaschke_unitary_on_the_axis(poles in prop::collection::vec(pole(), 1..4), l in -20.0..20.0f64) {
        let m = ScatteringModel::blaschke(&poles).unwrap();
        let v = m.eval(c(l, 0.0)).unwrap();
        prop_assert!((v.adjoint() * &v - Mat::identity(1, 1)).norm() < 1e-10);
    }

    #[test]
    fn inverse_is_reflected_adjoint(poles in prop::collection::vec(pole(), 1..4), re in -3.0..3.0f64, im in 0.05..3.0f64) {
        let m = ScatteringModel::blaschke(&poles).unwrap();
        let z = c(re, im);
        prop_assume!(poles.iter().all(|p| (p - z).norm() > 1e-3 && (p.conj() - z).norm() > 1e-3));
        let prod = m.eval_inverse(z).unwrap() * m.eval(z).unwrap();
        prop_assert!((prod[(0, 0)] - 1.0).norm() < 1e-9);
    }

    #[test]
    fn descriptor_round_trip(poles in prop::collection::vec(pole(), 0..4)) {
        let m = ScatteringModel::blaschke(&poles).unwrap();
        let d = m.descriptor();
        let back = ModelDescriptor::from_json(&d.to_json().unwrap()).unwrap();
        prop_assert_eq!(&back, &d);
        let rebuilt = back.build().unwrap();
        prop_assert_eq!(rebuilt.declared_poles(), m.declared_poles());
    }
}
