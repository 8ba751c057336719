mod common;

use std::f64::consts::PI;

use common::{c, line_integral};
use gamov::resonance::{
    cut_singularities, hardy_minus_defect, laurent_coefficients, laurent_expansion, locate_inverse_poles,
    locate_poles, residue_of_S, survival_test, PoleClass, Region,
};
use gamov::smatrix::{friedrichs_line_roots, ScatteringModel, Side};
use gamov::{Error, Vector};
use num_complex::Complex64;
use proptest::prelude::*;

fn lower_region() -> Region {
    Region::new(-3.0, 3.0, -3.0, -0.01).unwrap()
}

fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    v
}

fn newton(p: impl Fn(Complex64) -> (Complex64, Complex64), seed: Complex64) -> Option<Complex64> {
    let mut z = seed;
    for _ in 0..100 {
        let (v, d) = p(z);
        let step = v / d;
        z -= step;
        if step.norm() < 1e-14 {
            return Some(z);
        }
    }
    None
}

/// Winding number of `S` along the boundary of `region`, from the unwrapped
/// phase on a dense polygon.
fn winding_of_s(model: &ScatteringModel, region: &Region) -> i64 {
    let corners = [
        c(region.re_min, region.im_min),
        c(region.re_max, region.im_min),
        c(region.re_max, region.im_max),
        c(region.re_min, region.im_max),
    ];
    let per_edge = 20_000;
    let mut total = 0.0;
    let mut prev = model.eval(corners[0]).unwrap()[(0, 0)];
    for e in 0..4 {
        let (a, b) = (corners[e], corners[(e + 1) % 4]);
        for j in 1..=per_edge {
            let z = a + (b - a) * (j as f64 / per_edge as f64);
            let v = model.eval(z).unwrap()[(0, 0)];
            total += (v / prev).arg();
            prev = v;
        }
    }
    (total / (2.0 * PI)).round() as i64
}

/// `(Q₊h)(z)` for `h = S(λ)*k/(λ − ζ)` by the Cauchy integral.
fn cauchy_of_adjoint(model: &ScatteringModel, zeta: Complex64, z: Complex64) -> Complex64 {
    line_integral(|l| {
        let s = model.axis_value(l, Side::Upper).unwrap()[(0, 0)];
        s.conj() / (c(l, 0.0) - zeta) / (c(l, 0.0) - z)
    }) / c(0.0, 2.0 * PI)
}

const CAUCHY_PROBES: [(f64, f64); 5] = [(0.0, 1.0), (0.5, 0.4), (-1.5, 2.0), (2.5, 0.7), (-0.2, 3.0)];

fn max_cauchy(model: &ScatteringModel, zeta: Complex64) -> f64 {
    let f_norm = (PI / -zeta.im).sqrt();
    CAUCHY_PROBES.iter().map(|&(a, b)| cauchy_of_adjoint(model, zeta, c(a, b)).norm()).fold(0.0, f64::max) / f_norm
}

#[test]
fn one_dim_pole_matches_newton_on_the_denominator() {
    let poles = locate_poles(&ScatteringModel::one_dim_perturbation(), &lower_region()).unwrap();
    assert_eq!(poles.len(), 1);
    let den = |z: Complex64| (z * z - z + c(1.0, 1.0), z * 2.0 - 1.0);
    let mut roots: Vec<Complex64> = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let seed = c(-3.0 + 2.0 * i as f64, -3.0 + 2.0 * j as f64 + 0.5);
            if let Some(r) = newton(den, seed) {
                if r.im < 0.0 && roots.iter().all(|q| (q - r).norm() > 1e-8) {
                    roots.push(r);
                }
            }
        }
    }
    assert_eq!(roots.len(), 1);
    assert!((poles[0] - roots[0]).norm() < 1e-12);
    assert!((poles[0] - c(1.0, -1.0)).norm() < 1e-12);
}

#[test]
fn friedrichs_line_poles() {
    let poles = sorted(locate_poles(&ScatteringModel::friedrichs_line(), &lower_region()).unwrap());
    assert_eq!(poles.len(), 2);
    let half = c(0.5, -0.5);
    let root = (c(1.0, 0.5)).sqrt();
    let expected = sorted(vec![half + root, half - root]);
    for (p, e) in poles.iter().zip(&expected) {
        assert!((p - e).norm() < 1e-12, "{p} vs {e}");
    }
    assert!((poles[1] - c(1.52909, -0.25707)).norm() < 1e-5);
    assert!((poles[0] - c(-0.52909, -0.74293)).norm() < 1e-5);
}

#[test]
fn blaschke_pole_outside_the_region_is_not_found() {
    let m = ScatteringModel::blaschke(&[c(0.0, -1.0)]).unwrap();
    assert!(locate_poles(&m, &Region::new(1.0, 3.0, -3.0, -0.01).unwrap()).unwrap().is_empty());
    let found = locate_poles(&m, &lower_region()).unwrap();
    assert_eq!(found.len(), 1);
    assert!((found[0] - c(0.0, -1.0)).norm() < 1e-12);
}

#[test]
fn regions_touching_the_axis_are_rejected() {
    assert!(Region::new(-1.0, 1.0, -1.0, 0.0).is_err());
    assert!(Region::new(-1.0, 1.0, -1.0, -1e-4).is_err());
}

#[test]
fn pole_count_matches_the_argument_principle() {
    let models = [
        ScatteringModel::one_dim_perturbation(),
        ScatteringModel::friedrichs_line(),
        ScatteringModel::blaschke(&[c(0.0, -1.0), c(1.0, -2.0), c(-1.0, 0.5)]).unwrap(),
        ScatteringModel::friedrichs_halfline_log().unwrap(),
    ];
    for m in models {
        for region in [lower_region(), Region::new(-2.0, 2.5, -1.5, -0.1).unwrap()] {
            let poles = locate_poles(&m, &region).unwrap().len() as i64;
            let zeros = locate_inverse_poles(&m, &region).unwrap().len() as i64;
            assert_eq!(winding_of_s(&m, &region), zeros - poles);
        }
    }
}

#[test]
fn halfline_pole_and_bound_state() {
    let m = ScatteringModel::friedrichs_halfline_log().unwrap();
    let poles = locate_poles(&m, &Region::new(-10.0, 10.0, -10.0, -1e-3).unwrap()).unwrap();
    assert_eq!(poles.len(), 1);
    assert!((poles[0] - c(1.45510, -0.26775)).norm() < 1e-4);

    let zeros = cut_singularities(&m).unwrap();
    assert_eq!(zeros.len(), 1);
    assert!((zeros[0] + 0.2684988325394176).abs() < 1e-9);
    assert!(m.boundary_value(zeros[0], Side::Lower).unwrap()[(0, 0)].norm() < 1e-6);
    assert!(m.boundary_value(zeros[0] - 1e-4, Side::Upper).unwrap()[(0, 0)].norm() > 1e2);

    let record = survival_test(&m, poles[0]).unwrap();
    assert_eq!(record.cut_zeros.len(), 1);
    assert!(record.survival_kernel.is_empty());
    let k = Vector::from_element(1, c(1.0, 0.0));
    let coarse = hardy_minus_defect(&m, poles[0], &k, 2048).unwrap();
    let fine = hardy_minus_defect(&m, poles[0], &k, 16384).unwrap();
    assert!(fine > coarse && fine > 1e-2);

    assert!(cut_singularities(&ScatteringModel::friedrichs_line()).unwrap().is_empty());
    assert!(cut_singularities(&ScatteringModel::cut_exponential()).unwrap().is_empty());
}

#[test]
fn blaschke_laurent_coefficients() {
    let m = ScatteringModel::blaschke(&[c(0.0, -1.0)]).unwrap();
    let data = laurent_expansion(&m, c(0.0, -1.0), -2, 1).unwrap();
    assert!(data.coefficients[&0].norm() < 1e-10);
    assert!((data.coefficients[&1][(0, 0)] - c(0.0, 0.5)).norm() < 1e-10);
    assert!(data.coefficients[&-1].norm() < 1e-10);
    let a = laurent_coefficients(&m, c(0.0, -1.0), 0).unwrap();
    assert_eq!(a.keys().copied().collect::<Vec<_>>(), vec![0]);
    assert!(matches!(laurent_coefficients(&m, c(0.0, -1.0), 1), Err(Error::InvalidModel(_))));
}

#[test]
fn regular_points_have_no_principal_part() {
    let regular = c(0.4, -2.3);
    for m in [ScatteringModel::friedrichs_line(), ScatteringModel::one_dim_perturbation(), ScatteringModel::cut_exponential()] {
        let a = laurent_coefficients(&m, regular, -1).unwrap();
        assert!(a[&-1].norm() < 1e-10);
        assert!(residue_of_S(&m, regular).unwrap().norm() < 1e-10);
        assert!((a[&0][(0, 0)] - m.eval_inverse(regular).unwrap()[(0, 0)]).norm() < 1e-10);
    }
}

#[test]
fn laurent_series_reconstructs_the_inverse() {
    let cases = [
        (ScatteringModel::friedrichs_line(), c(0.0, -1.0)),
        (ScatteringModel::friedrichs_line(), friedrichs_line_roots()[0]),
        (ScatteringModel::one_dim_perturbation(), c(0.0, -1.0)),
        (ScatteringModel::blaschke(&[c(0.0, -1.0)]).unwrap(), c(0.0, -1.0)),
        (ScatteringModel::friedrichs_halfline_log().unwrap(), c(1.4551, -0.26775)),
    ];
    for (m, zeta) in cases {
        let data = laurent_expansion(&m, zeta, -4, 24).unwrap();
        let rho = 0.5 * data.radius;
        for j in 0..8 {
            let z = zeta + Complex64::from_polar(rho, 2.0 * PI * j as f64 / 8.0 + 0.1);
            let series: Complex64 = data
                .coefficients
                .iter()
                .filter(|(n, _)| **n >= -(data.order as i64))
                .map(|(n, a)| a[(0, 0)] * (z - zeta).powi(*n as i32))
                .sum();
            let exact = m.eval_inverse(z).unwrap()[(0, 0)];
            assert!((series - exact).norm() < 1e-8 * (1.0 + exact.norm()), "at {z}: {series} vs {exact}");
        }
    }
}

#[test]
fn residues() {
    let m = ScatteringModel::blaschke(&[c(0.0, -1.0)]).unwrap();
    assert!((residue_of_S(&m, c(0.0, -1.0)).unwrap()[(0, 0)] - c(0.0, -2.0)).norm() < 1e-10);
    let [zp, zm] = friedrichs_line_roots();
    let expected = c(0.0, -2.0) / ((zp - c(0.0, 1.0)) * (zp - zm));
    let got = residue_of_S(&ScatteringModel::friedrichs_line(), zp).unwrap()[(0, 0)];
    assert!((got - expected).norm() < 1e-10, "{got} vs {expected}");
}

#[test]
fn blaschke_zero_survives() {
    let m = ScatteringModel::blaschke(&[c(0.0, -1.0)]).unwrap();
    let r = survival_test(&m, c(0.0, -1.0)).unwrap();
    assert_eq!(r.survival_kernel.len(), 1);
    assert_eq!(r.classification, PoleClass::PoleOfS);
    assert!((r.survival_kernel[0].norm() - 1.0).abs() < 1e-12);
    let s = m.rational_structure().unwrap();
    let f = gamov::hardy::RationalVector::simple(c(0.0, -1.0), r.survival_kernel[0].clone()).unwrap();
    for n in 1..=8 {
        let g = gamov::hardy::RationalVector::scalar(c(0.0, -1.0), n, c(1.0, 0.0)).unwrap().multiply(&s);
        assert!(f.inner(&g).norm() < 1e-12);
    }
    assert!(max_cauchy(&m, c(0.0, -1.0)) < 1e-8);
    assert!(hardy_minus_defect(&m, c(0.0, -1.0), &r.survival_kernel[0], 4096).unwrap() < 1e-6);
}

#[test]
fn one_dim_pole_survival_agrees_with_the_hardy_test() {
    let m = ScatteringModel::one_dim_perturbation();
    let zeta = c(1.0, -1.0);
    let r = survival_test(&m, zeta).unwrap();
    assert!(r.survival_kernel.len() <= 1);
    assert_eq!(r.classification, PoleClass::PoleOfS);
    let defect = max_cauchy(&m, zeta);
    assert_eq!(r.survival_kernel.is_empty(), defect > 1e-6, "Cauchy defect {defect}");
    assert_eq!(r.local_kernel.len(), 1);
}

#[test]
fn friedrichs_poles_do_not_survive() {
    let m = ScatteringModel::friedrichs_line();
    for zeta in friedrichs_line_roots() {
        let r = survival_test(&m, zeta).unwrap();
        assert!(r.survival_kernel.is_empty());
        assert!(max_cauchy(&m, zeta) > 1e-6);
    }
}

#[test]
fn regular_point_has_empty_kernel() {
    let m = ScatteringModel::friedrichs_line();
    let r = survival_test(&m, c(-2.0, -2.0)).unwrap();
    assert_eq!(r.classification, PoleClass::Regular);
    assert!(r.local_kernel.is_empty() && r.survival_kernel.is_empty());
    assert!(matches!(survival_test(&m, c(0.0, 1.0)), Err(Error::InvalidModel(_))));
}

#[test]
fn both_poles_of_a_two_pole_blaschke_product_survive() {
    let m = ScatteringModel::blaschke(&[c(0.0, -1.0), c(0.0, -2.0)]).unwrap();
    for zeta in [c(0.0, -1.0), c(0.0, -2.0)] {
        let r = survival_test(&m, zeta).unwrap();
        assert_eq!(r.survival_kernel.len(), 1);
        assert!(max_cauchy(&m, zeta) < 1e-8);
    }
}

fn pole() -> impl Strategy<Value = Complex64> {
    (-2.5..2.5f64, 0.2..2.5f64, any::<bool>()).prop_map(|(re, im, up)| c(re, if up { im } else { -im }))
}

fn separated(poles: &[Complex64]) -> bool {
    poles.iter().enumerate().all(|(i, a)| {
        poles.iter().skip(i + 1).all(|b| (a - b).norm() > 0.2 && (a - b.conj()).norm() > 0.2)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn located_poles_mirror_the_inverse(poles in prop::collection::vec(pole(), 1..4)) {
        prop_assume!(separated(&poles));
        let m = ScatteringModel::blaschke(&poles).unwrap();
        let region = lower_region();
        let found = sorted(locate_poles(&m, &region).unwrap());
        let declared = sorted(poles.iter().copied().filter(|p| p.im < 0.0).collect());
        prop_assert_eq!(found.len(), declared.len());
        for (a, b) in found.iter().zip(&declared) {
            prop_assert!((a - b).norm() < 1e-10);
        }
        let inverse = sorted(locate_inverse_poles(&m, &region.conjugate()).unwrap());
        let mirrored = sorted(found.iter().map(|p| p.conj()).collect());
        prop_assert_eq!(inverse.len(), mirrored.len());
        for (a, b) in inverse.iter().zip(&mirrored) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }
}
