mod common;

use std::f64::consts::PI;

use common::{c, line_integral, negative_integral, positive_integral};
use gamov::hardy::{
    generic_position_report, halfline_project, new_norm, project_plus_grid, project_plus_rational, GridFunction,
    ProjectionPair, RationalVector, Sampled, Term, DEFAULT_NODES,
};
use gamov::quadrature::Domain;
use gamov::{Error, Vector};
use num_complex::Complex64;
use proptest::prelude::*;

const PROBES: [(f64, f64); 5] = [(0.0, 1.0), (0.5, 0.7), (-1.3, 2.0), (2.0, 0.9), (-0.4, 3.5)];

fn scalar(zeta: Complex64, order: usize, coeff: Complex64) -> RationalVector {
    RationalVector::scalar(zeta, order, coeff).unwrap()
}

fn cauchy_oracle(f: &RationalVector, z: Complex64) -> Complex64 {
    line_integral(|l| f.eval(c(l, 0.0))[0] / (c(l, 0.0) - z)) / c(0.0, 2.0 * PI)
}

#[test]
fn projection_keeps_lower_half_plane_poles() {
    let f = scalar(c(0.0, -1.0), 1, c(1.0, 0.0));
    assert_eq!(project_plus_rational(&f), f);
    let g = scalar(c(0.0, 1.0), 1, c(1.0, 0.0));
    assert!(project_plus_rational(&g).is_zero());
}

#[test]
fn projection_of_a_mixed_vector_matches_the_cauchy_integral() {
    let f = scalar(c(0.0, -1.0), 1, c(1.0, 0.0)).add(&scalar(c(0.0, 2.0), 1, c(2.0, 0.0)));
    let p = project_plus_rational(&f);
    assert_eq!(p, scalar(c(0.0, -1.0), 1, c(1.0, 0.0)));
    for (re, im) in PROBES {
        let z = c(re, im);
        assert!((cauchy_oracle(&f, z) - p.eval(z)[0]).norm() < 1e-8, "at {z}");
    }
}

#[test]
fn grid_projection_examples() {
    let f = scalar(c(0.0, -1.0), 1, c(1.0, 0.0));
    let g = GridFunction::from_rational(&f, DEFAULT_NODES);
    let v = project_plus_grid(&g, c(0.0, 1.0)).unwrap()[0];
    assert!((v - c(0.0, -0.5)).norm() < 1e-6);

    let h = GridFunction::from_rational(&scalar(c(0.0, 1.0), 1, c(1.0, 0.0)), DEFAULT_NODES);
    assert!(project_plus_grid(&h, c(0.0, 2.0)).unwrap()[0].norm() < 1e-6);

    let zero = GridFunction::sample(DEFAULT_NODES, 1, |_| Vector::zeros(1));
    assert_eq!(project_plus_grid(&zero, c(0.3, 1.0)).unwrap()[0], c(0.0, 0.0));

    assert!(matches!(project_plus_grid(&g, c(0.0, 1e-6)), Err(Error::TooCloseToAxis { .. })));
    assert!(matches!(project_plus_grid(&g, c(0.0, -1.0)), Err(Error::TooCloseToAxis { .. })));
}

#[test]
fn halfline_projections_split_the_function() {
    let f = scalar(c(0.5, -1.0), 1, c(1.0, 0.3)).add(&scalar(c(-1.0, 2.0), 2, c(0.0, 1.0)));
    let plus = halfline_project(Sampled::Rational(&f), Domain::Positive);
    let minus = halfline_project(Sampled::Rational(&f), Domain::Negative);
    let again = halfline_project(Sampled::Grid(&plus), Domain::Positive);
    assert_eq!(again, plus);
    let full = GridFunction::from_rational(&f, DEFAULT_NODES);
    for ((a, b), v) in plus.values().iter().zip(minus.values()).zip(full.values()) {
        assert_eq!(a + b, *v);
    }
    let split = plus.norm().powi(2) + minus.norm().powi(2);
    assert!((split - full.norm().powi(2)).abs() < 1e-12 * full.norm().powi(2));
}

#[test]
fn new_norm_examples() {
    let f = scalar(c(0.0, -1.0), 1, c(1.0, 0.0));
    let (bracket, plus) = new_norm(&f).unwrap();
    let full = line_integral(|l| c(1.0 / (l * l + 1.0), 0.0)).re;
    let half = positive_integral(|l| c(1.0 / (l * l + 1.0), 0.0)).re;
    assert!((bracket - full.sqrt()).abs() < 1e-10);
    assert!((bracket - 1.772454).abs() < 1e-6);
    assert!((plus * plus - half).abs() < 1e-10);
    assert!((plus * plus - PI / 2.0).abs() < 1e-12);

    assert_eq!(new_norm(&RationalVector::zero(1)).unwrap(), (0.0, 0.0));
    assert!(matches!(new_norm(&scalar(c(0.0, 1.0), 1, c(1.0, 0.0))), Err(Error::NotHardyPlus)));
}

#[test]
fn generic_position_examples() {
    let one = generic_position_report(ProjectionPair::PPlusQPlus, 1).unwrap();
    let f = scalar(c(0.0, -1.0), 1, c(1.0, 0.0));
    let ratio = negative_integral(|l| f.eval(c(l, 0.0))[0].norm_sqr().into()).re / f.norm_squared();
    assert!((one.delta * one.delta - ratio).abs() < 1e-10);
    assert!((one.delta * one.delta - 0.5).abs() < 1e-12);

    let mut last = one.delta;
    for n in [4, 8, 16] {
        for pair in [ProjectionPair::PPlusQPlus, ProjectionPair::PPlusQMinus] {
            let r = generic_position_report(pair, n).unwrap();
            assert_eq!(r.basis_size, n);
            assert!(r.generic_position_flags.iter().all(|&f| f), "flags at n={n}");
            assert!(r.norm_pq_diff <= 1.0 + 1e-10);
            assert!(r.delta <= 1.0 + 1e-10);
        }
        let r = generic_position_report(ProjectionPair::PPlusQPlus, n).unwrap();
        assert!(r.delta >= last - 1e-12, "delta decreased at n={n}");
        last = r.delta;
    }
    assert!(last > 0.95);
    assert!(matches!(generic_position_report(ProjectionPair::PPlusQPlus, 0), Err(Error::BasisTooSmall(0))));
}

#[test]
fn json_layout() {
    let f = RationalVector::from_terms(
        2,
        vec![Term { zeta: c(1.0, -2.0), order: 2, k: Vector::from_vec(vec![c(1.0, 0.0), c(0.0, -1.0)]) }],
    )
    .unwrap();
    let text = serde_json::to_string(&f).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["terms"][0]["zeta"], serde_json::json!([1.0, -2.0]));
    assert_eq!(value["terms"][0]["order"], 2);
    assert_eq!(value["terms"][0]["k"], serde_json::json!([[1.0, 0.0], [0.0, -1.0]]));
    let back: RationalVector = serde_json::from_str(&text).unwrap();
    assert_eq!(back, f);
}

fn term() -> impl Strategy<Value = (Complex64, usize, Complex64)> {
    (-3.0..3.0f64, 0.3..3.0f64, any::<bool>(), 1..3usize, -2.0..2.0f64, -2.0..2.0f64)
        .prop_map(|(re, im, up, m, a, b)| (c(re, if up { im } else { -im }), m, c(a, b)))
}

fn vector(terms: &[(Complex64, usize, Complex64)]) -> RationalVector {
    terms.iter().fold(RationalVector::zero(1), |acc, &(z, m, k)| acc.add(&scalar(z, m, k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn projection_is_idempotent(terms in prop::collection::vec(term(), 0..5)) {
        let f = vector(&terms);
        let p = project_plus_rational(&f);
        prop_assert_eq!(project_plus_rational(&p), p.clone());
        prop_assert!(p.in_hardy_plus());
        prop_assert!(f.sub(&p).in_hardy_minus());
    }

    #[test]
    fn grid_projection_matches_exact(terms in prop::collection::vec(term(), 1..5)) {
        let f = vector(&terms);
        let p = project_plus_rational(&f);
        let g = GridFunction::from_rational(&f, DEFAULT_NODES);
        for (re, im) in PROBES {
            let z = c(re, im);
            let grid = project_plus_grid(&g, z).unwrap()[0];
            prop_assert!((grid - p.eval(z)[0]).norm() < 1e-6, "at {} grid {} exact {}", z, grid, p.eval(z)[0]);
        }
    }

    #[test]
    fn norm_identities(terms in prop::collection::vec(term(), 1..5)) {
        let f = vector(&terms);
        let full = f.norm_squared();
        let split = f.halfline_norm_squared(Domain::Positive) + f.halfline_norm_squared(Domain::Negative);
        prop_assert!((full - split).abs() < 1e-10 * (1.0 + full));
        let quad = line_integral(|l| f.eval(c(l, 0.0))[0].norm_sqr().into()).re;
        prop_assert!((full - quad).abs() < 1e-10 * (1.0 + full), "pairing {} quadrature {}", full, quad);
    }
}
