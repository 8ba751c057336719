//! Hardy-space projections `Q±`, half-line projections `P±` and the
//! generic-position diagnostics of the pair `{P₊, Q₊}`.
//!
//! With `(Q₊g)(z) = (1/2πi) ∫ g(λ)/(λ − z) dλ` for `z` in the upper half
//! plane, `H²₊` consists of functions holomorphic above the axis; rational
//! elements have their poles below it. Membership of a [`RationalVector`] is
//! read off its poles, never tested numerically.
//!
//! ```
//! use gamov::hardy::{new_norm, RationalVector};
//! use num_complex::Complex64;
//!
//! let f = RationalVector::scalar(Complex64::new(0.0, -1.0), 1, Complex64::new(1.0, 0.0)).unwrap();
//! let (bracket, plus) = new_norm(&f).unwrap();
//! assert!((bracket * bracket - std::f64::consts::PI).abs() < 1e-12);
//! assert!((plus * plus - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
//! ```

mod grid;
mod position;
mod rational;

pub use grid::{CayleyCoefficients, GridFunction, DEFAULT_NODES};
pub use position::{generic_position_report, ProjectionPair, ProjectionPairReport};
pub use rational::{RationalVector, Term};

use crate::error::{Error, Result};
use crate::quadrature::Domain;
use crate::{Vector, C64};

/// `Q₊f` for a rational vector: the terms with poles in the lower half plane.
pub fn project_plus_rational(f: &RationalVector) -> RationalVector {
    f.project_plus()
}

/// `(Q₊g)(z)` by quadrature of the Cauchy integral on the grid.
pub fn project_plus_grid(g: &GridFunction, z: C64) -> Result<Vector> {
    g.cauchy_plus(z)
}

/// Input to the half-line projections.
pub enum Sampled<'a> {
    Rational(&'a RationalVector),
    Grid(&'a GridFunction),
}

/// `P₊f` (domain `Positive`) or `P₋f` (domain `Negative`) as a grid function.
pub fn halfline_project(f: Sampled<'_>, domain: Domain) -> GridFunction {
    match f {
        Sampled::Rational(r) => GridFunction::from_rational(r, DEFAULT_NODES).halfline_project(domain),
        Sampled::Grid(g) => g.halfline_project(domain),
    }
}

/// `([f₊], ‖P₊f‖)` for `f ∈ H²₊`, where the bracket norm of `f₊ = P₊f` is the
/// full-line norm of its Hardy preimage, `[f₊]² = ‖f‖² = ‖P₊f‖² + ‖P₋f‖²`.
pub fn new_norm(f: &RationalVector) -> Result<(f64, f64)> {
    if !f.in_hardy_plus() {
        return Err(Error::NotHardyPlus);
    }
    let bracket = f.norm();
    let plus = f.halfline_norm_squared(Domain::Positive).sqrt();
    debug_assert!(plus <= bracket * (1.0 + 1e-10) + 1e-300);
    Ok((bracket, plus.min(bracket)))
}
