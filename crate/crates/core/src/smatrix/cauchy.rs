//! Cauchy transforms `∫ φ(λ)/(z − λ) dλ` of densities on the real line.
//!
//! Close to the support the integrand is nearly singular. When `|Im z| < 0.1`
//! the value `φ(Re z)` is subtracted on a window `[a, b]` around `Re z` and the
//! subtracted part is integrated in closed form, `φ(x)(log(z−a) − log(z−b))`.
//! For real `z` the side of approach picks the branch of `log(x − b ± i0)`.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::Side;
use crate::error::Result;
use crate::quadrature::{integrate_mapped, Domain, Quadrable, Tolerance};
use crate::{c, C64};

const NEAR_AXIS: f64 = 0.1;

fn window(domain: Domain, x: f64) -> (f64, f64) {
    match domain {
        Domain::Positive => (0.5 * x, 1.5 * x),
        Domain::Negative => (1.5 * x, 0.5 * x),
        Domain::Line => {
            let w = 0.5 * (1.0 + x.abs());
            (x - w, x + w)
        }
    }
}

/// `∫_domain φ(λ)/(z − λ) dλ`; for real `z` the limit from `side`.
pub(crate) fn cauchy_transform<V, F>(
    phi: F,
    domain: Domain,
    z: C64,
    side: Side,
    tol: Tolerance,
) -> Result<V>
where
    V: Quadrable + Mul<Complex64, Output = V> + Add<Output = V> + Sub<Output = V>,
    F: Fn(f64) -> V,
{
    let x = z.re;
    let y = z.im;
    let interior = match domain {
        Domain::Positive => x > 0.0,
        Domain::Negative => x < 0.0,
        Domain::Line => true,
    };
    if y.abs() >= NEAR_AXIS || !interior {
        return integrate_mapped(|l: f64| phi(l) * (c(1.0, 0.0) / (z - l)), domain, &[x], tol).require();
    }
    let (a, b) = window(domain, x);
    let phi_x = phi(x);
    let body = integrate_mapped(
        |l: f64| {
            let v = phi(l);
            let v = if l >= a && l <= b { v - phi_x.clone() } else { v };
            v * (c(1.0, 0.0) / (z - l))
        },
        domain,
        &[a, x, b],
        tol,
    )
    .require()?;
    let log_ratio = if y == 0.0 {
        let sign = match side {
            Side::Upper => 1.0,
            Side::Lower => -1.0,
        };
        c((x - a).ln() - (b - x).ln(), -sign * PI)
    } else {
        (z - a).ln() - (z - b).ln()
    };
    Ok(body + phi_x * log_ratio)
}
