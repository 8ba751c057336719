//! Circle quadrature and argument-principle counting.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::{c, mat_norm, Mat, C64};

/// Coefficients `(1/2πi)∮ F(z)(z − center)^{−n−1} dz` for each requested
/// `n` on the circle of radius `r`, by the trapezoidal rule with node
/// doubling from 256 until successive estimates agree to `1e-12` relative to
/// the largest value of `‖F‖` on the circle. Also returns that largest value.
pub(crate) fn circle_coefficients(
    f: &dyn Fn(C64) -> Result<Mat>,
    center: C64,
    r: f64,
    ns: &[i64],
) -> Result<(Vec<Mat>, f64)> {
    let mut nodes = 256;
    let mut previous: Option<Vec<Mat>> = None;
    loop {
        let mut sums: Option<Vec<Mat>> = None;
        let mut sup: f64 = 0.0;
        for j in 0..nodes {
            let theta = 2.0 * PI * (j as f64 + 0.5) / nodes as f64;
            let w = c(0.0, theta).exp() * r;
            let v = f(center + w)?;
            sup = sup.max(mat_norm(&v));
            let acc = sums.get_or_insert_with(|| ns.iter().map(|_| Mat::zeros(v.nrows(), v.ncols())).collect());
            for (a, &n) in acc.iter_mut().zip(ns) {
                *a += &v * w.powi(-n as i32);
            }
        }
        let coeffs: Vec<Mat> = sums.expect("nodes > 0").into_iter().map(|a| a / C64::from(nodes as f64)).collect();
        if let Some(prev) = &previous {
            let change = coeffs.iter().zip(prev).zip(ns).map(|((a, b), &n)| mat_norm(&(a - b)) * r.powi(n as i32)).fold(0.0, f64::max);
            if change <= 1e-12 * sup.max(1e-300) || nodes >= 8192 {
                return Ok((coeffs, sup));
            }
        }
        previous = Some(coeffs);
        nodes *= 2;
    }
}

fn arg_step(a: C64, b: C64) -> f64 {
    (b / a).arg()
}

fn checked(f: &dyn Fn(C64) -> Result<C64>, z: C64) -> Result<C64> {
    match f(z) {
        Ok(v) if v.is_finite() && v != c(0.0, 0.0) => Ok(v),
        Ok(_) | Err(Error::PoleProximity { .. }) => Err(Error::ContourThroughPole(z)),
        Err(e) => Err(e),
    }
}

fn segment_winding(f: &dyn Fn(C64) -> Result<C64>, a: C64, fa: C64, b: C64, fb: C64, depth: u32) -> Result<f64> {
    let step = arg_step(fa, fb);
    if step.abs() < 0.5 {
        return Ok(step);
    }
    if depth == 0 {
        return Err(Error::ContourThroughPole((a + b) * 0.5));
    }
    let m = (a + b) * 0.5;
    let fm = checked(f, m)?;
    Ok(segment_winding(f, a, fa, m, fm, depth - 1)? + segment_winding(f, m, fm, b, fb, depth - 1)?)
}

/// Winding number of `f` along the closed polygon through `path`.
pub(crate) fn winding(f: &dyn Fn(C64) -> Result<C64>, path: &[C64]) -> Result<i64> {
    let values = path.iter().map(|&z| checked(f, z)).collect::<Result<Vec<_>>>()?;
    let mut total = 0.0;
    for j in 0..path.len() {
        let k = (j + 1) % path.len();
        total += segment_winding(f, path[j], values[j], path[k], values[k], 30)?;
    }
    let turns = total / (2.0 * PI);
    if (turns - turns.round()).abs() > 0.05 {
        return Err(Error::ContourThroughPole(path[0]));
    }
    Ok(turns.round() as i64)
}

pub(crate) fn circle_path(center: C64, r: f64, n: usize) -> Vec<C64> {
    (0..n).map(|j| center + c(0.0, 2.0 * PI * j as f64 / n as f64).exp() * r).collect()
}

/// Counterclockwise boundary of `[x0, x1] × [y0, y1]` with `per_edge`
/// samples on each edge.
pub(crate) fn rectangle_path(x0: f64, x1: f64, y0: f64, y1: f64, per_edge: usize) -> Vec<C64> {
    let corners = [c(x0, y0), c(x1, y0), c(x1, y1), c(x0, y1)];
    let mut path = Vec::with_capacity(4 * per_edge);
    for j in 0..4 {
        let (a, b) = (corners[j], corners[(j + 1) % 4]);
        for s in 0..per_edge {
            path.push(a + (b - a) * (s as f64 / per_edge as f64));
        }
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_zeros_minus_poles() {
        let f = |z: C64| Ok((z - c(0.1, 0.2)) * (z + c(0.3, 0.0)) / (z - c(0.0, -0.4)));
        let path = rectangle_path(-1.0, 1.0, -1.0, 1.0, 16);
        assert_eq!(winding(&f, &path).unwrap(), 1);
    }

    #[test]
    fn circle_coefficients_of_a_simple_pole() {
        let f = |z: C64| Ok(Mat::from_element(1, 1, c(2.0, 0.0) / (z - c(0.0, -1.0)) + z * z));
        let (a, _) = circle_coefficients(&f, c(0.0, -1.0), 0.5, &[-2, -1, 0, 1]).unwrap();
        assert!(a[0][(0, 0)].norm() < 1e-14);
        assert!((a[1][(0, 0)] - 2.0).norm() < 1e-14);
        assert!((a[2][(0, 0)] + 1.0).norm() < 1e-13);
        assert!((a[3][(0, 0)] - c(0.0, -2.0)).norm() < 1e-13);
    }
}
