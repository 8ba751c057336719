#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Composite Simpson rule in `α` with `λ = tan α`, over `(a, b) ⊂ (−π/2, π/2)`.
pub fn simpson_angle(f: impl Fn(f64) -> Complex64, a: f64, b: f64, panels: usize) -> Complex64 {
    let n = 2 * panels;
    let h = (b - a) / n as f64;
    let g = |alpha: f64| {
        let cos = alpha.cos();
        if cos.abs() < 1e-300 {
            return c(0.0, 0.0);
        }
        f(alpha.tan()) / (cos * cos)
    };
    let mut acc = g(a) + g(b);
    for j in 1..n {
        let w = if j % 2 == 1 { 4.0 } else { 2.0 };
        acc += g(a + j as f64 * h) * w;
    }
    acc * h / 3.0
}

/// `∫_ℝ f dλ` for integrands decaying at least like `1/λ²`.
pub fn line_integral(f: impl Fn(f64) -> Complex64) -> Complex64 {
    simpson_angle(f, -FRAC_PI_2, FRAC_PI_2, 40_000)
}

/// `∫_0^∞ f dλ`.
pub fn positive_integral(f: impl Fn(f64) -> Complex64) -> Complex64 {
    simpson_angle(f, 0.0, FRAC_PI_2, 20_000)
}

/// `∫_{−∞}^0 f dλ`.
pub fn negative_integral(f: impl Fn(f64) -> Complex64) -> Complex64 {
    simpson_angle(f, -FRAC_PI_2, 0.0, 20_000)
}
