//! Adaptive Gauss-Kronrod quadrature on finite and infinite intervals.
//!
//! Infinite ranges are mapped with `λ = tan θ`, so a rational integrand that
//! decays like `1/λ²` becomes bounded on a finite `θ` interval. Breakpoints are
//! given in `λ` and mapped through `atan`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that can be integrated: a vector space with a norm.
pub trait Quadrable: Clone {
    fn zero_like(&self) -> Self;
    fn add_scaled(&mut self, other: &Self, weight: f64);
    fn norm(&self) -> f64;
}

impl Quadrable for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn add_scaled(&mut self, other: &Self, weight: f64) {
        *self += weight * other;
    }
    fn norm(&self) -> f64 {
        self.abs()
    }
}

impl Quadrable for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add_scaled(&mut self, other: &Self, weight: f64) {
        *self += other * weight;
    }
    fn norm(&self) -> f64 {
        Complex64::norm(*self)
    }
}

impl Quadrable for DVector<Complex64> {
    fn zero_like(&self) -> Self {
        DVector::zeros(self.len())
    }
    fn add_scaled(&mut self, other: &Self, weight: f64) {
        self.zip_apply(other, |a, b| *a += b * weight);
    }
    fn norm(&self) -> f64 {
        self.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl Quadrable for DMatrix<Complex64> {
    fn zero_like(&self) -> Self {
        DMatrix::zeros(self.nrows(), self.ncols())
    }
    fn add_scaled(&mut self, other: &Self, weight: f64) {
        self.zip_apply(other, |a, b| *a += b * weight);
    }
    fn norm(&self) -> f64 {
        self.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

// 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-13, rel: 1e-10, max_intervals: 4000 }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel, ..Default::default() }
    }
}

#[derive(Clone, Debug)]
pub struct Estimate<V> {
    pub value: V,
    pub error: f64,
    pub intervals: usize,
    pub converged: bool,
}

impl<V> Estimate<V> {
    /// Turns a non-converged estimate into `QuadratureFailure`.
    pub fn require(self) -> Result<V> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::QuadratureFailure { error: self.error, intervals: self.intervals })
        }
    }
}

struct Segment<V> {
    a: f64,
    b: f64,
    value: V,
    error: f64,
}

impl<V> PartialEq for Segment<V> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<V> Eq for Segment<V> {}
impl<V> PartialOrd for Segment<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<V> Ord for Segment<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

fn kronrod<V: Quadrable, F: Fn(f64) -> V>(f: &F, a: f64, b: f64) -> (V, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc.zero_like();
    let mut gauss = fc.zero_like();
    kron.add_scaled(&fc, WGK[7]);
    gauss.add_scaled(&fc, WG[3]);
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kron.add_scaled(&f1, w);
        kron.add_scaled(&f2, w);
        if j % 2 == 1 {
            gauss.add_scaled(&f1, WG[j / 2]);
            gauss.add_scaled(&f2, WG[j / 2]);
        }
    }
    let mut diff = kron.clone();
    diff.add_scaled(&gauss, -1.0);
    let err = diff.norm() * half.abs();
    let mut value = kron.zero_like();
    value.add_scaled(&kron, half);
    (value, err)
}

/// Adaptive G7K15 integration of `f` over `[a, b]`, with the interval first
/// split at every breakpoint strictly inside it.
pub fn integrate<V, F>(f: F, a: f64, b: f64, breakpoints: &[f64], tol: Tolerance) -> Estimate<V>
where
    V: Quadrable,
    F: Fn(f64) -> V,
{
    let mut cuts: Vec<f64> = vec![a];
    let mut inner: Vec<f64> = breakpoints.iter().copied().filter(|&x| x > a && x < b).collect();
    inner.sort_by(|x, y| x.partial_cmp(y).unwrap());
    inner.dedup();
    cuts.extend(inner);
    cuts.push(b);

    let mut heap = BinaryHeap::new();
    let mut total: Option<V> = None;
    let mut total_err = 0.0;
    for w in cuts.windows(2) {
        let (value, error) = kronrod(&f, w[0], w[1]);
        match total.as_mut() {
            Some(t) => t.add_scaled(&value, 1.0),
            None => total = Some(value.clone()),
        }
        total_err += error;
        heap.push(Segment { a: w[0], b: w[1], value, error });
    }
    let mut total = total.expect("at least one segment");

    loop {
        let target = tol.abs.max(tol.rel * total.norm());
        if total_err <= target {
            return Estimate { value: total, error: total_err, intervals: heap.len(), converged: true };
        }
        if heap.len() >= tol.max_intervals {
            break;
        }
        let worst = heap.pop().expect("nonempty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        let (v1, e1) = kronrod(&f, worst.a, mid);
        let (v2, e2) = kronrod(&f, mid, worst.b);
        total.add_scaled(&worst.value, -1.0);
        total.add_scaled(&v1, 1.0);
        total.add_scaled(&v2, 1.0);
        total_err += e1 + e2 - worst.error;
        heap.push(Segment { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: worst.b, value: v2, error: e2 });
    }

    // recompute the sum from the segments to shed accumulated cancellation
    let mut value = total.zero_like();
    let mut error = 0.0;
    for s in heap.iter() {
        value.add_scaled(&s.value, 1.0);
        error += s.error;
    }
    let converged = error <= tol.abs.max(tol.rel * value.norm());
    Estimate { value, error, intervals: heap.len(), converged }
}

/// Integration domain on the real line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// `(-∞, ∞)`
    Line,
    /// `[0, ∞)`
    Positive,
    /// `(-∞, 0]`
    Negative,
}

impl Domain {
    fn theta_range(self) -> (f64, f64) {
        match self {
            Domain::Line => (-FRAC_PI_2, FRAC_PI_2),
            Domain::Positive => (0.0, FRAC_PI_2),
            Domain::Negative => (-FRAC_PI_2, 0.0),
        }
    }

    pub fn contains(self, x: f64) -> bool {
        match self {
            Domain::Line => true,
            Domain::Positive => x >= 0.0,
            Domain::Negative => x <= 0.0,
        }
    }
}

/// Integrates `f` over an unbounded domain through `λ = tan θ`.
pub fn integrate_mapped<V, F>(f: F, domain: Domain, breakpoints: &[f64], tol: Tolerance) -> Estimate<V>
where
    V: Quadrable,
    F: Fn(f64) -> V,
{
    let (lo, hi) = domain.theta_range();
    let mut theta_breaks: Vec<f64> = breakpoints.iter().map(|x| x.atan()).collect();
    if domain == Domain::Line {
        theta_breaks.push(0.0);
    }
    integrate(
        |theta: f64| {
            let (s, c) = theta.sin_cos();
            let lambda = s / c;
            let mut v = f(lambda);
            let jac = 1.0 / (c * c);
            let z = v.zero_like();
            let orig = std::mem::replace(&mut v, z);
            v.add_scaled(&orig, jac);
            v
        },
        lo,
        hi,
        &theta_breaks,
        tol,
    )
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on the
/// three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn kronrod_rule_is_exact_to_degree_22() {
        for deg in 0..=22u32 {
            let (v, _) = kronrod(&|x: f64| x.powi(deg as i32), -1.0, 1.0);
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((v - exact).abs() < 1e-14, "degree {deg}: {v} vs {exact}");
        }
    }

    #[test]
    fn gauss_weights_are_exact_to_degree_13() {
        // the embedded Gauss rule alone
        let gauss = |deg: i32| {
            let mut s = WG[3] * 0f64.powi(deg);
            for j in 0..3 {
                let x = XGK[2 * j + 1];
                s += WG[j] * (x.powi(deg) + (-x).powi(deg));
            }
            s
        };
        for deg in 0..=13 {
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((gauss(deg) - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn lorentzian_over_the_line() {
        let est = integrate_mapped(|x: f64| 1.0 / (1.0 + x * x), Domain::Line, &[], Tolerance::default());
        assert!(est.converged);
        assert!((est.value - PI).abs() < 1e-12);
        let half = integrate_mapped(|x: f64| 1.0 / (1.0 + x * x), Domain::Positive, &[], Tolerance::default());
        assert!((half.value - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn log_squared_endpoint_singularity() {
        // ∫_0^∞ (ln x/(x-1))² dx = 2π²/3
        let est = integrate_mapped(
            |x: f64| {
                let r = if (x - 1.0).abs() < 1e-8 { 1.0 - (x - 1.0) / 2.0 } else { x.ln() / (x - 1.0) };
                r * r
            },
            Domain::Positive,
            &[1.0],
            Tolerance::default(),
        );
        assert!(est.converged, "{est:?}");
        assert!((est.value - 2.0 * PI * PI / 3.0).abs() < 1e-9);
    }

    #[test]
    fn complex_vector_integrand() {
        let est = integrate(
            |x: f64| DVector::from_vec(vec![Complex64::new(x, 0.0), Complex64::new(0.0, x * x)]),
            0.0,
            2.0,
            &[],
            Tolerance::default(),
        );
        assert!((est.value[0] - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        assert!((est.value[1] - Complex64::new(0.0, 8.0 / 3.0)).norm() < 1e-14);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(16);
        for deg in 0..32 {
            let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg)).sum();
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((s - exact).abs() < 1e-14, "deg {deg}");
        }
    }
}
