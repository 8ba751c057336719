//! Sampled elements of `L²(ℝ, 𝒦)` on the tangent grid `λ_j = tan α_j`,
//! `α_j = −π/2 + (j + ½)π/N`.
//!
//! The Cayley variable `u = (λ − i)/(λ + i)` equals `e^{iφ_j}` with
//! `φ_j = (2j + 1)π/N` at the nodes, so `h(φ) = g(λ)(λ + i)` is sampled
//! uniformly on the circle. Its Fourier coefficients `c_n` expand
//! `g = Σ c_n u^n/(λ + i)`: the terms `n ≥ 0` span `H²₊`, the terms `n < 0`
//! span `H²₋`, and `‖g‖² = π Σ |c_n|²`.

use std::f64::consts::PI;

use rustfft::FftPlanner;

use super::rational::RationalVector;
use crate::error::{Error, Result};
use crate::quadrature::Domain;
use crate::{c, Vector, C64};

/// Default number of grid nodes.
pub const DEFAULT_NODES: usize = 2048;
const MAX_NODES: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    values: Vec<Vector>,
    dim_k: usize,
}

/// Fourier coefficients of `g(λ)(λ + i)` in the Cayley variable, indexed by
/// `n ∈ [−N/2, N/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyCoefficients {
    n: usize,
    dim_k: usize,
    coeffs: Vec<Vector>,
}

pub(crate) fn grid_nodes(n: usize) -> Vec<f64> {
    (0..n).map(|j| (-0.5 * PI + (j as f64 + 0.5) * PI / n as f64).tan()).collect()
}

impl GridFunction {
    /// Samples `f` on an `n`-node grid (`n` even).
    pub fn sample(n: usize, dim_k: usize, f: impl Fn(f64) -> Vector) -> Self {
        assert!(n >= 2 && n.is_multiple_of(2), "grid size must be even");
        let nodes = grid_nodes(n);
        let h = PI / n as f64;
        let weights = nodes.iter().map(|l| h * (1.0 + l * l)).collect();
        let values = nodes.iter().map(|&l| {
            let v = f(l);
            assert_eq!(v.len(), dim_k, "sample has wrong dimension");
            v
        });
        GridFunction { values: values.collect(), nodes, weights, dim_k }
    }

    /// Fallible sampling.
    pub fn try_sample(n: usize, dim_k: usize, f: impl Fn(f64) -> Result<Vector>) -> Result<Self> {
        let nodes = grid_nodes(n);
        let values = nodes.iter().map(|&l| f(l)).collect::<Result<Vec<_>>>()?;
        Ok(GridFunction::from_parts(nodes, values, dim_k))
    }

    fn from_parts(nodes: Vec<f64>, values: Vec<Vector>, dim_k: usize) -> Self {
        let h = PI / nodes.len() as f64;
        let weights = nodes.iter().map(|l| h * (1.0 + l * l)).collect();
        GridFunction { nodes, weights, values, dim_k }
    }

    pub fn from_rational(f: &RationalVector, n: usize) -> Self {
        GridFunction::sample(n, f.dim_k(), |l| f.eval(c(l, 0.0)))
    }

    /// Samples `f` with the node count doubled from [`DEFAULT_NODES`] until
    /// the norm changes by less than `1e-10` relative.
    pub fn sample_adaptive(dim_k: usize, f: impl Fn(f64) -> Vector) -> Self {
        let mut n = DEFAULT_NODES;
        let mut g = GridFunction::sample(n, dim_k, &f);
        while n < MAX_NODES {
            let finer = GridFunction::sample(2 * n, dim_k, &f);
            let (a, b) = (g.norm(), finer.norm());
            g = finer;
            n *= 2;
            if (a - b).abs() <= 1e-10 * b.max(1e-300) {
                break;
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn dim_k(&self) -> usize {
        self.dim_k
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn values(&self) -> &[Vector] {
        &self.values
    }

    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.len(), other.len(), "grids differ");
        self.values.iter().zip(&other.values).zip(&self.weights).map(|((a, b), &w)| a.dotc(b) * w).sum()
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().zip(&self.weights).map(|(v, &w)| v.norm_squared() * w).sum::<f64>().sqrt()
    }

    pub fn map(&self, f: impl Fn(f64, &Vector) -> Vector) -> Self {
        let values = self.nodes.iter().zip(&self.values).map(|(&l, v)| f(l, v)).collect();
        GridFunction { values, ..self.clone() }
    }

    pub fn try_map(&self, f: impl Fn(f64, &Vector) -> Result<Vector>) -> Result<Self> {
        let values = self.nodes.iter().zip(&self.values).map(|(&l, v)| f(l, v)).collect::<Result<_>>()?;
        Ok(GridFunction { values, ..self.clone() })
    }

    pub fn add(&self, other: &Self) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        GridFunction { values, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        GridFunction { values, ..self.clone() }
    }

    pub fn scale(&self, a: C64) -> Self {
        self.map(|_, v| v * a)
    }

    /// Multiplication by the indicator of a half line (`P₊` or `P₋`).
    pub fn halfline_project(&self, domain: Domain) -> Self {
        self.map(|l, v| if domain.contains(l) { v.clone() } else { Vector::zeros(v.len()) })
    }

    pub fn cayley(&self) -> CayleyCoefficients {
        let n = self.len();
        let mut planner = FftPlanner::<f64>::new();
        let fft = planner.plan_fft_forward(n);
        let mut coeffs = vec![Vector::zeros(self.dim_k); n];
        for comp in 0..self.dim_k {
            let mut buf: Vec<C64> =
                self.nodes.iter().zip(&self.values).map(|(&l, v)| v[comp] * c(l, 1.0)).collect();
            fft.process(&mut buf);
            for (k, x) in buf.into_iter().enumerate() {
                let idx = if k < n / 2 { k as i64 } else { k as i64 - n as i64 };
                let phase = c(0.0, -PI * idx as f64 / n as f64).exp();
                coeffs[k][comp] = x * phase / n as f64;
            }
        }
        CayleyCoefficients { n, dim_k: self.dim_k, coeffs }
    }

    pub fn from_cayley(cc: &CayleyCoefficients) -> Self {
        let n = cc.n;
        let nodes = grid_nodes(n);
        let mut planner = FftPlanner::<f64>::new();
        let ifft = planner.plan_fft_inverse(n);
        let mut values = vec![Vector::zeros(cc.dim_k); n];
        for comp in 0..cc.dim_k {
            let mut buf: Vec<C64> = (0..n)
                .map(|k| {
                    let idx = if k < n / 2 { k as i64 } else { k as i64 - n as i64 };
                    cc.coeffs[k][comp] * c(0.0, PI * idx as f64 / n as f64).exp()
                })
                .collect();
            ifft.process(&mut buf);
            for (j, x) in buf.into_iter().enumerate() {
                values[j][comp] = x / c(nodes[j], 1.0);
            }
        }
        GridFunction::from_parts(nodes, values, cc.dim_k)
    }

    /// `Q₊g` through the Cayley coefficients.
    pub fn project_plus(&self) -> Self {
        let mut cc = self.cayley();
        cc.retain(|idx| idx >= 0);
        GridFunction::from_cayley(&cc)
    }

    /// `Q₋g` through the Cayley coefficients.
    pub fn project_minus(&self) -> Self {
        let mut cc = self.cayley();
        cc.retain(|idx| idx < 0);
        GridFunction::from_cayley(&cc)
    }

    /// `(Q₊g)(z) = (1/2πi) ∫ g(λ)/(λ − z) dλ` by quadrature on the grid, for
    /// `z` in the upper half plane at least one local node spacing away from
    /// the axis.
    pub fn cauchy_plus(&self, z: C64) -> Result<Vector> {
        if z.im <= 0.0 {
            return Err(Error::TooCloseToAxis { z, spacing: 0.0 });
        }
        let spacing = PI / self.len() as f64 * (1.0 + z.re * z.re);
        if z.im < spacing {
            return Err(Error::TooCloseToAxis { z, spacing });
        }
        let mut acc = Vector::zeros(self.dim_k);
        for ((&l, v), &w) in self.nodes.iter().zip(&self.values).zip(&self.weights) {
            acc += v * (w / (c(l, 0.0) - z));
        }
        Ok(acc / c(0.0, 2.0 * PI))
    }
}

impl CayleyCoefficients {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim_k(&self) -> usize {
        self.dim_k
    }

    fn slot(&self, idx: i64) -> usize {
        if idx >= 0 {
            idx as usize
        } else {
            (self.n as i64 + idx) as usize
        }
    }

    /// Coefficient `c_idx`, `idx ∈ [−N/2, N/2)`.
    pub fn get(&self, idx: i64) -> &Vector {
        &self.coeffs[self.slot(idx)]
    }

    pub fn set(&mut self, idx: i64, v: Vector) {
        let s = self.slot(idx);
        self.coeffs[s] = v;
    }

    /// Zeroes every coefficient whose index fails `keep`.
    pub fn retain(&mut self, keep: impl Fn(i64) -> bool) {
        let n = self.n;
        for (k, v) in self.coeffs.iter_mut().enumerate() {
            let idx = if k < n / 2 { k as i64 } else { k as i64 - n as i64 };
            if !keep(idx) {
                v.fill(c(0.0, 0.0));
            }
        }
    }

    /// The nonnegative-index coefficients `c_0, …, c_{N/2−1}`.
    pub fn plus_part(&self) -> Vec<Vector> {
        self.coeffs[..self.n / 2].to_vec()
    }

    /// Coefficients with only the nonnegative indices set from `plus`.
    pub fn from_plus_part(plus: Vec<Vector>, dim_k: usize) -> Self {
        let n = 2 * plus.len();
        let mut coeffs = plus;
        coeffs.resize(n, Vector::zeros(dim_k));
        CayleyCoefficients { n, dim_k, coeffs }
    }

    pub fn norm(&self) -> f64 {
        (PI * self.coeffs.iter().map(|v| v.norm_squared()).sum::<f64>()).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lorentz(zeta: C64) -> GridFunction {
        GridFunction::sample(DEFAULT_NODES, 1, |l| Vector::from_element(1, 1.0 / (c(l, 0.0) - zeta)))
    }

    #[test]
    fn norm_of_the_lorentzian() {
        let g = lorentz(c(0.0, -1.0));
        assert!((g.norm() - PI.sqrt()).abs() < 1e-12);
        assert!((g.cayley().norm() - PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn cayley_round_trip() {
        let g = lorentz(c(0.7, -0.4)).add(&lorentz(c(-1.0, 2.0)));
        let back = GridFunction::from_cayley(&g.cayley());
        assert!(g.sub(&back).norm() < 1e-12);
    }

    #[test]
    fn hardy_split_on_the_grid() {
        let plus = lorentz(c(0.3, -0.8));
        let minus = lorentz(c(-0.5, 1.5));
        let sum = plus.add(&minus);
        assert!(sum.project_plus().sub(&plus).norm() < 1e-10);
        assert!(sum.project_minus().sub(&minus).norm() < 1e-10);
    }

    #[test]
    fn cauchy_sum_reproduces_the_function() {
        let g = lorentz(c(0.0, -1.0));
        let v = g.cauchy_plus(c(0.0, 1.0)).unwrap();
        assert!((v[0] - c(0.0, -0.5)).norm() < 1e-8);
        let h = lorentz(c(0.0, 1.0));
        assert!(h.cauchy_plus(c(0.0, 2.0)).unwrap()[0].norm() < 1e-8);
        assert!(matches!(g.cauchy_plus(c(0.0, 1e-6)), Err(Error::TooCloseToAxis { .. })));
    }
}
