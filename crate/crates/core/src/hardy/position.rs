//! Finite-section diagnostics for the pair of projections `P₊` (restriction
//! to the positive half line) and `Q±` (Hardy projections).
//!
//! The Cayley basis `e_n = u^n/(√π (λ + i))` is orthonormal; in the angle
//! `λ = tan α` its samples weighted by `√(1 + λ²)` are
//! `b_n(α) = (−1)^n (−i) e^{i(2n+1)α}/√π`. Gauss–Legendre quadrature in `α`
//! over `(−π/2, 0)` and `(0, π/2)` turns `P₋` and `P₊` restricted to the span
//! of `n` basis vectors into tall matrices whose singular values bound
//! `‖(𝟙 − P₊)Q‖` and detect trivial intersections.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use crate::{c, Mat, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectionPair {
    PPlusQPlus,
    PPlusQMinus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectionPairReport {
    /// Estimate of `‖(𝟙 − P₊)Q‖` on the span of the basis.
    pub delta: f64,
    /// Finite-section estimate of `‖P₊ − Q‖`.
    pub norm_pq_diff: f64,
    pub basis_size: usize,
    /// Trivial intersections `P₊ℋ ∩ Qℋ`, `P₊ℋ ∩ (Qℋ)^⊥`, `(P₊ℋ)^⊥ ∩ Qℋ`,
    /// `(P₊ℋ)^⊥ ∩ (Qℋ)^⊥` as seen on the finite sections.
    pub generic_position_flags: [bool; 4],
    /// Smallest singular values behind the four flags.
    pub smallest_singular_values: [f64; 4],
}

const FLAG_THRESHOLD: f64 = 1e-12;

/// `b_n(α)`, evaluated in product form.
pub(crate) fn cayley_sample(n: i64, alpha: f64) -> C64 {
    let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    c(0.0, -sign / PI.sqrt()) * c(0.0, (2 * n + 1) as f64 * alpha).exp()
}

fn sampled_block(indices: &[i64], lo: f64, hi: f64, nodes: usize) -> Mat {
    let (x, w) = gauss_legendre(nodes);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    Mat::from_fn(nodes, indices.len(), |i, j| {
        let alpha = mid + half * x[i];
        cayley_sample(indices[j], alpha) * (w[i] * half).sqrt()
    })
}

fn singular_range(m: &Mat) -> (f64, f64) {
    let sv = m.clone().svd(false, false).singular_values;
    (sv.min(), sv.max())
}

/// Finite-section report for `{P₊, Q₊}` or `{P₊, Q₋}` on `n` basis vectors.
pub fn generic_position_report(pair: ProjectionPair, n: usize) -> Result<ProjectionPairReport> {
    if n == 0 {
        return Err(Error::BasisTooSmall(n));
    }
    let plus: Vec<i64> = (0..n as i64).collect();
    let minus: Vec<i64> = (0..n as i64).map(|j| -(j + 1)).collect();
    let (q, q_perp) = match pair {
        ProjectionPair::PPlusQPlus => (plus, minus),
        ProjectionPair::PPlusQMinus => (minus, plus),
    };
    let nodes = 256.max(8 * n);
    let q_neg = sampled_block(&q, -FRAC_PI_2, 0.0, nodes);
    let q_pos = sampled_block(&q, 0.0, FRAC_PI_2, nodes);
    let p_neg = sampled_block(&q_perp, -FRAC_PI_2, 0.0, nodes);
    let p_pos = sampled_block(&q_perp, 0.0, FRAC_PI_2, nodes);

    let (q_neg_min, delta) = singular_range(&q_neg);
    let (q_pos_min, _) = singular_range(&q_pos);
    let (p_neg_min, _) = singular_range(&p_neg);
    let (p_pos_min, _) = singular_range(&p_pos);
    let mins = [q_neg_min, p_neg_min, q_pos_min, p_pos_min];
    let flags = mins.map(|s| s > FLAG_THRESHOLD);
    Ok(ProjectionPairReport {
        delta,
        norm_pq_diff: delta,
        basis_size: n,
        generic_position_flags: flags,
        smallest_singular_values: mins,
    })
}
