//! The characteristic semigroup `T₊(t) = Q₊e^{−itλ}Q₊` on `H²₊`, its
//! truncation to `H²₊ ∩ (SH²₊)^⊥` and the half-line transfer of the cut case.
//!
//! On rational vectors the semigroup acts by residues: a simple term
//! `k/(λ − ζ)` is multiplied by `e^{−itζ}`. On grid functions it acts on the
//! Cayley coefficients through the Taylor coefficients of the inner function
//! `e^{−t(1+v)/(1−v)}`, which are Laguerre differences.
//!
//! ```
//! use gamov::evolution::{characteristic_apply, EvolutionState};
//! use gamov::hardy::RationalVector;
//! use num_complex::Complex64;
//!
//! let f = RationalVector::scalar(Complex64::new(0.0, -1.0), 1, Complex64::new(1.0, 0.0)).unwrap();
//! let state = EvolutionState::rational(f.clone()).unwrap();
//! let later = characteristic_apply(&state, 1.0).unwrap();
//! assert!((later.norm() / state.norm() - (-1.0f64).exp()).abs() < 1e-14);
//! ```

mod cut;
mod truncation;

pub use cut::{cut_case_apply, CutState};
pub use truncation::{test_commuting, truncated_apply, truncated_project, Projected, TruncationContext, TruncationResult};

use crate::error::{Error, Result};
use crate::hardy::{CayleyCoefficients, GridFunction, RationalVector, Term};
use crate::{c, Mat, Vector, C64};

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Rational(RationalVector),
    Grid(GridFunction),
}

/// An element of `H²₊` together with the time it has been evolved.
#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionState {
    pub payload: Payload,
    pub time_elapsed: f64,
}

impl EvolutionState {
    pub fn rational(f: RationalVector) -> Result<Self> {
        if !f.in_hardy_plus() {
            return Err(Error::NotHardyPlus);
        }
        Ok(EvolutionState { payload: Payload::Rational(f), time_elapsed: 0.0 })
    }

    /// A grid state; the samples are projected onto `H²₊`.
    pub fn grid(g: GridFunction) -> Self {
        EvolutionState { payload: Payload::Grid(g.project_plus()), time_elapsed: 0.0 }
    }

    pub fn norm(&self) -> f64 {
        match &self.payload {
            Payload::Rational(f) => f.norm(),
            Payload::Grid(g) => g.norm(),
        }
    }

    pub fn as_rational(&self) -> Option<&RationalVector> {
        match &self.payload {
            Payload::Rational(f) => Some(f),
            Payload::Grid(_) => None,
        }
    }

    pub fn as_grid(&self) -> Option<&GridFunction> {
        match &self.payload {
            Payload::Grid(g) => Some(g),
            Payload::Rational(_) => None,
        }
    }

    /// The state sampled on an `n`-node grid.
    pub fn to_grid(&self, n: usize) -> GridFunction {
        match &self.payload {
            Payload::Rational(f) => GridFunction::from_rational(f, n),
            Payload::Grid(g) => g.clone(),
        }
    }

    /// `⟨self, other⟩`, exact when both are rational.
    pub fn inner(&self, other: &Self) -> C64 {
        match (&self.payload, &other.payload) {
            (Payload::Rational(a), Payload::Rational(b)) => a.inner(b),
            (Payload::Grid(a), _) => a.inner(&other.to_grid(a.len())),
            (_, Payload::Grid(b)) => self.to_grid(b.len()).inner(b),
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `T₊(t)` on a rational vector in `H²₊`: the order-`m` term at `ζ` becomes
/// `e^{−itζ} Σ_{s<m} (−it)^{m−1−s}/(m−1−s)! · k/(λ − ζ)^{s+1}`.
pub fn characteristic_rational(f: &RationalVector, t: f64) -> Result<RationalVector> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    if !f.in_hardy_plus() {
        return Err(Error::NotHardyPlus);
    }
    let mut terms = Vec::new();
    for term in f.terms() {
        let phase = (c(0.0, -t) * term.zeta).exp();
        for s in 0..term.order {
            let p = term.order - 1 - s;
            let coeff = phase * c(0.0, -t).powu(p as u32) / factorial(p);
            terms.push(Term { zeta: term.zeta, order: s + 1, k: &term.k * coeff });
        }
    }
    RationalVector::from_terms(f.dim_k(), terms)
}

/// Taylor coefficients `φ_k = e^{−t}(L_k(2t) − L_{k−1}(2t))` of
/// `e^{−t(1+v)/(1−v)}`, `k < len`.
pub fn inner_function_coefficients(t: f64, len: usize) -> Vec<f64> {
    let x = 2.0 * t;
    let scale = (-t).exp();
    let mut out = Vec::with_capacity(len);
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..len {
        out.push(scale * (cur - prev));
        let next = ((2 * k + 1) as f64 - x) * cur / (k + 1) as f64 - k as f64 * prev / (k + 1) as f64;
        prev = cur;
        cur = next;
    }
    out
}

/// `T₊(t)` on Cayley coefficients: `(T₊c)_m = Σ_{n≥m} φ_{n−m} c_n`.
pub fn characteristic_cayley(coeffs: &[Vector], t: f64) -> Vec<Vector> {
    let len = coeffs.len();
    let phi = inner_function_coefficients(t, len);
    (0..len)
        .map(|m| {
            let mut acc = Vector::zeros(coeffs[m].len());
            for (k, &p) in phi.iter().enumerate().take(len - m) {
                acc += &coeffs[m + k] * c(p, 0.0);
            }
            acc
        })
        .collect()
}

/// `T₊(t)` on a grid function, through its Cayley coefficients.
pub fn characteristic_grid(g: &GridFunction, t: f64) -> Result<GridFunction> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let cc = g.cayley();
    let evolved = characteristic_cayley(&cc.plus_part(), t);
    Ok(GridFunction::from_cayley(&CayleyCoefficients::from_plus_part(evolved, g.dim_k())))
}

/// `T₊(t)` on either representation.
pub fn characteristic_apply(f: &EvolutionState, t: f64) -> Result<EvolutionState> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let payload = match &f.payload {
        Payload::Rational(r) => Payload::Rational(characteristic_rational(r, t)?),
        Payload::Grid(g) => Payload::Grid(characteristic_grid(g, t)?),
    };
    Ok(EvolutionState { payload, time_elapsed: f.time_elapsed + t })
}

/// The generator `C₊f = zf(z) − Σ k_j` on a rational vector in `H²₊`: an
/// order-`m` term at `ζ` maps to `ζ` times itself plus the order-`(m−1)` term.
/// Returns the image and the subtracted constant.
pub fn generator_apply(f: &RationalVector) -> Result<(RationalVector, Vector)> {
    if !f.in_hardy_plus() {
        return Err(Error::NotInDomain);
    }
    let mut constant = Vector::zeros(f.dim_k());
    let mut terms = Vec::new();
    for t in f.terms() {
        terms.push(Term { k: &t.k * t.zeta, ..t.clone() });
        if t.order == 1 {
            constant += &t.k;
        } else {
            terms.push(Term { zeta: t.zeta, order: t.order - 1, k: t.k.clone() });
        }
    }
    Ok((RationalVector::from_terms(f.dim_k(), terms)?, constant))
}

/// The generator restricted to the first `n` Cayley basis vectors of `H²₊`:
/// `−i` on the diagonal and `−2i` above it.
pub fn finite_section_generator(n: usize) -> Result<Mat> {
    if n < 2 {
        return Err(Error::BasisTooSmall(n));
    }
    Ok(Mat::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => c(0.0, -1.0),
        std::cmp::Ordering::Less => c(0.0, -2.0),
        std::cmp::Ordering::Greater => c(0.0, 0.0),
    }))
}

/// Eigenvalues of the finite-section generator from its Schur form.
pub fn finite_section_spectrum(n: usize) -> Result<Vec<C64>> {
    let m = finite_section_generator(n)?;
    let eig = m.schur().eigenvalues().ok_or(Error::NotInDomain)?;
    Ok(eig.iter().copied().collect())
}
