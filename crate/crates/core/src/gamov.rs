//! Gamov vectors, the residue expansion of `Q₊S₋g` and the split of
//! transition amplitudes into a residual sum and a background integral.
//!
//! For `g ∈ H²₋` and a model with finitely many poles `ζ_j` in the lower
//! half plane, all simple,
//! `(Q₊S₋g)(z) = Σ_j S_{−1,j} g(ζ_j)/(z − ζ_j)`, where `S_{−1,j}` is the
//! residue of `S` at `ζ_j`.
//!
//! ```
//! use gamov::gamov::expand;
//! use gamov::hardy::RationalVector;
//! use gamov::smatrix::ScatteringModel;
//! use num_complex::Complex64;
//!
//! let model = ScatteringModel::blaschke(&[Complex64::new(0.0, -1.0)]).unwrap();
//! let g = RationalVector::scalar(Complex64::new(0.0, 1.0), 1, Complex64::new(1.0, 0.0)).unwrap();
//! let e = expand(&model, &g).unwrap();
//! assert_eq!(e.pole_count, 1);
//! assert!((e.terms[0].1[0] - 1.0).norm() < 1e-10);
//! assert!(e.residual_defect < 1e-8);
//! ```

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{truncated_apply, TruncationContext};
use crate::hardy::{RationalVector, Term};
use crate::quadrature::{integrate_mapped, Domain, Tolerance};
use crate::resonance::{cut_singularities, locate_poles, residue_of_S, survival_test, Region};
use crate::smatrix::{ScatteringModel, Side};
use crate::{c, Mat, Vector, C64};

/// `f_{ζ,k}(z) = k/(z − ζ)` with `Im ζ < 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct GamovVector {
    pub zeta: C64,
    pub k: Vector,
}

impl GamovVector {
    pub fn new(zeta: C64, k: Vector) -> Result<Self> {
        if !(zeta.im < 0.0) {
            return Err(Error::NotHardyPlus);
        }
        if k.iter().all(|v| *v == c(0.0, 0.0)) {
            return Err(Error::InvalidModel("Gamov vector needs k ≠ 0".into()));
        }
        Ok(GamovVector { zeta, k })
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector::simple(self.zeta, self.k.clone()).expect("Im ζ < 0")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionResult {
    /// `(ζ_j, c_j)` with `c_j = S_{−1,j} g(ζ_j)`.
    pub terms: Vec<(C64, Vector)>,
    /// Largest mismatch between the series and a quadrature of `Q₊S₋g` at
    /// eight points of the upper half plane.
    pub residual_defect: f64,
    pub pole_count: usize,
}

impl ExpansionResult {
    /// `Σ c_j/(z − ζ_j)`.
    pub fn eval(&self, z: C64) -> Vector {
        let dim = self.terms.first().map_or(0, |t| t.1.len());
        self.terms.iter().fold(Vector::zeros(dim), |acc, (zeta, cj)| acc + cj / (z - zeta))
    }

    /// The series as a rational vector in `H²₊`.
    pub fn to_rational(&self, dim_k: usize) -> RationalVector {
        let terms = self.terms.iter().map(|(zeta, k)| Term { zeta: *zeta, order: 1, k: k.clone() }).collect();
        RationalVector::from_terms(dim_k, terms).expect("poles in the lower half plane")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionDecomposition {
    /// `∫_0^∞ ⟨f(λ), S(λ)g(λ)⟩ dλ`.
    pub direct: C64,
    /// `−2πi Σ_j ⟨f(ζ̄_j), S_{−1,j} g(ζ_j)⟩`.
    pub residual_sum: C64,
    /// `∫_{−∞}^0 ⟨f(λ), S₋(λ)g(λ)⟩ dλ`.
    pub background: C64,
    /// `|direct − (residual_sum − background)|`.
    pub closure_defect: f64,
}

/// Search box for models whose poles are not known in closed form.
pub const POLE_SEARCH: Region = Region { re_min: -10.0, re_max: 10.0, im_min: -10.0, im_max: -1e-3 };

/// Largest pole set accepted by the expansion.
pub const MAX_POLES: usize = 64;

/// Poles of `S` in the lower half plane: exact for rational models, by
/// contour search over [`POLE_SEARCH`] otherwise. More than [`MAX_POLES`]
/// poles is reported as [`Error::InfinitePoles`].
pub fn lower_poles(model: &ScatteringModel) -> Result<Vec<C64>> {
    let mut poles: Vec<C64> = match model.rational_structure() {
        Some(r) => r.poles().filter(|p| p.im < 0.0).collect(),
        None => locate_poles(model, &POLE_SEARCH)?,
    };
    if poles.len() > MAX_POLES {
        return Err(Error::InfinitePoles);
    }
    poles.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    poles.dedup();
    Ok(poles)
}

fn upper_poles(model: &ScatteringModel) -> Result<Vec<C64>> {
    Ok(match model.rational_structure() {
        Some(r) => r.poles().filter(|p| p.im > 0.0).collect(),
        None => locate_poles(model, &POLE_SEARCH.conjugate())?,
    })
}

fn axis_tolerance() -> Tolerance {
    Tolerance::new(1e-13, 1e-10)
}

/// `(Q₊S₋g)(z)` for `z` in the upper half plane by adaptive quadrature of
/// `(1/2πi) ∫ S₋(λ)g(λ)/(λ − z) dλ`.
pub fn project_plus_quadrature(model: &ScatteringModel, g: &RationalVector, z: C64) -> Result<Vector> {
    project_plus_quadrature_on(model, g, z, Side::Lower)
}

/// The same Cauchy integral with the boundary value from `side` on the
/// negative axis.
pub fn project_plus_quadrature_on(model: &ScatteringModel, g: &RationalVector, z: C64, side: Side) -> Result<Vector> {
    let integrand = |l: f64| -> Vector {
        match model.axis_value(l, side) {
            Ok(s) => s * g.eval(c(l, 0.0)) / (c(l, 0.0) - z),
            Err(_) => Vector::from_element(g.dim_k(), C64::from(f64::NAN)),
        }
    };
    let v = integrate_mapped(integrand, Domain::Line, &[0.0], axis_tolerance()).require()?;
    Ok(v / c(0.0, 2.0 * PI))
}

/// The residue series against `Q₊S₋g` and `Q₊S₊g` at one probe point.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryComparison {
    pub z: C64,
    /// `‖Q₊S₋g(z) − series(z)‖`.
    pub defect_lower: f64,
    /// `‖Q₊S₊g(z) − series(z)‖`, infinite when `S₊` is not integrable.
    pub defect_upper: f64,
    /// `‖Q₊S₊g(z) − Q₊S₋g(z)‖`, infinite when `S₊` is not integrable.
    pub difference: f64,
}

/// Compares the expansion of `g` with both boundary values of `S` on the
/// negative axis at the probe points used by [`expand`]. The two agree on
/// models without a cut. Where `S₋` vanishes on the cut, `S₊ = (S₋*)⁻¹` has
/// a pole on the axis and the upper entries are infinite.
pub fn compare_boundary_values(model: &ScatteringModel, g: &RationalVector) -> Result<Vec<BoundaryComparison>> {
    let e = expand(model, g)?;
    let upper_integrable = cut_singularities(model)?.is_empty();
    probe_points()
        .into_iter()
        .map(|z| {
            let series = if e.terms.is_empty() { Vector::zeros(g.dim_k()) } else { e.eval(z) };
            let lower = project_plus_quadrature_on(model, g, z, Side::Lower)?;
            let (defect_upper, difference) = if upper_integrable {
                let upper = project_plus_quadrature_on(model, g, z, Side::Upper)?;
                ((&upper - &series).norm(), (upper - &lower).norm())
            } else {
                (f64::INFINITY, f64::INFINITY)
            };
            Ok(BoundaryComparison { z, defect_lower: (&lower - &series).norm(), defect_upper, difference })
        })
        .collect()
}

fn probe_points() -> [C64; 8] {
    [c(0.0, 0.5), c(1.0, 0.5), c(-1.0, 0.5), c(2.0, 1.0), c(-2.0, 1.0), c(0.5, 2.0), c(-0.5, 3.0), c(0.0, 1.0)]
}

/// Residue-series expansion of `Q₊S₋g` for `g ∈ H²₋`.
pub fn expand(model: &ScatteringModel, g: &RationalVector) -> Result<ExpansionResult> {
    if !g.in_hardy_minus() {
        return Err(Error::NotHardyMinus);
    }
    if g.dim_k() != model.dim_k() {
        return Err(Error::DimensionMismatch { expected: model.dim_k(), got: g.dim_k() });
    }
    let poles = lower_poles(model)?;
    let terms = poles
        .iter()
        .map(|&zeta| Ok((zeta, residue_of_S(model, zeta)? * g.eval(zeta))))
        .collect::<Result<Vec<_>>>()?;
    let mut result = ExpansionResult { terms, residual_defect: 0.0, pole_count: poles.len() };
    let mut defect: f64 = 0.0;
    for z in probe_points() {
        let series = if result.terms.is_empty() { Vector::zeros(g.dim_k()) } else { result.eval(z) };
        defect = defect.max((project_plus_quadrature(model, g, z)? - series).norm());
    }
    result.residual_defect = defect;
    Ok(result)
}

/// Direct, residual and background parts of `∫ ⟨f, S₋g⟩` for `f ∈ H²₊`,
/// `g ∈ H²₋`.
pub fn transition_decomposition(model: &ScatteringModel, f: &RationalVector, g: &RationalVector) -> Result<TransitionDecomposition> {
    if !f.in_hardy_plus() {
        return Err(Error::NotHardyPlus);
    }
    if !g.in_hardy_minus() {
        return Err(Error::NotHardyMinus);
    }
    let pairing = |domain: Domain| -> Result<C64> {
        let integrand = |l: f64| -> C64 {
            let z = c(l, 0.0);
            match model.axis_value(l, Side::Lower) {
                Ok(s) => f.eval(z).dotc(&(s * g.eval(z))),
                Err(_) => C64::from(f64::NAN),
            }
        };
        integrate_mapped(integrand, domain, &[], axis_tolerance()).require()
    };
    let direct = pairing(Domain::Positive)?;
    let background = pairing(Domain::Negative)?;
    let mut residual_sum = c(0.0, 0.0);
    for zeta in lower_poles(model)? {
        let res = residue_of_S(model, zeta)?;
        residual_sum += f.eval(zeta.conj()).dotc(&(res * g.eval(zeta)));
    }
    residual_sum *= c(0.0, -2.0 * PI);
    let closure_defect = (direct - (residual_sum - background)).norm();
    Ok(TransitionDecomposition { direct, residual_sum, background, closure_defect })
}

/// Gamov vectors that survive the truncation: one per survival-kernel basis
/// vector at each candidate `ζ ∈ ℂ₋` (poles of `S` and conjugates of poles of
/// `S` in the upper half plane). Each candidate must also satisfy
/// `Z₊(1)f = e^{−iζ}f` under the truncated evolution; vectors failing that
/// check are dropped.
pub fn gamov_basis(model: &ScatteringModel) -> Result<Vec<GamovVector>> {
    let mut candidates = lower_poles(model)?;
    candidates.extend(upper_poles(model)?.into_iter().map(|p| p.conj()));
    candidates.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    candidates.dedup_by(|a, b| (*a - *b).norm() < 1e-8 * (1.0 + a.norm()));
    let mut out = Vec::new();
    let mut ctx: Option<TruncationContext> = None;
    for zeta in candidates {
        for k in survival_test(model, zeta)?.survival_kernel {
            let v = GamovVector::new(zeta, k)?;
            if ctx.is_none() {
                ctx = Some(TruncationContext::new(model.clone())?);
            }
            let ctx = ctx.as_ref().expect("just built");
            let tol = if ctx.is_exact() { 1e-8 } else { 1e-4 };
            if eigenrelation_defect(ctx, &v, 1.0)? < tol {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// `‖Z₊(t)f − e^{−itζ}f‖/‖f‖` for the truncated evolution `Z₊`.
pub fn eigenrelation_defect(ctx: &TruncationContext, v: &GamovVector, t: f64) -> Result<f64> {
    let f = v.to_rational();
    let evolved = truncated_apply(ctx, &f, t)?;
    let expected = f.scale((c(0.0, -t) * v.zeta).exp());
    let diff = match (evolved.as_rational(), evolved.as_grid()) {
        (Some(r), _) => r.sub(&expected).norm(),
        (_, Some(g)) => g.sub(&crate::hardy::GridFunction::from_rational(&expected, g.len())).norm(),
        _ => unreachable!("payload is rational or grid"),
    };
    Ok(diff / f.norm())
}

/// `G_{ij} = ⟨f_i, f_j⟩ = 2πi ⟨k_i, k_j⟩/(ζ̄_i − ζ_j)`.
pub fn gram_matrix(basis: &[GamovVector]) -> Mat {
    Mat::from_fn(basis.len(), basis.len(), |i, j| {
        let (a, b) = (&basis[i], &basis[j]);
        a.k.dotc(&b.k) * c(0.0, 2.0 * PI) / (a.zeta.conj() - b.zeta)
    })
}
