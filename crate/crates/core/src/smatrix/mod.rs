//! Scattering-matrix models on the cut plane `ℂ_{<0} = ℂ ∖ (−∞, 0]`.
//!
//! Every model is a matrix-valued function `S(z)` that is unitary on the
//! positive half line and satisfies `S(z)⁻¹ = S(z̄)*`. Models without a cut
//! are single-valued across the negative axis; for the others the two
//! boundary values `S(λ ± i0)`, `λ < 0`, come from explicit formulas.
//!
//! ```
//! use gamov::smatrix::{ScatteringModel, Side};
//!
//! let model = ScatteringModel::cut_exponential();
//! let up = model.boundary_value(-1.0, Side::Upper).unwrap();
//! assert!((up[(0, 0)].norm() - std::f64::consts::FRAC_PI_2.exp()).abs() < 1e-12);
//! ```

mod cauchy;
pub mod descriptor;
mod friedrichs;
pub mod rational;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use friedrichs::{Coupling, FriedrichsSpec};
use friedrichs::{GeneralFriedrichs, LogModel};
use rational::{poly_from_roots, ScalarRational};

use crate::error::{Error, Result};
use crate::{c, mat_norm, Mat, C64};

/// Side of approach to the real axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Upper,
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Blaschke,
    OneDimPerturbation,
    FriedrichsLine,
    FriedrichsHalflineLog,
    CutExponential,
    GeneralFriedrichs,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Blaschke => "blaschke",
            ModelKind::OneDimPerturbation => "one_dim_perturbation",
            ModelKind::FriedrichsLine => "friedrichs_line",
            ModelKind::FriedrichsHalflineLog => "friedrichs_halfline_log",
            ModelKind::CutExponential => "cut_exponential",
            ModelKind::GeneralFriedrichs => "general_friedrichs",
        }
    }
}

#[derive(Clone, Debug)]
enum Body {
    Blaschke(Vec<C64>),
    OneDim,
    FriedrichsLine,
    HalflineLog(LogModel),
    CutExponential,
    General(Box<GeneralFriedrichs>),
}

/// A scattering matrix `S(z)` together with its metadata. Immutable after
/// construction; evaluation is pure.
#[derive(Clone, Debug)]
pub struct ScatteringModel {
    kind: ModelKind,
    dim_k: usize,
    declared_poles: Vec<C64>,
    has_cut: bool,
    body: Body,
}

/// `log z/(z − 1)` on the principal branch; on the negative axis the side
/// selects `log|λ| ± iπ`.
pub(crate) fn ell(z: C64, side: Side) -> C64 {
    let w = z - 1.0;
    if w.norm() < 1e-4 {
        return 1.0 - w / 2.0 + w * w / 3.0 - w * w * w / 4.0;
    }
    let log = if z.im == 0.0 && z.re < 0.0 {
        let sign = if side == Side::Upper { 1.0 } else { -1.0 };
        c((-z.re).ln(), sign * PI)
    } else {
        z.ln()
    };
    log / w
}

/// Roots `ζ± = (1 − i)/2 ± √(1 + i/2)` of `z² − z(1 − i) − (1 + i)`.
pub fn friedrichs_line_roots() -> [C64; 2] {
    let half = c(0.5, -0.5);
    let root = c(1.0, 0.5).sqrt();
    [half + root, half - root]
}

fn scalar(v: C64) -> Mat {
    Mat::from_element(1, 1, v)
}

fn pole_eps(z: C64) -> f64 {
    1e-8 * (1.0 + z.norm())
}

impl ScatteringModel {
    /// `S(z) = Π (z − ζ̄_j)/(z − ζ_j)`; an empty list gives `S = 1`.
    pub fn blaschke(poles: &[C64]) -> Result<Self> {
        if let Some(p) = poles.iter().find(|p| p.im == 0.0 || !p.is_finite()) {
            return Err(Error::RealPole(*p));
        }
        Ok(ScatteringModel {
            kind: ModelKind::Blaschke,
            dim_k: 1,
            declared_poles: poles.to_vec(),
            has_cut: false,
            body: Body::Blaschke(poles.to_vec()),
        })
    }

    /// The scalar identity scattering matrix.
    pub fn identity() -> Self {
        ScatteringModel::blaschke(&[]).expect("empty pole list")
    }

    /// `S(z) = (z² − z + 1 − i)/(z² − z + 1 + i)`, poles `{i, 1 − i}`.
    pub fn one_dim_perturbation() -> Self {
        ScatteringModel {
            kind: ModelKind::OneDimPerturbation,
            dim_k: 1,
            declared_poles: vec![c(0.0, 1.0), c(1.0, -1.0)],
            has_cut: false,
            body: Body::OneDim,
        }
    }

    /// The upper pole of the one-dimensional perturbation is sometimes given
    /// as `ζ₀ = ½√5(−sin φ₀ + i cos φ₀)`. That point has modulus `√5/2`, while
    /// the closed form of `S` has its upper pole at `i`. This note states the
    /// mismatch; the closed form of `S` is what the library evaluates.
    pub fn one_dim_pole_note() -> String {
        let stated = 0.5 * 5f64.sqrt();
        format!(
            "upper pole: the closed form S(z) = (z² − z + 1 − i)/(z² − z + 1 + i) has its upper pole at i (|i| = 1); \
             the description ζ₀ = ½√5(−sin φ₀ + i cos φ₀) has |ζ₀| = √5/2 = {stated:.6}, so the two do not agree; \
             poles reported here follow the closed form"
        )
    }

    /// `S(z) = 1 − 2i/((z − i)(z² − z(1 − i) − (1 + i)))`, poles `i` and `ζ±`.
    pub fn friedrichs_line() -> Self {
        let [zp, zm] = friedrichs_line_roots();
        ScatteringModel {
            kind: ModelKind::FriedrichsLine,
            dim_k: 1,
            declared_poles: vec![c(0.0, 1.0), zp, zm],
            has_cut: false,
            body: Body::FriedrichsLine,
        }
    }

    /// The half-line Friedrichs model with coupling `c·log λ/(λ − 1)`; the
    /// negative axis is an actual cut.
    pub fn friedrichs_halfline_log() -> Result<Self> {
        Ok(ScatteringModel {
            kind: ModelKind::FriedrichsHalflineLog,
            dim_k: 1,
            declared_poles: Vec::new(),
            has_cut: true,
            body: Body::HalflineLog(LogModel::new()?),
        })
    }

    /// `S(z) = exp(i log z/(z − 1))`.
    pub fn cut_exponential() -> Self {
        ScatteringModel {
            kind: ModelKind::CutExponential,
            dim_k: 1,
            declared_poles: Vec::new(),
            has_cut: true,
            body: Body::CutExponential,
        }
    }

    /// Scattering matrix of a general Friedrichs model from its Livšic matrix.
    pub fn general_friedrichs(spec: FriedrichsSpec) -> Result<Self> {
        let dim_k = spec.dim_k();
        let has_cut = spec.halfline;
        let model = GeneralFriedrichs::new(spec)?;
        Ok(ScatteringModel {
            kind: ModelKind::GeneralFriedrichs,
            dim_k,
            declared_poles: Vec::new(),
            has_cut,
            body: Body::General(Box::new(model)),
        })
    }

    /// Replaces the pole hints. Every hint must be nonreal.
    pub fn with_declared_poles(mut self, poles: Vec<C64>) -> Result<Self> {
        if let Some(p) = poles.iter().find(|p| p.im == 0.0) {
            return Err(Error::RealPole(*p));
        }
        if let Body::Blaschke(_) = self.body {
            return Err(Error::InvalidModel("Blaschke poles are the model itself".into()));
        }
        self.declared_poles = poles;
        Ok(self)
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn dim_k(&self) -> usize {
        self.dim_k
    }

    pub fn declared_poles(&self) -> &[C64] {
        &self.declared_poles
    }

    pub fn has_cut(&self) -> bool {
        self.has_cut
    }

    pub fn friedrichs_spec(&self) -> Option<&FriedrichsSpec> {
        match &self.body {
            Body::General(g) => Some(&g.spec),
            _ => None,
        }
    }

    fn check_point(&self, z: C64) -> Result<()> {
        if !z.is_finite() {
            return Err(Error::InvalidModel(format!("evaluation point {z} is not finite")));
        }
        if self.has_cut && z.im == 0.0 && z.re <= 0.0 {
            return Err(Error::BranchCutViolation { z });
        }
        let eps = pole_eps(z);
        for &p in self.declared_poles.iter().chain(self.structural_singularities().iter()) {
            if (z - p).norm() < eps {
                return Err(Error::PoleProximity { z, pole: p, eps });
            }
        }
        Ok(())
    }

    fn structural_singularities(&self) -> Vec<C64> {
        match &self.body {
            Body::General(g) => g.coupling_poles(),
            _ => Vec::new(),
        }
    }

    fn eval_raw(&self, z: C64, side: Side) -> Result<Mat> {
        let v = match &self.body {
            Body::Blaschke(poles) => poles.iter().fold(c(1.0, 0.0), |acc, &p| acc * (z - p.conj()) / (z - p)),
            Body::OneDim => {
                let q = z * z - z + 1.0;
                (q - c(0.0, 1.0)) / (q + c(0.0, 1.0))
            }
            Body::FriedrichsLine => {
                let quad = z * z - z * c(1.0, -1.0) - c(1.0, 1.0);
                1.0 - c(0.0, 2.0) / ((z - c(0.0, 1.0)) * quad)
            }
            Body::HalflineLog(m) => m.eval(z, side)?,
            Body::CutExponential => (c(0.0, 1.0) * ell(z, side)).exp(),
            Body::General(g) => return g.eval(z, side),
        };
        if !v.is_finite() {
            return Err(Error::PoleProximity { z, pole: z, eps: pole_eps(z) });
        }
        Ok(scalar(v))
    }

    /// `S(z)` for `z` in the cut plane; real `z > 0` gives the physical
    /// scattering matrix. Models without a cut also accept `z ≤ 0`.
    pub fn eval(&self, z: C64) -> Result<Mat> {
        self.check_point(z)?;
        self.eval_raw(z, Side::Upper)
    }

    /// `S(z)⁻¹` through the symmetry `S(z)⁻¹ = S(z̄)*`.
    pub fn eval_inverse(&self, z: C64) -> Result<Mat> {
        Ok(self.eval(z.conj())?.adjoint())
    }

    /// `S(λ ± i0)` for `λ < 0` from the model's explicit boundary formula.
    pub fn boundary_value(&self, lambda: f64, side: Side) -> Result<Mat> {
        if lambda >= 0.0 || !lambda.is_finite() {
            return Err(Error::InvalidModel(format!("boundary values need λ < 0, got {lambda}")));
        }
        let z = c(lambda, 0.0);
        if let Body::General(g) = &self.body {
            if let Coupling::Samples { .. } = g.spec.coupling {
                return Err(Error::NoBoundaryFormula { kind: self.kind.name() });
            }
        }
        let eps = pole_eps(z);
        for &p in self.declared_poles.iter().chain(self.structural_singularities().iter()) {
            if (z - p).norm() < eps {
                return Err(Error::PoleProximity { z, pole: p, eps });
            }
        }
        self.eval_raw(z, side)
    }

    /// `S` on the real axis seen from `side`: `S(λ)` for `λ > 0`,
    /// `S(λ ± i0)` for `λ < 0`. `S₋` is the `Lower` choice.
    pub fn axis_value(&self, lambda: f64, side: Side) -> Result<Mat> {
        if lambda < 0.0 {
            self.boundary_value(lambda, side)
        } else {
            self.eval(c(lambda, 0.0))
        }
    }

    /// Largest `‖S(λ + i0) − S(λ − i0)‖` over the samples; the boolean is
    /// true when it exceeds `1e-8`.
    pub fn has_actual_cut(&self, samples: &[f64]) -> Result<(bool, f64)> {
        if samples.is_empty() {
            return Err(Error::InvalidModel("no sample points".into()));
        }
        let mut worst: f64 = 0.0;
        for &l in samples {
            let up = self.boundary_value(l, Side::Upper)?;
            let lo = self.boundary_value(l, Side::Lower)?;
            worst = worst.max(mat_norm(&(up - lo)));
        }
        Ok((worst > 1e-8, worst))
    }

    /// Partial-fraction form of a scalar rational model.
    pub fn rational_structure(&self) -> Option<ScalarRational> {
        match &self.body {
            Body::Blaschke(poles) => {
                let conj: Vec<C64> = poles.iter().map(|p| p.conj()).collect();
                let mut grouped: Vec<(C64, usize)> = Vec::new();
                for &p in poles {
                    match grouped.iter_mut().find(|g| g.0 == p) {
                        Some(g) => g.1 += 1,
                        None => grouped.push((p, 1)),
                    }
                }
                Some(ScalarRational::from_factored(&poly_from_roots(&conj), &grouped))
            }
            Body::OneDim => Some(ScalarRational::from_factored(
                &[c(1.0, -1.0), c(-1.0, 0.0), c(1.0, 0.0)],
                &[(c(0.0, 1.0), 1), (c(1.0, -1.0), 1)],
            )),
            Body::FriedrichsLine => {
                let [zp, zm] = friedrichs_line_roots();
                let i = c(0.0, 1.0);
                let mut num = poly_from_roots(&[i, zp, zm]);
                num[0] -= c(0.0, 2.0);
                Some(ScalarRational::from_factored(&num, &[(i, 1), (zp, 1), (zm, 1)]))
            }
            _ => None,
        }
    }

    /// An analytic function on the cut plane whose zeros are the poles of `S`
    /// coming from the denominator: the polynomial denominator for rational
    /// models, the continued `μ₊` for the half-line model and `det L₊` for
    /// general Friedrichs models.
    pub fn pole_function(&self, z: C64) -> Result<C64> {
        if self.has_cut && z.im == 0.0 && z.re <= 0.0 {
            return Err(Error::BranchCutViolation { z });
        }
        Ok(match &self.body {
            Body::Blaschke(poles) => poles.iter().fold(c(1.0, 0.0), |acc, &p| acc * (z - p)),
            Body::OneDim => z * z - z + c(1.0, 1.0),
            Body::FriedrichsLine => (z - c(0.0, 1.0)) * (z * z - z * c(1.0, -1.0) - c(1.0, 1.0)),
            Body::HalflineLog(m) => m.mu_plus(z, Side::Upper)?,
            Body::CutExponential => c(1.0, 0.0),
            Body::General(g) => g.livsic(z, Side::Upper)?.determinant(),
        })
    }

    /// Points where [`pole_function`](Self::pole_function) itself is singular.
    pub fn pole_function_singularities(&self) -> Vec<C64> {
        self.structural_singularities()
    }

    /// Points where `S` may have poles that the pole function does not see.
    pub fn extra_pole_candidates(&self) -> Vec<C64> {
        self.structural_singularities()
    }

    /// The half-line model's `μ₋(z) = z − 1 − g(z)` and `μ₊` continued.
    pub fn mu_pair(&self, z: C64, side: Side) -> Result<(C64, C64)> {
        match &self.body {
            Body::HalflineLog(m) => Ok((m.mu_sheet(z, side)?, m.mu_plus(z, side)?)),
            _ => Err(Error::Unsupported { op: "mu_pair", kind: self.kind.name() }),
        }
    }

    /// The half-line model's `g(z) = ∫_0^∞ |f(λ)|²/(z − λ) dλ` and coupling
    /// constant `c`.
    pub fn log_coupling(&self, z: C64, side: Side) -> Result<(C64, f64)> {
        match &self.body {
            Body::HalflineLog(m) => Ok((m.g(z, side)?, m.scale)),
            _ => Err(Error::Unsupported { op: "log_coupling", kind: self.kind.name() }),
        }
    }

    /// `L₊(z)` of a general Friedrichs model.
    pub fn livsic(&self, z: C64, side: Side) -> Result<Mat> {
        match &self.body {
            Body::General(g) => g.livsic(z, side),
            _ => Err(Error::Unsupported { op: "livsic", kind: self.kind.name() }),
        }
    }

    /// `∫ M*M dλ` of a general Friedrichs model.
    pub fn coupling_normalization(&self) -> Result<Mat> {
        match &self.body {
            Body::General(g) => g.normalization(),
            _ => Err(Error::Unsupported { op: "coupling_normalization", kind: self.kind.name() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(model: &ScatteringModel, z: C64) -> C64 {
        model.eval(z).unwrap()[(0, 0)]
    }

    #[test]
    fn closed_form_values() {
        let b = ScatteringModel::blaschke(&[c(0.0, -1.0)]).unwrap();
        assert!((s(&b, c(0.0, 0.0)) + 1.0).norm() < 1e-15);
        assert!(s(&b, c(0.0, 1.0)).norm() < 1e-15);
        let one = ScatteringModel::one_dim_perturbation();
        assert!((s(&one, c(0.0, 0.0)) - c(0.0, -1.0)).norm() < 1e-15);
        assert!((s(&one, c(1.0, 0.0)) - c(0.0, -1.0)).norm() < 1e-15);
        assert!((s(&one, c(5.0, 0.0)).norm() - 1.0).abs() < 1e-15);
        let fl = ScatteringModel::friedrichs_line();
        assert!((s(&fl, c(0.0, 0.0)) - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn inverse_by_symmetry() {
        let b = ScatteringModel::blaschke(&[c(0.0, -1.0)]).unwrap();
        assert!((b.eval_inverse(c(0.0, 2.0)).unwrap()[(0, 0)] - 3.0).norm() < 1e-14);
        // S(−i) = 0 for the one-dimensional perturbation, so S(i)⁻¹ = 0
        let one = ScatteringModel::one_dim_perturbation();
        assert!(one.eval_inverse(c(0.0, 1.0)).unwrap()[(0, 0)].norm() < 1e-15);
    }

    #[test]
    fn guards() {
        let b = ScatteringModel::blaschke(&[c(0.0, -1.0)]).unwrap();
        assert!(matches!(b.eval(c(0.0, -1.0 + 1e-10)), Err(Error::PoleProximity { .. })));
        assert!(matches!(ScatteringModel::blaschke(&[c(1.0, 0.0)]), Err(Error::RealPole(_))));
        let e = ScatteringModel::cut_exponential();
        assert!(matches!(e.eval(c(-1.0, 0.0)), Err(Error::BranchCutViolation { .. })));
        assert!(matches!(e.eval(c(0.0, 0.0)), Err(Error::BranchCutViolation { .. })));
    }

    #[test]
    fn friedrichs_line_roots_solve_the_quadratic() {
        for z in friedrichs_line_roots() {
            assert!((z * z - z * c(1.0, -1.0) - c(1.0, 1.0)).norm() < 1e-14);
        }
        let [zp, zm] = friedrichs_line_roots();
        assert!((zp - c(1.529_09, -0.257_07)).norm() < 1e-5);
        assert!((zm - c(-0.529_09, -0.742_93)).norm() < 1e-5);
    }

    #[test]
    fn rational_structure_matches_closed_forms() {
        let models = [
            ScatteringModel::blaschke(&[c(0.0, -1.0), c(1.0, -2.0), c(1.0, -2.0)]).unwrap(),
            ScatteringModel::one_dim_perturbation(),
            ScatteringModel::friedrichs_line(),
        ];
        for m in &models {
            let r = m.rational_structure().unwrap();
            for z in [c(0.3, 0.7), c(-2.0, -0.4), c(3.0, 0.0)] {
                assert!((r.eval(z) - s(m, z)).norm() < 1e-12, "{:?} at {z}", m.kind());
            }
        }
    }

    #[test]
    fn cut_exponential_boundary_moduli() {
        let e = ScatteringModel::cut_exponential();
        let up = e.boundary_value(-1.0, Side::Upper).unwrap()[(0, 0)].norm();
        let lo = e.boundary_value(-1.0, Side::Lower).unwrap()[(0, 0)].norm();
        assert!((up - 4.810_477_380_965_351).abs() < 1e-12);
        assert!((lo - 0.207_879_576_350_761_9).abs() < 1e-12);
        let (cut, gap) = e.has_actual_cut(&[-1.0]).unwrap();
        assert!(cut && gap > 1.0);
    }

    #[test]
    fn rational_models_have_no_cut() {
        let fl = ScatteringModel::friedrichs_line();
        let (cut, gap) = fl.has_actual_cut(&[-0.5, -1.0, -2.0]).unwrap();
        assert!(!cut && gap < 1e-12);
    }
}
