//! Friedrichs models: a finite internal space `ℰ` coupled to the continuum
//! through `M(λ): ℰ → 𝒦`.
//!
//! With `G(z) = ∫ M(λ)*M(λ)/(z − λ) dλ` the Livšic matrix on the upper sheet
//! is `L₊(z) = z − E₀ − G(z)`. Across the support of the density it continues
//! into the lower half plane as `L₊(z) = L₋(z) + 2πi M♯(z)M(z)` with
//! `M♯(z) = M(z̄)*`, and the scattering matrix is
//! `S(z) = 𝟙 − 2πi M(z) L₊(z)⁻¹ M♯(z)`.

use std::f64::consts::PI;

use super::cauchy::cauchy_transform;
use super::{ell, Side};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_mapped, Domain, Tolerance};
use crate::{c, Mat, C64};

/// The coupling `λ ↦ M(λ)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Coupling {
    /// `M(z) = Σ A_j/(z − ζ_j)` with nonreal `ζ_j`.
    Rational { terms: Vec<(C64, Mat)> },
    /// `M(z) = c·log z/(z − 1)·B` on the half line, `B*B = 𝟙` and `c` fixed by
    /// the normalization.
    Log { direction: Mat },
    /// Piecewise-linear samples on the real axis; no continuation off the axis.
    Samples { nodes: Vec<f64>, values: Vec<Mat> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FriedrichsSpec {
    pub e0: Mat,
    pub coupling: Coupling,
    pub halfline: bool,
}

impl FriedrichsSpec {
    /// The coupling `M(λ) = π^{-1/2}/(λ + i)` on the line with `E₀ = 1`.
    pub fn lorentzian_line() -> Self {
        FriedrichsSpec {
            e0: Mat::from_element(1, 1, c(1.0, 0.0)),
            coupling: Coupling::Rational {
                terms: vec![(c(0.0, -1.0), Mat::from_element(1, 1, c(PI.sqrt().recip(), 0.0)))],
            },
            halfline: false,
        }
    }

    /// The coupling `M(λ) = c·log λ/(λ − 1)` on the half line with `E₀ = 1`.
    pub fn log_halfline() -> Self {
        FriedrichsSpec {
            e0: Mat::from_element(1, 1, c(1.0, 0.0)),
            coupling: Coupling::Log { direction: Mat::from_element(1, 1, c(1.0, 0.0)) },
            halfline: true,
        }
    }

    pub fn dim_e(&self) -> usize {
        self.e0.nrows()
    }

    pub fn dim_k(&self) -> usize {
        match &self.coupling {
            Coupling::Rational { terms } => terms.first().map_or(0, |t| t.1.nrows()),
            Coupling::Log { direction } => direction.nrows(),
            Coupling::Samples { values, .. } => values.first().map_or(0, |v| v.nrows()),
        }
    }
}

/// `∫_0^∞ (log λ/(λ − 1))² dλ` by adaptive quadrature.
pub(crate) fn log_coupling_integral() -> Result<f64> {
    integrate_mapped(
        |l: f64| {
            let v = ell(c(l, 0.0), Side::Upper).re;
            v * v
        },
        Domain::Positive,
        &[1.0],
        Tolerance::new(1e-15, 1e-13),
    )
    .require()
}

#[derive(Clone, Debug)]
pub(crate) struct GeneralFriedrichs {
    pub spec: FriedrichsSpec,
    pub log_scale: f64,
}

fn upper(z: C64, side: Side) -> bool {
    z.im > 0.0 || (z.im == 0.0 && side == Side::Upper)
}

impl GeneralFriedrichs {
    pub fn new(spec: FriedrichsSpec) -> Result<Self> {
        let n = spec.dim_e();
        if n == 0 || spec.e0.ncols() != n {
            return Err(Error::InvalidModel("E0 must be a nonempty square matrix".into()));
        }
        if (&spec.e0 - spec.e0.adjoint()).norm() > 1e-12 * (1.0 + spec.e0.norm()) {
            return Err(Error::InvalidModel("E0 must be Hermitian".into()));
        }
        let dk = spec.dim_k();
        if dk == 0 {
            return Err(Error::InvalidModel("coupling carries no data".into()));
        }
        let mut log_scale = 1.0;
        match &spec.coupling {
            Coupling::Rational { terms } => {
                for (z, a) in terms {
                    if z.im == 0.0 {
                        return Err(Error::RealPole(*z));
                    }
                    if a.nrows() != dk || a.ncols() != n {
                        return Err(Error::DimensionMismatch { expected: n, got: a.ncols() });
                    }
                }
            }
            Coupling::Log { direction } => {
                if !spec.halfline {
                    return Err(Error::InvalidModel("log coupling lives on the half line".into()));
                }
                if direction.ncols() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: direction.ncols() });
                }
                log_scale = log_coupling_integral()?.sqrt().recip();
            }
            Coupling::Samples { nodes, values } => {
                if nodes.len() < 2 || nodes.len() != values.len() {
                    return Err(Error::InvalidModel("samples need at least two nodes and one value per node".into()));
                }
                if nodes.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidModel("sample nodes must increase strictly".into()));
                }
                if values.iter().any(|v| v.nrows() != dk || v.ncols() != n) {
                    return Err(Error::InvalidModel("sample values have inconsistent shapes".into()));
                }
            }
        }
        if spec.halfline {
            let eig = spec.e0.clone().symmetric_eigen();
            if eig.eigenvalues.iter().any(|&e| e <= 0.0) {
                return Err(Error::InvalidModel("E0 must be positive on the half line".into()));
            }
        }
        let model = GeneralFriedrichs { spec, log_scale };
        let norm = model.normalization()?;
        let defect = (norm - Mat::identity(n, n)).norm();
        if defect > 1e-6 {
            return Err(Error::InvalidModel(format!("coupling is not normalized (defect {defect:e})")));
        }
        Ok(model)
    }

    pub fn domain(&self) -> Domain {
        if self.spec.halfline {
            Domain::Positive
        } else {
            Domain::Line
        }
    }

    fn kind_name(&self) -> &'static str {
        "general_friedrichs"
    }

    /// `∫ M*M dλ`.
    pub fn normalization(&self) -> Result<Mat> {
        let mut breaks = Vec::new();
        if let Coupling::Samples { nodes, .. } = &self.spec.coupling {
            breaks.extend_from_slice(nodes);
        }
        if let Coupling::Log { .. } = &self.spec.coupling {
            breaks.push(1.0);
        }
        integrate_mapped(|l| self.density(l), self.domain(), &breaks, Tolerance::new(1e-14, 1e-11)).require()
    }

    /// `M(λ)*M(λ)` for real `λ`, zero outside the domain.
    pub fn density(&self, l: f64) -> Mat {
        let n = self.spec.dim_e();
        if !self.domain().contains(l) {
            return Mat::zeros(n, n);
        }
        match self.coupling(c(l, 0.0), Side::Upper) {
            Ok(m) => m.adjoint() * m,
            Err(_) => Mat::zeros(n, n),
        }
    }

    /// `M(z)`.
    pub fn coupling(&self, z: C64, side: Side) -> Result<Mat> {
        let (dk, n) = (self.spec.dim_k(), self.spec.dim_e());
        match &self.spec.coupling {
            Coupling::Rational { terms } => {
                let mut m = Mat::zeros(dk, n);
                for (zeta, a) in terms {
                    m += a * (c(1.0, 0.0) / (z - zeta));
                }
                Ok(m)
            }
            Coupling::Log { direction } => Ok(direction * (ell(z, side) * self.log_scale)),
            Coupling::Samples { nodes, values } => {
                if z.im != 0.0 {
                    return Err(Error::Unsupported { op: "continuation of sampled coupling", kind: self.kind_name() });
                }
                let x = z.re;
                if x <= nodes[0] || x >= nodes[nodes.len() - 1] {
                    return Ok(Mat::zeros(dk, n));
                }
                let j = nodes.partition_point(|&t| t <= x) - 1;
                let s = (x - nodes[j]) / (nodes[j + 1] - nodes[j]);
                Ok(&values[j] * c(1.0 - s, 0.0) + &values[j + 1] * c(s, 0.0))
            }
        }
    }

    /// `M♯(z) = M(z̄)*`.
    pub fn coupling_sharp(&self, z: C64, side: Side) -> Result<Mat> {
        match &self.spec.coupling {
            Coupling::Rational { terms } => {
                let mut m = Mat::zeros(self.spec.dim_e(), self.spec.dim_k());
                for (zeta, a) in terms {
                    m += a.adjoint() * (c(1.0, 0.0) / (z - zeta.conj()));
                }
                Ok(m)
            }
            Coupling::Log { direction } => Ok(direction.adjoint() * (ell(z, side) * self.log_scale)),
            Coupling::Samples { .. } => Ok(self.coupling(z, side)?.adjoint()),
        }
    }

    /// `G(z) = ∫ M*M/(z − λ) dλ`.
    pub fn cauchy(&self, z: C64, side: Side) -> Result<Mat> {
        cauchy_transform(|l| self.density(l), self.domain(), z, side, Tolerance::default())
    }

    /// The Livšic matrix `L₊(z)` continued to the lower half plane.
    pub fn livsic(&self, z: C64, side: Side) -> Result<Mat> {
        let n = self.spec.dim_e();
        let mut l = Mat::identity(n, n) * z - &self.spec.e0 - self.cauchy(z, side)?;
        if !upper(z, side) {
            l += self.coupling_sharp(z, side)? * self.coupling(z, side)? * c(0.0, 2.0 * PI);
        }
        Ok(l)
    }

    pub fn eval(&self, z: C64, side: Side) -> Result<Mat> {
        let l = self.livsic(z, side)?;
        let sv = l.clone().svd(false, false).singular_values;
        if sv.min() <= 1e-14 * sv.max().max(1.0) {
            return Err(Error::SingularLivsic(z));
        }
        let linv = l.try_inverse().ok_or(Error::SingularLivsic(z))?;
        let m = self.coupling(z, side)?;
        let ms = self.coupling_sharp(z, side)?;
        let dk = self.spec.dim_k();
        Ok(Mat::identity(dk, dk) - m * linv * ms * c(0.0, 2.0 * PI))
    }

    /// Points where `M` or `M♯` are singular.
    pub fn coupling_poles(&self) -> Vec<C64> {
        match &self.spec.coupling {
            Coupling::Rational { terms } => terms.iter().flat_map(|(z, _)| [*z, z.conj()]).collect(),
            _ => Vec::new(),
        }
    }
}

/// The scalar half-line model with coupling `f(z) = c·log z/(z − 1)`:
/// `μ(z) = z − 1 − g(z)` with `g(z) = ∫_0^∞ f(λ)²/(z − λ) dλ`.
#[derive(Clone, Debug)]
pub(crate) struct LogModel {
    pub scale: f64,
}

impl LogModel {
    pub fn new() -> Result<Self> {
        Ok(LogModel { scale: log_coupling_integral()?.sqrt().recip() })
    }

    pub fn f(&self, z: C64, side: Side) -> C64 {
        ell(z, side) * self.scale
    }

    pub fn g(&self, z: C64, side: Side) -> Result<C64> {
        let s2 = self.scale * self.scale;
        cauchy_transform(
            |l: f64| {
                let v = ell(c(l, 0.0), Side::Upper).re;
                c(s2 * v * v, 0.0)
            },
            Domain::Positive,
            z,
            side,
            Tolerance::default(),
        )
    }

    /// `μ₋(z) = z − 1 − g(z)` (the unsheeted function, also `μ₊` on the upper half plane).
    pub fn mu_sheet(&self, z: C64, side: Side) -> Result<C64> {
        Ok(z - 1.0 - self.g(z, side)?)
    }

    /// `μ₊` continued: equals `μ₋ + 2πi f²` below the axis.
    pub fn mu_plus(&self, z: C64, side: Side) -> Result<C64> {
        let base = self.mu_sheet(z, side)?;
        if upper(z, side) {
            Ok(base)
        } else {
            let f = self.f(z, side);
            Ok(base + c(0.0, 2.0 * PI) * f * f)
        }
    }

    pub fn eval(&self, z: C64, side: Side) -> Result<C64> {
        let f = self.f(z, side);
        if upper(z, side) {
            let mu = self.mu_sheet(z, side)?;
            Ok(1.0 - c(0.0, 2.0 * PI) * f * f / mu)
        } else {
            let mu_m = self.mu_sheet(z, side)?;
            let mu_p = mu_m + c(0.0, 2.0 * PI) * f * f;
            Ok(mu_m / mu_p)
        }
    }
}
