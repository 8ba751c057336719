//! JSON descriptors for scattering models.
//!
//! ```json
//! {"kind": "blaschke", "poles": [[0.0, -1.0]], "dim_K": 1}
//! {"kind": "general_friedrichs", "dim_K": 1,
//!  "coupling": {"e0": [[[1.0, 0.0]]], "halfline": false, "type": "rational",
//!               "terms": [{"zeta": [0.0, -1.0], "a": [[[0.5641895835477563, 0.0]]]}]}}
//! ```
//!
//! Complex numbers are `[re, im]` pairs and matrices are lists of rows.
//! `poles` are the model itself for `blaschke` and pole hints otherwise.

use serde::{Deserialize, Serialize};

use super::{Coupling, FriedrichsSpec, ModelKind, ScatteringModel};
use crate::error::{Error, Result};
use crate::{c, Mat, C64};

pub type ComplexJson = [f64; 2];
pub type MatrixJson = Vec<Vec<ComplexJson>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDescriptor {
    pub kind: ModelKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub poles: Vec<ComplexJson>,
    #[serde(rename = "dim_K", default = "one")]
    pub dim_k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coupling: Option<CouplingDescriptor>,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingDescriptor {
    pub e0: MatrixJson,
    #[serde(default)]
    pub halfline: bool,
    #[serde(flatten)]
    pub profile: ProfileDescriptor,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ProfileDescriptor {
    Rational { terms: Vec<TermDescriptor> },
    Log { direction: MatrixJson },
    Samples { nodes: Vec<f64>, values: Vec<MatrixJson> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDescriptor {
    pub zeta: ComplexJson,
    pub a: MatrixJson,
}

pub fn to_complex(v: ComplexJson) -> C64 {
    c(v[0], v[1])
}

pub fn from_complex(z: C64) -> ComplexJson {
    [z.re, z.im]
}

pub fn to_matrix(rows: &MatrixJson) -> Result<Mat> {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    if n == 0 || m == 0 || rows.iter().any(|r| r.len() != m) {
        return Err(Error::InvalidModel("matrix must be a nonempty list of equal-length rows".into()));
    }
    Ok(Mat::from_fn(n, m, |i, j| to_complex(rows[i][j])))
}

pub fn from_matrix(m: &Mat) -> MatrixJson {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| from_complex(m[(i, j)])).collect()).collect()
}

impl ModelDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn build(&self) -> Result<ScatteringModel> {
        let poles: Vec<C64> = self.poles.iter().map(|&p| to_complex(p)).collect();
        if self.coupling.is_some() && self.kind != ModelKind::GeneralFriedrichs {
            return Err(Error::InvalidModel(format!("`{}` takes no coupling", self.kind.name())));
        }
        let model = match self.kind {
            ModelKind::Blaschke => return self.checked(ScatteringModel::blaschke(&poles)?),
            ModelKind::OneDimPerturbation => ScatteringModel::one_dim_perturbation(),
            ModelKind::FriedrichsLine => ScatteringModel::friedrichs_line(),
            ModelKind::FriedrichsHalflineLog => ScatteringModel::friedrichs_halfline_log()?,
            ModelKind::CutExponential => ScatteringModel::cut_exponential(),
            ModelKind::GeneralFriedrichs => {
                let desc = self
                    .coupling
                    .as_ref()
                    .ok_or_else(|| Error::InvalidModel("general_friedrichs needs a coupling".into()))?;
                ScatteringModel::general_friedrichs(desc.to_spec()?)?
            }
        };
        let model = if poles.is_empty() { model } else { model.with_declared_poles(poles)? };
        self.checked(model)
    }

    fn checked(&self, model: ScatteringModel) -> Result<ScatteringModel> {
        if model.dim_k() != self.dim_k {
            return Err(Error::DimensionMismatch { expected: model.dim_k(), got: self.dim_k });
        }
        Ok(model)
    }
}

impl CouplingDescriptor {
    pub fn to_spec(&self) -> Result<FriedrichsSpec> {
        let coupling = match &self.profile {
            ProfileDescriptor::Rational { terms } => Coupling::Rational {
                terms: terms
                    .iter()
                    .map(|t| Ok((to_complex(t.zeta), to_matrix(&t.a)?)))
                    .collect::<Result<_>>()?,
            },
            ProfileDescriptor::Log { direction } => Coupling::Log { direction: to_matrix(direction)? },
            ProfileDescriptor::Samples { nodes, values } => Coupling::Samples {
                nodes: nodes.clone(),
                values: values.iter().map(to_matrix).collect::<Result<_>>()?,
            },
        };
        Ok(FriedrichsSpec { e0: to_matrix(&self.e0)?, coupling, halfline: self.halfline })
    }

    pub fn from_spec(spec: &FriedrichsSpec) -> Self {
        let profile = match &spec.coupling {
            Coupling::Rational { terms } => ProfileDescriptor::Rational {
                terms: terms.iter().map(|(z, a)| TermDescriptor { zeta: from_complex(*z), a: from_matrix(a) }).collect(),
            },
            Coupling::Log { direction } => ProfileDescriptor::Log { direction: from_matrix(direction) },
            Coupling::Samples { nodes, values } => {
                ProfileDescriptor::Samples { nodes: nodes.clone(), values: values.iter().map(from_matrix).collect() }
            }
        };
        CouplingDescriptor { e0: from_matrix(&spec.e0), halfline: spec.halfline, profile }
    }
}

impl ScatteringModel {
    pub fn descriptor(&self) -> ModelDescriptor {
        ModelDescriptor {
            kind: self.kind(),
            poles: self.declared_poles().iter().map(|&p| from_complex(p)).collect(),
            dim_k: self.dim_k(),
            coupling: self.friedrichs_spec().map(CouplingDescriptor::from_spec),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_examples() {
        let d = ModelDescriptor::from_json(r#"{"kind": "blaschke", "poles": [[0.0, -1.0]], "dim_K": 1}"#).unwrap();
        let m = d.build().unwrap();
        assert_eq!(m.declared_poles(), &[c(0.0, -1.0)]);
        let g = ModelDescriptor::from_json(
            r#"{"kind": "general_friedrichs", "dim_K": 1,
                "coupling": {"e0": [[[1.0, 0.0]]], "halfline": false, "type": "rational",
                             "terms": [{"zeta": [0.0, -1.0], "a": [[[0.5641895835477563, 0.0]]]}]}}"#,
        )
        .unwrap();
        let m = g.build().unwrap();
        let direct = ScatteringModel::friedrichs_line();
        let z = c(2.0, 0.0);
        assert!((m.eval(z).unwrap() - direct.eval(z).unwrap()).norm() < 1e-8);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(ModelDescriptor::from_json(r#"{"kind": "nonsense"}"#).is_err());
        let wrong_dim = ModelDescriptor::from_json(r#"{"kind": "friedrichs_line", "dim_K": 2}"#).unwrap();
        assert!(matches!(wrong_dim.build(), Err(Error::DimensionMismatch { .. })));
        let real_pole = ModelDescriptor::from_json(r#"{"kind": "blaschke", "poles": [[1.0, 0.0]]}"#).unwrap();
        assert!(matches!(real_pole.build(), Err(Error::RealPole(_))));
    }
}
