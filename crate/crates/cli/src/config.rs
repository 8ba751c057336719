//! The JSON experiment description.

use std::path::{Path, PathBuf};

use gamov::hardy::RationalVector;
use gamov::resonance::Region;
use gamov::smatrix::descriptor::ModelDescriptor;
use gamov::smatrix::ScatteringModel;
use serde::Deserialize;

use crate::failure::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Poles,
    Survival,
    Evolve,
    Expand,
    Transition,
    Diagnose,
    Reproduce,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Poles => "poles",
            Command::Survival => "survival",
            Command::Evolve => "evolve",
            Command::Expand => "expand",
            Command::Transition => "transition",
            Command::Diagnose => "diagnose",
            Command::Reproduce => "reproduce",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evolution {
    Characteristic,
    #[default]
    Truncated,
    Cut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    #[value(name = "sec3_2")]
    #[serde(rename = "sec3_2")]
    Sec3_2,
    #[value(name = "sec4_2")]
    #[serde(rename = "sec4_2")]
    Sec4_2,
    #[value(name = "sec4_3")]
    #[serde(rename = "sec4_3")]
    Sec4_3,
    #[value(name = "thm4_blaschke")]
    #[serde(rename = "thm4_blaschke")]
    Thm4Blaschke,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Sec3_2 => "sec3_2",
            Target::Sec4_2 => "sec4_2",
            Target::Sec4_3 => "sec4_3",
            Target::Thm4Blaschke => "thm4_blaschke",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_tol")]
    pub residual_defect: f64,
    #[serde(default = "default_tol")]
    pub closure_defect: f64,
    #[serde(default = "default_tol")]
    pub hardy_defect: f64,
    #[serde(default = "default_pole_tol")]
    pub pole_match: f64,
}

fn default_tol() -> f64 {
    1e-6
}

fn default_pole_tol() -> f64 {
    1e-10
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { residual_defect: 1e-6, closure_defect: 1e-6, hardy_defect: 1e-6, pole_match: 1e-10 }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: Option<ModelDescriptor>,
    pub command: Option<Command>,
    pub region: Option<Region>,
    #[serde(default)]
    pub zetas: Vec<[f64; 2]>,
    #[serde(default)]
    pub times: Vec<f64>,
    #[serde(default)]
    pub evolution: Evolution,
    pub f: Option<RationalVector>,
    pub g: Option<RationalVector>,
    #[serde(default = "default_nodes")]
    pub nodes: usize,
    #[serde(default)]
    pub compare_upper_boundary: bool,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub format: Format,
    pub output_dir: Option<PathBuf>,
    pub target: Option<Target>,
}

fn default_nodes() -> usize {
    4096
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        let config: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Failure::Config(format!("config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), Failure> {
        let t = &self.tolerances;
        for (name, v) in [
            ("residual_defect", t.residual_defect),
            ("closure_defect", t.closure_defect),
            ("hardy_defect", t.hardy_defect),
            ("pole_match", t.pole_match),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Failure::Config(format!("tolerance `{name}` must be positive, got {v}")));
            }
        }
        if let Some(t) = self.times.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
            return Err(Failure::Config(format!("times must be nonnegative, got {t}")));
        }
        if let Some(r) = &self.region {
            r.validate().map_err(|e| Failure::Config(format!("region: {e}")))?;
        }
        if self.nodes < 2 || !self.nodes.is_multiple_of(2) {
            return Err(Failure::Config(format!("nodes must be even and at least 2, got {}", self.nodes)));
        }
        Ok(())
    }

    /// Checks that the `command` field, when present, names `cmd`.
    pub fn expect_command(&self, cmd: Command) -> Result<(), Failure> {
        match self.command {
            Some(c) if c != cmd => Err(Failure::Config(format!(
                "config is for `{}` but `{}` was requested",
                c.name(),
                cmd.name()
            ))),
            _ => Ok(()),
        }
    }

    pub fn build_model(&self) -> Result<ScatteringModel, Failure> {
        let desc = self.model.as_ref().ok_or_else(|| Failure::Config("config has no `model`".into()))?;
        desc.build().map_err(|e| Failure::Config(format!("model: {e}")))
    }

    pub fn vector(&self, name: &str) -> Result<&RationalVector, Failure> {
        let v = match name {
            "f" => self.f.as_ref(),
            _ => self.g.as_ref(),
        };
        v.ok_or_else(|| Failure::Config(format!("config has no `{name}`")))
    }
}
