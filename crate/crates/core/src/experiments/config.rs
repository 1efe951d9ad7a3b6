use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::ConvexMeasure;
use crate::pconcave::{exponent, truncate, FunctionSpec, PConcaveFunction, Quadrature};

/// Functional evaluated on each model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Functional {
    /// W_i
    Quermass(usize),
    /// n·W_1
    Perimeter,
    /// ν(Π°·)
    Zhang(ConvexMeasure),
}

impl Default for Functional {
    fn default() -> Self {
        Functional::Quermass(0)
    }
}

impl Functional {
    pub fn name(&self) -> String {
        match self {
            Functional::Quermass(i) => format!("W_{i}"),
            Functional::Perimeter => "Per".into(),
            Functional::Zhang(nu) => format!("{}(polar projection body)", nu.name()),
        }
    }

    /// True when the inequality reads `original ≥ rearranged`.
    pub fn rearrangement_decreases(&self) -> bool {
        !matches!(self, Functional::Zhang(_))
    }
}

fn two() -> usize {
    2
}

/// Experiment configuration, read from JSON.
///
/// ```json
/// {"function": {"kind": "indicator", "dim": 2, "vertices": [[0,0],[1,0],[0,2]]},
///  "p": "inf", "n": 2, "N": 10, "trials": 5000, "seed": 1,
///  "functional": {"quermass": 1}}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Function description in the format of [`FunctionSpec`], kept verbatim.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<serde_json::Value>,
    /// Model exponent.
    #[serde(default, with = "exponent::option", skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default = "two")]
    pub n: usize,
    /// Samples per trial.
    #[serde(rename = "N", default)]
    pub samples: usize,
    #[serde(default = "two")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub functional: Functional,
    /// Truncation level; defaults to 1% of the maximum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub quadrature: Quadrature,
    /// Sample sizes of a convergence study.
    #[serde(rename = "N_list", default, skip_serializing_if = "Vec::is_empty")]
    pub sample_list: Vec<usize>,
    /// Directory against which relative paths in `function` resolve.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::from_json(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn function(&self) -> Result<PConcaveFunction> {
        let value = self
            .function
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("missing \"function\"".into()))?;
        let f = FunctionSpec::from_value(value)?.build(&self.base_dir)?;
        if f.dim() != self.n {
            return Err(Error::InvalidConfig(format!(
                "function has dimension {} but n = {}",
                f.dim(),
                self.n
            )));
        }
        Ok(f)
    }

    pub(crate) fn exponent(&self) -> Result<f64> {
        self.p
            .ok_or_else(|| Error::InvalidConfig("missing model exponent \"p\"".into()))
    }

    /// Checks the shared invariants: n ∈ {2, 3}, trials ≥ 2 and a valid
    /// functional.
    pub fn validate(&self) -> Result<()> {
        if !(2..=3).contains(&self.n) {
            return Err(Error::InvalidConfig(format!("n = {} must be 2 or 3", self.n)));
        }
        if self.trials < 2 {
            return Err(Error::InvalidConfig(format!("trials = {} must be at least 2", self.trials)));
        }
        match self.functional {
            Functional::Quermass(i) if i >= self.n => {
                return Err(Error::InvalidConfig(format!("quermass index {i} must be below n = {}", self.n)))
            }
            Functional::Zhang(nu) => nu.validate(self.n)?,
            _ => {}
        }
        let q = &self.quadrature;
        if q.level_nodes == 0 || q.panel_nodes == 0 || q.radial_nodes == 0 {
            return Err(Error::InvalidConfig("quadrature node counts must be positive".into()));
        }
        if let Some(p) = self.p {
            crate::pconcave::check_exponent(p)?;
        }
        Ok(())
    }

    /// Validates a sampling experiment and returns the truncated function
    /// together with the resolved configuration.
    pub(crate) fn resolve_sampling(&self) -> Result<(PConcaveFunction, ExperimentConfig)> {
        self.validate()?;
        self.exponent()?;
        if self.samples < self.n + 1 {
            return Err(Error::InvalidConfig(format!(
                "N = {} must be at least n + 1 = {}",
                self.samples,
                self.n + 1
            )));
        }
        let f = self.function()?;
        let eps = self.epsilon.unwrap_or(0.01 * f.max());
        let fe = truncate(&f, eps).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        let mut resolved = self.clone();
        resolved.epsilon = Some(eps);
        Ok((fe, resolved))
    }
}
