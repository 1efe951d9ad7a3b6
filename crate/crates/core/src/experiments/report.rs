use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::error::{Error, Result};

/// Sample mean and standard error sd/√k.
pub fn summarize(values: &[f64]) -> Result<(f64, f64)> {
    let k = values.len();
    if k < 2 {
        return Err(Error::TooFewValues(k));
    }
    let mean = values.iter().sum::<f64>() / k as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1) as f64;
    Ok((mean, (var / k as f64).sqrt()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// One row of the per-trial CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub role: String,
    /// `None` for excluded trials.
    pub value: Option<f64>,
}

/// Named scalar check with its pass state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, pass: bool) -> Self {
        Check {
            name: name.into(),
            value,
            pass,
        }
    }
}

/// Seed-averaged errors of a convergence study at one sample size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    #[serde(rename = "N")]
    pub samples: usize,
    pub functional_error: f64,
    pub relative_functional_error: f64,
    /// Hausdorff distance of polar projection bodies over the reference scale.
    pub relative_hausdorff: f64,
    pub excluded: usize,
}

/// Outcome of an experiment. The CSV holds the records; the JSON summary
/// holds everything else.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub functional: String,
    pub config: ExperimentConfig,
    pub mean_orig: Option<f64>,
    pub se_orig: Option<f64>,
    pub mean_rearranged: Option<f64>,
    pub se_rearranged: Option<f64>,
    /// Δ / SE_combined, signed so that positive values agree with the
    /// inequality.
    pub margin_se: Option<f64>,
    pub verdict: Verdict,
    pub excluded_counts: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub acceptance_rate: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub series: Vec<SeriesPoint>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub runtime_s: f64,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

/// Means, standard errors, margin and verdict of a two-sample comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Comparison {
    pub mean_orig: f64,
    pub se_orig: f64,
    pub mean_rearranged: f64,
    pub se_rearranged: f64,
    pub margin_se: Option<f64>,
    pub verdict: Verdict,
}

impl Comparison {
    /// `decreasing`: the inequality reads original ≥ rearranged.
    pub fn of(orig: &[f64], rearranged: &[f64], decreasing: bool, sigma: f64) -> Result<Self> {
        let (mo, so) = summarize(orig)?;
        let (mr, sr) = summarize(rearranged)?;
        let delta = if decreasing { mo - mr } else { mr - mo };
        let se = (so * so + sr * sr).sqrt();
        let (margin_se, ok) = if se > 0.0 {
            let m = delta / se;
            (Some(m), m >= -sigma)
        } else {
            (None, delta >= 0.0)
        };
        Ok(Comparison {
            mean_orig: mo,
            se_orig: so,
            mean_rearranged: mr,
            se_rearranged: sr,
            margin_se,
            verdict: Verdict::from_bool(ok),
        })
    }
}

impl ExperimentReport {
    pub(crate) fn new(experiment: &str, functional: String, config: ExperimentConfig) -> Self {
        ExperimentReport {
            experiment: experiment.into(),
            functional,
            config,
            mean_orig: None,
            se_orig: None,
            mean_rearranged: None,
            se_rearranged: None,
            margin_se: None,
            verdict: Verdict::Fail,
            excluded_counts: BTreeMap::new(),
            acceptance_rate: BTreeMap::new(),
            checks: Vec::new(),
            series: Vec::new(),
            notes: Vec::new(),
            runtime_s: 0.0,
            records: Vec::new(),
        }
    }

    pub(crate) fn apply(&mut self, c: Comparison) {
        self.mean_orig = Some(c.mean_orig);
        self.se_orig = Some(c.se_orig);
        self.mean_rearranged = Some(c.mean_rearranged);
        self.se_rearranged = Some(c.se_rearranged);
        self.margin_se = c.margin_se;
        self.verdict = c.verdict;
    }

    /// Included values of one role, in trial order.
    pub fn values(&self, role: &str) -> Vec<f64> {
        self.records
            .iter()
            .filter(|r| r.role == role)
            .filter_map(|r| r.value)
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,role,value,excluded\n");
        for r in &self.records {
            match r.value {
                Some(v) => writeln!(out, "{},{},{v:e},0", r.trial, r.role),
                None => writeln!(out, "{},{},,1", r.trial, r.role),
            }
            .expect("writing to a string");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Summary JSON with the wall time zeroed, for byte comparisons.
    pub fn to_json_without_runtime(&self) -> String {
        let mut r = self.clone();
        r.runtime_s = 0.0;
        r.to_json()
    }

    /// Writes `trials.csv` and `summary.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("trials.csv"), self.to_csv())?;
        std::fs::write(dir.join("summary.json"), self.to_json() + "\n")?;
        Ok(())
    }
}
