//! Seeded Monte Carlo drivers comparing stochastic models of a function and
//! of its rearrangement, plus deterministic and convergence checks.
//!
//! Every trial draws from its own [`RngStream`](crate::model::RngStream)
//! keyed by `(seed, trial, role)`, so results do not depend on scheduling.
//! The worker count comes from `ISOLAB_THREADS` (unset or `0` means one
//! worker per core).

mod config;
mod report;
mod runners;

pub use config::{ExperimentConfig, Functional};
pub use report::{summarize, Check, ExperimentReport, SeriesPoint, TrialRecord, Verdict};
pub use runners::{
    run_convergence, run_deterministic_check, run_quermass_experiment, run_shadow_convexity,
    run_zhang_experiment, DETERMINISTIC_TOLERANCE, SHADOW_TOLERANCE, SIGMA_MARGIN,
};

use crate::error::{Error, Result};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "ISOLAB_THREADS";

pub(crate) fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(s) if !s.trim().is_empty() => s
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidConfig(format!("{THREADS_ENV}={s:?} is not a count")))?,
        _ => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Io(e.to_string()))
}
