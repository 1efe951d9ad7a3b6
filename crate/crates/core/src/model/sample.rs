use std::fmt::Write as _;

use rand::Rng;

use super::RngStream;
use crate::error::{Error, Result};
use crate::geometry::Vector;
use crate::pconcave::PConcaveFunction;

/// Draws below which the acceptance rate is not judged.
const WARMUP: u64 = 10_000;
const MIN_ACCEPTANCE: f64 = 1e-3;

/// Points `(x, z)` with `0 < z ≤ f(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypographSample {
    pub points: Vec<(Vector, f64)>,
    pub attempts: u64,
    pub source: String,
}

impl HypographSample {
    pub fn new(points: Vec<(Vector, f64)>, source: &str) -> Self {
        let attempts = points.len() as u64;
        HypographSample {
            points,
            attempts,
            source: source.to_string(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, |(x, _)| x.dim())
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.attempts == 0 {
            return 0.0;
        }
        self.points.len() as f64 / self.attempts as f64
    }

    /// The first `n` points; the attempt count is scaled proportionally.
    pub fn prefix(&self, n: usize) -> HypographSample {
        let n = n.min(self.points.len());
        let attempts = if self.points.is_empty() {
            0
        } else {
            (self.attempts as f64 * n as f64 / self.points.len() as f64).round() as u64
        };
        HypographSample {
            points: self.points[..n].to_vec(),
            attempts,
            source: self.source.clone(),
        }
    }

    /// CSV with header `x1,…,xn,z`, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let n = self.dim();
        let mut out = String::new();
        let header: Vec<String> = (1..=n).map(|k| format!("x{k}")).chain(["z".to_string()]).collect();
        let _ = writeln!(out, "{}", header.join(","));
        for (x, z) in &self.points {
            let row: Vec<String> = x
                .as_slice()
                .iter()
                .chain(std::iter::once(z))
                .map(|c| format!("{c:.16e}"))
                .collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }
}

/// `count` iid uniform points of hyp(f) by rejection from
/// bounding box × (0, max f].
pub fn sample_hypograph(f: &PConcaveFunction, count: usize, rng: &mut RngStream) -> Result<HypographSample> {
    let n = f.dim();
    if count < n + 1 {
        return Err(Error::TooFewPoints {
            needed: n + 1,
            found: count,
        });
    }
    let (lo, hi) = f.bounding_box()?;
    let max = f.max();
    let mut points = Vec::with_capacity(count);
    let mut attempts: u64 = 0;
    while points.len() < count {
        attempts += 1;
        let mut x = Vector::zeros(n);
        for k in 0..n {
            x[k] = lo[k] + (hi[k] - lo[k]) * rng.gen::<f64>();
        }
        let z = max * (1.0 - rng.gen::<f64>());
        if f.eval(&x)? >= z {
            points.push((x, z));
        }
        if attempts >= WARMUP && (points.len() as f64) < MIN_ACCEPTANCE * attempts as f64 {
            return Err(Error::LowAcceptance {
                rate: points.len() as f64 / attempts as f64,
            });
        }
    }
    Ok(HypographSample {
        points,
        attempts,
        source: f.kind_name().to_string(),
    })
}
