//! Random p-concave models Φ^N built from convex hulls of lifted hypograph
//! samples.
//!
//! A sample point (x, z) is lifted to (x, ρ(z)) with ρ(z) = z^p for p ≠ 0
//! and ρ(z) = −ln z for p = 0. For p ≤ 0 the model is read off the lower
//! boundary of the lifted hull (an epigraph, Φ = ρ⁻¹(min w)); for p > 0 the
//! base points (x, 0) are added and the upper boundary is used (a
//! hypograph, Φ = ρ⁻¹(max w)). For p = +∞ the model is the indicator of
//! the hull of the x's.

mod rng;
mod sample;

pub use rng::{stream_id, Role, RngStream};
pub use sample::{sample_hypograph, HypographSample};

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, slice_project, Polytope, SliceMode, Vector};
use crate::pconcave::check_exponent;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Epi,
    Hypo,
}

#[derive(Clone, Debug)]
pub struct StochasticModel {
    p: f64,
    dim: usize,
    lifted: Polytope,
    support: Polytope,
    c_vertices: Option<Vec<Vec<f64>>>,
    max: f64,
    breakpoints: Vec<f64>,
}

/// ρ(z) for the lifting exponent p (finite).
fn lift_height(z: f64, p: f64) -> f64 {
    if p == 0.0 {
        -z.ln()
    } else {
        z.powf(p)
    }
}

/// Inverse of the lifting: the function value at lifted height w.
fn level_of(w: f64, p: f64) -> f64 {
    if p == 0.0 {
        (-w).exp()
    } else if p > 0.0 {
        w.max(0.0).powf(1.0 / p)
    } else {
        w.powf(1.0 / p)
    }
}

/// Builds Φ^N from a sample. `c_vertices` lists the vertices of the
/// combination body C ⊂ [0, ∞)^N; `None` means the standard simplex.
pub fn build_model(s: &HypographSample, p: f64, c_vertices: Option<&[Vec<f64>]>) -> Result<StochasticModel> {
    check_exponent(p)?;
    let big_n = s.len();
    let n = s.dim();
    if big_n == 0 || big_n < n + 1 {
        return Err(Error::TooFewPoints {
            needed: n + 1,
            found: big_n,
        });
    }
    if !(1..=3).contains(&n) {
        return Err(Error::InvalidParameter(format!("model dimension {n} outside 1..=3")));
    }
    for (x, z) in &s.points {
        if x.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x.dim(),
            });
        }
        if !(z.is_finite() && x.is_finite()) || *z < 0.0 {
            return Err(Error::InvalidParameter(format!("sample height {z} is not a valid level")));
        }
        if *z == 0.0 && p <= 0.0 {
            return Err(Error::ZeroHeightSample);
        }
    }
    if let Some(cs) = c_vertices {
        if cs.is_empty() {
            return Err(Error::InvalidParameter("combination body has no vertices".into()));
        }
        for c in cs {
            if c.len() != big_n {
                return Err(Error::DimensionMismatch {
                    expected: big_n,
                    found: c.len(),
                });
            }
            if c.iter().any(|&ci| !(ci >= 0.0 && ci.is_finite())) {
                return Err(Error::InvalidParameter("combination body must lie in the nonnegative orthant".into()));
            }
        }
    }

    let combos: Vec<(Vector, f64)> = match c_vertices {
        None => s
            .points
            .iter()
            .map(|(x, z)| (*x, if p.is_infinite() { 0.0 } else { lift_height(*z, p) }))
            .collect(),
        Some(cs) => cs
            .iter()
            .map(|c| {
                let mut x = Vector::zeros(n);
                let mut w = 0.0;
                for ((xi, zi), &ci) in s.points.iter().zip(c) {
                    x = x + *xi * ci;
                    if !p.is_infinite() {
                        w += ci * lift_height(*zi, p);
                    }
                }
                (x, w)
            })
            .collect(),
    };

    if p == f64::INFINITY {
        let xs: Vec<Vector> = combos.iter().map(|(x, _)| *x).collect();
        let hull = convex_hull(&xs, n)?;
        return Ok(StochasticModel {
            p,
            dim: n,
            support: hull.clone(),
            lifted: hull,
            c_vertices: c_vertices.map(<[_]>::to_vec),
            max: 1.0,
            breakpoints: vec![1.0],
        });
    }

    let mut lifted_pts: Vec<Vector> = combos.iter().map(|(x, w)| x.lift(*w)).collect();
    if p > 0.0 {
        lifted_pts.extend(combos.iter().map(|(x, _)| x.lift(0.0)));
    }
    let lifted = convex_hull(&lifted_pts, n + 1)?;
    let xs: Vec<Vector> = lifted.vertices().iter().map(|v| v.drop_last()).collect();
    let support = convex_hull(&xs, n)?;
    let heights = lifted.vertices().iter().map(|v| v.last());
    let (wmin, wmax) = heights.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), w| (a.min(w), b.max(w)));
    let max = if p > 0.0 { level_of(wmax, p) } else { level_of(wmin, p) };
    let mut breakpoints: Vec<f64> = lifted
        .vertices()
        .iter()
        .map(|v| level_of(v.last(), p))
        .filter(|&t| t > 0.0 && t <= max)
        .collect();
    breakpoints.push(max);
    breakpoints.sort_by(f64::total_cmp);
    breakpoints.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * max);
    Ok(StochasticModel {
        p,
        dim: n,
        lifted,
        support,
        c_vertices: c_vertices.map(<[_]>::to_vec),
        max,
        breakpoints,
    })
}

impl StochasticModel {
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn orientation(&self) -> Orientation {
        if self.p <= 0.0 {
            Orientation::Epi
        } else {
            Orientation::Hypo
        }
    }

    /// Hull of the lifted points in ℝ^{n+1} (in ℝⁿ for p = +∞).
    pub fn lifted_hull(&self) -> &Polytope {
        &self.lifted
    }

    /// Closure of {Φ > 0}.
    pub fn support(&self) -> &Polytope {
        &self.support
    }

    pub fn c_vertices(&self) -> Option<&[Vec<f64>]> {
        self.c_vertices.as_deref()
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    /// Ascending levels where the slice combinatorics can change, ending
    /// at the maximum.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Φ(x): the extreme lifted height over the fiber above x, mapped back.
    pub fn eval(&self, x: &Vector) -> Result<f64> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        if self.p == f64::INFINITY {
            return Ok(if self.lifted.contains(x) { 1.0 } else { 0.0 });
        }
        let n = self.dim;
        let tol = self.lifted.tolerance();
        let (ineq, eq) = self.lifted.constraints();
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        let mut bound = |a: &Vector, b: f64| -> bool {
            let ax: f64 = (0..n).map(|k| a[k] * x[k]).sum();
            let aw = a[n];
            if aw.abs() <= 1e-12 {
                return ax <= b + tol;
            }
            let w = (b - ax) / aw;
            if aw > 0.0 {
                hi = hi.min(w);
            } else {
                lo = lo.max(w);
            }
            true
        };
        for h in &ineq {
            if !bound(&h.normal, h.offset) {
                return Ok(0.0);
            }
        }
        for h in &eq {
            if !bound(&h.normal, h.offset) || !bound(&-h.normal, -h.offset) {
                return Ok(0.0);
            }
        }
        if !(lo <= hi + tol) || !lo.is_finite() || !hi.is_finite() {
            return Ok(0.0);
        }
        let w = match self.orientation() {
            Orientation::Epi => lo,
            Orientation::Hypo => hi,
        };
        Ok(level_of(w, self.p).min(self.max))
    }

    /// {Φ ≥ t}.
    pub fn superlevel(&self, t: f64) -> Result<Polytope> {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::LevelOutOfRange(t));
        }
        if t > self.max {
            return Ok(Polytope::empty(self.dim));
        }
        if self.p == f64::INFINITY {
            return Ok(self.lifted.clone());
        }
        Ok(match self.orientation() {
            Orientation::Epi => slice_project(&self.lifted, lift_height(t, self.p), SliceMode::AtMost),
            Orientation::Hypo => slice_project(&self.lifted, lift_height(t, self.p), SliceMode::AtLeast),
        })
    }
}
