//! Functional quermassintegrals, perimeter and polar projection bodies,
//! with measures of star bodies under rotation-invariant convex measures.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, unit_ball_volume, DirectionGrid, Polytope, Vector};
use crate::pconcave::{layer_cake, PConcaveFunction, Quadrature, SuperlevelSet};
use crate::quadrature;

/// W_i(f) = ∫₀^∞ W_i({f ≥ t}) dt, 0 ≤ i ≤ n−1.
pub fn quermass_fn(f: &PConcaveFunction, i: usize) -> Result<f64> {
    quermass_fn_with(f, i, &Quadrature::default())
}

pub fn quermass_fn_with(f: &PConcaveFunction, i: usize, q: &Quadrature) -> Result<f64> {
    let n = f.dim();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, dim: n });
    }
    layer_cake(f, q, |s| Ok(s.quermassintegral(i)?))
}

/// Per(f) = n·W₁(f).
pub fn perimeter_fn(f: &PConcaveFunction) -> Result<f64> {
    perimeter_fn_with(f, &Quadrature::default())
}

pub fn perimeter_fn_with(f: &PConcaveFunction, q: &Quadrature) -> Result<f64> {
    Ok(f.dim() as f64 * quermass_fn_with(f, 1, q)?)
}

/// ‖u‖_{Π°f} = ∫₀^∞ |P_{u^⊥}{f ≥ t}| dt, extended 1-homogeneously to
/// non-unit u.
pub fn ppb_norm(f: &PConcaveFunction, u: &Vector) -> Result<f64> {
    ppb_norm_with(f, u, &Quadrature::default())
}

pub fn ppb_norm_with(f: &PConcaveFunction, u: &Vector, q: &Quadrature) -> Result<f64> {
    if u.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: u.dim(),
        });
    }
    let len = u.norm();
    if len == 0.0 {
        return Ok(0.0);
    }
    Ok(len * ProjectionSum::of(f, q)?.eval(&(*u * (1.0 / len))))
}

/// Σ_levels w·|P_{u^⊥} L| written as iso + Σ a_j |⟨n_j, u⟩|.
#[derive(Clone, Debug, Default)]
struct ProjectionSum {
    iso: f64,
    terms: Vec<(Vector, f64)>,
}

impl ProjectionSum {
    fn of(f: &PConcaveFunction, q: &Quadrature) -> Result<Self> {
        let mut acc = ProjectionSum::default();
        let n = f.dim();
        for (t, w) in f.level_rule(q) {
            match f.superlevel(t)? {
                SuperlevelSet::Ball { radius, .. } => {
                    acc.iso += w * unit_ball_volume(n - 1) * radius.powi(n as i32 - 1);
                }
                SuperlevelSet::Polytope(p) if p.is_empty() => {}
                SuperlevelSet::Polytope(_) if n == 1 => acc.iso += w,
                SuperlevelSet::Polytope(p) => {
                    for facet in p.facets() {
                        acc.terms.push((facet.normal, 0.5 * w * facet.measure));
                    }
                }
            }
        }
        Ok(acc)
    }

    fn eval(&self, u: &Vector) -> f64 {
        self.iso + self.terms.iter().map(|(nv, a)| a * nv.dot(u).abs()).sum::<f64>()
    }

    /// Values on the circle grid by sweeping the sign changes of
    /// cos(θ − φ_j): O((m + k) log k) instead of O(m·k).
    fn eval_circle(&self, grid: &DirectionGrid) -> Vec<f64> {
        let m = grid.len();
        let half = m / 2;
        let mut terms: Vec<(f64, f64)> = self
            .terms
            .iter()
            .map(|(nv, a)| (nv[1].atan2(nv[0]).rem_euclid(PI), *a))
            .collect();
        terms.sort_by(|x, y| x.0.total_cmp(&y.0));
        let (mut ca, mut sb) = (0.0, 0.0);
        let mut events: Vec<(f64, usize)> = Vec::with_capacity(terms.len());
        let mut sign = vec![0.0; terms.len()];
        for (j, &(phi, a)) in terms.iter().enumerate() {
            let s = if phi < 0.5 * PI { 1.0 } else { -1.0 };
            sign[j] = s;
            ca += s * a * phi.cos();
            sb += s * a * phi.sin();
            events.push((if s > 0.0 { phi + 0.5 * PI } else { phi - 0.5 * PI }, j));
        }
        events.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut out = vec![0.0; m];
        let mut next = 0;
        for (k, u) in grid.directions()[..half].iter().enumerate() {
            let theta = 2.0 * PI * k as f64 / m as f64;
            while next < events.len() && events[next].0 <= theta {
                let j = events[next].1;
                let (phi, a) = terms[j];
                ca -= 2.0 * sign[j] * a * phi.cos();
                sb -= 2.0 * sign[j] * a * phi.sin();
                sign[j] = -sign[j];
                next += 1;
            }
            out[k] = self.iso + (ca * u[0] + sb * u[1]).abs();
        }
        for k in 0..half {
            out[k + half] = out[k];
        }
        out
    }

    fn eval_grid(&self, grid: &DirectionGrid) -> Vec<f64> {
        if grid.dim() == 2 {
            return self.eval_circle(grid);
        }
        let m = grid.len();
        let mut out = vec![0.0; m];
        for i in 0..m {
            let j = grid.antipode(i);
            if j < i {
                out[i] = out[j];
            } else {
                out[i] = self.eval(&grid.directions()[i]);
            }
        }
        out
    }
}

/// Star body given by its radial function on the fixed direction grid.
#[derive(Clone, Debug)]
pub struct StarBody {
    dim: usize,
    norms: Vec<f64>,
    radial: Vec<f64>,
}

impl StarBody {
    /// From gauge values ‖u‖ on the grid of dimension `dim`.
    pub fn from_norms(dim: usize, norms: Vec<f64>) -> Result<Self> {
        let grid = DirectionGrid::for_dim(dim);
        if norms.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                found: norms.len(),
            });
        }
        if norms.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::DegenerateSupport);
        }
        let radial = norms.iter().map(|v| 1.0 / v).collect();
        Ok(StarBody { dim, norms, radial })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn directions(&self) -> &'static [Vector] {
        DirectionGrid::for_dim(self.dim).directions()
    }

    /// R(u) = 1/‖u‖ per grid direction.
    pub fn radial(&self) -> &[f64] {
        &self.radial
    }

    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    pub fn is_symmetric(&self) -> bool {
        let grid = DirectionGrid::for_dim(self.dim);
        (0..self.radial.len()).all(|i| self.radial[i] == self.radial[grid.antipode(i)])
    }

    pub fn max_radius(&self) -> f64 {
        self.radial.iter().copied().fold(0.0, f64::max)
    }

    /// Minkowski functional ‖x‖: linear interpolation in angle on the
    /// circle, nearest grid direction on the sphere.
    pub fn gauge(&self, x: &Vector) -> f64 {
        let r = x.norm();
        if r == 0.0 {
            return 0.0;
        }
        match self.dim {
            1 => r * self.norms[if x[0] >= 0.0 { 0 } else { 1 }],
            2 => {
                let m = self.norms.len();
                let pos = x[1].atan2(x[0]).rem_euclid(2.0 * PI) / (2.0 * PI) * m as f64;
                let k = (pos.floor() as usize) % m;
                let lam = pos - pos.floor();
                r * ((1.0 - lam) * self.norms[k] + lam * self.norms[(k + 1) % m])
            }
            _ => {
                let u = *x * (1.0 / r);
                let best = self
                    .directions()
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.dot(&u).total_cmp(&b.1.dot(&u)))
                    .map(|(i, _)| i)
                    .unwrap_or(0);
                r * self.norms[best]
            }
        }
    }

    /// Hull of the boundary points R(u)·u.
    pub fn to_polytope(&self) -> Result<Polytope> {
        let pts: Vec<Vector> = self
            .directions()
            .iter()
            .zip(&self.radial)
            .map(|(u, r)| *u * *r)
            .collect();
        Ok(convex_hull(&pts, self.dim)?)
    }

    /// `theta,R` in 2D, `ux,uy,uz,R` in 3D, full precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self.dim {
            2 => {
                out.push_str("theta,R\n");
                let m = self.radial.len();
                for (k, r) in self.radial.iter().enumerate() {
                    let theta = 2.0 * PI * k as f64 / m as f64;
                    let _ = writeln!(out, "{theta:.16e},{r:.16e}");
                }
            }
            _ => {
                let names = ["ux", "uy", "uz"];
                let _ = writeln!(out, "{},R", names[..self.dim].join(","));
                for (u, r) in self.directions().iter().zip(&self.radial) {
                    let coords: Vec<String> = u.as_slice().iter().map(|c| format!("{c:.16e}")).collect();
                    let _ = writeln!(out, "{},{r:.16e}", coords.join(","));
                }
            }
        }
        out
    }
}

/// Π°f on the direction grid.
pub fn ppb_body(f: &PConcaveFunction) -> Result<StarBody> {
    ppb_body_with(f, &Quadrature::default())
}

pub fn ppb_body_with(f: &PConcaveFunction, q: &Quadrature) -> Result<StarBody> {
    let grid = DirectionGrid::for_dim(f.dim());
    let norms = ProjectionSum::of(f, q)?.eval_grid(grid);
    let scale = norms.iter().copied().fold(0.0, f64::max);
    if norms.iter().any(|&v| v <= 1e-14 * scale) {
        return Err(Error::DegenerateSupport);
    }
    StarBody::from_norms(f.dim(), norms)
}

/// Rotation-invariant convex measure on ℝⁿ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ConvexMeasure {
    Lebesgue,
    /// density (1 + |x|²)^{−β}
    Beta(f64),
}

impl ConvexMeasure {
    /// Checks β ≥ n/2, which makes the density (−1/n)-concave.
    pub fn validate(&self, n: usize) -> Result<()> {
        if let ConvexMeasure::Beta(beta) = self {
            if !(beta.is_finite() && *beta >= n as f64 / 2.0) {
                return Err(Error::InvalidParameter(format!(
                    "beta = {beta} must be at least n/2 = {}",
                    n as f64 / 2.0
                )));
            }
        }
        Ok(())
    }

    pub fn density(&self, x: &Vector) -> f64 {
        match self {
            ConvexMeasure::Lebesgue => 1.0,
            ConvexMeasure::Beta(beta) => (1.0 + x.norm_sq()).powf(-beta),
        }
    }

    pub fn name(&self) -> String {
        match self {
            ConvexMeasure::Lebesgue => "lebesgue".into(),
            ConvexMeasure::Beta(b) => format!("beta={b}"),
        }
    }

    /// ∫₀^R ψ(r) r^{n−1} dr.
    fn radial_integral(&self, n: usize, r: f64, q: &Quadrature) -> f64 {
        match *self {
            ConvexMeasure::Lebesgue => r.powi(n as i32) / n as f64,
            ConvexMeasure::Beta(beta) if n == 2 => {
                if (beta - 1.0).abs() < 1e-12 {
                    0.5 * (1.0 + r * r).ln()
                } else {
                    (1.0 - (1.0 + r * r).powf(1.0 - beta)) / (2.0 * (beta - 1.0))
                }
            }
            ConvexMeasure::Beta(beta) => quadrature::integrate(q.radial_nodes, 0.0, r, |s| {
                (1.0 + s * s).powf(-beta) * s.powi(n as i32 - 1)
            }),
        }
    }
}

/// ν(body) = Σ_u w · ∫₀^{R(u)} ψ(r) r^{n−1} dr.
pub fn measure_of(body: &StarBody, nu: &ConvexMeasure) -> Result<f64> {
    measure_of_with(body, nu, &Quadrature::default())
}

pub fn measure_of_with(body: &StarBody, nu: &ConvexMeasure, q: &Quadrature) -> Result<f64> {
    let n = body.dim();
    nu.validate(n)?;
    let w = DirectionGrid::for_dim(n).weight();
    Ok(w * body.radial().iter().map(|&r| nu.radial_integral(n, r, q)).sum::<f64>())
}
