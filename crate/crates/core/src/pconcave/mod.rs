//! Integrable p-concave functions with exact superlevel sets.
//!
//! Every function is described by a kind whose superlevel sets `{f ≥ t}`
//! are available exactly, either as polytopes or as Euclidean balls about
//! the origin. Functionals are computed through the layer-cake formula with
//! the level rules of [`Quadrature`].

mod level;
mod ops;
mod spec;

pub use level::SuperlevelSet;
pub use ops::{
    integral, integral_with, layer_cake, rearrange, rearrange_with, steiner_symmetral_fn, truncate,
    Symmetrized,
};
pub use spec::{exponent, FunctionSpec};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{steiner_symmetral, unit_ball_volume, Polytope, Vector};
use crate::model::StochasticModel;
use crate::quadrature;

/// Radius factor beyond which a unit-scale Gaussian is below 1e-12.
pub const GAUSSIAN_CUTOFF: f64 = 5.256_521_769_756_932;

/// Quadrature settings for level integrals.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Quadrature {
    /// Gauss–Legendre nodes on smooth level ranges.
    pub level_nodes: usize,
    /// Gauss–Legendre nodes per panel between model breakpoints.
    pub panel_nodes: usize,
    /// Nodes for radial integrals of measure densities.
    pub radial_nodes: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature {
            level_nodes: 128,
            panel_nodes: 8,
            radial_nodes: 64,
        }
    }
}

/// Level-radius map of a radially decreasing function about the origin.
#[derive(Clone, Debug, PartialEq)]
pub enum RadialProfile {
    /// exp(−|x|²/s²)
    Gaussian { scale: f64 },
    /// height · χ_{|x| ≤ radius}
    Ball { radius: f64, height: f64 },
    /// height · (1 − |x|/radius)₊
    Cone { radius: f64, height: f64 },
    /// Piecewise-linear r(t) through `(levels[k], radii[k])`, constant below
    /// the first level; `levels` ascending with the last equal to the max.
    Table { levels: Vec<f64>, radii: Vec<f64> },
}

impl RadialProfile {
    pub fn max(&self) -> f64 {
        match self {
            RadialProfile::Gaussian { .. } => 1.0,
            RadialProfile::Ball { height, .. } | RadialProfile::Cone { height, .. } => *height,
            RadialProfile::Table { levels, .. } => *levels.last().expect("nonempty table"),
        }
    }

    /// r(t) for 0 < t ≤ max.
    pub fn radius(&self, t: f64) -> f64 {
        match self {
            RadialProfile::Gaussian { scale } => scale * (-t.ln()).max(0.0).sqrt(),
            RadialProfile::Ball { radius, .. } => *radius,
            RadialProfile::Cone { radius, height } => radius * (1.0 - t / height),
            RadialProfile::Table { levels, radii } => {
                if t <= levels[0] {
                    return radii[0];
                }
                let k = levels.partition_point(|&s| s < t);
                if k >= levels.len() {
                    return radii[radii.len() - 1];
                }
                let (t0, t1) = (levels[k - 1], levels[k]);
                let lam = (t - t0) / (t1 - t0);
                radii[k - 1] + lam * (radii[k] - radii[k - 1])
            }
        }
    }

    /// Radius of the support {f > 0}.
    pub fn support_radius(&self) -> f64 {
        match self {
            RadialProfile::Gaussian { scale } => scale * GAUSSIAN_CUTOFF,
            RadialProfile::Ball { radius, .. } | RadialProfile::Cone { radius, .. } => *radius,
            RadialProfile::Table { radii, .. } => radii[0],
        }
    }

    /// Value at distance `rho` from the origin.
    pub fn value(&self, rho: f64) -> f64 {
        match self {
            RadialProfile::Gaussian { scale } => {
                if rho > scale * GAUSSIAN_CUTOFF {
                    0.0
                } else {
                    (-(rho / scale).powi(2)).exp()
                }
            }
            RadialProfile::Ball { radius, height } => {
                if rho <= radius * (1.0 + 1e-12) {
                    *height
                } else {
                    0.0
                }
            }
            RadialProfile::Cone { radius, height } => height * (1.0 - rho / radius).max(0.0),
            RadialProfile::Table { levels, radii } => {
                if rho > radii[0] {
                    return 0.0;
                }
                for k in 1..levels.len() {
                    if rho > radii[k] {
                        let (r0, r1) = (radii[k - 1], radii[k]);
                        let lam = (r0 - rho) / (r0 - r1);
                        return levels[k - 1] + lam * (levels[k] - levels[k - 1]);
                    }
                }
                levels[levels.len() - 1]
            }
        }
    }
}

/// A tent: `height · (1 − gauge_{K−a}(x − a))` on K.
#[derive(Clone, Debug)]
pub struct Tent {
    body: Polytope,
    apex: Vector,
    height: f64,
    // (normal, offset − ⟨normal, apex⟩) per facet
    gauge: Vec<(Vector, f64)>,
}

impl Tent {
    pub fn body(&self) -> &Polytope {
        &self.body
    }

    pub fn apex(&self) -> &Vector {
        &self.apex
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    fn value(&self, x: &Vector) -> f64 {
        if !self.body.contains(x) {
            return 0.0;
        }
        let d = *x - self.apex;
        let g = self
            .gauge
            .iter()
            .map(|(n, s)| n.dot(&d) / s)
            .fold(0.0, f64::max);
        self.height * (1.0 - g).max(0.0)
    }

    fn level(&self, t: f64) -> Polytope {
        let lam = 1.0 - t / self.height;
        let pts: Vec<Vector> = self
            .body
            .vertices()
            .iter()
            .map(|v| self.apex + (*v - self.apex) * lam)
            .collect();
        crate::geometry::convex_hull(&pts, self.body.dim()).expect("scaled vertices are finite")
    }
}

#[derive(Clone, Debug)]
pub enum Kind {
    Radial(RadialProfile),
    Indicator(Polytope),
    Tent(Tent),
    Model(Arc<StochasticModel>),
    Rearranged(RadialProfile),
    Truncated { inner: Box<PConcaveFunction>, eps: f64 },
    SteinerSymmetrized { inner: Box<PConcaveFunction>, direction: Vector },
}

/// Nonnegative p-concave function on ℝⁿ, n ∈ {1, 2, 3}.
#[derive(Clone, Debug)]
pub struct PConcaveFunction {
    p: f64,
    dim: usize,
    kind: Kind,
}

pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p == f64::NEG_INFINITY {
        return Err(Error::InvalidParameter(format!("p = {p} is not supported")));
    }
    Ok(())
}

fn check_dim(n: usize) -> Result<()> {
    if !(1..=3).contains(&n) {
        return Err(Error::InvalidParameter(format!("function dimension {n} outside 1..=3")));
    }
    Ok(())
}

impl PConcaveFunction {
    /// exp(−|x|²/scale²), log-concave, hence p-concave for every p ≤ 0.
    pub fn gaussian(dim: usize, scale: f64, p: f64) -> Result<Self> {
        check_dim(dim)?;
        check_exponent(p)?;
        if p > 0.0 {
            return Err(Error::InvalidParameter("a gaussian is p-concave only for p <= 0".into()));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidParameter(format!("scale {scale} must be positive")));
        }
        Ok(Self::radial(dim, RadialProfile::Gaussian { scale }, p))
    }

    pub fn radial(dim: usize, profile: RadialProfile, p: f64) -> Self {
        PConcaveFunction {
            p,
            dim,
            kind: Kind::Radial(profile),
        }
    }

    /// χ_K, p-concave for every p.
    pub fn indicator(body: Polytope, p: f64) -> Result<Self> {
        check_dim(body.dim())?;
        check_exponent(p)?;
        if body.is_empty() {
            return Err(Error::InvalidParameter("indicator of an empty set".into()));
        }
        Ok(PConcaveFunction {
            p,
            dim: body.dim(),
            kind: Kind::Indicator(body),
        })
    }

    /// Cone function over K with the given apex (interior to K) and height;
    /// concave, hence p-concave for p ≤ 1.
    pub fn tent(body: Polytope, apex: Vector, height: f64, p: f64) -> Result<Self> {
        let n = body.dim();
        check_dim(n)?;
        check_exponent(p)?;
        if p > 1.0 {
            return Err(Error::InvalidParameter("a tent is p-concave only for p <= 1".into()));
        }
        if apex.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: apex.dim(),
            });
        }
        if !body.is_full_dimensional() {
            return Err(Error::InvalidParameter("tent body must be full-dimensional".into()));
        }
        if !(height > 0.0 && height.is_finite()) {
            return Err(Error::InvalidParameter(format!("apex height {height} must be positive")));
        }
        let tol = body.tolerance();
        let mut gauge = Vec::with_capacity(body.facets().len());
        for f in body.facets() {
            let slack = f.offset - f.normal.dot(&apex);
            if slack <= tol {
                return Err(Error::InvalidParameter("apex must lie in the interior of the body".into()));
            }
            gauge.push((f.normal, slack));
        }
        Ok(PConcaveFunction {
            p,
            dim: n,
            kind: Kind::Tent(Tent {
                body,
                apex,
                height,
                gauge,
            }),
        })
    }

    /// Function backed by a stochastic model.
    pub fn from_model(model: StochasticModel) -> Self {
        PConcaveFunction {
            p: model.p(),
            dim: model.dim(),
            kind: Kind::Model(Arc::new(model)),
        }
    }

    pub(crate) fn with_kind(&self, kind: Kind) -> Self {
        PConcaveFunction {
            p: self.p,
            dim: self.dim,
            kind,
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            Kind::Radial(_) => "radial_profile",
            Kind::Indicator(_) => "indicator",
            Kind::Tent(_) => "tent",
            Kind::Model(_) => "model_backed",
            Kind::Rearranged(_) => "rearranged",
            Kind::Truncated { .. } => "truncated",
            Kind::SteinerSymmetrized { .. } => "steiner_symmetrized",
        }
    }

    /// True when every superlevel set is a ball about the origin.
    pub fn is_radial(&self) -> bool {
        match &self.kind {
            Kind::Radial(_) | Kind::Rearranged(_) => true,
            Kind::Truncated { inner, .. } => inner.is_radial(),
            _ => false,
        }
    }

    pub fn max(&self) -> f64 {
        match &self.kind {
            Kind::Radial(r) | Kind::Rearranged(r) => r.max(),
            Kind::Indicator(_) => 1.0,
            Kind::Tent(t) => t.height,
            Kind::Model(m) => m.max(),
            Kind::Truncated { inner, .. } | Kind::SteinerSymmetrized { inner, .. } => inner.max(),
        }
    }

    pub fn eval(&self, x: &Vector) -> Result<f64> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(match &self.kind {
            Kind::Radial(r) | Kind::Rearranged(r) => r.value(x.norm()),
            Kind::Indicator(k) => {
                if k.contains(x) {
                    1.0
                } else {
                    0.0
                }
            }
            Kind::Tent(t) => t.value(x),
            Kind::Model(m) => m.eval(x)?,
            Kind::Truncated { inner, eps } => {
                let v = inner.eval(x)?;
                if v >= *eps {
                    v
                } else {
                    0.0
                }
            }
            Kind::SteinerSymmetrized { .. } => self.eval_by_levels(x)?,
        })
    }

    /// sup{t : x ∈ {f ≥ t}} by bisection on nested superlevel sets.
    fn eval_by_levels(&self, x: &Vector) -> Result<f64> {
        let max = self.max();
        if !self.support_set()?.contains(x) {
            return Ok(0.0);
        }
        if self.superlevel(max)?.contains(x) {
            return Ok(max);
        }
        let (mut lo, mut hi) = (0.0, max);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if mid <= 0.0 || mid == lo || mid == hi {
                break;
            }
            if self.superlevel(mid)?.contains(x) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }

    /// {f ≥ t}; empty for t above the maximum.
    pub fn superlevel(&self, t: f64) -> Result<SuperlevelSet> {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::NonPositiveLevel(t));
        }
        let n = self.dim;
        if t > self.max() {
            return Ok(SuperlevelSet::empty(n));
        }
        Ok(match &self.kind {
            Kind::Radial(r) | Kind::Rearranged(r) => SuperlevelSet::Ball {
                center: Vector::zeros(n),
                radius: r.radius(t),
            },
            Kind::Indicator(k) => SuperlevelSet::Polytope(k.clone()),
            Kind::Tent(tent) => SuperlevelSet::Polytope(tent.level(t)),
            Kind::Model(m) => SuperlevelSet::Polytope(m.superlevel(t)?),
            Kind::Truncated { inner, eps } => inner.superlevel(t.max(*eps))?,
            Kind::SteinerSymmetrized { inner, direction } => {
                symmetrize_set(inner.superlevel(t)?, direction)?
            }
        })
    }

    /// Closure of {f > 0}.
    pub fn support_set(&self) -> Result<SuperlevelSet> {
        let n = self.dim;
        Ok(match &self.kind {
            Kind::Radial(r) | Kind::Rearranged(r) => SuperlevelSet::Ball {
                center: Vector::zeros(n),
                radius: r.support_radius(),
            },
            Kind::Indicator(k) => SuperlevelSet::Polytope(k.clone()),
            Kind::Tent(t) => SuperlevelSet::Polytope(t.body.clone()),
            Kind::Model(m) => SuperlevelSet::Polytope(m.support().clone()),
            Kind::Truncated { inner, eps } => inner.superlevel(*eps)?,
            Kind::SteinerSymmetrized { inner, direction } => {
                symmetrize_set(inner.support_set()?, direction)?
            }
        })
    }

    /// Box containing the support.
    pub fn bounding_box(&self) -> Result<(Vector, Vector)> {
        self.support_set()?
            .bounding_box()
            .ok_or(Error::InvalidParameter("function has empty support".into()))
    }

    /// Nodes `(t, w)` of the layer-cake rule: ∫₀^{max f} g(t) dt ≈ Σ w g(t).
    pub fn level_rule(&self, q: &Quadrature) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        self.rule_on(0.0, self.max(), q, &mut out);
        out
    }

    fn rule_on(&self, lo: f64, hi: f64, q: &Quadrature, out: &mut Vec<(f64, f64)>) {
        if hi <= lo {
            return;
        }
        match &self.kind {
            Kind::Radial(r) | Kind::Rearranged(r) => radial_rule(r, lo, hi, q, out),
            Kind::Indicator(_) => out.push((0.5 * (lo + hi), hi - lo)),
            Kind::Tent(_) => out.extend(quadrature::mapped(q.level_nodes, lo, hi)),
            Kind::Model(m) => panel_rule(m.breakpoints(), lo, hi, q.panel_nodes, out),
            Kind::Truncated { inner, eps } => {
                if lo < *eps {
                    out.push((*eps, eps.min(hi) - lo));
                }
                inner.rule_on(lo.max(*eps), hi, q, out);
            }
            Kind::SteinerSymmetrized { inner, .. } => inner.rule_on(lo, hi, q, out),
        }
    }

    /// Volume of the unit ball in the function's dimension.
    pub fn kappa(&self) -> f64 {
        unit_ball_volume(self.dim)
    }
}

fn radial_rule(r: &RadialProfile, lo: f64, hi: f64, q: &Quadrature, out: &mut Vec<(f64, f64)>) {
    match r {
        RadialProfile::Gaussian { scale } => {
            // t = exp(−ρ²/s²) removes the logarithmic endpoint singularity.
            let s2 = scale * scale;
            let rho_lo = r.radius(hi);
            let rho_hi = if lo <= 0.0 {
                scale * GAUSSIAN_CUTOFF
            } else {
                r.radius(lo)
            };
            for (rho, w) in quadrature::mapped(q.level_nodes, rho_lo, rho_hi) {
                let t = (-rho * rho / s2).exp();
                out.push((t, w * 2.0 * rho / s2 * t));
            }
        }
        RadialProfile::Ball { .. } => out.push((0.5 * (lo + hi), hi - lo)),
        RadialProfile::Cone { .. } => out.extend(quadrature::mapped(q.level_nodes, lo, hi)),
        RadialProfile::Table { levels, .. } => {
            let mut cuts = vec![0.0];
            cuts.extend_from_slice(levels);
            panel_rule(&cuts, lo, hi, q.panel_nodes.max(2), out);
        }
    }
}

/// Composite rule with panel boundaries at the given ascending breakpoints.
fn panel_rule(cuts: &[f64], lo: f64, hi: f64, nodes: usize, out: &mut Vec<(f64, f64)>) {
    let mut edges = vec![lo];
    edges.extend(cuts.iter().copied().filter(|&c| c > lo && c < hi));
    edges.push(hi);
    for w in edges.windows(2) {
        if w[1] > w[0] {
            out.extend(quadrature::mapped(nodes, w[0], w[1]));
        }
    }
}

fn symmetrize_set(set: SuperlevelSet, u: &Vector) -> Result<SuperlevelSet> {
    Ok(match set {
        SuperlevelSet::Polytope(p) if p.is_empty() => SuperlevelSet::Polytope(p),
        SuperlevelSet::Polytope(p) => SuperlevelSet::Polytope(steiner_symmetral(&p, u)?),
        SuperlevelSet::Ball { center, radius } => SuperlevelSet::Ball {
            center: center - *u * center.dot(u),
            radius,
        },
    })
}

/// p-mean M_p(a, b) of two positive numbers.
pub fn p_mean(a: f64, b: f64, p: f64) -> f64 {
    if p == f64::INFINITY {
        a.max(b)
    } else if p == 0.0 {
        (a * b).sqrt()
    } else if a <= 0.0 || b <= 0.0 {
        if p < 0.0 {
            0.0
        } else {
            (0.5 * (a.max(0.0).powf(p) + b.max(0.0).powf(p))).powf(1.0 / p)
        }
    } else {
        (0.5 * (a.powf(p) + b.powf(p))).powf(1.0 / p)
    }
}
