use super::polytope::{convex_hull, Polytope};
use super::vector::Vector;
use super::GeometryError;

/// Shadow system K_u(t), t ∈ [-1, 1], of a planar convex body.
///
/// The body is stored by its chords parallel to `u`: at every breakpoint y
/// of the projection onto u^⊥ the chord is `[lower, upper]` in the u
/// coordinate, i.e. `[f_u(y), -g_u(y)]`. Between breakpoints both chains
/// are linear.
#[derive(Clone, Debug)]
pub struct ShadowSystemPolygon {
    base: Polytope,
    u: Vector,
    perp: Vector,
    ys: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl ShadowSystemPolygon {
    pub fn new(base: &Polytope, u: &Vector) -> Result<Self, GeometryError> {
        if base.dim() != 2 {
            return Err(GeometryError::DimensionOutOfRange(base.dim()));
        }
        if base.is_empty() {
            return Err(GeometryError::EmptyPolytope);
        }
        let u = u.normalized().ok_or(GeometryError::DegenerateHalfspace)?;
        let perp = Vector::new(&[-u[1], u[0]]);
        let ring = base.polygon();
        let coords: Vec<(f64, f64)> = ring.iter().map(|p| (p.dot(&perp), p.dot(&u))).collect();
        let mut ys: Vec<f64> = coords.iter().map(|c| c.0).collect();
        ys.sort_by(f64::total_cmp);
        ys.dedup();
        let closed = ring.len() > 2;
        let mut lower = Vec::with_capacity(ys.len());
        let mut upper = Vec::with_capacity(ys.len());
        for &y in &ys {
            let (lo, hi) = chord(&coords, closed, y);
            lower.push(lo);
            upper.push(hi);
        }
        Ok(ShadowSystemPolygon {
            base: base.clone(),
            u,
            perp,
            ys,
            lower,
            upper,
        })
    }

    pub fn base(&self) -> &Polytope {
        &self.base
    }

    pub fn direction(&self) -> &Vector {
        &self.u
    }

    /// Chord length -g_u(y) - f_u(y) at every breakpoint.
    pub fn chord_lengths(&self) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| hi - lo)
            .collect()
    }

    /// K_u(t): chords moved to `[f^t, -g^t]` with
    /// f^t = ((1+t) f + (1-t) g)/2 and g^t = ((1-t) f + (1+t) g)/2.
    pub fn evaluate(&self, t: f64) -> Result<Polytope, GeometryError> {
        if !(-1.0..=1.0).contains(&t) {
            return Err(GeometryError::ParameterOutOfRange(t));
        }
        let mut pts = Vec::with_capacity(2 * self.ys.len());
        for ((&y, &f), &up) in self.ys.iter().zip(&self.lower).zip(&self.upper) {
            let g = -up;
            let ft = 0.5 * ((1.0 + t) * f + (1.0 - t) * g);
            let gt = 0.5 * ((1.0 - t) * f + (1.0 + t) * g);
            pts.push(self.perp * y + self.u * ft);
            pts.push(self.perp * y + self.u * (-gt));
        }
        convex_hull(&pts, 2)
    }
}

/// Range of the u-coordinate on the line {y' = y} through a polygon given in
/// (y', s) coordinates.
fn chord(coords: &[(f64, f64)], closed: bool, y: f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &(cy, cs) in coords {
        if cy == y {
            lo = lo.min(cs);
            hi = hi.max(cs);
        }
    }
    let n = coords.len();
    let edges = if closed { n } else { n.saturating_sub(1) };
    for i in 0..edges {
        let (a, b) = (coords[i], coords[(i + 1) % n]);
        if (a.0 < y && b.0 > y) || (a.0 > y && b.0 < y) {
            let lam = (y - a.0) / (b.0 - a.0);
            let s = a.1 + lam * (b.1 - a.1);
            lo = lo.min(s);
            hi = hi.max(s);
        }
    }
    (lo, hi)
}

/// Reflection R_u about the hyperplane u^⊥.
pub fn reflect(p: &Polytope, u: &Vector) -> Result<Polytope, GeometryError> {
    let u = u.normalized().ok_or(GeometryError::DegenerateHalfspace)?;
    if p.is_empty() {
        return Ok(Polytope::empty(p.dim()));
    }
    let pts: Vec<Vector> = p
        .vertices()
        .iter()
        .map(|v| *v - u * (2.0 * v.dot(&u)))
        .collect();
    convex_hull(&pts, p.dim())
}

/// Steiner symmetral S_{u^⊥} K of a planar body.
pub fn steiner_symmetral(p: &Polytope, u: &Vector) -> Result<Polytope, GeometryError> {
    ShadowSystemPolygon::new(p, u)?.evaluate(0.0)
}
