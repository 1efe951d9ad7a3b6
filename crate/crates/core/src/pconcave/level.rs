use crate::geometry::{
    hausdorff_distance, projection_volume, quermassintegral, support, unit_ball_volume, volume,
    DirectionGrid, GeometryError, Polytope, Vector,
};

/// Exact superlevel set of a built-in function.
#[derive(Clone, Debug)]
pub enum SuperlevelSet {
    Polytope(Polytope),
    Ball { center: Vector, radius: f64 },
}

impl SuperlevelSet {
    pub fn empty(dim: usize) -> Self {
        SuperlevelSet::Polytope(Polytope::empty(dim))
    }

    pub fn dim(&self) -> usize {
        match self {
            SuperlevelSet::Polytope(p) => p.dim(),
            SuperlevelSet::Ball { center, .. } => center.dim(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            SuperlevelSet::Polytope(p) => p.is_empty(),
            SuperlevelSet::Ball { radius, .. } => *radius < 0.0,
        }
    }

    pub fn as_polytope(&self) -> Option<&Polytope> {
        match self {
            SuperlevelSet::Polytope(p) => Some(p),
            SuperlevelSet::Ball { .. } => None,
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            SuperlevelSet::Polytope(p) => volume(p),
            SuperlevelSet::Ball { center, radius } => {
                unit_ball_volume(center.dim()) * radius.powi(center.dim() as i32)
            }
        }
    }

    pub fn quermassintegral(&self, i: usize) -> Result<f64, GeometryError> {
        match self {
            SuperlevelSet::Polytope(p) => {
                if p.is_empty() {
                    let n = p.dim();
                    if i > n {
                        return Err(GeometryError::IndexOutOfRange { index: i, dim: n });
                    }
                    return Ok(0.0);
                }
                quermassintegral(p, i)
            }
            SuperlevelSet::Ball { center, radius } => {
                let n = center.dim();
                if i > n {
                    return Err(GeometryError::IndexOutOfRange { index: i, dim: n });
                }
                Ok(unit_ball_volume(n) * radius.powi((n - i) as i32))
            }
        }
    }

    /// (n−1)-volume of the projection onto u^⊥, u a unit vector.
    pub fn projection_volume(&self, u: &Vector) -> Result<f64, GeometryError> {
        match self {
            SuperlevelSet::Polytope(p) => {
                if p.is_empty() {
                    return Ok(0.0);
                }
                projection_volume(p, u)
            }
            SuperlevelSet::Ball { center, radius } => {
                let n = center.dim();
                Ok(unit_ball_volume(n - 1) * radius.powi(n as i32 - 1))
            }
        }
    }

    /// Support function; `None` for the empty set.
    pub fn support(&self, u: &Vector) -> Option<f64> {
        match self {
            SuperlevelSet::Polytope(p) => support(p, u).ok(),
            SuperlevelSet::Ball { center, radius } => Some(center.dot(u) + radius * u.norm()),
        }
    }

    pub fn contains(&self, x: &Vector) -> bool {
        match self {
            SuperlevelSet::Polytope(p) => p.contains(x),
            SuperlevelSet::Ball { center, radius } => {
                x.distance(center) <= radius * (1.0 + 1e-12) + 1e-12
            }
        }
    }

    /// Axis-aligned bounding box `(lo, hi)`; `None` for the empty set.
    pub fn bounding_box(&self) -> Option<(Vector, Vector)> {
        let n = self.dim();
        if self.is_empty() {
            return None;
        }
        let mut lo = Vector::zeros(n);
        let mut hi = Vector::zeros(n);
        for k in 0..n {
            let e = Vector::unit(n, k);
            hi[k] = self.support(&e)?;
            lo[k] = -self.support(&-e)?;
        }
        Some((lo, hi))
    }

    /// Hausdorff distance. Exact between polytopes and between balls;
    /// mixed pairs use the support-function gap on the direction grid.
    pub fn hausdorff(&self, other: &SuperlevelSet) -> Result<f64, GeometryError> {
        if self.dim() != other.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        if self.is_empty() || other.is_empty() {
            return Err(GeometryError::EmptyPolytope);
        }
        match (self, other) {
            (SuperlevelSet::Polytope(a), SuperlevelSet::Polytope(b)) => hausdorff_distance(a, b),
            (
                SuperlevelSet::Ball { center: c1, radius: r1 },
                SuperlevelSet::Ball { center: c2, radius: r2 },
            ) => Ok(c1.distance(c2) + (r1 - r2).abs()),
            _ => {
                let grid = DirectionGrid::for_dim(self.dim());
                let mut d: f64 = 0.0;
                for u in grid.directions() {
                    let (a, b) = (self.support(u).unwrap_or(0.0), other.support(u).unwrap_or(0.0));
                    d = d.max((a - b).abs());
                }
                Ok(d)
            }
        }
    }
}
