use super::polytope::{convex_hull, Polytope};
use super::vector::Vector;
use super::GeometryError;

/// Minkowski sum of two planar convex polygons by merging their edge
/// sequences in angular order.
pub fn minkowski_sum_2d(p: &Polytope, q: &Polytope) -> Result<Polytope, GeometryError> {
    for body in [p, q] {
        if body.dim() != 2 {
            return Err(GeometryError::DimensionOutOfRange(body.dim()));
        }
        if body.is_empty() {
            return Err(GeometryError::EmptyPolytope);
        }
    }
    if !p.is_full_dimensional() || !q.is_full_dimensional() {
        let mut pts = Vec::with_capacity(p.vertices().len() * q.vertices().len());
        for a in p.vertices() {
            for b in q.vertices() {
                pts.push(*a + *b);
            }
        }
        return convex_hull(&pts, 2);
    }
    let a = bottom_first(p.polygon());
    let b = bottom_first(q.polygon());
    let (na, nb) = (a.len(), b.len());
    let mut out = Vec::with_capacity(na + nb);
    let (mut i, mut j) = (0usize, 0usize);
    while i < na || j < nb {
        out.push(a[i % na] + b[j % nb]);
        let ea = a[(i + 1) % na] - a[i % na];
        let eb = b[(j + 1) % nb] - b[j % nb];
        let cross = ea[0] * eb[1] - ea[1] * eb[0];
        if j >= nb || (i < na && cross > 0.0) {
            i += 1;
        } else if i >= na || cross < 0.0 {
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    convex_hull(&out, 2)
}

/// Rotates a CCW ring so it starts at the lowest (then leftmost) vertex,
/// where edge angles start at 0.
fn bottom_first(mut ring: Vec<Vector>) -> Vec<Vector> {
    let start = (0..ring.len())
        .min_by(|&i, &j| {
            ring[i][1]
                .total_cmp(&ring[j][1])
                .then(ring[i][0].total_cmp(&ring[j][0]))
        })
        .unwrap_or(0);
    ring.rotate_left(start);
    ring
}

/// Regular n-gon inscribed in the circle of radius `r` about the origin.
pub fn regular_polygon(n: usize, r: f64) -> Polytope {
    let pts: Vec<Vector> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            Vector::new(&[r * th.cos(), r * th.sin()])
        })
        .collect();
    convex_hull(&pts, 2).expect("regular polygon")
}
