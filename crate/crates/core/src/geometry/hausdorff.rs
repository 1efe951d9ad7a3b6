use super::polytope::Polytope;
use super::sphere::DirectionGrid;
use super::vector::Vector;
use super::GeometryError;

/// Hausdorff distance estimate between two nonempty polytopes (dim ≤ 3).
///
/// Maximum of the support-function gap over the shared direction grid and
/// the exact vertex-to-body distances in both directions. Both terms are
/// lower bounds of δ^H; the estimate converges under grid refinement.
pub fn hausdorff_distance(p: &Polytope, q: &Polytope) -> Result<f64, GeometryError> {
    if p.dim() != q.dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    if p.is_empty() || q.is_empty() {
        return Err(GeometryError::EmptyPolytope);
    }
    if p.dim() > 3 {
        return Err(GeometryError::DimensionOutOfRange(p.dim()));
    }
    let grid = DirectionGrid::for_dim(p.dim());
    let mut best = 0.0f64;
    for u in grid.directions() {
        let hp = max_dot(p.vertices(), u);
        let hq = max_dot(q.vertices(), u);
        best = best.max((hp - hq).abs());
    }
    for v in p.vertices() {
        best = best.max(distance_to_point(q, v));
    }
    for v in q.vertices() {
        best = best.max(distance_to_point(p, v));
    }
    Ok(best)
}

fn max_dot(vs: &[Vector], u: &Vector) -> f64 {
    vs.iter().map(|v| v.dot(u)).fold(f64::NEG_INFINITY, f64::max)
}

/// Euclidean distance from `x` to the polytope (0 inside).
pub fn distance_to_point(p: &Polytope, x: &Vector) -> f64 {
    let Some(frame) = &p.frame else {
        return f64::INFINITY;
    };
    let verts = p.vertices();
    if p.affine_dim() == 0 {
        return x.distance(&verts[0]);
    }
    let tol = p.tolerance();
    let inside_span = p.cells.iter().all(|c| c.normal.dot(x) - c.offset <= tol);
    if inside_span {
        return frame.off_span_sq(x).sqrt();
    }
    p.cells
        .iter()
        .map(|c| {
            let vs: Vec<Vector> = c.vertices().iter().map(|&i| verts[i as usize]).collect();
            match vs.len() {
                1 => x.distance(&vs[0]),
                2 => x.distance(&closest_on_segment(x, &vs[0], &vs[1])),
                3 => x.distance(&closest_on_triangle(x, &vs[0], &vs[1], &vs[2])),
                _ => panic!("distance to polytopes above dimension 3 is unsupported"),
            }
        })
        .fold(f64::INFINITY, f64::min)
}

fn closest_on_segment(x: &Vector, a: &Vector, b: &Vector) -> Vector {
    let ab = *b - *a;
    let len2 = ab.norm_sq();
    if len2 == 0.0 {
        return *a;
    }
    let t = ((*x - *a).dot(&ab) / len2).clamp(0.0, 1.0);
    *a + ab * t
}

/// Closest point on a triangle by Voronoi-region classification.
fn closest_on_triangle(p: &Vector, a: &Vector, b: &Vector, c: &Vector) -> Vector {
    let ab = *b - *a;
    let ac = *c - *a;
    let ap = *p - *a;
    let d1 = ab.dot(&ap);
    let d2 = ac.dot(&ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return *a;
    }
    let bp = *p - *b;
    let d3 = ab.dot(&bp);
    let d4 = ac.dot(&bp);
    if d3 >= 0.0 && d4 <= d3 {
        return *b;
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        return *a + ab * (d1 / (d1 - d3));
    }
    let cp = *p - *c;
    let d5 = ab.dot(&cp);
    let d6 = ac.dot(&cp);
    if d6 >= 0.0 && d5 <= d6 {
        return *c;
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        return *a + ac * (d2 / (d2 - d6));
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        return *b + (*c - *b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
    }
    let denom = 1.0 / (va + vb + vc);
    *a + ab * (vb * denom) + ac * (vc * denom)
}
