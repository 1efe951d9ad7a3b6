use std::collections::HashMap;
use std::f64::consts::PI;

use super::polytope::Polytope;
use super::vector::Vector;
use super::GeometryError;

/// d-dimensional volume; zero for lower-dimensional bodies.
pub fn volume(p: &Polytope) -> f64 {
    if p.is_full_dimensional() {
        p.relative_volume()
    } else {
        0.0
    }
}

/// h_P(u) = max ⟨v, u⟩ over the vertices.
pub fn support(p: &Polytope, u: &Vector) -> Result<f64, GeometryError> {
    if p.is_empty() {
        return Err(GeometryError::EmptyPolytope);
    }
    Ok(p.vertices()
        .iter()
        .map(|v| v.dot(u))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Sum of facet measures: perimeter in 2D, surface area in 3D.
///
/// A codimension-one body counts both sides of its flat facet.
pub fn surface_area(p: &Polytope) -> f64 {
    p.facets().iter().map(|f| f.measure).sum()
}

/// Total mean curvature M = ½ Σ_edges length · exterior dihedral angle of a
/// polytope in ℝ³ (any affine dimension).
pub fn total_mean_curvature(p: &Polytope) -> f64 {
    assert_eq!(p.dim(), 3);
    match p.affine_dim() {
        _ if p.is_empty() => 0.0,
        0 => 0.0,
        // segment: the exterior angle around it is 2π
        1 => 0.5 * p.relative_volume() * 2.0 * PI,
        // flat polygon: boundary edges with angle π
        2 => {
            let perim: f64 = p.cells.iter().map(|c| c.measure).sum();
            0.5 * perim * PI
        }
        _ => {
            let mut by_edge: HashMap<[u32; 2], Vec<usize>> = HashMap::new();
            for (ci, c) in p.cells.iter().enumerate() {
                let v = c.vertices();
                for (a, b) in [(0, 1), (1, 2), (0, 2)] {
                    let key = [v[a].min(v[b]), v[a].max(v[b])];
                    by_edge.entry(key).or_default().push(ci);
                }
            }
            let verts = p.vertices();
            let mut m = 0.0;
            for (edge, cs) in by_edge {
                if cs.len() != 2 {
                    continue;
                }
                let n1 = p.cells[cs[0]].normal;
                let n2 = p.cells[cs[1]].normal;
                let cross = Vector::new(&[
                    n1[1] * n2[2] - n1[2] * n2[1],
                    n1[2] * n2[0] - n1[0] * n2[2],
                    n1[0] * n2[1] - n1[1] * n2[0],
                ]);
                let angle = cross.norm().atan2(n1.dot(&n2));
                if angle < 1e-12 {
                    continue;
                }
                let len = verts[edge[0] as usize].distance(&verts[edge[1] as usize]);
                m += len * angle;
            }
            0.5 * m
        }
    }
}

/// Volume of the unit ball κ_n.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        2 => PI,
        3 => 4.0 * PI / 3.0,
        4 => PI * PI / 2.0,
        _ => unit_ball_volume(n - 2) * 2.0 * PI / n as f64,
    }
}

/// i-th quermassintegral W_i(P) = V(P[n-i], B[i]) for n ∈ {1, 2, 3}.
pub fn quermassintegral(p: &Polytope, i: usize) -> Result<f64, GeometryError> {
    let n = p.dim();
    if !(1..=3).contains(&n) {
        return Err(GeometryError::DimensionOutOfRange(n));
    }
    if i > n {
        return Err(GeometryError::IndexOutOfRange { index: i, dim: n });
    }
    if i == n {
        return Ok(unit_ball_volume(n));
    }
    if p.is_empty() {
        return Ok(0.0);
    }
    Ok(match (n, i) {
        (_, 0) => volume(p),
        (1, 1) => 2.0,
        (2, 1) => surface_area(p) / 2.0,
        (3, 1) => surface_area(p) / 3.0,
        (3, 2) => total_mean_curvature(p) / 3.0,
        _ => unreachable!(),
    })
}

/// All quermassintegrals W_0..W_n.
pub fn quermassintegrals(p: &Polytope) -> Result<Vec<f64>, GeometryError> {
    (0..=p.dim()).map(|i| quermassintegral(p, i)).collect()
}

/// (n-1)-volume of the orthogonal projection onto u^⊥ by Cauchy's formula
/// ½ Σ_F |⟨n_F, u⟩| |F|.
pub fn projection_volume(p: &Polytope, u: &Vector) -> Result<f64, GeometryError> {
    let n = p.dim();
    if !(2..=3).contains(&n) {
        return Err(GeometryError::DimensionOutOfRange(n));
    }
    Ok(0.5
        * p.facets()
            .iter()
            .map(|f| f.normal.dot(u).abs() * f.measure)
            .sum::<f64>())
}
