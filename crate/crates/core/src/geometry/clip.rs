use super::polytope::{convex_hull, Halfspace, Polytope};
use super::vector::Vector;

/// Which side of the level hyperplane `w = z` a slice keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceMode {
    /// w ≤ z
    AtMost,
    /// w ≥ z
    AtLeast,
    /// w = z
    Exactly,
}

/// P ∩ h. An empty intersection yields the empty polytope.
pub fn clip(p: &Polytope, h: &Halfspace) -> Polytope {
    match clip_points(p, h) {
        None => p.clone(),
        Some(pts) if pts.is_empty() => Polytope::empty(p.dim()),
        Some(pts) => convex_hull(&pts, p.dim()).expect("clip points are finite and nonempty"),
    }
}

/// Points whose hull is P ∩ h: kept vertices plus edge crossings.
/// `None` when P lies inside h.
fn clip_points(p: &Polytope, h: &Halfspace) -> Option<Vec<Vector>> {
    if p.is_empty() {
        return Some(Vec::new());
    }
    let tol = p.tolerance().max(super::TOL * h.offset.abs());
    let verts = p.vertices();
    let side: Vec<f64> = verts.iter().map(|v| h.signed_distance(v)).collect();
    if side.iter().all(|&s| s <= tol) {
        return None;
    }
    let mut kept: Vec<Vector> = verts
        .iter()
        .zip(&side)
        .filter(|(_, &s)| s <= tol)
        .map(|(v, _)| *v)
        .collect();
    if kept.is_empty() {
        return Some(kept);
    }
    for &[a, b] in &p.edges {
        let (sa, sb) = (side[a as usize], side[b as usize]);
        if (sa < -tol && sb > tol) || (sa > tol && sb < -tol) {
            let lam = sa / (sa - sb);
            let (va, vb) = (verts[a as usize], verts[b as usize]);
            kept.push(va + (vb - va) * lam);
        }
    }
    Some(kept)
}

/// Clips a polytope in ℝ^{n+1} against its last coordinate and projects the
/// result to ℝ^n by dropping that coordinate.
///
/// With `AtMost` on the hull of finitely many lifted points this equals the
/// slice of the hull plus the upward recession ray, without building rays.
pub fn slice_project(p: &Polytope, z: f64, mode: SliceMode) -> Polytope {
    let d = p.dim();
    assert!(d >= 2, "slice_project needs an ambient dimension of at least 2");
    let up = Vector::unit(d, d - 1);
    let below = Halfspace {
        normal: up,
        offset: z,
    };
    let pts = match mode {
        SliceMode::AtMost => clip_points(p, &below),
        SliceMode::AtLeast => clip_points(p, &below.complement()),
        SliceMode::Exactly => {
            let lower = clip(p, &below);
            clip_points(&lower, &below.complement()).or_else(|| Some(lower.vertices().to_vec()))
        }
    }
    .unwrap_or_else(|| p.vertices().to_vec());
    if pts.is_empty() {
        return Polytope::empty(d - 1);
    }
    let projected: Vec<Vector> = pts.iter().map(|v| v.drop_last()).collect();
    convex_hull(&projected, d - 1).expect("projected points are finite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::measure::volume;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c)
    }

    fn unit_cube() -> Polytope {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push(v(&[(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64]));
        }
        convex_hull(&pts, 3).unwrap()
    }

    #[test]
    fn square_clipped_in_half() {
        let sq = convex_hull(
            &[v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[0.0, 1.0]), v(&[1.0, 1.0])],
            2,
        )
        .unwrap();
        let h = Halfspace::new(v(&[1.0, 0.0]), 0.5).unwrap();
        let r = clip(&sq, &h);
        assert!((volume(&r) - 0.5).abs() < 1e-15);
        assert_eq!(r.vertices().len(), 4);
    }

    #[test]
    fn cube_touching_hyperplane_leaves_a_vertex() {
        let h = Halfspace::new(v(&[1.0, 1.0, 1.0]), 0.0).unwrap();
        let r = clip(&unit_cube(), &h);
        assert_eq!(r.vertices(), &[v(&[0.0, 0.0, 0.0])]);
        assert_eq!(volume(&r), 0.0);
    }

    #[test]
    fn disjoint_clip_is_empty() {
        let h = Halfspace::new(v(&[1.0, 0.0, 0.0]), -1.0).unwrap();
        assert!(clip(&unit_cube(), &h).is_empty());
    }

    #[test]
    fn tetrahedron_slices() {
        let tet = convex_hull(
            &[
                v(&[0.0, 0.0, 0.0]),
                v(&[1.0, 0.0, 0.0]),
                v(&[0.0, 1.0, 0.0]),
                v(&[0.0, 0.0, 1.0]),
            ],
            3,
        )
        .unwrap();
        let mid = slice_project(&tet, 0.5, SliceMode::Exactly);
        assert_eq!(mid.vertices(), &[v(&[0.0, 0.0]), v(&[0.0, 0.5]), v(&[0.5, 0.0])]);
        assert!((volume(&mid) - 0.125).abs() < 1e-15);
        let top = slice_project(&tet, 1.0, SliceMode::Exactly);
        assert_eq!(top.vertices(), &[v(&[0.0, 0.0])]);
        // everything at or below the apex projects to the base triangle
        let below = slice_project(&tet, 1.0, SliceMode::AtMost);
        assert!((volume(&below) - 0.5).abs() < 1e-15);
        let above = slice_project(&tet, 0.5, SliceMode::AtLeast);
        assert!((volume(&above) - 0.125).abs() < 1e-15);
    }
}
