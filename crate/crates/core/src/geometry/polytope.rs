use super::hull::{hull_in_span, SpanHull};
use super::vector::{Vector, MAX_DIM};
use super::{GeometryError, TOL};

/// Closed halfspace {x : ⟨normal, x⟩ ≤ offset} with unit normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: f64,
}

impl Halfspace {
    /// Normalizes `normal`, scaling `offset` along with it.
    pub fn new(normal: Vector, offset: f64) -> Result<Self, GeometryError> {
        let len = normal.norm();
        if !(len > 0.0) || !len.is_finite() || !offset.is_finite() {
            return Err(GeometryError::DegenerateHalfspace);
        }
        Ok(Halfspace {
            normal: normal * (1.0 / len),
            offset: offset / len,
        })
    }

    pub fn complement(&self) -> Halfspace {
        Halfspace {
            normal: -self.normal,
            offset: -self.offset,
        }
    }

    #[inline]
    pub fn signed_distance(&self, x: &Vector) -> f64 {
        self.normal.dot(x) - self.offset
    }
}

/// Facet record: outward unit normal, support offset and (d-1)-measure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Facet {
    pub normal: Vector,
    pub offset: f64,
    pub measure: f64,
}

/// A boundary simplex of the hull inside its affine span.
///
/// `len` vertices are used; `normal` lies in the span and points outward.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Cell {
    pub verts: [u32; MAX_DIM],
    pub len: usize,
    pub normal: Vector,
    pub offset: f64,
    pub measure: f64,
}

impl Cell {
    pub fn vertices(&self) -> &[u32] {
        &self.verts[..self.len]
    }
}

/// Orthonormal frame of the affine hull.
#[derive(Clone, Debug)]
pub(crate) struct Frame {
    pub origin: Vector,
    pub basis: Vec<Vector>,
    pub complement: Vec<Vector>,
}

impl Frame {
    pub fn coords(&self, x: &Vector) -> Vector {
        let rel = *x - self.origin;
        let k = self.basis.len().max(1);
        let mut out = Vector::zeros(k);
        for (j, b) in self.basis.iter().enumerate() {
            out[j] = rel.dot(b);
        }
        out
    }

    /// Squared distance from `x` to the affine span.
    pub fn off_span_sq(&self, x: &Vector) -> f64 {
        let rel = *x - self.origin;
        self.complement.iter().map(|c| rel.dot(c).powi(2)).sum()
    }

}

/// Convex polytope in ℝ^d (1 ≤ d ≤ 4) stored by its extreme points.
///
/// Lower-dimensional hulls are legal values: `affine_dim < dim`, zero
/// d-volume. The empty polytope has no vertices.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vector>,
    affine_dim: usize,
    facets: Vec<Facet>,
    pub(crate) cells: Vec<Cell>,
    pub(crate) edges: Vec<[u32; 2]>,
    pub(crate) frame: Option<Frame>,
    relative_volume: f64,
}

impl Polytope {
    pub fn empty(dim: usize) -> Self {
        Polytope {
            dim,
            vertices: Vec::new(),
            affine_dim: 0,
            facets: Vec::new(),
            cells: Vec::new(),
            edges: Vec::new(),
            frame: None,
            relative_volume: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points in lexicographic order.
    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        !self.is_empty() && self.affine_dim == self.dim
    }

    /// Facets with outward normals and (d-1)-measures.
    ///
    /// Full-dimensional bodies report their true facets (coplanar boundary
    /// simplices merged). A body of codimension one is treated as a doubly
    /// covered flat facet: two opposite facets carrying its relative volume.
    /// Bodies of codimension two or more have no facets.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Volume of the polytope inside its own affine span.
    pub fn relative_volume(&self) -> f64 {
        self.relative_volume
    }

    pub fn centroid(&self) -> Option<Vector> {
        if self.vertices.is_empty() {
            return None;
        }
        let mut c = Vector::zeros(self.dim);
        for v in &self.vertices {
            c = c + *v;
        }
        Some(c * (1.0 / self.vertices.len() as f64))
    }

    /// Geometric tolerance scaled to the coordinate magnitude of the body.
    pub fn tolerance(&self) -> f64 {
        TOL * coord_scale(&self.vertices)
    }

    /// Membership test with the kernel tolerance.
    pub fn contains(&self, x: &Vector) -> bool {
        let Some(frame) = &self.frame else {
            return false;
        };
        let tol = self.tolerance().max(TOL * x.max_abs());
        if frame.off_span_sq(x) > tol * tol {
            return false;
        }
        self.cells.iter().all(|c| c.normal.dot(x) - c.offset <= tol)
    }

    /// Constraint system describing the body: inequalities `⟨a, x⟩ ≤ b`
    /// (relative facets) and equalities `⟨a, x⟩ = b` (orthogonal complement
    /// of the affine span).
    pub fn constraints(&self) -> (Vec<Halfspace>, Vec<Halfspace>) {
        let Some(frame) = &self.frame else {
            return (Vec::new(), Vec::new());
        };
        let ineq = self
            .cells
            .iter()
            .map(|c| Halfspace {
                normal: c.normal,
                offset: c.offset,
            })
            .collect();
        let eq = frame
            .complement
            .iter()
            .map(|n| Halfspace {
                normal: *n,
                offset: n.dot(&frame.origin),
            })
            .collect();
        (ineq, eq)
    }

    /// Vertices of a planar polygon in counter-clockwise order, starting from
    /// the lexicographically smallest vertex. Segments and points are
    /// returned as-is.
    pub fn polygon(&self) -> Vec<Vector> {
        assert_eq!(self.dim, 2, "polygon() requires a planar polytope");
        if self.affine_dim < 2 {
            return self.vertices.clone();
        }
        let c = self.centroid().expect("nonempty");
        let mut pts = self.vertices.clone();
        pts.sort_by(|a, b| {
            let ta = (a[1] - c[1]).atan2(a[0] - c[0]);
            let tb = (b[1] - c[1]).atan2(b[0] - c[0]);
            ta.total_cmp(&tb)
        });
        let start = (0..pts.len())
            .min_by(|&i, &j| pts[i].lex_cmp(&pts[j]))
            .unwrap_or(0);
        pts.rotate_left(start);
        pts
    }

    pub(crate) fn from_span_hull(
        dim: usize,
        points: &[Vector],
        frame: Frame,
        hull: SpanHull,
    ) -> Polytope {
        let affine_dim = frame.basis.len();
        // canonical order: lexicographic by coordinates
        let mut order: Vec<usize> = hull.vertices.clone();
        order.sort_by(|&a, &b| points[a].lex_cmp(&points[b]));
        let mut remap = std::collections::HashMap::with_capacity(order.len());
        for (new, &old) in order.iter().enumerate() {
            remap.insert(old, new as u32);
        }
        let vertices: Vec<Vector> = order.iter().map(|&i| points[i]).collect();

        let mut cells = Vec::with_capacity(hull.cells.len());
        for c in &hull.cells {
            let mut verts = [0u32; MAX_DIM];
            for (j, &v) in c.verts.iter().enumerate() {
                verts[j] = remap[&v];
            }
            verts[..c.verts.len()].sort_unstable();
            let mut normal = Vector::zeros(dim);
            for (j, b) in frame.basis.iter().enumerate() {
                normal = normal + *b * c.normal[j];
            }
            let offset = c.offset + normal.dot(&frame.origin);
            cells.push(Cell {
                verts,
                len: c.verts.len(),
                normal,
                offset,
                measure: c.measure,
            });
        }

        let edges = collect_edges(affine_dim, &cells, vertices.len());
        let relative_volume = hull.volume;
        let facets = build_facets(dim, affine_dim, &cells, &frame, relative_volume);
        Polytope {
            dim,
            vertices,
            affine_dim,
            facets,
            cells,
            edges,
            frame: Some(frame),
            relative_volume,
        }
    }

    /// Single-point polytope.
    pub(crate) fn point(p: Vector) -> Polytope {
        let dim = p.dim();
        let frame = Frame {
            origin: p,
            basis: Vec::new(),
            complement: (0..dim).map(|i| Vector::unit(dim, i)).collect(),
        };
        Polytope {
            dim,
            vertices: vec![p],
            affine_dim: 0,
            facets: Vec::new(),
            cells: Vec::new(),
            edges: Vec::new(),
            frame: Some(frame),
            relative_volume: 1.0,
        }
    }
}

pub(crate) fn coord_scale(points: &[Vector]) -> f64 {
    points.iter().fold(1.0_f64, |m, p| m.max(p.max_abs()))
}

fn collect_edges(affine_dim: usize, cells: &[Cell], nverts: usize) -> Vec<[u32; 2]> {
    match affine_dim {
        0 => Vec::new(),
        1 => {
            if nverts == 2 {
                vec![[0, 1]]
            } else {
                Vec::new()
            }
        }
        _ => {
            let mut edges: Vec<[u32; 2]> = Vec::with_capacity(cells.len() * affine_dim);
            for c in cells {
                let vs = c.vertices();
                for a in 0..vs.len() {
                    for b in a + 1..vs.len() {
                        let (x, y) = (vs[a].min(vs[b]), vs[a].max(vs[b]));
                        edges.push([x, y]);
                    }
                }
            }
            edges.sort_unstable();
            edges.dedup();
            edges
        }
    }
}

fn build_facets(
    dim: usize,
    affine_dim: usize,
    cells: &[Cell],
    frame: &Frame,
    relative_volume: f64,
) -> Vec<Facet> {
    if affine_dim == dim {
        merge_coplanar(cells)
    } else if affine_dim + 1 == dim {
        let n = frame.complement[0];
        let off = n.dot(&frame.origin);
        vec![
            Facet {
                normal: n,
                offset: off,
                measure: relative_volume,
            },
            Facet {
                normal: -n,
                offset: -off,
                measure: relative_volume,
            },
        ]
    } else {
        Vec::new()
    }
}

/// Groups boundary simplices lying in a common supporting hyperplane.
fn merge_coplanar(cells: &[Cell]) -> Vec<Facet> {
    let mut facets: Vec<Facet> = Vec::new();
    for c in cells {
        let tol = TOL * c.offset.abs().max(1.0);
        match facets
            .iter_mut()
            .find(|f| f.normal.dot(&c.normal) > 1.0 - 1e-12 && (f.offset - c.offset).abs() <= tol)
        {
            Some(f) => f.measure += c.measure,
            None => facets.push(Facet {
                normal: c.normal,
                offset: c.offset,
                measure: c.measure,
            }),
        }
    }
    facets
}

/// Convex hull of a point cloud in ℝ^dim.
///
/// Accepts any nonempty set of finite points; input with affine dimension
/// below `dim` yields a lower-dimensional polytope rather than an error.
pub fn convex_hull(points: &[Vector], dim: usize) -> Result<Polytope, GeometryError> {
    if !(1..=MAX_DIM).contains(&dim) {
        return Err(GeometryError::DimensionOutOfRange(dim));
    }
    if points.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    for p in points {
        if p.dim() != dim {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        if !p.is_finite() {
            return Err(GeometryError::NonFinite);
        }
    }
    let mut pts: Vec<Vector> = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    if pts.len() == 1 {
        return Ok(Polytope::point(pts[0]));
    }
    let eps = TOL * coord_scale(&pts);
    let (frame, simplex) = affine_frame(&pts, dim, eps);
    if frame.basis.is_empty() {
        return Ok(Polytope::point(pts[0]));
    }
    let local: Vec<Vector> = pts.iter().map(|p| frame.coords(p)).collect();
    let hull = hull_in_span(&local, &simplex, eps);
    Ok(Polytope::from_span_hull(dim, &pts, frame, hull))
}

/// Greedy affine frame: repeatedly adds the point farthest from the current
/// span. Returns the frame and the indices of the spanning simplex.
fn affine_frame(pts: &[Vector], dim: usize, eps: f64) -> (Frame, Vec<usize>) {
    let origin = pts[0];
    let mut basis: Vec<Vector> = Vec::new();
    let mut simplex = vec![0usize];
    while basis.len() < dim {
        let mut best = (0usize, 0.0f64, Vector::zeros(dim));
        for (i, p) in pts.iter().enumerate() {
            let mut r = *p - origin;
            for b in &basis {
                r = r - *b * r.dot(b);
            }
            let d = r.norm();
            if d > best.1 {
                best = (i, d, r);
            }
        }
        if best.1 <= eps {
            break;
        }
        // re-orthogonalize once for stability
        let mut r = best.2;
        for b in &basis {
            r = r - *b * r.dot(b);
        }
        basis.push(r * (1.0 / r.norm()));
        simplex.push(best.0);
    }
    let mut complement: Vec<Vector> = Vec::new();
    for axis in 0..dim {
        if basis.len() + complement.len() == dim {
            break;
        }
        let mut r = Vector::unit(dim, axis);
        for b in basis.iter().chain(complement.iter()) {
            r = r - *b * r.dot(b);
        }
        let n = r.norm();
        if n > 1e-6 {
            complement.push(r * (1.0 / n));
        }
    }
    (
        Frame {
            origin,
            basis,
            complement,
        },
        simplex,
    )
}
