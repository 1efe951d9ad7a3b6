//! Incremental (beneath-beyond) convex hull with conflict lists.
//!
//! Works on points already expressed in coordinates of their affine span, so
//! the point set is full-dimensional in ℝ^k. Boundary facets are simplices;
//! each keeps the neighbor across every ridge and the set of still
//! unprocessed points that see it.

use std::collections::HashMap;

use super::vector::{factorial, simplex_normal, Vector};

pub(crate) struct SpanCell {
    pub verts: Vec<usize>,
    pub normal: Vector,
    pub offset: f64,
    pub measure: f64,
}

pub(crate) struct SpanHull {
    pub vertices: Vec<usize>,
    pub cells: Vec<SpanCell>,
    pub volume: f64,
}

const NONE: usize = usize::MAX;

struct QFacet {
    verts: [usize; 4],
    normal: Vector,
    offset: f64,
    measure: f64,
    neighbors: [usize; 4],
    outside: Vec<usize>,
    furthest: usize,
    furthest_dist: f64,
    alive: bool,
}

struct Builder<'a> {
    pts: &'a [Vector],
    k: usize,
    eps: f64,
    interior: Vector,
    facets: Vec<QFacet>,
}

/// Hull of `pts` (dimension k = their vector dim, full-dimensional).
/// `simplex` holds k+1 affinely independent indices.
pub(crate) fn hull_in_span(pts: &[Vector], simplex: &[usize], eps: f64) -> SpanHull {
    let k = pts[0].dim();
    debug_assert_eq!(simplex.len(), k + 1);
    if k == 1 {
        return hull_1d(pts);
    }
    let mut interior = Vector::zeros(k);
    for &s in simplex {
        interior = interior + pts[s];
    }
    interior = interior * (1.0 / simplex.len() as f64);

    let mut b = Builder {
        pts,
        k,
        eps,
        interior,
        facets: Vec::new(),
    };
    b.initial_simplex(simplex);
    b.assign_initial(simplex);
    b.expand();
    b.finish()
}

fn hull_1d(pts: &[Vector]) -> SpanHull {
    let (mut lo, mut hi) = (0usize, 0usize);
    for (i, p) in pts.iter().enumerate() {
        if p[0] < pts[lo][0] {
            lo = i;
        }
        if p[0] > pts[hi][0] {
            hi = i;
        }
    }
    let cells = vec![
        SpanCell {
            verts: vec![lo],
            normal: Vector::new(&[-1.0]),
            offset: -pts[lo][0],
            measure: 1.0,
        },
        SpanCell {
            verts: vec![hi],
            normal: Vector::new(&[1.0]),
            offset: pts[hi][0],
            measure: 1.0,
        },
    ];
    SpanHull {
        vertices: vec![lo, hi],
        cells,
        volume: pts[hi][0] - pts[lo][0],
    }
}

impl<'a> Builder<'a> {
    fn make_facet(&self, verts: &[usize]) -> QFacet {
        let corners: Vec<Vector> = verts.iter().map(|&v| self.pts[v]).collect();
        let raw = simplex_normal(&corners);
        let len = raw.norm();
        let mut normal = if len > 0.0 {
            raw * (1.0 / len)
        } else {
            Vector::zeros(self.k)
        };
        let mut offset = normal.dot(&corners[0]);
        if normal.dot(&self.interior) > offset {
            normal = -normal;
            offset = -offset;
        }
        let mut vs = [NONE; 4];
        vs[..verts.len()].copy_from_slice(verts);
        QFacet {
            verts: vs,
            normal,
            offset,
            measure: len / factorial(self.k - 1),
            neighbors: [NONE; 4],
            outside: Vec::new(),
            furthest: NONE,
            furthest_dist: 0.0,
            alive: true,
        }
    }

    fn initial_simplex(&mut self, simplex: &[usize]) {
        let k = self.k;
        for j in 0..=k {
            let verts: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != j)
                .map(|(_, &s)| s)
                .collect();
            let mut f = self.make_facet(&verts);
            // neighbor across the ridge missing simplex[m] is facet m
            let mut pos = 0;
            for m in 0..=k {
                if m != j {
                    f.neighbors[pos] = m;
                    pos += 1;
                }
            }
            self.facets.push(f);
        }
    }

    #[inline]
    fn dist(&self, f: usize, p: usize) -> f64 {
        let fa = &self.facets[f];
        fa.normal.dot(&self.pts[p]) - fa.offset
    }

    fn push_outside(&mut self, f: usize, p: usize, d: f64) {
        let fa = &mut self.facets[f];
        fa.outside.push(p);
        if fa.furthest == NONE || d > fa.furthest_dist {
            fa.furthest = p;
            fa.furthest_dist = d;
        }
    }

    fn assign_initial(&mut self, simplex: &[usize]) {
        let nf = self.facets.len();
        for p in 0..self.pts.len() {
            if simplex.contains(&p) {
                continue;
            }
            for f in 0..nf {
                let d = self.dist(f, p);
                if d > self.eps {
                    self.push_outside(f, p, d);
                    break;
                }
            }
        }
    }

    fn expand(&mut self) {
        let k = self.k;
        let mut work: Vec<usize> = (0..self.facets.len())
            .filter(|&f| !self.facets[f].outside.is_empty())
            .collect();
        let mut seen: Vec<u32> = vec![0; self.facets.len()];
        let mut hidden: Vec<u32> = vec![0; self.facets.len()];
        let mut stamp: u32 = 0;

        while let Some(start) = work.pop() {
            if !self.facets[start].alive || self.facets[start].outside.is_empty() {
                continue;
            }
            let apex = self.facets[start].furthest;
            stamp += 1;

            // visible region by flood fill from `start`
            let mut visible = vec![start];
            seen[start] = stamp;
            let mut horizon: Vec<(usize, usize)> = Vec::new(); // (visible facet, ridge slot)
            let mut i = 0;
            while i < visible.len() {
                let f = visible[i];
                i += 1;
                for j in 0..k {
                    let nb = self.facets[f].neighbors[j];
                    if seen[nb] == stamp {
                        continue;
                    }
                    if hidden[nb] == stamp {
                        horizon.push((f, j));
                        continue;
                    }
                    if self.dist(nb, apex) > self.eps {
                        seen[nb] = stamp;
                        visible.push(nb);
                    } else {
                        hidden[nb] = stamp;
                        horizon.push((f, j));
                    }
                }
            }

            // cone from the apex over every horizon ridge
            let mut ridge_map: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
            let mut created: Vec<usize> = Vec::with_capacity(horizon.len());
            for &(f, j) in &horizon {
                let nb = self.facets[f].neighbors[j];
                let mut verts: Vec<usize> = Vec::with_capacity(k);
                for m in 0..k {
                    if m != j {
                        verts.push(self.facets[f].verts[m]);
                    }
                }
                verts.push(apex);
                let mut nf = self.make_facet(&verts);
                nf.neighbors[k - 1] = nb;
                let id = self.facets.len();
                self.facets.push(nf);
                seen.push(0);
                hidden.push(0);
                for s in 0..k {
                    if self.facets[nb].neighbors[s] == f {
                        self.facets[nb].neighbors[s] = id;
                    }
                }
                // ridges through the apex: drop one horizon-ridge vertex
                for m in 0..k - 1 {
                    let mut key: Vec<usize> = verts[..k - 1]
                        .iter()
                        .enumerate()
                        .filter(|&(q, _)| q != m)
                        .map(|(_, &v)| v)
                        .collect();
                    key.sort_unstable();
                    if let Some((other, om)) = ridge_map.remove(&key) {
                        self.facets[id].neighbors[m] = other;
                        self.facets[other].neighbors[om] = id;
                    } else {
                        ridge_map.insert(key, (id, m));
                    }
                }
                created.push(id);
            }
            debug_assert!(ridge_map.is_empty(), "unmatched ridges in hull update");

            // reassign conflict points of the removed facets
            let mut orphans: Vec<usize> = Vec::new();
            for &f in &visible {
                let fa = &mut self.facets[f];
                fa.alive = false;
                orphans.append(&mut fa.outside);
            }
            for p in orphans {
                if p == apex {
                    continue;
                }
                for &nf in &created {
                    let d = self.dist(nf, p);
                    if d > self.eps {
                        self.push_outside(nf, p, d);
                        break;
                    }
                }
            }
            for &nf in &created {
                if !self.facets[nf].outside.is_empty() {
                    work.push(nf);
                }
            }
        }
    }

    fn finish(self) -> SpanHull {
        let k = self.k;
        let mut cells = Vec::new();
        let mut used = vec![false; self.pts.len()];
        let mut volume = 0.0;
        for f in self.facets.iter().filter(|f| f.alive) {
            let verts: Vec<usize> = f.verts[..k].to_vec();
            for &v in &verts {
                used[v] = true;
            }
            // fan decomposition from the interior point
            volume += f.measure * (f.offset - f.normal.dot(&self.interior)) / k as f64;
            cells.push(SpanCell {
                verts,
                normal: f.normal,
                offset: f.offset,
                measure: f.measure,
            });
        }
        let vertices = (0..self.pts.len()).filter(|&i| used[i]).collect();
        SpanHull {
            vertices,
            cells,
            volume,
        }
    }
}
