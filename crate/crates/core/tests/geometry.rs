use std::f64::consts::PI;

use isolab::geometry::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn v(c: &[f64]) -> Vector {
    Vector::new(c)
}

fn random_points(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Vec<Vector> {
    (0..n)
        .map(|_| {
            let c: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
            Vector::new(&c)
        })
        .collect()
}

fn unit_cube() -> Polytope {
    let pts: Vec<Vector> = (0..8)
        .map(|i| v(&[(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64]))
        .collect();
    convex_hull(&pts, 3).unwrap()
}

fn shoelace(ring: &[Vector]) -> f64 {
    let n = ring.len();
    (0..n)
        .map(|i| {
            let (a, b) = (ring[i], ring[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
        / 2.0
}

#[test]
fn hull_drops_interior_point() {
    let pts = [
        v(&[0.0, 0.0]),
        v(&[1.0, 0.0]),
        v(&[0.0, 1.0]),
        v(&[1.0, 1.0]),
        v(&[0.5, 0.5]),
    ];
    let h = convex_hull(&pts, 2).unwrap();
    assert_eq!(h.vertices().len(), 4);
    assert!(!h.vertices().contains(&v(&[0.5, 0.5])));
}

#[test]
fn collinear_points_form_segment() {
    let h = convex_hull(&[v(&[0.0, 0.0]), v(&[1.0, 1.0]), v(&[2.0, 2.0])], 2).unwrap();
    assert_eq!(h.affine_dim(), 1);
    assert_eq!(volume(&h), 0.0);
    assert_eq!(h.vertices(), &[v(&[0.0, 0.0]), v(&[2.0, 2.0])]);
}

#[test]
fn hull_errors() {
    assert_eq!(convex_hull(&[], 2).unwrap_err(), GeometryError::EmptyInput);
    assert_eq!(
        convex_hull(&[v(&[0.0, 0.0])], 5).unwrap_err(),
        GeometryError::DimensionOutOfRange(5)
    );
    assert_eq!(
        convex_hull(&[v(&[f64::NAN, 0.0])], 2).unwrap_err(),
        GeometryError::NonFinite
    );
}

#[test]
fn hull_facets_support_all_points_in_every_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for dim in 2..=4 {
        for _ in 0..20 {
            let pts = random_points(&mut rng, 40, dim);
            let h = convex_hull(&pts, dim).unwrap();
            assert!(h.is_full_dimensional());
            for f in h.facets() {
                assert!((f.normal.norm() - 1.0).abs() < 1e-12);
                let on = h
                    .vertices()
                    .iter()
                    .filter(|x| (f.normal.dot(x) - f.offset).abs() < 1e-9)
                    .count();
                assert!(on >= dim, "facet carries {on} vertices in dim {dim}");
                for p in &pts {
                    assert!(f.normal.dot(p) - f.offset <= 1e-9);
                }
            }
        }
    }
}

#[test]
fn four_dimensional_volumes() {
    let mut corners = Vec::new();
    for i in 0..16 {
        corners.push(v(&[
            (i & 1) as f64,
            ((i >> 1) & 1) as f64,
            ((i >> 2) & 1) as f64,
            ((i >> 3) & 1) as f64,
        ]));
    }
    let cube = convex_hull(&corners, 4).unwrap();
    assert_eq!(cube.vertices().len(), 16);
    assert!((volume(&cube) - 1.0).abs() < 1e-12);
    let mut simplex = vec![Vector::zeros(4)];
    simplex.extend((0..4).map(|i| Vector::unit(4, i)));
    assert!((volume(&convex_hull(&simplex, 4).unwrap()) - 1.0 / 24.0).abs() < 1e-15);
}

/// Monte Carlo oracle: count uniform samples of the unit cube that satisfy
/// every facet inequality (facets validated independently above).
#[test]
fn random_hull_volume_matches_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pts = random_points(&mut rng, 20, 3);
    let hull = convex_hull(&pts, 3).unwrap();
    for f in hull.facets() {
        for p in &pts {
            assert!(f.normal.dot(p) - f.offset <= 1e-9);
        }
    }
    let samples = 1_000_000;
    let mut hits = 0usize;
    for _ in 0..samples {
        let x = v(&[rng.gen(), rng.gen(), rng.gen()]);
        if hull.facets().iter().all(|f| f.normal.dot(&x) <= f.offset) {
            hits += 1;
        }
    }
    let frac = hits as f64 / samples as f64;
    let sigma = (frac * (1.0 - frac) / samples as f64).sqrt();
    let vol = volume(&hull);
    assert!((vol - frac).abs() <= 3.0 * sigma, "volume {vol} vs MC {frac} ± {sigma}");
}

#[test]
fn planar_volume_matches_shoelace() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let pts = random_points(&mut rng, 50, 2);
        let h = convex_hull(&pts, 2).unwrap();
        assert!((volume(&h) - shoelace(&h.polygon())).abs() < 1e-12);
    }
    assert_eq!(volume(&unit_cube()), 1.0);
}

#[test]
fn clip_complementarity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for dim in 2..=4 {
        for _ in 0..50 {
            let body = convex_hull(&random_points(&mut rng, dim + 1, dim), dim).unwrap();
            let normal: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>() - 0.5).collect();
            let normal = v(&normal);
            let c = body.centroid().unwrap();
            let h = Halfspace::new(normal, normal.dot(&c) + 0.1 * (rng.gen::<f64>() - 0.5)).unwrap();
            let a = volume(&clip(&body, &h));
            let b = volume(&clip(&body, &h.complement()));
            assert!((a + b - volume(&body)).abs() < 1e-9, "dim {dim}: {a} + {b} vs {}", volume(&body));
        }
    }
}

/// Fubini oracle: the projected slice is integrated as chord lengths along
/// x₁, where each chord comes from intersecting all vertex pairs of the
/// clipped body with the plane x₁ = c.
#[test]
fn slice_area_matches_fubini_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let pts = random_points(&mut rng, 15, 3);
        let hull = convex_hull(&pts, 3).unwrap();
        let z = 0.2 + 0.6 * rng.gen::<f64>();
        let slice = slice_project(&hull, z, SliceMode::AtMost);

        // candidate points of hull ∩ {w ≤ z}
        let vs = hull.vertices();
        let mut cand: Vec<Vector> = vs.iter().filter(|p| p[2] <= z).copied().collect();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let (a, b) = (vs[i], vs[j]);
                if (a[2] - z) * (b[2] - z) < 0.0 {
                    let t = (z - a[2]) / (b[2] - a[2]);
                    cand.push(a + (b - a) * t);
                }
            }
        }
        let mut xs: Vec<f64> = cand.iter().map(|p| p[0]).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let chord = |x: f64| {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for i in 0..cand.len() {
                for j in i..cand.len() {
                    let (a, b) = (cand[i], cand[j]);
                    let y = if (a[0] - x).abs() < 1e-15 {
                        Some(a[1])
                    } else if (a[0] - x) * (b[0] - x) < 0.0 {
                        Some(a[1] + (b[1] - a[1]) * (x - a[0]) / (b[0] - a[0]))
                    } else {
                        None
                    };
                    if let Some(y) = y {
                        lo = lo.min(y);
                        hi = hi.max(y);
                    }
                }
            }
            if hi >= lo {
                hi - lo
            } else {
                0.0
            }
        };
        // chord length is linear between consecutive breakpoints
        let area: f64 = xs
            .windows(2)
            .map(|w| (w[1] - w[0]) * chord(0.5 * (w[0] + w[1])))
            .sum();
        assert!((volume(&slice) - area).abs() < 1e-8, "{} vs {area}", volume(&slice));
    }
}

#[test]
fn quermassintegrals_of_square_cube_and_disk() {
    let sq = convex_hull(&[v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[0.0, 1.0]), v(&[1.0, 1.0])], 2).unwrap();
    let w = quermassintegrals(&sq).unwrap();
    assert!((w[0] - 1.0).abs() < 1e-12 && (w[1] - 2.0).abs() < 1e-12 && (w[2] - PI).abs() < 1e-12);
    let w = quermassintegrals(&unit_cube()).unwrap();
    for (got, want) in w.iter().zip([1.0, 2.0, PI, 4.0 * PI / 3.0]) {
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }
    let disk = regular_polygon(512, 1.0);
    assert!((quermassintegral(&disk, 0).unwrap() - PI).abs() < 1e-3);
    assert!((quermassintegral(&disk, 1).unwrap() - PI).abs() < 1e-3);
}

#[test]
fn ball_like_polytope_quermassintegrals_in_space() {
    // fine inscribed polytope of the unit ball: W_i → 4π/3
    let grid = DirectionGrid::for_dim(3);
    let ball = convex_hull(grid.directions(), 3).unwrap();
    for i in 0..3 {
        let w = quermassintegral(&ball, i).unwrap();
        assert!((w / (4.0 * PI / 3.0) - 1.0).abs() < 2e-3, "W{i} = {w}");
    }
}

#[test]
fn projection_examples() {
    let sq = convex_hull(&[v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[0.0, 1.0]), v(&[1.0, 1.0])], 2).unwrap();
    assert!((projection_volume(&sq, &v(&[0.0, 1.0])).unwrap() - 1.0).abs() < 1e-15);
    let disk = regular_polygon(512, 1.0);
    for k in 0..16 {
        let th = 0.37 * k as f64;
        let p = projection_volume(&disk, &v(&[th.cos(), th.sin()])).unwrap();
        assert!((p - 2.0).abs() < 1e-4);
    }
}

/// Direct-projection oracle: hull of the projected vertices in an
/// orthonormal basis of u^⊥.
fn direct_projection(p: &Polytope, u: &Vector) -> f64 {
    let dim = p.dim();
    let mut basis: Vec<Vector> = Vec::new();
    for axis in 0..dim {
        let mut r = Vector::unit(dim, axis);
        r = r - *u * r.dot(u);
        for b in &basis {
            r = r - *b * r.dot(b);
        }
        if r.norm() > 1e-3 && basis.len() < dim - 1 {
            basis.push(r * (1.0 / r.norm()));
        }
    }
    let proj: Vec<Vector> = p
        .vertices()
        .iter()
        .map(|x| {
            let c: Vec<f64> = basis.iter().map(|b| x.dot(b)).collect();
            Vector::new(&c)
        })
        .collect();
    let q = convex_hull(&proj, dim - 1).unwrap();
    if dim == 2 {
        q.relative_volume()
    } else {
        volume(&q)
    }
}

#[test]
fn cauchy_formula_matches_direct_projection() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for dim in 2..=3 {
        for _ in 0..200 {
            let count = rng.gen_range(dim + 1..30);
            let p = convex_hull(&random_points(&mut rng, count, dim), dim).unwrap();
            let raw: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>() - 0.5).collect();
            let u = v(&raw).normalized().unwrap();
            let cauchy = projection_volume(&p, &u).unwrap();
            let direct = direct_projection(&p, &u);
            assert!((cauchy - direct).abs() <= 1e-8 * direct, "dim {dim}: {cauchy} vs {direct}");
        }
    }
}

#[test]
fn support_matches_vertex_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let pts = random_points(&mut rng, 30, 2);
    let p = convex_hull(&pts, 2).unwrap();
    for _ in 0..50 {
        let u = v(&[rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5]);
        let brute = pts.iter().map(|x| x.dot(&u)).fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(support(&p, &u).unwrap(), brute);
    }
}

#[test]
fn square_versus_inscribed_disk() {
    // square [-1,1]² and disk of radius 1: the corner sits √2 - 1 away
    let sq = convex_hull(&[v(&[-1.0, -1.0]), v(&[1.0, -1.0]), v(&[-1.0, 1.0]), v(&[1.0, 1.0])], 2).unwrap();
    let disk = regular_polygon(512, 1.0);
    let d = hausdorff_distance(&sq, &disk).unwrap();
    assert!((d - (2f64.sqrt() - 1.0)).abs() < 1e-3, "{d}");
}

#[test]
fn steiner_polynomial_of_parallel_bodies() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let count = rng.gen_range(3..15);
        let p = convex_hull(&random_points(&mut rng, count, 2), 2).unwrap();
        let w = quermassintegrals(&p).unwrap();
        for r in [0.1, 0.5, 1.0] {
            let scaled = regular_polygon(512, r);
            let sum = minkowski_sum_2d(&p, &scaled).unwrap();
            let expected = w[0] + 2.0 * r * w[1] + r * r * w[2];
            assert!(
                (volume(&sum) - expected).abs() <= 2e-3 * volume(&sum),
                "r={r}: {} vs {expected}",
                volume(&sum)
            );
        }
    }
}

#[test]
fn monotone_quermassintegrals_under_inclusion() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for dim in 2..=3 {
        for _ in 0..30 {
            let pts = random_points(&mut rng, 25, dim);
            let big = convex_hull(&pts, dim).unwrap();
            let small = convex_hull(&pts[..dim + 3], dim).unwrap();
            for u in DirectionGrid::for_dim(dim).directions().iter().step_by(64) {
                assert!(support(&small, u).unwrap() <= support(&big, u).unwrap() + 1e-12);
            }
            for i in 0..=dim {
                assert!(quermassintegral(&small, i).unwrap() <= quermassintegral(&big, i).unwrap() + 1e-12);
            }
        }
    }
}

fn random_polygon(rng: &mut ChaCha8Rng) -> Polytope {
    let count = rng.gen_range(3..12);
    convex_hull(&random_points(rng, count, 2), 2).unwrap()
}

#[test]
fn shadow_systems_are_volume_preserving_and_convex() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let k = random_polygon(&mut rng);
        let th = rng.gen::<f64>() * PI;
        let u = v(&[th.cos(), th.sin()]);
        let s = ShadowSystemPolygon::new(&k, &u).unwrap();
        let area = volume(&k);
        let ts: Vec<f64> = (0..21).map(|j| -1.0 + 0.1 * j as f64).collect();
        let bodies: Vec<Polytope> = ts.iter().map(|&t| s.evaluate(t).unwrap()).collect();
        for b in &bodies {
            assert!((volume(b) - area).abs() < 1e-12);
        }
        for i in 0..=2 {
            let w: Vec<f64> = bodies.iter().map(|b| quermassintegral(b, i).unwrap()).collect();
            for j in 1..20 {
                assert!(w[j] <= 0.5 * (w[j - 1] + w[j + 1]) + 1e-9);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_is_idempotent_and_order_free(
        raw in prop::collection::vec(prop::collection::vec(-10.0f64..10.0, 3), 4..40),
        seed in any::<u64>(),
    ) {
        let pts: Vec<Vector> = raw.iter().map(|c| Vector::new(c)).collect();
        let h = convex_hull(&pts, 3).unwrap();
        let again = convex_hull(h.vertices(), 3).unwrap();
        prop_assert_eq!(h.vertices(), again.vertices());

        let mut shuffled = pts.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        let h2 = convex_hull(&shuffled, 3).unwrap();
        prop_assert_eq!(h.vertices(), h2.vertices());
    }

    #[test]
    fn polygon_clip_complementarity(
        raw in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 2), 3..20),
        angle in 0.0f64..std::f64::consts::TAU,
        offset in -0.5f64..0.5,
    ) {
        let pts: Vec<Vector> = raw.iter().map(|c| Vector::new(c)).collect();
        let p = convex_hull(&pts, 2).unwrap();
        let h = Halfspace::new(v(&[angle.cos(), angle.sin()]), offset).unwrap();
        let total = volume(&clip(&p, &h)) + volume(&clip(&p, &h.complement()));
        prop_assert!((total - volume(&p)).abs() < 1e-9);
    }
}

#[test]
fn large_lifted_hull_is_fast_enough() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let pts: Vec<Vector> = (0..100_000)
        .map(|_| {
            let x: f64 = rng.gen::<f64>() * 2.0 - 1.0;
            let y: f64 = rng.gen::<f64>() * 2.0 - 1.0;
            let z: f64 = rng.gen::<f64>();
            v(&[x, y, x * x + y * y - z.ln()])
        })
        .collect();
    let h = convex_hull(&pts, 3).unwrap();
    for f in h.facets() {
        for p in pts.iter().step_by(97) {
            assert!(f.normal.dot(p) - f.offset <= 1e-8);
        }
    }
}
