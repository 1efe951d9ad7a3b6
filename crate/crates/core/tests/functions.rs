use std::f64::consts::PI;

use isolab::geometry::*;
use isolab::model::*;
use isolab::pconcave::*;
use isolab::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn v(c: &[f64]) -> Vector {
    Vector::new(c)
}

fn poly(pts: &[[f64; 2]]) -> Polytope {
    let vs: Vec<Vector> = pts.iter().map(|c| v(c)).collect();
    convex_hull(&vs, 2).unwrap()
}

fn shoelace(ring: &[Vector]) -> f64 {
    let n = ring.len();
    (0..n)
        .map(|i| ring[i][0] * ring[(i + 1) % n][1] - ring[(i + 1) % n][0] * ring[i][1])
        .sum::<f64>()
        .abs()
        / 2.0
}

/// Composite Simpson rule, used as an independent high-precision oracle.
fn simpson(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        s += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn triangle() -> Polytope {
    poly(&[[0.0, 0.0], [1.0, 0.0], [0.0, 2.0]])
}

fn tent_on_triangle() -> PConcaveFunction {
    PConcaveFunction::tent(triangle(), v(&[0.25, 0.5]), 1.0, 1.0).unwrap()
}

fn built_ins() -> Vec<PConcaveFunction> {
    let g = PConcaveFunction::gaussian(2, 1.0, 0.0).unwrap();
    vec![
        g.clone(),
        truncate(&g, 0.05).unwrap(),
        PConcaveFunction::indicator(triangle(), f64::INFINITY).unwrap(),
        tent_on_triangle(),
        PConcaveFunction::tent(triangle(), v(&[0.25, 0.5]), 2.0, -0.5).unwrap(),
        rearrange(&tent_on_triangle()),
        steiner_symmetral_fn(&tent_on_triangle(), &v(&[0.6, 0.8])).unwrap().function,
    ]
}

#[test]
fn tent_level_matches_edge_interpolation() {
    let sq = poly(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]);
    let apex = v(&[0.5, 0.5]);
    let tent = PConcaveFunction::tent(sq.clone(), apex, 1.0, 1.0).unwrap();
    // on the segment apex → vertex the tent is linear from 1 to 0
    let t = 0.5;
    let ring: Vec<Vector> = sq.polygon().iter().map(|c| apex + (*c - apex) * (1.0 - t)).collect();
    let set = tent.superlevel(t).unwrap();
    assert!((set.volume() - shoelace(&ring)).abs() < 1e-15);
    assert!((set.volume() - 0.25).abs() < 1e-15);
    for x in &ring {
        assert!((tent.eval(x).unwrap() - t).abs() < 1e-12);
    }
}

#[test]
fn gaussian_layer_cake_matches_simpson_oracle() {
    let g = PConcaveFunction::gaussian(2, 1.0, 0.0).unwrap();
    let q = Quadrature::default();
    // t = e^{-s²}: ∫₀¹ h(t) dt = ∫₀^∞ h(e^{-s²}) 2s e^{-s²} ds
    let w0 = simpson(0.0, 9.0, 200_000, |s| PI * s * s * 2.0 * s * (-s * s).exp());
    let w1 = simpson(0.0, 9.0, 200_000, |s| PI * s * 2.0 * s * (-s * s).exp());
    let got0 = layer_cake(&g, &q, |l| Ok(l.quermassintegral(0)?)).unwrap();
    let got1 = layer_cake(&g, &q, |l| Ok(l.quermassintegral(1)?)).unwrap();
    assert!((got0 - w0).abs() < 1e-9 && (w0 - PI).abs() < 1e-12);
    assert!((got1 - w1).abs() < 1e-9 && (w1 - PI.powf(1.5) / 2.0).abs() < 1e-12);
}

#[test]
fn rearrangement_preserves_level_volumes() {
    let f = tent_on_triangle();
    let r = rearrange(&f);
    assert_eq!(r.kind_name(), "rearranged");
    assert_eq!(r.max(), f.max());
    for k in 0..50 {
        let t = (k as f64 + 0.5) / 50.0;
        let ring = f.superlevel(t).unwrap().as_polytope().unwrap().polygon();
        let exact = shoelace(&ring);
        assert!((r.superlevel(t).unwrap().volume() - exact).abs() < 1e-9);
    }
    assert!((integral(&r) - integral(&f)).abs() < 1e-12);
    let mut last = f64::INFINITY;
    for k in 1..=100 {
        let SuperlevelSet::Ball { radius, .. } = r.superlevel(k as f64 / 100.0).unwrap() else {
            panic!("ball expected")
        };
        assert!(radius <= last);
        last = radius;
    }
}

#[test]
fn norms_are_preserved_by_rearrangement() {
    let q = Quadrature::default();
    for f in built_ins() {
        let r = rearrange(&f);
        let (a, b) = (integral_with(&f, &q), integral_with(&r, &q));
        assert!((a - b).abs() <= 1e-6 * a.max(1.0), "{}: {a} vs {b}", f.kind_name());
        assert_eq!(f.max(), r.max());
    }
}

fn p_concave_at(f: &PConcaveFunction, rng: &mut ChaCha8Rng, pairs: usize) {
    let (lo, hi) = f.bounding_box().unwrap();
    let n = f.dim();
    let draw = |rng: &mut ChaCha8Rng| {
        let mut x = Vector::zeros(n);
        for k in 0..n {
            x[k] = lo[k] + (hi[k] - lo[k]) * rng.gen::<f64>();
        }
        x
    };
    let mut checked = 0;
    while checked < pairs {
        let (x, y) = (draw(rng), draw(rng));
        let (fx, fy) = (f.eval(&x).unwrap(), f.eval(&y).unwrap());
        if fx * fy <= 0.0 {
            continue;
        }
        let fm = f.eval(&((x + y) * 0.5)).unwrap();
        let bound = p_mean(fx, fy, f.p());
        assert!(fm >= bound - 1e-9 * bound.max(1.0), "{}: f(mid) = {fm} < M_p = {bound}", f.kind_name());
        checked += 1;
    }
}

#[test]
fn midpoint_p_concavity_of_built_ins() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for f in built_ins() {
        p_concave_at(&f, &mut rng, 1000);
    }
}

#[test]
fn superlevel_sets_are_nested() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for f in built_ins() {
        for _ in 0..50 {
            let mut t = [rng.gen::<f64>() * f.max(), rng.gen::<f64>() * f.max()];
            t.sort_by(f64::total_cmp);
            let (a, b) = (f.superlevel(t[0]).unwrap(), f.superlevel(t[1]).unwrap());
            if b.is_empty() {
                continue;
            }
            for u in DirectionGrid::for_dim(2).directions().iter().step_by(128) {
                assert!(b.support(u).unwrap() <= a.support(u).unwrap() + 1e-12);
            }
        }
    }
}

#[test]
fn eval_is_zero_outside_the_box() {
    for f in built_ins() {
        let (lo, hi) = f.bounding_box().unwrap();
        let outside = [hi + v(&[1e-6, 0.0]), lo - v(&[0.0, 1e-6]), v(&[100.0, 100.0])];
        for x in &outside {
            assert_eq!(f.eval(x).unwrap(), 0.0, "{}", f.kind_name());
        }
    }
}

#[test]
fn steiner_symmetral_preserves_integral() {
    let f = tent_on_triangle();
    let fu = steiner_symmetral_fn(&f, &Vector::unit(2, 0)).unwrap().function;
    let q = Quadrature::default();
    let a = layer_cake(&fu, &q, |s| Ok(s.volume())).unwrap();
    assert!((a - integral(&f)).abs() < 1e-9);
    let ind = PConcaveFunction::indicator(triangle(), f64::INFINITY).unwrap();
    let s = steiner_symmetral_fn(&ind, &v(&[1.0, 1.0])).unwrap().function;
    assert!((integral(&s) - 1.0).abs() < 1e-12);
}

#[test]
fn iterated_steiner_symmetrization_approaches_the_ball() {
    let f = PConcaveFunction::indicator(triangle(), f64::INFINITY).unwrap();
    let star = rearrange(&f);
    let t = 0.5;
    let target = star.superlevel(t).unwrap();
    let start = f.superlevel(t).unwrap().hausdorff(&target).unwrap();
    let mut g = f.clone();
    for k in 0..20 {
        g = steiner_symmetral_fn(&g, &Vector::unit(2, k % 2)).unwrap().function;
    }
    let end = g.superlevel(t).unwrap().hausdorff(&target).unwrap();
    assert!(end <= 0.5 * start, "{start} -> {end}");
}

#[test]
fn lazy_symmetral_of_a_model_matches_its_levels() {
    let f = tent_on_triangle();
    let mut rng = RngStream::new(5, 0);
    let s = sample_hypograph(&f, 40, &mut rng).unwrap();
    let m = PConcaveFunction::from_model(build_model(&s, 1.0, None).unwrap());
    let u = Vector::unit(2, 0);
    let mu = steiner_symmetral_fn(&m, &u).unwrap().function;
    assert_eq!(mu.kind_name(), "steiner_symmetrized");
    for t in [0.1, 0.3, 0.6] {
        let a = mu.superlevel(t).unwrap().volume();
        let b = m.superlevel(t).unwrap().volume();
        assert!((a - b).abs() < 1e-12);
    }
    // eval agrees with level membership
    let x = v(&[0.0, 0.5]);
    let val = mu.eval(&x).unwrap();
    assert!(mu.superlevel(val * (1.0 - 1e-9)).unwrap().contains(&x));
    assert!(!mu.superlevel(val * 1.001 + 1e-9).unwrap().contains(&x) || val == mu.max());
}

#[test]
fn hypograph_sampling_is_uniform() {
    let sq = poly(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]);
    let f = PConcaveFunction::indicator(sq, f64::INFINITY).unwrap();
    let mut rng = RngStream::new(2024, 1);
    let n = 100_000;
    let s = sample_hypograph(&f, n, &mut rng).unwrap();
    let mut bins = [0usize; 16];
    let mut zbins = [0usize; 16];
    for (x, z) in &s.points {
        assert!(f.eval(x).unwrap() >= *z && *z > 0.0);
        let (i, j) = ((x[0] * 4.0) as usize, (x[1] * 4.0) as usize);
        bins[i.min(3) * 4 + j.min(3)] += 1;
        zbins[((z * 16.0) as usize).min(15)] += 1;
    }
    let expected = n as f64 / 16.0;
    let chi2 = |b: &[usize; 16]| b.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum::<f64>();
    // 99th percentile of χ² with 15 degrees of freedom
    assert!(chi2(&bins) < 30.578, "spatial χ² = {}", chi2(&bins));
    assert!(chi2(&zbins) < 30.578, "height χ² = {}", chi2(&zbins));
    assert!((s.acceptance_rate() - 1.0).abs() < 1e-12);
}

#[test]
fn sampling_is_reproducible() {
    let f = tent_on_triangle();
    let a = sample_hypograph(&f, 500, &mut RngStream::for_trial(9, 4, Role::Original)).unwrap();
    let b = sample_hypograph(&f, 500, &mut RngStream::for_trial(9, 4, Role::Original)).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    let c = sample_hypograph(&f, 500, &mut RngStream::for_trial(9, 4, Role::Rearranged)).unwrap();
    assert_ne!(a.to_csv(), c.to_csv());
    assert!(a.to_csv().starts_with("x1,x2,z\n"));
    let first = a.to_csv().lines().nth(1).unwrap().to_string();
    let parsed: Vec<f64> = first.split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(parsed[0], a.points[0].0[0]);
    assert_eq!(parsed[2], a.points[0].1);
}

#[test]
fn sampling_errors() {
    let f = tent_on_triangle();
    let mut rng = RngStream::new(1, 1);
    assert!(matches!(sample_hypograph(&f, 2, &mut rng), Err(Error::TooFewPoints { .. })));
    let needle = poly(&[[0.0, 0.0], [1.0, 0.0], [0.5, 1e-4], [0.5, -1e-4]]);
    let rotated: Vec<Vector> = needle
        .vertices()
        .iter()
        .map(|p| v(&[(p[0] - p[1]) / 2f64.sqrt(), (p[0] + p[1]) / 2f64.sqrt()]))
        .collect();
    let diag = PConcaveFunction::indicator(convex_hull(&rotated, 2).unwrap(), f64::INFINITY).unwrap();
    assert!(matches!(sample_hypograph(&diag, 10, &mut rng), Err(Error::LowAcceptance { .. })));
}

/// Barycentric enumeration oracle: the extreme lifted height above x over
/// all (n+1)-subsets of lifted points whose projection contains x.
fn brute_force_height(points: &[Vector], x: &Vector, maximize: bool) -> Option<f64> {
    let mut best: Option<f64> = None;
    let mut take = |w: f64| {
        best = Some(match best {
            None => w,
            Some(b) if maximize => b.max(w),
            Some(b) => b.min(w),
        })
    };
    let m = points.len();
    for i in 0..m {
        for j in i + 1..m {
            // segments cover fibers over degenerate triangles
            let (a, b) = (points[i], points[j]);
            let d = b - a;
            let dx = v(&[d[0], d[1]]);
            let len2 = dx.norm_sq();
            if len2 > 0.0 {
                let lam = (v(&[x[0] - a[0], x[1] - a[1]])).dot(&dx) / len2;
                let foot = v(&[a[0] + lam * d[0], a[1] + lam * d[1]]);
                if (0.0..=1.0).contains(&lam) && foot.distance(x) < 1e-12 {
                    take(a[2] + lam * d[2]);
                }
            }
            for k in j + 1..m {
                let c = points[k];
                let det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
                if det.abs() < 1e-14 {
                    continue;
                }
                let l1 = ((x[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (x[1] - a[1])) / det;
                let l2 = ((b[0] - a[0]) * (x[1] - a[1]) - (x[0] - a[0]) * (b[1] - a[1])) / det;
                let l0 = 1.0 - l1 - l2;
                if l0 >= -1e-12 && l1 >= -1e-12 && l2 >= -1e-12 {
                    take(l0 * a[2] + l1 * b[2] + l2 * c[2]);
                }
            }
        }
    }
    best
}

#[test]
fn model_eval_matches_barycentric_enumeration() {
    let f = tent_on_triangle();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for (seed, p) in [(1u64, 1.0), (2, 0.0), (3, -0.5), (4, 0.5)] {
        let fe = truncate(&f, 0.05).unwrap();
        let s = sample_hypograph(&fe, 12, &mut RngStream::new(seed, 0)).unwrap();
        let m = build_model(&s, p, None).unwrap();
        let lift = |z: f64| if p == 0.0 { -z.ln() } else { z.powf(p) };
        let mut pts: Vec<Vector> = s.points.iter().map(|(x, z)| x.lift(lift(*z))).collect();
        if p > 0.0 {
            pts.extend(s.points.iter().map(|(x, _)| x.lift(0.0)));
        }
        for _ in 0..200 {
            let x = v(&[rng.gen::<f64>() * 1.1 - 0.05, rng.gen::<f64>() * 2.1 - 0.05]);
            let got = m.eval(&x).unwrap();
            let want = match brute_force_height(&pts, &x, p > 0.0) {
                None => 0.0,
                Some(w) if p == 0.0 => (-w).exp(),
                Some(w) => w.powf(1.0 / p),
            };
            assert!((got - want).abs() <= 1e-6, "p={p}: {got} vs {want} at {x:?}");
        }
    }
}

#[test]
fn model_is_dominated_and_nested_in_n() {
    let g = PConcaveFunction::gaussian(2, 1.0, 0.0).unwrap();
    let ge = truncate(&g, 0.05).unwrap();
    let s = sample_hypograph(&ge, 400, &mut RngStream::new(11, 0)).unwrap();
    let small = build_model(&s.prefix(100), 0.0, None).unwrap();
    let big = build_model(&s, 0.0, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let x = v(&[rng.gen::<f64>() * 4.0 - 2.0, rng.gen::<f64>() * 4.0 - 2.0]);
        let (a, b) = (small.eval(&x).unwrap(), big.eval(&x).unwrap());
        assert!(b <= ge.eval(&x).unwrap() + 1e-9);
        assert!(a <= b + 1e-9);
    }
    let grid = DirectionGrid::for_dim(2);
    for t in [0.06, 0.2, 0.5, 0.8] {
        let lev = big.superlevel(t).unwrap();
        if lev.is_empty() {
            continue;
        }
        let true_level = ge.superlevel(t).unwrap();
        for u in grid.directions().iter().step_by(16) {
            assert!(support(&lev, u).unwrap() <= true_level.support(u).unwrap() + 1e-9);
        }
    }
}

#[test]
fn model_levels_are_nested() {
    let f = tent_on_triangle();
    let s = sample_hypograph(&f, 50, &mut RngStream::new(12, 0)).unwrap();
    for p in [1.0, 0.0] {
        let fe = truncate(&f, 0.05).unwrap();
        let s = if p <= 0.0 { sample_hypograph(&fe, 50, &mut RngStream::new(13, 0)).unwrap() } else { s.clone() };
        let m = build_model(&s, p, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let mut t = [rng.gen::<f64>() * m.max(), rng.gen::<f64>() * m.max()];
            t.sort_by(f64::total_cmp);
            let (a, b) = (m.superlevel(t[0]).unwrap(), m.superlevel(t[1]).unwrap());
            if b.is_empty() {
                continue;
            }
            for u in DirectionGrid::for_dim(2).directions().iter().step_by(64) {
                assert!(support(&b, u).unwrap() <= support(&a, u).unwrap() + 1e-9);
            }
        }
    }
}

#[test]
fn model_is_p_concave() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f = tent_on_triangle();
    for p in [1.0, 0.0, -1.0] {
        let fe = truncate(&f, 0.05).unwrap();
        let s = sample_hypograph(&fe, 60, &mut RngStream::new(21, 0)).unwrap();
        let m = PConcaveFunction::from_model(build_model(&s, p, None).unwrap());
        p_concave_at(&m, &mut rng, 1000);
    }
}

#[test]
fn model_is_reflection_equivariant() {
    let f = tent_on_triangle();
    let s = sample_hypograph(&f, 40, &mut RngStream::new(31, 0)).unwrap();
    let u = v(&[0.6, 0.8]);
    let reflected: Vec<(Vector, f64)> = s
        .points
        .iter()
        .map(|(x, z)| (*x - u * (2.0 * x.dot(&u)), *z))
        .collect();
    let rs = HypographSample::new(reflected, "reflected");
    for p in [1.0, f64::INFINITY] {
        let a = build_model(&s, p, None).unwrap();
        let b = build_model(&rs, p, None).unwrap();
        for t in [0.1, 0.4, 0.7] {
            let la = a.superlevel(t).unwrap();
            let lb = b.superlevel(t).unwrap();
            if la.is_empty() {
                assert!(lb.is_empty());
                continue;
            }
            let d = hausdorff_distance(&reflect(&la, &u).unwrap(), &lb).unwrap();
            assert!(d < 1e-9, "p={p}, t={t}: {d}");
        }
    }
}

#[test]
fn general_combination_body() {
    // C = segment between e1+e2 and e2+e3 (scaled by 1/2): midpoints
    let pts = vec![(v(&[0.0, 0.0]), 0.5), (v(&[2.0, 0.0]), 1.0), (v(&[0.0, 2.0]), 0.25)];
    let s = HypographSample::new(pts, "test");
    let c = vec![vec![0.5, 0.5, 0.0], vec![0.0, 0.5, 0.5], vec![0.5, 0.0, 0.5]];
    let m = build_model(&s, 1.0, Some(&c)).unwrap();
    // lifted tops: midpoints of the three lifted points
    let mut tops: Vec<Vector> = m
        .lifted_hull()
        .vertices()
        .iter()
        .filter(|p| p[2] > 0.0)
        .copied()
        .collect();
    tops.sort_by(|a, b| a.lex_cmp(b));
    assert_eq!(tops, vec![v(&[0.0, 1.0, 0.375]), v(&[1.0, 0.0, 0.75]), v(&[1.0, 1.0, 0.625])]);
    let bad = vec![vec![-1.0, 1.0, 1.0]];
    assert!(matches!(build_model(&s, 1.0, Some(&bad)), Err(Error::InvalidParameter(_))));
}
