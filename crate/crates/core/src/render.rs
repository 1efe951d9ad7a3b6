//! SVG contour plots of planar stochastic models.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{Polytope, Vector};
use crate::model::StochasticModel;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 30.0;

/// Parses `lo:hi:count` into `count` evenly spaced levels, endpoints included.
pub fn parse_levels(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidConfig(format!("levels {s:?}: expected lo:hi:count"));
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, count] = parts.as_slice() else {
        return Err(bad());
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(bad());
    }
    Ok(match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
            .collect(),
    })
}

/// Nonempty superlevel sets of `m` at the given levels, in input order.
pub fn level_polygons(m: &StochasticModel, levels: &[f64]) -> Result<Vec<(f64, Polytope)>> {
    if m.dim() != 2 {
        return Err(Error::RenderDimension(m.dim()));
    }
    let mut out = Vec::new();
    for &t in levels {
        if t > m.max() {
            continue;
        }
        let set = m.superlevel(t)?;
        if !set.is_empty() {
            out.push((t, set));
        }
    }
    Ok(out)
}

/// SVG document with axes and one closed polyline per nonempty level set.
pub fn svg_contours(m: &StochasticModel, levels: &[f64]) -> Result<String> {
    let polys = level_polygons(m, levels)?;
    let support = m.support();
    let (mut lo, mut hi) = (Vector::new(&[-1.0, -1.0]), Vector::new(&[1.0, 1.0]));
    for v in support.vertices() {
        for k in 0..2 {
            lo[k] = lo[k].min(v[k]);
            hi[k] = hi[k].max(v[k]);
        }
    }
    let half = 0.5 * (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let center = (lo + hi) * 0.5;
    let scale = (SIZE - 2.0 * MARGIN) / (2.0 * half);
    let map = |p: &Vector| {
        (
            SIZE / 2.0 + (p[0] - center[0]) * scale,
            SIZE / 2.0 - (p[1] - center[1]) * scale,
        )
    };
    let (ox, oy) = map(&Vector::new(&[0.0, 0.0]));

    let mut s = String::new();
    let w = &mut s;
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(w, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#).unwrap();
    writeln!(
        w,
        r##"<g class="axes" stroke="#888888" stroke-width="1"><line x1="0" y1="{oy:.3}" x2="{SIZE}" y2="{oy:.3}"/><line x1="{ox:.3}" y1="0" x2="{ox:.3}" y2="{SIZE}"/></g>"##
    )
    .unwrap();
    writeln!(w, r##"<g class="levels" fill="none" stroke="#1f4e9c" stroke-width="1">"##).unwrap();
    for (t, poly) in &polys {
        let mut ring = poly.polygon();
        if let Some(first) = ring.first().copied() {
            ring.push(first);
        }
        let pts: Vec<String> = ring
            .iter()
            .map(|p| {
                let (x, y) = map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        writeln!(w, r#"<polyline data-level="{t}" points="{}"/>"#, pts.join(" ")).unwrap();
    }
    writeln!(w, "</g>").unwrap();
    writeln!(w, "</svg>").unwrap();
    Ok(s)
}

/// Writes [`svg_contours`] to `path`.
pub fn render_svg_contours(m: &StochasticModel, levels: &[f64], path: &Path) -> Result<()> {
    let svg = svg_contours(m, levels)?;
    std::fs::write(path, svg).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Vertices of every polyline in an SVG produced by [`svg_contours`],
/// without the closing repeat, keyed by level.
pub fn parse_svg_polylines(svg: &str) -> Vec<(f64, Vec<(f64, f64)>)> {
    let mut out = Vec::new();
    for line in svg.lines().filter(|l| l.starts_with("<polyline")) {
        let attr = |name: &str| {
            let key = format!("{name}=\"");
            let start = line.find(&key)? + key.len();
            let len = line[start..].find('"')?;
            Some(&line[start..start + len])
        };
        let (Some(level), Some(points)) = (attr("data-level"), attr("points")) else {
            continue;
        };
        let mut pts: Vec<(f64, f64)> = points
            .split_whitespace()
            .filter_map(|pair| {
                let (x, y) = pair.split_once(',')?;
                Some((x.parse().ok()?, y.parse().ok()?))
            })
            .collect();
        if pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        if let Ok(level) = level.parse() {
            out.push((level, pts));
        }
    }
    out
}
