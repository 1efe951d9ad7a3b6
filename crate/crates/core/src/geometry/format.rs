//! Plain-text polytope files: a `dim <d>` header, then one vertex per line
//! as `d` whitespace-separated decimals. Lines starting with `#` are
//! comments.

use std::fmt::Write as _;
use std::path::Path;

use super::polytope::{convex_hull, Polytope};
use super::vector::Vector;
use super::GeometryError;

pub fn parse_points(text: &str) -> Result<(usize, Vec<Vector>), GeometryError> {
    let mut dim: Option<usize> = None;
    let mut pts = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |msg: String| GeometryError::Parse {
            line: lineno + 1,
            msg,
        };
        match dim {
            None => {
                let mut it = line.split_whitespace();
                if it.next() != Some("dim") {
                    return Err(parse_err("expected `dim <d>` header".into()));
                }
                let d: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| parse_err("bad dimension".into()))?;
                if !(1..=4).contains(&d) {
                    return Err(GeometryError::DimensionOutOfRange(d));
                }
                dim = Some(d);
            }
            Some(d) => {
                let coords: Vec<f64> = line
                    .split_whitespace()
                    .map(|s| s.parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| parse_err(e.to_string()))?;
                if coords.len() != d {
                    return Err(parse_err(format!("expected {d} coordinates, got {}", coords.len())));
                }
                pts.push(Vector::new(&coords));
            }
        }
    }
    let dim = dim.ok_or(GeometryError::Parse {
        line: 0,
        msg: "missing `dim` header".into(),
    })?;
    Ok((dim, pts))
}

/// Parses a polytope file and returns the hull of its points.
pub fn parse_polytope(text: &str) -> Result<Polytope, GeometryError> {
    let (dim, pts) = parse_points(text)?;
    convex_hull(&pts, dim)
}

pub fn read_polytope(path: &Path) -> Result<Polytope, GeometryError> {
    let text = std::fs::read_to_string(path).map_err(|e| GeometryError::Io(e.to_string()))?;
    parse_polytope(&text)
}

/// Writes vertices with round-trip exact decimal representation.
pub fn format_polytope(p: &Polytope) -> String {
    let mut out = format!("dim {}\n", p.dim());
    for v in p.vertices() {
        let line: Vec<String> = v.as_slice().iter().map(|c| format!("{c:?}")).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}
