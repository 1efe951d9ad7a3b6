//! Convex polytopes in dimension 1–4: hulls, clipping, slicing,
//! quermassintegrals, projections, Hausdorff distance and shadow systems.

mod clip;
mod format;
mod hausdorff;
mod hull;
mod measure;
mod minkowski;
mod polytope;
mod shadow;
mod sphere;
mod vector;

pub use clip::{clip, slice_project, SliceMode};
pub use format::{format_polytope, parse_points, parse_polytope, read_polytope};
pub use hausdorff::{distance_to_point, hausdorff_distance};
pub use measure::{
    projection_volume, quermassintegral, quermassintegrals, support, surface_area,
    total_mean_curvature, unit_ball_volume, volume,
};
pub use minkowski::{minkowski_sum_2d, regular_polygon};
pub use polytope::{convex_hull, Facet, Halfspace, Polytope};
pub use shadow::{reflect, steiner_symmetral, ShadowSystemPolygon};
pub use sphere::{DirectionGrid, CIRCLE_GRID, SPHERE_GRID};
pub use vector::{Vector, MAX_DIM};

use thiserror::Error;

/// Relative geometric tolerance for sidedness tests and vertex dedup.
pub const TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("no input points")]
    EmptyInput,
    #[error("dimension {0} is outside the supported range")]
    DimensionOutOfRange(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite coordinate in input")]
    NonFinite,
    #[error("operation requires a nonempty polytope")]
    EmptyPolytope,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("halfspace normal must be nonzero and finite")]
    DegenerateHalfspace,
    #[error("parameter {0} outside [-1, 1]")]
    ParameterOutOfRange(f64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o: {0}")]
    Io(String),
}
