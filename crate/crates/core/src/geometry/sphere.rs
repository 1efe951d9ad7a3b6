use std::f64::consts::PI;
use std::sync::OnceLock;

use super::vector::Vector;

/// Number of directions on the circle grid.
pub const CIRCLE_GRID: usize = 4096;
/// Number of directions on the 2-sphere grid.
pub const SPHERE_GRID: usize = 8192;

/// Fixed equal-weight direction grid on S^{n-1}, closed under u ↦ -u.
///
/// Direction `i` and `antipode(i)` are exact negatives of each other.
#[derive(Debug)]
pub struct DirectionGrid {
    dim: usize,
    dirs: Vec<Vector>,
    weight: f64,
}

impl DirectionGrid {
    fn build(dim: usize) -> Self {
        match dim {
            1 => DirectionGrid {
                dim,
                dirs: vec![Vector::new(&[1.0]), Vector::new(&[-1.0])],
                weight: 1.0,
            },
            2 => {
                let dirs = (0..CIRCLE_GRID)
                    .map(|k| {
                        let th = 2.0 * PI * k as f64 / CIRCLE_GRID as f64;
                        Vector::new(&[th.cos(), th.sin()])
                    })
                    .collect::<Vec<_>>();
                // make the antipodal pairing bit-exact
                let half = CIRCLE_GRID / 2;
                let mut dirs = dirs;
                for k in 0..half {
                    dirs[k + half] = -dirs[k];
                }
                DirectionGrid {
                    dim,
                    dirs,
                    weight: 2.0 * PI / CIRCLE_GRID as f64,
                }
            }
            3 => {
                let half = SPHERE_GRID / 2;
                let golden = PI * (3.0 - 5f64.sqrt());
                let mut dirs: Vec<Vector> = (0..half)
                    .map(|i| {
                        let z = 1.0 - (i as f64 + 0.5) / half as f64;
                        let r = (1.0 - z * z).sqrt();
                        let phi = golden * i as f64;
                        Vector::new(&[r * phi.cos(), r * phi.sin(), z])
                    })
                    .collect();
                let lower: Vec<Vector> = dirs.iter().map(|d| -*d).collect();
                dirs.extend(lower);
                DirectionGrid {
                    dim,
                    dirs,
                    weight: 4.0 * PI / SPHERE_GRID as f64,
                }
            }
            _ => panic!("direction grids exist for dimensions 1..=3"),
        }
    }

    /// Shared grid for dimension `dim` ∈ {1, 2, 3}.
    pub fn for_dim(dim: usize) -> &'static DirectionGrid {
        static GRIDS: [OnceLock<DirectionGrid>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
        assert!((1..=3).contains(&dim), "no direction grid for dimension {dim}");
        GRIDS[dim - 1].get_or_init(|| DirectionGrid::build(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn directions(&self) -> &[Vector] {
        &self.dirs
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    /// Quadrature weight of every direction (total = surface area of S^{n-1}).
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn antipode(&self, i: usize) -> usize {
        (i + self.dirs.len() / 2) % self.dirs.len()
    }
}
