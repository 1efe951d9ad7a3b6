use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Largest ambient dimension the kernel handles.
pub const MAX_DIM: usize = 4;

/// A point or direction in ℝ^d, 1 ≤ d ≤ 4.
///
/// Coordinates past `dim` are kept at zero, so dot products and norms can
/// run over the full backing array.
#[derive(Clone, Copy, PartialEq)]
pub struct Vector {
    coords: [f64; MAX_DIM],
    dim: usize,
}

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension {dim} out of range");
        Vector {
            coords: [0.0; MAX_DIM],
            dim,
        }
    }

    pub fn new(coords: &[f64]) -> Self {
        let mut v = Vector::zeros(coords.len());
        v.coords[..coords.len()].copy_from_slice(coords);
        v
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v.coords[axis] = 1.0;
        v
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.coords[..self.dim]
    }

    #[inline]
    pub fn dot(&self, other: &Vector) -> f64 {
        self.coords[0] * other.coords[0]
            + self.coords[1] * other.coords[1]
            + self.coords[2] * other.coords[2]
            + self.coords[3] * other.coords[3]
    }

    #[inline]
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(*self * (1.0 / n))
        } else {
            None
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|c| c.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.as_slice().iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn distance(&self, other: &Vector) -> f64 {
        (*self - *other).norm()
    }

    /// Appends one coordinate (lifting ℝ^d into ℝ^{d+1}).
    pub fn lift(&self, last: f64) -> Vector {
        let mut v = Vector::zeros(self.dim + 1);
        v.coords[..self.dim].copy_from_slice(self.as_slice());
        v.coords[self.dim] = last;
        v
    }

    /// Drops the last coordinate.
    pub fn drop_last(&self) -> Vector {
        Vector::new(&self.coords[..self.dim - 1])
    }

    #[inline]
    pub fn last(&self) -> f64 {
        self.coords[self.dim - 1]
    }

    /// Lexicographic comparison used for canonical vertex order.
    pub fn lex_cmp(&self, other: &Vector) -> std::cmp::Ordering {
        for (a, b) in self.as_slice().iter().zip(other.as_slice()) {
            match a.total_cmp(b) {
                std::cmp::Ordering::Equal => continue,
                o => return o,
            }
        }
        self.dim.cmp(&other.dim)
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        debug_assert!(i < self.dim);
        &self.coords[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        debug_assert!(i < self.dim);
        &mut self.coords[i]
    }
}

impl Add for Vector {
    type Output = Vector;
    #[inline]
    fn add(mut self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..MAX_DIM {
            self.coords[i] += rhs.coords[i];
        }
        self
    }
}

impl Sub for Vector {
    type Output = Vector;
    #[inline]
    fn sub(mut self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..MAX_DIM {
            self.coords[i] -= rhs.coords[i];
        }
        self
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    #[inline]
    fn mul(mut self, s: f64) -> Vector {
        for c in self.coords.iter_mut() {
            *c *= s;
        }
        self
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self * -1.0
    }
}

/// Normal of the hyperplane through `pts.len()` points in ℝ^k with k = pts.len().
///
/// Returns the generalized cross product of the edge vectors; its length is
/// (k-1)! times the (k-1)-volume of the simplex spanned by the points.
pub(crate) fn simplex_normal(pts: &[Vector]) -> Vector {
    let k = pts.len();
    let base = pts[0];
    match k {
        1 => Vector::unit(1, 0),
        2 => {
            let e = pts[1] - base;
            Vector::new(&[e[1], -e[0]])
        }
        3 => {
            let a = pts[1] - base;
            let b = pts[2] - base;
            Vector::new(&[
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ])
        }
        4 => {
            let a = pts[1] - base;
            let b = pts[2] - base;
            let c = pts[3] - base;
            let minor = |i: usize, j: usize, l: usize| {
                a[i] * (b[j] * c[l] - b[l] * c[j]) - a[j] * (b[i] * c[l] - b[l] * c[i])
                    + a[l] * (b[i] * c[j] - b[j] * c[i])
            };
            Vector::new(&[minor(1, 2, 3), -minor(0, 2, 3), minor(0, 1, 3), -minor(0, 1, 2)])
        }
        _ => panic!("simplex_normal supports 1..=4 points"),
    }
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}
