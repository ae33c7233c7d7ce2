use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};

/// A point or direction in ℝ² or ℝ³.
///
/// Coordinates are stored inline; the unused third slot of a planar vector is
/// kept at zero so that arithmetic never needs to branch on the dimension.
#[derive(Clone, Copy, PartialEq)]
pub struct Vector {
    c: [f64; 3],
    dim: usize,
}

impl Vector {
    pub fn new2(x: f64, y: f64) -> Self {
        Self { c: [x, y, 0.0], dim: 2 }
    }

    pub fn new3(x: f64, y: f64, z: f64) -> Self {
        Self { c: [x, y, z], dim: 3 }
    }

    /// Builds a vector from a slice of length 2 or 3.
    pub fn from_slice(s: &[f64]) -> Option<Self> {
        match s.len() {
            2 => Some(Self::new2(s[0], s[1])),
            3 => Some(Self::new3(s[0], s[1], s[2])),
            _ => None,
        }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim == 2 || dim == 3, "dimension must be 2 or 3");
        Self { c: [0.0; 3], dim }
    }

    /// The `k`-th standard basis vector of ℝ^dim.
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.c[k] = 1.0;
        v
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.c[..self.dim]
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.c[0]
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.c[1]
    }

    #[inline]
    pub fn z(&self) -> f64 {
        self.c[2]
    }

    #[inline]
    pub fn dot(&self, o: &Vector) -> f64 {
        self.c[0] * o.c[0] + self.c[1] * o.c[1] + self.c[2] * o.c[2]
    }

    #[inline]
    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Unit vector in the same direction, or `None` for (near) zero input.
    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        if n > 1e-300 && n.is_finite() {
            Some(*self * (1.0 / n))
        } else {
            None
        }
    }

    /// Cross product (3-D only).
    pub fn cross(&self, o: &Vector) -> Vector {
        debug_assert_eq!(self.dim, 3);
        Vector::new3(
            self.c[1] * o.c[2] - self.c[2] * o.c[1],
            self.c[2] * o.c[0] - self.c[0] * o.c[2],
            self.c[0] * o.c[1] - self.c[1] * o.c[0],
        )
    }

    /// z-component of the planar cross product.
    #[inline]
    pub fn perp_dot(&self, o: &Vector) -> f64 {
        self.c[0] * o.c[1] - self.c[1] * o.c[0]
    }

    /// Counter-clockwise rotation by π/2 (2-D only).
    pub fn perp(&self) -> Vector {
        Vector::new2(-self.c[1], self.c[0])
    }

    pub fn distance(&self, o: &Vector) -> f64 {
        (*self - *o).norm()
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|x| x.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.coords().iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Polar angle in (−π, π] of a planar vector.
    pub fn angle(&self) -> f64 {
        self.c[1].atan2(self.c[0])
    }

    pub fn lerp(&self, o: &Vector, t: f64) -> Vector {
        *self + (*o - *self) * t
    }

    pub fn centroid(points: &[Vector]) -> Option<Vector> {
        let first = points.first()?;
        let mut acc = Vector::zeros(first.dim);
        for p in points {
            acc += *p;
        }
        Some(acc * (1.0 / points.len() as f64))
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords())
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords()[i]
    }
}

impl Add for Vector {
    type Output = Vector;
    #[inline]
    fn add(self, o: Vector) -> Vector {
        debug_assert_eq!(self.dim, o.dim);
        Vector {
            c: [self.c[0] + o.c[0], self.c[1] + o.c[1], self.c[2] + o.c[2]],
            dim: self.dim,
        }
    }
}

impl AddAssign for Vector {
    fn add_assign(&mut self, o: Vector) {
        *self = *self + o;
    }
}

impl Sub for Vector {
    type Output = Vector;
    #[inline]
    fn sub(self, o: Vector) -> Vector {
        debug_assert_eq!(self.dim, o.dim);
        Vector {
            c: [self.c[0] - o.c[0], self.c[1] - o.c[1], self.c[2] - o.c[2]],
            dim: self.dim,
        }
    }
}

impl SubAssign for Vector {
    fn sub_assign(&mut self, o: Vector) {
        *self = *self - o;
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    #[inline]
    fn mul(self, s: f64) -> Vector {
        Vector {
            c: [self.c[0] * s, self.c[1] * s, self.c[2] * s],
            dim: self.dim,
        }
    }
}

impl Mul<Vector> for f64 {
    type Output = Vector;
    fn mul(self, v: Vector) -> Vector {
        v * self
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self * -1.0
    }
}

/// Square matrix acting on vectors of the same dimension (row-major).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix {
    rows: [[f64; 3]; 3],
    dim: usize,
}

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        let mut rows = [[0.0; 3]; 3];
        for (i, row) in rows.iter_mut().enumerate().take(dim) {
            row[i] = 1.0;
        }
        Self { rows, dim }
    }

    /// Builds a matrix from `dim` rows of length `dim`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Option<Self> {
        let dim = rows.len();
        if !(dim == 2 || dim == 3) || rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        let mut m = [[0.0; 3]; 3];
        for (i, r) in rows.iter().enumerate() {
            m[i][..dim].copy_from_slice(r);
        }
        Some(Self { rows: m, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        debug_assert_eq!(self.dim, v.dim());
        let mut out = Vector::zeros(self.dim);
        for i in 0..self.dim {
            out.c[i] = (0..self.dim).map(|j| self.rows[i][j] * v.c[j]).sum();
        }
        out
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.rows;
        if self.dim == 2 {
            m[0][0] * m[1][1] - m[0][1] * m[1][0]
        } else {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
    }
}

/// Solves the 3×3 system `rows · x = rhs` by Cramer's rule.
pub(crate) fn solve3(rows: [Vector; 3], rhs: [f64; 3]) -> Option<Vector> {
    let [a, b, c] = rows;
    let det = a.dot(&b.cross(&c));
    let scale = a.norm() * b.norm() * c.norm();
    if det.abs() <= 1e-14 * scale || !det.is_finite() {
        return None;
    }
    let x = (b.cross(&c) * rhs[0] + c.cross(&a) * rhs[1] + a.cross(&b) * rhs[2]) * (1.0 / det);
    Some(x)
}

/// Solves the 2×2 system `rows · x = rhs`.
pub(crate) fn solve2(rows: [Vector; 2], rhs: [f64; 2]) -> Option<Vector> {
    let [a, b] = rows;
    let det = a.perp_dot(&b);
    if det.abs() <= 1e-14 * a.norm() * b.norm() || !det.is_finite() {
        return None;
    }
    Some(Vector::new2(
        (rhs[0] * b.y() - rhs[1] * a.y()) / det,
        (a.x() * rhs[1] - b.x() * rhs[0]) / det,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_and_dot() {
        let e1 = Vector::unit(3, 0);
        let e2 = Vector::unit(3, 1);
        assert_eq!(e1.cross(&e2), Vector::unit(3, 2));
        assert_eq!(e1.dot(&e2), 0.0);
    }

    #[test]
    fn solves_small_systems() {
        let x = solve3(
            [Vector::new3(1.0, 0.0, 0.0), Vector::new3(0.0, 2.0, 0.0), Vector::new3(1.0, 1.0, 1.0)],
            [1.0, 4.0, 6.0],
        )
        .unwrap();
        assert!((x - Vector::new3(1.0, 2.0, 3.0)).norm() < 1e-14);
        let y = solve2([Vector::new2(1.0, 1.0), Vector::new2(1.0, -1.0)], [2.0, 0.0]).unwrap();
        assert!((y - Vector::new2(1.0, 1.0)).norm() < 1e-14);
    }
}
