use super::vector::Vector;
use crate::error::{Error, Result};

const ORTHO_TOL: f64 = 1e-12;

/// A linear subspace `H` of ℝⁿ given by an orthonormal basis.
///
/// `dim() == 0` is the trivial subspace `{o}`; reflection in it is `x ↦ −x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    /// Wraps an already orthonormal basis, checking orthonormality to 1e−12.
    pub fn new(ambient: usize, basis: Vec<Vector>) -> Result<Self> {
        if !(ambient == 2 || ambient == 3) {
            return Err(Error::Unsupported(format!("ambient dimension {ambient}")));
        }
        if basis.len() >= ambient {
            return Err(Error::InvalidSubspace(format!(
                "dimension {} must be below the ambient dimension {ambient}",
                basis.len()
            )));
        }
        for (i, b) in basis.iter().enumerate() {
            if b.dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: b.dim() });
            }
            if (b.norm() - 1.0).abs() > ORTHO_TOL {
                return Err(Error::InvalidSubspace(format!("basis vector {i} is not unit length")));
            }
            for c in &basis[..i] {
                if b.dot(c).abs() > ORTHO_TOL {
                    return Err(Error::InvalidSubspace("basis is not orthogonal".into()));
                }
            }
        }
        Ok(Self { ambient, basis })
    }

    /// Orthonormalizes the given spanning vectors (Gram–Schmidt).
    pub fn spanned_by(ambient: usize, vectors: &[Vector]) -> Result<Self> {
        let mut basis: Vec<Vector> = Vec::new();
        for v in vectors {
            if v.dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.dim() });
            }
            let mut w = *v;
            // two passes keep the result orthogonal to machine precision
            for _ in 0..2 {
                for b in &basis {
                    w -= *b * w.dot(b);
                }
            }
            let n = w.norm();
            if n <= 1e-10 * v.norm().max(1e-300) {
                return Err(Error::InvalidSubspace("spanning vectors are linearly dependent".into()));
            }
            basis.push(w * (1.0 / n));
        }
        Self::new(ambient, basis)
    }

    /// The trivial subspace `{o}`.
    pub fn origin(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    /// The line through the origin spanned by `direction`.
    pub fn line(direction: Vector) -> Result<Self> {
        Self::spanned_by(direction.dim(), &[direction])
    }

    /// The hyperplane `normal^⊥`.
    pub fn hyperplane(normal: Vector) -> Result<Self> {
        let line = Self::line(normal)?;
        Ok(line.complement())
    }

    /// The span of the listed standard basis vectors.
    pub fn coordinate(ambient: usize, axes: &[usize]) -> Result<Self> {
        let vs: Vec<Vector> = axes.iter().map(|&k| Vector::unit(ambient, k)).collect();
        Self::spanned_by(ambient, &vs)
    }

    /// Line in the plane at polar angle `theta`.
    pub fn line_at_angle(theta: f64) -> Self {
        Self { ambient: 2, basis: vec![Vector::new2(theta.cos(), theta.sin())] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_hyperplane(&self) -> bool {
        self.dim() + 1 == self.ambient
    }

    /// Orthogonal complement `H^⊥`.
    pub fn complement(&self) -> Subspace {
        let mut basis = self.basis.clone();
        let mut extra = Vec::new();
        while basis.len() < self.ambient {
            let mut best: Option<Vector> = None;
            let mut best_norm = 0.0;
            for k in 0..self.ambient {
                let mut w = Vector::unit(self.ambient, k);
                for _ in 0..2 {
                    for b in &basis {
                        w -= *b * w.dot(b);
                    }
                }
                let n = w.norm();
                if n > best_norm {
                    best_norm = n;
                    best = Some(w * (1.0 / n));
                }
            }
            let b = best.expect("complement always exists");
            basis.push(b);
            extra.push(b);
        }
        Subspace { ambient: self.ambient, basis: extra }
    }

    /// Unit normal of a hyperplane.
    pub fn normal(&self) -> Option<Vector> {
        if self.is_hyperplane() {
            Some(self.complement().basis[0])
        } else {
            None
        }
    }

    /// `x|H` in ambient coordinates.
    pub fn project_point(&self, x: &Vector) -> Vector {
        let mut out = Vector::zeros(self.ambient);
        for b in &self.basis {
            out += *b * x.dot(b);
        }
        out
    }

    /// Reflection `x ↦ 2(x|H) − x`.
    pub fn reflect_point(&self, x: &Vector) -> Vector {
        self.project_point(x) * 2.0 - *x
    }

    /// Coordinates of `x|H` with respect to the basis.
    pub fn coordinates(&self, x: &Vector) -> Vec<f64> {
        self.basis.iter().map(|b| x.dot(b)).collect()
    }

    pub fn contains_vector(&self, v: &Vector, tol: f64) -> bool {
        (*v - self.project_point(v)).norm() <= tol * v.norm().max(1.0)
    }

    /// Whether `other ⊆ self`.
    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient
            && other.dim() <= self.dim()
            && other.basis.iter().all(|b| self.contains_vector(b, 1e-9))
    }

    /// Same subspace, possibly with a different basis.
    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// Unit vectors of `H` sampled for support comparisons: `±basis` for lines,
    /// `count` equally spaced directions on the unit circle of a plane.
    pub fn sample_directions(&self, count: usize) -> Vec<Vector> {
        match self.dim() {
            0 => Vec::new(),
            1 => vec![self.basis[0], -self.basis[0]],
            _ => (0..count)
                .map(|k| {
                    let t = 2.0 * std::f64::consts::PI * k as f64 / count as f64;
                    self.basis[0] * t.cos() + self.basis[1] * t.sin()
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_in_x_axis() {
        let h = Subspace::coordinate(2, &[0]).unwrap();
        let r = h.reflect_point(&Vector::new2(1.0, 1.0));
        assert_eq!(r, Vector::new2(1.0, -1.0));
    }

    #[test]
    fn reflection_in_origin_is_negation() {
        let h = Subspace::origin(3);
        assert_eq!(h.reflect_point(&Vector::new3(1.0, -2.0, 3.0)), Vector::new3(-1.0, 2.0, -3.0));
    }

    #[test]
    fn complement_is_orthonormal() {
        let h = Subspace::line(Vector::new3(1.0, 2.0, 2.0)).unwrap();
        let c = h.complement();
        assert_eq!(c.dim(), 2);
        let all: Vec<Vector> = h.basis().iter().chain(c.basis()).copied().collect();
        for i in 0..3 {
            assert!((all[i].norm() - 1.0).abs() < 1e-14);
            for j in 0..i {
                assert!(all[i].dot(&all[j]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn rejects_non_orthonormal_basis() {
        let err = Subspace::new(2, vec![Vector::new2(2.0, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidSubspace(_)));
        assert!(Subspace::spanned_by(3, &[Vector::new3(1.0, 0.0, 0.0), Vector::new3(2.0, 0.0, 0.0)]).is_err());
    }

    #[test]
    fn containment_of_subspaces() {
        let h = Subspace::coordinate(3, &[0, 1]).unwrap();
        let g = Subspace::coordinate(3, &[1]).unwrap();
        let k = Subspace::coordinate(3, &[2]).unwrap();
        assert!(h.contains_subspace(&g));
        assert!(!h.contains_subspace(&k));
        assert!(h.contains_subspace(&Subspace::origin(3)));
    }
}
