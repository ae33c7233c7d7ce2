use super::hull::{hull2d, plane_basis};
use super::polytope::VPolytope;
use super::vector::Vector;

/// Planar section `K ∩ {x : a·x = level}` of a 3-D polytope, expressed in the
/// coordinates of an orthonormal basis `(e1, e2)` of `a^⊥`.
#[derive(Clone, Debug)]
pub struct Section {
    pub level: f64,
    pub e1: Vector,
    pub e2: Vector,
    /// Counter-clockwise polygon (possibly a segment or point) in plane coordinates.
    pub polygon: Vec<Vector>,
}

impl Section {
    pub fn area(&self) -> f64 {
        let v = &self.polygon;
        if v.len() < 3 {
            return 0.0;
        }
        let o = v[0];
        (1..v.len() - 1).map(|k| (v[k] - o).perp_dot(&(v[k + 1] - o))).sum::<f64>() * 0.5
    }

    /// Lifts a plane point back to ℝ³.
    pub fn lift(&self, q: &Vector, normal: &Vector) -> Vector {
        *normal * self.level + self.e1 * q.x() + self.e2 * q.y()
    }
}

/// Levels `a·v` of the vertices, sorted and deduplicated within `eps`.
pub fn vertex_levels(p: &VPolytope, a: &Vector, eps: f64) -> Vec<f64> {
    let mut levels: Vec<f64> = p.vertices().iter().map(|v| v.dot(a)).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup_by(|b, a| (*b - *a).abs() <= eps);
    levels
}

/// Section of a 3-D polytope by the plane `a·x = level` (`a` unit), or `None`
/// when the plane misses the body.
pub fn section(p: &VPolytope, a: &Vector, level: f64) -> Option<Section> {
    let (e1, e2) = plane_basis(a);
    section_in_basis(p, a, level, e1, e2)
}

pub fn section_in_basis(p: &VPolytope, a: &Vector, level: f64, e1: Vector, e2: Vector) -> Option<Section> {
    let verts = p.vertices();
    let scale = p.circumradius().max(1e-300);
    let eps = 1e-12 * scale;
    let s: Vec<f64> = verts.iter().map(|v| v.dot(a) - level).collect();
    let mut pts = Vec::new();
    for (k, v) in verts.iter().enumerate() {
        if s[k].abs() <= eps {
            pts.push(Vector::new2(v.dot(&e1), v.dot(&e2)));
        }
    }
    for (i, j) in p.edges() {
        let (si, sj) = (s[i], s[j]);
        if (si < -eps && sj > eps) || (si > eps && sj < -eps) {
            let x = verts[i] + (verts[j] - verts[i]) * (si / (si - sj));
            pts.push(Vector::new2(x.dot(&e1), x.dot(&e2)));
        }
    }
    if pts.is_empty() {
        return None;
    }
    let ring = hull2d(&pts, 1e-10 * scale);
    Some(Section { level, e1, e2, polygon: ring.into_iter().map(|k| pts[k]).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_sections_are_squares() {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push(Vector::new3(
                2.0 * (i & 1) as f64 - 1.0,
                2.0 * ((i >> 1) & 1) as f64 - 1.0,
                2.0 * ((i >> 2) & 1) as f64 - 1.0,
            ));
        }
        let cube = VPolytope::hull(&pts).unwrap();
        let a = Vector::new3(1.0, 0.0, 0.0);
        for level in [-1.0, -0.3, 0.0, 0.9, 1.0] {
            let s = section(&cube, &a, level).unwrap();
            assert!((s.area() - 4.0).abs() < 1e-12, "level {level}");
        }
        assert!(section(&cube, &a, 1.5).is_none());
        assert_eq!(vertex_levels(&cube, &a, 1e-12), vec![-1.0, 1.0]);
    }

    #[test]
    fn tetrahedron_section_area_is_quadratic() {
        let t = VPolytope::hull(&[
            Vector::new3(0.0, 0.0, 0.0),
            Vector::new3(1.0, 0.0, 0.0),
            Vector::new3(0.0, 1.0, 0.0),
            Vector::new3(0.0, 0.0, 1.0),
        ])
        .unwrap();
        let a = Vector::new3(0.0, 0.0, 1.0);
        let s = section(&t, &a, 0.5).unwrap();
        assert!((s.area() - 0.125).abs() < 1e-14);
    }
}
