use crate::error::{check_dim, Error, Result};
use crate::geometry::slicing::{section_in_basis, vertex_levels};
use crate::geometry::{Subspace, VPolytope, Vector};

use super::minkowski::minkowski_polytope;
use super::steiner::steiner;

/// Fiber symmetral: sections orthogonal to `G ⊆ H` are replaced by their
/// Minkowski symmetrals.
pub fn fiber(k: &VPolytope, h: &Subspace, g: &Subspace) -> Result<VPolytope> {
    let n = k.dim();
    check_dim(n, h.ambient_dim())?;
    if g.ambient_dim() != n || !h.contains_subspace(g) {
        return Err(Error::InvalidSubspace("G must be a subspace of H".into()));
    }
    if g.dim() == 0 {
        return minkowski_polytope(k, h);
    }
    if g.same_as(h) && h.is_hyperplane() {
        return steiner(k, h);
    }
    if n != 3 || g.dim() != 1 {
        return Err(Error::Unsupported(format!(
            "fiber symmetrization with dim G = {} in ℝ{n}",
            g.dim()
        )));
    }
    let a = g.basis()[0];
    let comp = g.complement();
    let (e1, e2) = (comp.basis()[0], comp.basis()[1]);
    // the reflection in H fixes a and acts linearly on a^⊥
    let (r1, r2) = (h.reflect_point(&e1), h.reflect_point(&e2));
    let reflect2 = |q: &Vector| {
        let w = r1 * q.x() + r2 * q.y();
        Vector::new2(w.dot(&e1), w.dot(&e2))
    };
    let scale = k.circumradius();
    let mut out = Vec::new();
    for t in vertex_levels(k, &a, 1e-12 * scale.max(1e-300)) {
        let Some(s) = section_in_basis(k, &a, t, e1, e2) else {
            continue;
        };
        let c = VPolytope::hull(&s.polygon)?;
        let sym = c.weighted_sum(0.5, &c.map_points(reflect2), 0.5)?;
        out.extend(sym.vertices().iter().map(|q| a * t + e1 * q.x() + e2 * q.y()));
    }
    VPolytope::hull(&out)
}

/// Distance from `K` to the hyperplane `H`; zero when they meet.
pub fn distance_to_hyperplane(k: &VPolytope, h: &Subspace) -> Result<f64> {
    let u = h
        .normal()
        .ok_or_else(|| Error::Unsupported("distance to a non-hyperplane".into()))?;
    let (lo, hi) = k
        .vertices()
        .iter()
        .map(|v| v.dot(&u))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s), hi.max(s)));
    Ok(if lo <= 0.0 && hi >= 0.0 { 0.0 } else { lo.abs().min(hi.abs()) })
}

/// Steiner symmetral followed by the contraction `x + y ↦ x + e^{−d_K}·y`
/// orthogonal to `H`, where `d_K` is the distance from `K` to `H`.
pub fn vexlast(k: &VPolytope, h: &Subspace) -> Result<VPolytope> {
    check_dim(k.dim(), h.ambient_dim())?;
    if !h.is_hyperplane() {
        return Err(Error::Unsupported("vexlast needs a hyperplane".into()));
    }
    let u = h.normal().expect("hyperplane has a normal");
    let a = (-distance_to_hyperplane(k, h)?).exp();
    let s = steiner(k, h)?;
    if a == 1.0 {
        return Ok(s);
    }
    Ok(s.map_points(|v| *v - u * ((1.0 - a) * v.dot(&u))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{hausdorff_distance, ConvexBody, ToleranceConfig};

    fn tet() -> VPolytope {
        VPolytope::hull(&[
            Vector::new3(0.1, 0.0, 0.2),
            Vector::new3(1.0, 0.2, 0.1),
            Vector::new3(0.3, 1.0, -0.2),
            Vector::new3(0.2, 0.1, 1.3),
        ])
        .unwrap()
    }

    #[test]
    fn fiber_special_cases() {
        let k = tet();
        let h = Subspace::hyperplane(Vector::new3(0.0, 0.0, 1.0)).unwrap();
        let tol = ToleranceConfig::default();
        let f: ConvexBody = fiber(&k, &h, &h).unwrap().into();
        let s: ConvexBody = steiner(&k, &h).unwrap().into();
        assert!(hausdorff_distance(&f, &s, &tol).unwrap() < 1e-12);
        let o = Subspace::origin(3);
        let c: ConvexBody = fiber(&k, &o, &o).unwrap().into();
        let d: ConvexBody = k.weighted_sum(0.5, &k.map_points(|v| -*v), 0.5).unwrap().into();
        assert!(hausdorff_distance(&c, &d, &tol).unwrap() < 1e-12);
        let bad = Subspace::coordinate(3, &[2]).unwrap();
        assert!(matches!(fiber(&k, &h, &bad), Err(Error::InvalidSubspace(_))));
    }

    #[test]
    fn fiber_about_a_line_is_inside_minkowski() {
        let k = tet();
        let h = Subspace::line(Vector::new3(1.0, 1.0, 0.5)).unwrap();
        let tol = ToleranceConfig::default();
        let f: ConvexBody = fiber(&k, &h, &h).unwrap().into();
        let m: ConvexBody = minkowski_polytope(&k, &h).unwrap().into();
        assert!(crate::geometry::containment_margin(&m, &f, &tol).unwrap() < 1e-12);
        let r: ConvexBody = f.reflect(&h).unwrap();
        assert!(hausdorff_distance(&f, &r, &tol).unwrap() < 1e-12);
    }

    #[test]
    fn vexlast_examples() {
        let h = Subspace::coordinate(2, &[0]).unwrap();
        let (a, b) = (1.5, 0.8);
        let rect = VPolytope::hull(&[
            Vector::new2(-a, 1.0),
            Vector::new2(a, 1.0),
            Vector::new2(a, 1.0 + b),
            Vector::new2(-a, 1.0 + b),
        ])
        .unwrap();
        let out = vexlast(&rect, &h).unwrap();
        let half = b / (2.0 * std::f64::consts::E);
        for v in out.vertices() {
            assert!((v.x().abs() - a).abs() < 1e-14);
            assert!((v.y().abs() - half).abs() < 1e-14);
        }
        let meeting = rect.translate(&Vector::new2(0.0, -1.2));
        let s = steiner(&meeting, &h).unwrap();
        assert_eq!(vexlast(&meeting, &h).unwrap(), s);
    }
}
