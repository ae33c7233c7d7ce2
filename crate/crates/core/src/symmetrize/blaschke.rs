use std::f64::consts::PI;

use crate::error::{check_dim, Error, Result};
use crate::geometry::{Subspace, VPolytope, Vector};

/// Planar Blaschke symmetral: the polygon whose edge-length measure is the
/// average of those of `K` and `K†`, with its centroid placed at the
/// projection of the centroid of `K` onto `H`.
pub fn blaschke2d(k: &VPolytope, h: &Subspace) -> Result<VPolytope> {
    check_dim(2, k.dim())?;
    check_dim(2, h.ambient_dim())?;
    if h.dim() > 1 {
        return Err(Error::Unsupported("Blaschke symmetrization needs i ∈ {0, 1}".into()));
    }
    if !k.is_full_dimensional() {
        return Err(Error::Degenerate("Blaschke symmetrization needs a polygon with interior".into()));
    }
    let ring = k.vertices();
    let m = ring.len();
    let mut measure: Vec<(f64, Vector, f64)> = Vec::with_capacity(2 * m);
    for i in 0..m {
        let e = ring[(i + 1) % m] - ring[i];
        let len = e.norm();
        let n = Vector::new2(e.y(), -e.x()) * (1.0 / len);
        for normal in [n, h.reflect_point(&n)] {
            let ang = normal.y().atan2(normal.x()).rem_euclid(2.0 * PI);
            measure.push((ang, normal, 0.5 * len));
        }
    }
    measure.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, Vector, f64)> = Vec::with_capacity(measure.len());
    for (ang, n, len) in measure {
        match merged.last_mut() {
            Some(last) if last.1.distance(&n) <= 1e-12 => last.2 += len,
            _ => merged.push((ang, n, len)),
        }
    }
    if merged.len() > 1 && merged[0].1.distance(&merged[merged.len() - 1].1) <= 1e-12 {
        let (_, _, len) = merged.pop().expect("nonempty");
        merged[0].2 += len;
    }
    let mut pts = Vec::with_capacity(merged.len());
    let mut cur = Vector::zeros(2);
    for (_, n, len) in &merged {
        pts.push(cur);
        cur = cur + Vector::new2(-n.y(), n.x()) * *len;
    }
    let poly = VPolytope::hull(&pts)?;
    let target = h.project_point(&k.centroid());
    Ok(poly.translate(&(target - poly.centroid())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{hausdorff_distance, ConvexBody, ToleranceConfig};
    use crate::symmetrize::minkowski::minkowski_polytope;

    fn quad() -> VPolytope {
        VPolytope::hull(&[
            Vector::new2(0.0, 0.1),
            Vector::new2(1.3, -0.2),
            Vector::new2(1.0, 0.9),
            Vector::new2(0.2, 1.4),
        ])
        .unwrap()
    }

    #[test]
    fn line_case_is_a_translate_of_minkowski() {
        let k = quad();
        let h = Subspace::line_at_angle(0.4);
        let b = blaschke2d(&k, &h).unwrap();
        let m = minkowski_polytope(&k, &h).unwrap();
        let shift = b.centroid() - m.centroid();
        let tol = ToleranceConfig::default();
        let d = hausdorff_distance(&b.into(), &ConvexBody::from(m.translate(&shift)), &tol).unwrap();
        assert!(d < 1e-12);
        assert!((blaschke2d(&k, &h).unwrap().perimeter() - k.perimeter()).abs() < 1e-12);
    }

    #[test]
    fn symmetric_inputs_are_translates() {
        let sym = VPolytope::hull(&[
            Vector::new2(-1.0, -0.5),
            Vector::new2(1.2, -0.3),
            Vector::new2(1.0, 0.5),
            Vector::new2(-1.2, 0.3),
        ])
        .unwrap();
        let b = blaschke2d(&sym, &Subspace::origin(2)).unwrap();
        let tol = ToleranceConfig::default();
        let shift = b.centroid() - sym.centroid();
        let d = hausdorff_distance(&b.into(), &ConvexBody::from(sym.translate(&shift)), &tol).unwrap();
        assert!(d < 1e-12);
    }

    #[test]
    fn degenerate_input() {
        let seg = VPolytope::hull(&[Vector::new2(0.0, 0.0), Vector::new2(1.0, 0.0)]).unwrap();
        assert!(matches!(blaschke2d(&seg, &Subspace::origin(2)), Err(Error::Degenerate(_))));
    }
}
