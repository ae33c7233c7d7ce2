use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{check_dim, Error, Result};
use crate::geometry::{
    ConvexBody, DirectionGrid, RevolutionProfile, Subspace, SupportSample, ToleranceConfig, VPolytope, Vector,
};

/// Grid used when a non-sampled body must be turned into support samples.
pub(crate) fn default_grid(body: &ConvexBody, tol: &ToleranceConfig) -> Result<Arc<DirectionGrid>> {
    match body {
        ConvexBody::Sample(s) => Ok(s.grid().clone()),
        _ => DirectionGrid::shared(body.dim(), tol.hausdorff_grid(body.dim())),
    }
}

/// Whether a body of revolution coincides with its reflection in `h`.
pub(crate) fn revolution_is_symmetric(r: &RevolutionProfile, h: &Subspace) -> bool {
    let a = r.direction();
    let ra = h.reflect_point(&a);
    let scale = r.circumradius().max(1e-300) + r.offset().norm();
    let eps = 1e-12 * scale;
    if h.reflect_point(&r.offset()).distance(&r.offset()) > eps {
        return false;
    }
    let st = r.stations();
    if ra.distance(&a) <= 1e-12 {
        return true;
    }
    if ra.distance(&-a) > 1e-12 {
        return false;
    }
    // axis reversed: the radius function must be even in t
    st.iter()
        .zip(st.iter().rev())
        .all(|(p, q)| (p.0 + q.0).abs() <= eps && (p.1 - q.1).abs() <= eps)
}

/// Minkowski symmetral `½K + ½K†`.
pub fn minkowski(k: &ConvexBody, h: &Subspace, tol: &ToleranceConfig) -> Result<ConvexBody> {
    check_dim(k.dim(), h.ambient_dim())?;
    match k {
        ConvexBody::Polytope(p) => Ok(minkowski_polytope(p, h)?.into()),
        ConvexBody::Sample(s) => Ok(s.map_values(|_, u, v| 0.5 * (v + s.support(&h.reflect_point(u)))).into()),
        ConvexBody::Revolution(r) if revolution_is_symmetric(r, h) => Ok(k.clone()),
        ConvexBody::Revolution(r) => {
            let grid = default_grid(k, tol)?;
            Ok(SupportSample::from_fn(grid, |u| 0.5 * (r.support(u) + r.support(&h.reflect_point(u)))).into())
        }
    }
}

pub fn minkowski_polytope(p: &VPolytope, h: &Subspace) -> Result<VPolytope> {
    check_dim(p.dim(), h.ambient_dim())?;
    p.weighted_sum(0.5, &p.reflect(h)?, 0.5)
}

/// Central symmetral `½K + ½(−K)`.
pub fn central(k: &ConvexBody, tol: &ToleranceConfig) -> Result<ConvexBody> {
    minkowski(k, &Subspace::origin(k.dim()), tol)
}

/// `L_p` central symmetral, `h ↦ (½h(u)^p + ½h(−u)^p)^{1/p}`; needs `o ∈ K`.
pub fn central_p(k: &ConvexBody, p: f64, tol: &ToleranceConfig) -> Result<SupportSample> {
    if !(p >= 1.0) {
        return Err(Error::InvalidInput(format!("central_p needs p ≥ 1, got {p}")));
    }
    let s = k.to_sample(default_grid(k, tol)?)?;
    let min = s.min_value();
    if min < -1e-12 * k.circumradius().max(1e-300) {
        return Err(Error::OriginNotInside(min));
    }
    Ok(s.map_values(|i, _, v| {
        let (a, b) = (v.max(0.0), s.value_at_antipode(i).max(0.0));
        if p.is_infinite() {
            a.max(b)
        } else {
            (0.5 * a.powf(p) + 0.5 * b.powf(p)).powf(1.0 / p)
        }
    }))
}

/// Checks that `M ⊂ [0,∞)²` is symmetric in the diagonal and that `c > 0`.
pub fn validate_m(m: &VPolytope, c: f64) -> Result<()> {
    if m.dim() != 2 {
        return Err(Error::InvalidM(format!("M must be planar, got dimension {}", m.dim())));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidM(format!("c must be positive, got {c}")));
    }
    let eps = 1e-9 * m.max_norm().max(1.0);
    if m.vertices().iter().any(|v| v.x() < -eps || v.y() < -eps) {
        return Err(Error::InvalidM("M must lie in the closed positive quadrant".into()));
    }
    let symmetric = m.vertices().iter().all(|v| {
        let s = Vector::new2(v.y(), v.x());
        m.vertices().iter().any(|w| w.distance(&s) <= eps)
    });
    if !symmetric {
        return Err(Error::InvalidM("M must be symmetric about the line x₁ = x₂".into()));
    }
    Ok(())
}

/// M-symmetral `h ↦ h_M(c·h_K(u), c·h_K(u†))`.
pub fn m_symmetrization(
    k: &ConvexBody,
    m: &VPolytope,
    c: f64,
    h: &Subspace,
    tol: &ToleranceConfig,
) -> Result<SupportSample> {
    check_dim(k.dim(), h.ambient_dim())?;
    validate_m(m, c)?;
    let hm = |a: f64, b: f64| m.vertices().iter().fold(f64::NEG_INFINITY, |acc, v| acc.max(v.x() * a + v.y() * b));
    let grid = default_grid(k, tol)?;
    Ok(SupportSample::from_fn(grid, |u| hm(c * k.support(u), c * k.support(&h.reflect_point(u)))))
}

/// Minkowski–Blaschke symmetral for a line `H` in ℝ³: each support value is
/// replaced by its average over the circle of directions through `u` that
/// share `u`'s component along `H`.
pub fn minkowski_blaschke(k: &ConvexBody, h: &Subspace, angles: usize, tol: &ToleranceConfig) -> Result<SupportSample> {
    if k.dim() != 3 || h.ambient_dim() != 3 || h.dim() != 1 {
        return Err(Error::Unsupported("Minkowski–Blaschke symmetrization needs n = 3, i = 1".into()));
    }
    let angles = angles.max(256);
    let a = h.basis()[0];
    let comp = h.complement();
    let (e1, e2) = (comp.basis()[0], comp.basis()[1]);
    let circle: Vec<(f64, f64)> = (0..angles)
        .map(|j| {
            let phi = 2.0 * PI * j as f64 / angles as f64;
            (phi.cos(), phi.sin())
        })
        .collect();
    let grid = default_grid(k, tol)?;
    Ok(SupportSample::from_fn(grid, |u| {
        let ua = u.dot(&a);
        let rho = (*u - a * ua).norm();
        if rho <= 1e-15 {
            return k.support(u);
        }
        let sum: f64 = circle
            .iter()
            .map(|&(cs, sn)| k.support(&(a * ua + (e1 * cs + e2 * sn) * rho)))
            .sum();
        sum / angles as f64
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn segment_is_recentered() {
        let seg: ConvexBody = VPolytope::hull(&[Vector::new2(0.0, 0.0), Vector::new2(0.0, 1.0)]).unwrap().into();
        let h = Subspace::coordinate(2, &[0]).unwrap();
        let m = minkowski(&seg, &h, &tol()).unwrap();
        let p = m.as_polytope().unwrap();
        assert_eq!(p.vertices().len(), 2);
        assert!(p.vertices().iter().all(|v| (v.y().abs() - 0.5).abs() < 1e-15 && v.x() == 0.0));
    }

    #[test]
    fn central_p_of_segment() {
        let g = DirectionGrid::shared(2, 512).unwrap();
        let seg = VPolytope::hull(&[Vector::new2(0.0, 0.0), Vector::new2(1.0, 0.0)]).unwrap();
        let s: ConvexBody = SupportSample::from_polytope(&seg, g).unwrap().into();
        let out = central_p(&s, 2.0, &tol()).unwrap();
        let e1 = Vector::new2(1.0, 0.0);
        assert!((out.support(&e1) - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((out.support(&-e1) - 0.5f64.sqrt()).abs() < 1e-12);
        let shifted: ConvexBody = seg.translate(&Vector::new2(0.5, 0.0)).into();
        assert!(matches!(central_p(&shifted, 2.0, &tol()), Err(Error::OriginNotInside(_))));
    }

    #[test]
    fn m_validation() {
        let good = VPolytope::hull(&[Vector::new2(0.25, 0.75), Vector::new2(0.75, 0.25)]).unwrap();
        assert!(validate_m(&good, 1.0).is_ok());
        let lopsided = VPolytope::hull(&[Vector::new2(0.25, 0.75), Vector::new2(0.5, 0.5)]).unwrap();
        assert!(matches!(validate_m(&lopsided, 1.0), Err(Error::InvalidM(_))));
        let negative = VPolytope::hull(&[Vector::new2(-0.25, 0.75), Vector::new2(0.75, -0.25)]).unwrap();
        assert!(matches!(validate_m(&negative, 1.0), Err(Error::InvalidM(_))));
        assert!(matches!(validate_m(&good, 0.0), Err(Error::InvalidM(_))));
    }

    #[test]
    fn m_segment_gives_hull_of_union() {
        let tri = VPolytope::hull(&[Vector::new2(0.0, 0.2), Vector::new2(1.0, 0.5), Vector::new2(0.3, 1.0)]).unwrap();
        let h = Subspace::coordinate(2, &[0]).unwrap();
        let m = VPolytope::hull(&[Vector::new2(1.0, 0.0), Vector::new2(0.0, 1.0)]).unwrap();
        let out = m_symmetrization(&tri.clone().into(), &m, 1.0, &h, &tol()).unwrap();
        let mut pts = tri.vertices().to_vec();
        pts.extend(tri.reflect(&h).unwrap().vertices());
        let hull = VPolytope::hull(&pts).unwrap();
        for u in out.grid().directions() {
            assert!((out.support(u) - hull.support(u)).abs() < 1e-12);
        }
    }

    #[test]
    fn blaschke_average_fixes_balls() {
        let g = DirectionGrid::shared(3, 512).unwrap();
        let ball: ConvexBody = SupportSample::ball(g, &Vector::zeros(3), 1.5).into();
        let h = Subspace::coordinate(3, &[2]).unwrap();
        let out = minkowski_blaschke(&ball, &h, 256, &tol()).unwrap();
        // interpolation of a constant overshoots by at most the grid's cone defect
        assert!(out.values().iter().all(|v| (v - 1.5).abs() < 0.05));
    }
}
