//! Steiner and Minkowski symmetrals through translates: with
//! `K_y = K + y` and `K_y† = K† − y` for `y ⊥ H`,
//! `S_H K = ⋃_y (K_y ∩ K_y†)` and `M_H K = ⋂_y conv(K_y ∪ K_y†)`.
//! Both are evaluated on a finite grid of `y`.

use crate::error::{Error, Result};
use crate::geometry::{Subspace, VPolytope, Vector};

fn normal(k: &VPolytope, h: &Subspace) -> Result<Vector> {
    if h.ambient_dim() != k.dim() {
        return Err(Error::DimensionMismatch { expected: k.dim(), found: h.ambient_dim() });
    }
    h.normal().ok_or_else(|| Error::Unsupported("the translate formulas are evaluated for hyperplanes".into()))
}

/// `count` equally spaced points of `H^⊥` spanning `[−w, w]`, `w` the width
/// of `K|H^⊥`.
pub fn y_grid(k: &VPolytope, h: &Subspace, count: usize) -> Result<Vec<Vector>> {
    let v = normal(k, h)?;
    if count < 2 {
        return Err(Error::InvalidInput("the y-grid needs at least two points".into()));
    }
    let w = k.support(&v) + k.support(&-v);
    Ok((0..count).map(|j| v * (-w + 2.0 * w * j as f64 / (count - 1) as f64)).collect())
}

/// Cyclic order of a planar polygon's vertices.
fn ring(p: &VPolytope) -> Vec<Vector> {
    let c = p.centroid();
    let mut pts = p.vertices().to_vec();
    pts.sort_by(|a, b| (*a - c).angle().total_cmp(&(*b - c).angle()));
    pts
}

/// Clips a cyclic polygon to `{x : n·x ≤ b}`.
fn clip(poly: &[Vector], n: &Vector, b: f64) -> Vec<Vector> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for (k, p) in poly.iter().enumerate() {
        let q = poly[(k + 1) % poly.len()];
        let (fp, fq) = (n.dot(p) - b, n.dot(&q) - b);
        if fp <= 0.0 {
            out.push(*p);
        }
        if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
            out.push(p.lerp(&q, fp / (fp - fq)));
        }
    }
    out
}

/// Hull of `⋃_y (K_y ∩ K_y†)` over `y_grid(K, H, count)`, for planar `K`.
pub fn steiner_union(k: &VPolytope, h: &Subspace, count: usize) -> Result<VPolytope> {
    if k.dim() != 2 || !k.is_full_dimensional() {
        return Err(Error::Unsupported("the union formula is evaluated for planar convex bodies".into()));
    }
    let refl = k.reflect(h)?;
    let mut pts = Vec::new();
    for y in y_grid(k, h, count)? {
        let mut piece = ring(&k.translate(&y));
        for hs in refl.translate(&-y).halfspaces() {
            if piece.is_empty() {
                break;
            }
            piece = clip(&piece, &hs.normal, hs.offset);
        }
        pts.extend(piece);
    }
    VPolytope::hull(&pts)
}

/// `min_y max(h_{K_y}(u), h_{K_y†}(u))` over `y_grid(K, H, count)`.
pub fn minkowski_min_support(k: &VPolytope, h: &Subspace, count: usize, u: &Vector) -> Result<f64> {
    let (hk, hr) = (k.support(u), k.support(&h.reflect_point(u)));
    let grid = y_grid(k, h, count)?;
    Ok(grid.iter().map(|y| (hk + y.dot(u)).max(hr - y.dot(u))).fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{make_box, make_random_polytope};
    use crate::symmetrize::{minkowski_polytope, steiner};

    #[test]
    fn box_off_the_axis() {
        // the best translate y = −e₂/2 is a grid point
        let k = make_box(&[2.0, 2.0]).unwrap().translate(&Vector::new2(0.0, 0.5));
        let h = Subspace::coordinate(2, &[0]).unwrap();
        let u = steiner_union(&k, &h, 201).unwrap();
        let s = steiner(&k, &h).unwrap();
        assert!((u.volume() - s.volume()).abs() < 1e-12);
    }

    #[test]
    fn bracket_the_symmetrals() {
        let h = Subspace::line_at_angle(0.4);
        for seed in 0..10 {
            let k = make_random_polytope(2, 30, seed).unwrap();
            let u = steiner_union(&k, &h, 201).unwrap();
            let s = steiner(&k, &h).unwrap();
            assert!(u.vertices().iter().all(|x| s.halfspaces().iter().all(|f| f.violation(x) < 1e-12)));
            let m = minkowski_polytope(&k, &h).unwrap();
            for d in m.probe_directions() {
                assert!(minkowski_min_support(&k, &h, 201, &d).unwrap() >= m.support(&d) - 1e-12);
            }
        }
    }
}
