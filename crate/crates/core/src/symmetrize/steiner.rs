use crate::error::{Error, Result};
use crate::geometry::hull::plane_basis;
use crate::geometry::{intersect_halfspaces_from, HPolytope, Halfspace, Subspace, VPolytope, Vector};

/// Reduction tolerance of planar outputs. Dropping near-collinear chord ends
/// at the default tolerance loses area, which adds up under iteration.
const PLANAR_EPS: f64 = 1e-14;

/// Steiner symmetral about a hyperplane `H` through the origin.
///
/// Planar bodies use the exact chord construction: chord lengths are
/// piecewise linear between vertex abscissae, so the symmetral is the hull of
/// the recentered chords at those abscissae. Solids use the same idea over
/// the shadow of `K` on `H`: chord lengths are affine on each cell cut out
/// by the projected edges, so the recentered chords at the cell vertices
/// span the symmetral.
pub fn steiner(k: &VPolytope, h: &Subspace) -> Result<VPolytope> {
    let n = k.dim();
    if h.ambient_dim() != n || !h.is_hyperplane() {
        return Err(Error::Unsupported(format!(
            "Steiner symmetrization needs a hyperplane; got dimension {} in ℝ{}",
            h.dim(),
            h.ambient_dim()
        )));
    }
    let u = h.normal().expect("hyperplane has a normal");
    if n == 2 {
        let e = h.basis()[0];
        let pts: Vec<Vector> = k.vertices().iter().map(|v| Vector::new2(v.dot(&e), v.dot(&u))).collect();
        let out = chord_symmetral(&pts, k.circumradius());
        return VPolytope::hull_with_eps(&out.iter().map(|q| e * q.x() + u * q.y()).collect::<Vec<_>>(), PLANAR_EPS);
    }
    if k.is_full_dimensional() {
        return arrangement_steiner(k, &u);
    }
    flat_steiner(k, h, &u)
}

/// Lower-dimensional solids: if the affine hull contains the direction `u`
/// the chords live in one vertical plane; otherwise every chord is a point.
fn flat_steiner(k: &VPolytope, h: &Subspace, u: &Vector) -> Result<VPolytope> {
    let verts = k.vertices();
    let base = verts[0];
    let span: Vec<Vector> = verts.iter().map(|v| *v - base).collect();
    let tol = 1e-9 * k.circumradius().max(1e-300);
    let plane_dir = match k.affine_dim() {
        2 => {
            let m = k.facets()[0].normal;
            if m.dot(u).abs() > 1e-9 {
                None
            } else {
                Some(m.cross(u).normalized().expect("m is orthogonal to u"))
            }
        }
        1 => {
            let d = span[1].normalized().expect("distinct endpoints");
            if (d - *u * d.dot(u)).norm() <= tol / span[1].norm() {
                Some(plane_basis(u).0)
            } else {
                None
            }
        }
        _ => None,
    };
    let Some(e) = plane_dir else {
        return k.project(h);
    };
    let m = e.cross(u);
    let c = base.dot(&m);
    let pts: Vec<Vector> = verts.iter().map(|v| Vector::new2(v.dot(&e), v.dot(u))).collect();
    let out = chord_symmetral(&pts, k.circumradius());
    VPolytope::hull(&out.iter().map(|q| m * c + e * q.x() + *u * q.y()).collect::<Vec<_>>())
}

/// Planar Steiner symmetral about the x-axis of the hull of `pts`: the
/// recentered chords `(x, ±L(x)/2)` at every vertex abscissa.
pub(crate) fn chord_symmetral(pts: &[Vector], scale: f64) -> Vec<Vector> {
    let poly = VPolytope::hull_with_eps(pts, PLANAR_EPS).expect("nonempty point set");
    let ring = poly.vertices();
    let m = ring.len();
    let eps = 1e-12 * scale.max(1e-300);
    let lex = |a: &Vector, b: &Vector| a.x().total_cmp(&b.x()).then(a.y().total_cmp(&b.y()));
    let il = (0..m).min_by(|&i, &j| lex(&ring[i], &ring[j])).expect("nonempty");
    let ir = (0..m).max_by(|&i, &j| lex(&ring[i], &ring[j])).expect("nonempty");
    let mut lower = Vec::new();
    let mut i = il;
    loop {
        lower.push(ring[i]);
        if i == ir {
            break;
        }
        i = (i + 1) % m;
    }
    let mut upper = Vec::new();
    let mut i = ir;
    loop {
        upper.push(ring[i]);
        if i == il {
            break;
        }
        i = (i + 1) % m;
    }
    upper.reverse();
    let mut xs: Vec<f64> = ring.iter().map(|v| v.x()).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|b, a| (*b - *a).abs() <= eps);
    let mut out = Vec::with_capacity(2 * xs.len());
    for &x in &xs {
        let top = chain_at(&upper, x, eps, true);
        let bottom = chain_at(&lower, x, eps, false);
        let half = 0.5 * (top - bottom).max(0.0);
        out.push(Vector::new2(x, -half));
        out.push(Vector::new2(x, half));
    }
    out
}

/// Height of an x-monotone chain at `x`; on a vertical piece the extreme
/// value (max or min) is taken.
fn chain_at(chain: &[Vector], x: f64, eps: f64, take_max: bool) -> f64 {
    let mut best: Option<f64> = None;
    let pick = |b: Option<f64>, y: f64| match b {
        None => Some(y),
        Some(c) => Some(if take_max { c.max(y) } else { c.min(y) }),
    };
    let k = chain.partition_point(|p| p.x() < x - eps);
    let mut j = k;
    while j < chain.len() && chain[j].x() <= x + eps {
        best = pick(best, chain[j].y());
        j += 1;
    }
    if let Some(b) = best {
        return b;
    }
    if k == 0 || k >= chain.len() {
        // outside the chain's range; only reachable through rounding
        let p = if k == 0 { chain[0] } else { chain[chain.len() - 1] };
        return p.y();
    }
    let (a, b) = (chain[k - 1], chain[k]);
    a.y() + (b.y() - a.y()) * (x - a.x()) / (b.x() - a.x())
}

fn arrangement_steiner(k: &VPolytope, u: &Vector) -> Result<VPolytope> {
    let (e1, e2) = plane_basis(u);
    let scale = k.circumradius();
    let flat: Vec<Vector> = k.vertices().iter().map(|v| Vector::new2(v.dot(&e1), v.dot(&e2))).collect();
    let verts = k.vertices();
    let heights: Vec<f64> = verts.iter().map(|v| v.dot(u)).collect();
    // fan triangles of the facets, seen from above; vertical pieces carry
    // no chord endpoints of their own
    let area_floor = 1e-14 * scale * scale;
    let mut tris: Vec<([usize; 3], [f64; 4])> = Vec::new();
    for f in k.facets() {
        for w in 1..f.ring.len() - 1 {
            let t = [f.ring[0], f.ring[w], f.ring[w + 1]];
            let (a, b, c) = (flat[t[0]], flat[t[1]], flat[t[2]]);
            if (b - a).perp_dot(&(c - a)).abs() <= area_floor {
                continue;
            }
            let xs = [a.x(), b.x(), c.x()];
            let ys = [a.y(), b.y(), c.y()];
            let lo = |v: [f64; 3]| v[0].min(v[1]).min(v[2]);
            let hi = |v: [f64; 3]| v[0].max(v[1]).max(v[2]);
            tris.push((t, [lo(xs), hi(xs), lo(ys), hi(ys)]));
        }
    }
    let slack = 1e-12 * scale;
    let half_chord = |x: &Vector| {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (t, bb) in &tris {
            if x.x() < bb[0] - slack || x.x() > bb[1] + slack || x.y() < bb[2] - slack || x.y() > bb[3] + slack {
                continue;
            }
            let (a, b, c) = (flat[t[0]], flat[t[1]], flat[t[2]]);
            let det = (b - a).perp_dot(&(c - a));
            let l1 = (*x - a).perp_dot(&(c - a)) / det;
            let l2 = (b - a).perp_dot(&(*x - a)) / det;
            let l0 = 1.0 - l1 - l2;
            if l0 < -1e-12 || l1 < -1e-12 || l2 < -1e-12 {
                continue;
            }
            let z = l0 * heights[t[0]] + l1 * heights[t[1]] + l2 * heights[t[2]];
            lo = lo.min(z);
            hi = hi.max(z);
        }
        if hi < lo {
            0.0
        } else {
            0.5 * (hi - lo)
        }
    };
    let mut sites = flat.clone();
    let edges: Vec<(Vector, Vector)> = k.edges().into_iter().map(|(i, j)| (flat[i], flat[j])).collect();
    let bbox = |(p, q): &(Vector, Vector)| [p.x().min(q.x()), p.x().max(q.x()), p.y().min(q.y()), p.y().max(q.y())];
    let boxes: Vec<[f64; 4]> = edges.iter().map(bbox).collect();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (bi, bj) = (boxes[i], boxes[j]);
            if bi[1] < bj[0] || bj[1] < bi[0] || bi[3] < bj[2] || bj[3] < bi[2] {
                continue;
            }
            if let Some(x) = crossing(&edges[i], &edges[j]) {
                sites.push(x);
            }
        }
    }
    let mut pts = Vec::with_capacity(2 * sites.len());
    for x in &sites {
        let t = half_chord(x);
        let base = e1 * x.x() + e2 * x.y();
        pts.push(base + *u * t);
        pts.push(base - *u * t);
    }
    VPolytope::hull(&pts)
}

/// Interior crossing point of two planar segments, if they properly cross.
fn crossing((p, q): &(Vector, Vector), (r, t): &(Vector, Vector)) -> Option<Vector> {
    let d1 = *q - *p;
    let d2 = *t - *r;
    let den = d1.perp_dot(&d2);
    if den.abs() <= 1e-14 * d1.norm() * d2.norm() {
        return None;
    }
    let w = *r - *p;
    let a = w.perp_dot(&d2) / den;
    let b = w.perp_dot(&d1) / den;
    ((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b)).then(|| *p + d1 * a)
}

/// Solid Steiner symmetral from the facet-pair H-representation
/// `±t ≤ (u_i(x) − l_j(x))/2`; an independent check on the chord
/// construction.
pub fn steiner_facet_pair_3d(k: &VPolytope, h: &Subspace) -> Result<VPolytope> {
    if k.dim() != 3 || !h.is_hyperplane() || !k.is_full_dimensional() {
        return Err(Error::Unsupported("solid facet-pair construction needs a full-dimensional polytope".into()));
    }
    let u = h.normal().expect("hyperplane has a normal");
    facet_pair_steiner(k, &u)
}

fn facet_pair_steiner(k: &VPolytope, u: &Vector) -> Result<VPolytope> {
    let facets = k.facets();
    let verts = k.vertices();
    let (e1, e2) = plane_basis(u);
    let tau = 1e-12;
    let scale = k.circumradius();
    let mut up = Vec::new();
    let mut down = Vec::new();
    let mut hs = Vec::new();
    for f in &facets {
        let s = f.normal.dot(u);
        let a = f.normal - *u * s;
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for &v in &f.ring {
            let p = [verts[v].dot(&e1), verts[v].dot(&e2)];
            for c in 0..2 {
                lo[c] = lo[c].min(p[c]);
                hi[c] = hi[c].max(p[c]);
            }
        }
        if s > tau {
            up.push((a, s, f.offset, lo, hi));
        } else if s < -tau {
            down.push((a, -s, f.offset, lo, hi));
        } else {
            hs.push(Halfspace::new(a, f.offset));
        }
    }
    let slack = 1e-9 * scale;
    for (ai, si, di, loi, hii) in &up {
        for (aj, sj, dj, loj, hij) in &down {
            let overlap = (0..2).all(|c| loi[c] <= hij[c] + slack && loj[c] <= hii[c] + slack);
            if !overlap {
                continue;
            }
            // 2 t ≤ (d_i − a_i·x)/s_i + (d_j − a_j·x)/s_j, scaled by s_i s_j
            let lin = *ai * *sj + *aj * *si;
            let off = sj * di + si * dj;
            let tt = *u * (2.0 * si * sj);
            hs.push(Halfspace::new(lin + tt, off));
            hs.push(Halfspace::new(lin - tt, off));
        }
    }
    let c = Vector::centroid(verts).expect("nonempty");
    let hint = c - *u * c.dot(u);
    intersect_halfspaces_from(&HPolytope::new(3, hs)?, &hint)
}

/// Direct facet-pair construction in the plane; an independent check on the
/// chord construction.
pub fn steiner_facet_pair_2d(k: &VPolytope, h: &Subspace) -> Result<VPolytope> {
    if k.dim() != 2 || !h.is_hyperplane() || !k.is_full_dimensional() {
        return Err(Error::Unsupported("planar facet-pair construction needs a full polygon".into()));
    }
    let u = h.normal().expect("hyperplane has a normal");
    let facets = k.facets();
    let mut up = Vec::new();
    let mut down = Vec::new();
    let mut hs = Vec::new();
    for f in &facets {
        let s = f.normal.dot(&u);
        let a = f.normal - u * s;
        if s > 1e-12 {
            up.push((a, s, f.offset));
        } else if s < -1e-12 {
            down.push((a, -s, f.offset));
        } else {
            hs.push(Halfspace::new(a, f.offset));
        }
    }
    for (ai, si, di) in &up {
        for (aj, sj, dj) in &down {
            let lin = *ai * *sj + *aj * *si;
            let off = sj * di + si * dj;
            let tt = u * (2.0 * si * sj);
            hs.push(Halfspace::new(lin + tt, off));
            hs.push(Halfspace::new(lin - tt, off));
        }
    }
    let c = k.centroid();
    intersect_halfspaces_from(&HPolytope::new(2, hs)?, &(c - u * c.dot(&u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{hausdorff_distance, ToleranceConfig};

    fn x_axis() -> Subspace {
        Subspace::coordinate(2, &[0]).unwrap()
    }

    fn has_vertex(p: &VPolytope, q: Vector) -> bool {
        p.vertices().iter().any(|v| v.distance(&q) < 1e-12)
    }

    #[test]
    fn triangle_symmetral() {
        let t = VPolytope::hull(&[Vector::new2(0.0, 0.0), Vector::new2(1.0, 0.0), Vector::new2(0.0, 1.0)]).unwrap();
        let s = steiner(&t, &x_axis()).unwrap();
        assert_eq!(s.vertices().len(), 3);
        for q in [Vector::new2(0.0, 0.5), Vector::new2(0.0, -0.5), Vector::new2(1.0, 0.0)] {
            assert!(has_vertex(&s, q));
        }
        assert!((s.volume() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn vertical_segment_is_recentered() {
        let seg = VPolytope::hull(&[Vector::new2(0.0, 1.0), Vector::new2(0.0, 2.0)]).unwrap();
        let s = steiner(&seg, &x_axis()).unwrap();
        assert!(has_vertex(&s, Vector::new2(0.0, 0.5)));
        assert!(has_vertex(&s, Vector::new2(0.0, -0.5)));
    }

    #[test]
    fn symmetric_body_is_fixed() {
        let sq = VPolytope::hull(&[
            Vector::new2(0.0, -1.0),
            Vector::new2(1.0, -1.0),
            Vector::new2(1.0, 1.0),
            Vector::new2(0.0, 1.0),
        ])
        .unwrap();
        let s = steiner(&sq, &x_axis()).unwrap();
        assert_eq!(s.vertices().len(), 4);
        for v in sq.vertices() {
            assert!(has_vertex(&s, *v));
        }
    }

    #[test]
    fn chord_and_facet_pair_agree() {
        let p = VPolytope::hull(&[
            Vector::new2(0.1, 0.3),
            Vector::new2(2.0, -0.4),
            Vector::new2(1.7, 1.9),
            Vector::new2(-0.8, 1.2),
            Vector::new2(0.4, 2.5),
        ])
        .unwrap();
        let h = Subspace::line_at_angle(0.7);
        let a = steiner(&p, &h).unwrap();
        let b = steiner_facet_pair_2d(&p, &h).unwrap();
        assert_eq!(a.vertices().len(), b.vertices().len());
        for v in a.vertices() {
            assert!(b.vertices().iter().any(|w| w.distance(v) < 1e-12));
        }
    }

    #[test]
    fn tetrahedron_volume_is_preserved() {
        let t = VPolytope::hull(&[
            Vector::new3(0.0, 0.0, 0.0),
            Vector::new3(1.0, 0.2, 0.1),
            Vector::new3(0.3, 1.0, -0.2),
            Vector::new3(0.2, 0.1, 1.3),
        ])
        .unwrap();
        let h = Subspace::hyperplane(Vector::new3(0.3, -0.4, 0.8)).unwrap();
        let s = steiner(&t, &h).unwrap();
        assert!((s.volume() - t.volume()).abs() < 1e-13);
        let r = s.reflect(&h).unwrap();
        for v in r.vertices() {
            assert!(s.vertices().iter().any(|w| w.distance(v) < 1e-12));
        }
    }

    fn sliver_body() -> VPolytope {
        let v = [
            [0.8573035749122535, 0.26031791232758805, -1.7733753863899906],
            [-0.15954851854537705, 0.6218362862546848, -0.42207605640194185],
            [0.8943579197921548, 0.7283037173135831, -1.1305408081490007],
            [-0.9489203004612277, 0.008573824254435258, -1.3347257367633107],
            [0.5594463266050231, -0.6113201682621013, -1.5851791782581508],
            [0.0061518632091698, -0.7290594587450931, -1.2408122709535547],
            [1.1491921281990287, 0.07925598784704574, -0.7472424360194938],
            [-0.5153118557168194, 0.345495446516316, -2.0005308944007414],
        ];
        VPolytope::hull(&v.iter().map(|p| Vector::new3(p[0], p[1], p[2])).collect::<Vec<_>>()).unwrap()
    }

    // a nearly vertical facet leaves slivers on the symmetral
    #[test]
    fn near_vertical_facets() {
        let k = sliver_body();
        let h = Subspace::coordinate(3, &[0, 1]).unwrap();
        let s = steiner(&k, &h).unwrap();
        assert!((s.volume() - k.volume()).abs() < 1e-9);
        let s2 = steiner(&s, &h).unwrap();
        let tol = ToleranceConfig::default();
        let d = hausdorff_distance(&s.clone().into(), &s2.into(), &tol).unwrap();
        assert!(d < 1e-9, "{d:e}");
    }

    #[test]
    fn chord_and_facet_pair_agree_in_space() {
        let h = Subspace::hyperplane(Vector::new3(0.2, -0.3, 1.0)).unwrap();
        let k = sliver_body();
        let a = steiner(&k, &h).unwrap();
        let b = steiner_facet_pair_3d(&k, &h).unwrap();
        let tol = ToleranceConfig::default();
        let d = hausdorff_distance(&a.clone().into(), &b.into(), &tol).unwrap();
        assert!(d < 1e-9, "{d:e}");
    }

    #[test]
    fn flat_bodies_in_space() {
        let h = Subspace::coordinate(3, &[0, 1]).unwrap();
        let vertical = VPolytope::hull(&[
            Vector::new3(0.0, 0.0, 1.0),
            Vector::new3(1.0, 0.0, 1.0),
            Vector::new3(0.0, 0.0, 3.0),
        ])
        .unwrap();
        let s = steiner(&vertical, &h).unwrap();
        assert!((s.intrinsic_volume_1() - VPolytope::hull(&[
            Vector::new3(0.0, 0.0, -1.0),
            Vector::new3(0.0, 0.0, 1.0),
            Vector::new3(1.0, 0.0, 0.0),
        ])
        .unwrap()
        .intrinsic_volume_1())
        .abs()
            < 1e-12);
        let tilted = VPolytope::hull(&[
            Vector::new3(0.0, 0.0, 1.0),
            Vector::new3(1.0, 0.0, 2.0),
            Vector::new3(0.0, 1.0, 1.5),
        ])
        .unwrap();
        let p = steiner(&tilted, &h).unwrap();
        assert!(p.vertices().iter().all(|v| v.z() == 0.0));
        assert_eq!(p.vertices().len(), 3);
    }
}
