use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::slicing::{section_in_basis, vertex_levels};
use crate::geometry::{chebyshev_center, ConvexBody, Halfspace, RevolutionProfile, Subspace, VPolytope, Vector};

fn require_line_in_space(dim: usize, h: &Subspace, what: &str) -> Result<()> {
    if dim != 3 || h.ambient_dim() != 3 || h.dim() != 1 {
        return Err(Error::Unsupported(format!("{what} is implemented for n = 3, i = 1")));
    }
    Ok(())
}

/// Initial axis levels for profiles: the vertex levels plus `count + 1`
/// equally spaced levels over the body's extent along `a`.
pub(crate) fn stations(p: &VPolytope, a: &Vector, count: usize) -> Vec<f64> {
    let eps = 1e-12 * p.circumradius().max(1e-300);
    let mut levels = vertex_levels(p, a, eps);
    let (t0, t1) = (levels[0], levels[levels.len() - 1]);
    if t1 - t0 > eps {
        let count = count.max(1);
        for k in 1..count {
            levels.push(t0 + (t1 - t0) * k as f64 / count as f64);
        }
    }
    levels.sort_by(f64::total_cmp);
    levels.dedup_by(|b, a| (*b - *a).abs() <= eps);
    levels
}

/// Largest amount by which a concave function can exceed the chord of
/// interval `i`, given the chords of the neighbouring intervals.
fn chord_excess(pts: &[(f64, f64)], i: usize) -> f64 {
    let (a, b) = (pts[i], pts[i + 1]);
    let line = |p: (f64, f64), q: (f64, f64)| {
        let m = (q.1 - p.1) / (q.0 - p.0);
        move |t: f64| p.1 + m * (t - p.0)
    };
    let chord = line(a, b);
    let left = (i > 0).then(|| line(pts[i - 1], a));
    let right = (i + 2 < pts.len()).then(|| line(b, pts[i + 2]));
    let bound = |t: f64| match (&left, &right) {
        (Some(l), Some(r)) => l(t).min(r(t)),
        (Some(l), None) => l(t),
        (None, Some(r)) => r(t),
        (None, None) => f64::INFINITY,
    };
    let mut cands = vec![a.0, b.0];
    if let (Some(_), Some(_)) = (&left, &right) {
        let (m1, m2) = ((a.1 - pts[i - 1].1) / (a.0 - pts[i - 1].0), (pts[i + 2].1 - b.1) / (pts[i + 2].0 - b.0));
        if m1 != m2 {
            let t = (b.1 - a.1 + m1 * a.0 - m2 * b.0) / (m1 - m2);
            if t > a.0 && t < b.0 {
                cands.push(t);
            }
        }
    }
    cands.into_iter().map(|t| bound(t) - chord(t)).fold(0.0, f64::max)
}

/// Evaluates a concave radius function at `levels`, then bisects intervals
/// until linear interpolation is within `tol` of any concave function
/// through the samples, or `max_points` is reached.
fn sample_concave<F>(levels: Vec<f64>, tol: f64, max_points: usize, mut f: F) -> Result<Vec<(f64, f64)>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut pts = levels.into_iter().map(|t| Ok((t, f(t)?))).collect::<Result<Vec<_>>>()?;
    let min_gap = 1e-9 * (pts[pts.len() - 1].0 - pts[0].0);
    while pts.len() < max_points {
        let split: Vec<usize> = (0..pts.len().saturating_sub(1))
            .filter(|&i| pts[i + 1].0 - pts[i].0 > min_gap && chord_excess(&pts, i) > tol)
            .collect();
        if split.is_empty() {
            break;
        }
        let mut next = Vec::with_capacity(pts.len() + split.len());
        let mut it = split.iter().peekable();
        for i in 0..pts.len() {
            next.push(pts[i]);
            if it.peek() == Some(&&i) {
                it.next();
                let t = 0.5 * (pts[i].0 + pts[i + 1].0);
                next.push((t, f(t)?));
            }
        }
        pts = next;
    }
    Ok(pts)
}

/// Interpolation tolerance for profiles, relative to the circumradius.
const PROFILE_TOL: f64 = 1e-5;

fn max_points(slice_count: usize) -> usize {
    8 * slice_count.max(1) + 2048
}

/// The input already is a body of revolution about `H`.
fn fixed_revolution(k: &ConvexBody, h: &Subspace) -> Option<RevolutionProfile> {
    let r = k.as_revolution()?;
    let on_axis = r.offset().norm() <= 1e-12 * r.circumradius().max(1e-300);
    (r.axis().same_as(h) && on_axis).then(|| r.clone())
}

fn polytope_input<'a>(k: &'a ConvexBody, what: &str) -> Result<&'a VPolytope> {
    k.as_polytope()
        .ok_or_else(|| Error::Unsupported(format!("{what} of a {}", k.kind())))
}

fn finish(h: &Subspace, pts: Vec<(f64, f64)>, scale: f64, what: &str) -> Result<RevolutionProfile> {
    let (profile, correction) = RevolutionProfile::with_correction(h.clone(), Vector::zeros(3), pts)?;
    if correction > 1e-6 * scale.max(1e-300) {
        return Err(Error::Degenerate(format!(
            "{what} profile needed a concavity correction of {correction:e}"
        )));
    }
    Ok(profile)
}

/// Schwarz symmetral about a line in ℝ³: every orthogonal slice becomes a
/// disk of the same area centered on the axis.
pub fn schwarz(k: &ConvexBody, h: &Subspace, slice_count: usize) -> Result<RevolutionProfile> {
    require_line_in_space(k.dim(), h, "Schwarz symmetrization")?;
    if let Some(r) = fixed_revolution(k, h) {
        return Ok(r);
    }
    let p = polytope_input(k, "Schwarz symmetrization")?;
    let a = h.basis()[0];
    let comp = h.complement();
    let (e1, e2) = (comp.basis()[0], comp.basis()[1]);
    let scale = p.circumradius();
    let pts = sample_concave(stations(p, &a, slice_count), PROFILE_TOL * scale, max_points(slice_count), |t| {
        let area = section_in_basis(p, &a, t, e1, e2).map_or(0.0, |s| s.area());
        Ok((area.max(0.0) / PI).sqrt())
    })?;
    finish(h, pts, scale, "Schwarz")
}

/// Radius of the largest disk inside a counter-clockwise planar polygon.
pub(crate) fn polygon_inradius(poly: &[Vector], scale: f64) -> Result<f64> {
    if poly.len() < 3 {
        return Ok(0.0);
    }
    let m = poly.len();
    let hs: Vec<Halfspace> = (0..m)
        .filter_map(|i| {
            let (p, q) = (poly[i], poly[(i + 1) % m]);
            let n = Vector::new2(q.y() - p.y(), p.x() - q.x()).normalized()?;
            Some(Halfspace::new(n, n.dot(&p)))
        })
        .collect();
    let (_, r) = chebyshev_center(2, &hs, 10.0 * scale + 1.0)?;
    Ok(r.max(0.0))
}

/// Inner rotational symmetral for a line in ℝ³: each slice is replaced by a
/// disk of the slice's inradius.
pub fn inner_rotational(k: &ConvexBody, h: &Subspace, slice_count: usize) -> Result<RevolutionProfile> {
    require_line_in_space(k.dim(), h, "inner rotational symmetrization")?;
    if let Some(r) = fixed_revolution(k, h) {
        return Ok(r);
    }
    let p = polytope_input(k, "inner rotational symmetrization")?;
    let a = h.basis()[0];
    let comp = h.complement();
    let (e1, e2) = (comp.basis()[0], comp.basis()[1]);
    let scale = p.circumradius();
    let pts = sample_concave(stations(p, &a, slice_count), PROFILE_TOL * scale, max_points(slice_count), |t| {
        match section_in_basis(p, &a, t, e1, e2) {
            Some(s) if s.area() > 1e-14 * scale * scale => polygon_inradius(&s.polygon, scale),
            _ => Ok(0.0),
        }
    })?;
    let (profile, _) = RevolutionProfile::with_correction(h.clone(), Vector::zeros(3), pts)?;
    Ok(profile)
}

/// Value at `t` of the upper concave envelope of `(t_k, d_k)` (with the
/// `t_k` sorted increasingly), as `Σ w_k d_k` over at most two indices.
fn envelope_at(ts: &[f64], ds: &[f64], t: f64, hull: &mut Vec<usize>) -> [(usize, f64); 2] {
    hull.clear();
    for k in 0..ts.len() {
        if let Some(&last) = hull.last() {
            if ts[last] == ts[k] {
                if ds[k] > ds[last] {
                    hull.pop();
                } else {
                    continue;
                }
            }
        }
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            if (ts[a] - ts[o]) * (ds[k] - ds[o]) - (ds[a] - ds[o]) * (ts[k] - ts[o]) >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    let j = hull.partition_point(|&k| ts[k] < t);
    if j == 0 {
        return [(hull[0], 1.0), (hull[0], 0.0)];
    }
    if j >= hull.len() {
        let k = hull[hull.len() - 1];
        return [(k, 1.0), (k, 0.0)];
    }
    let (p, q) = (hull[j - 1], hull[j]);
    let s = (t - ts[p]) / (ts[q] - ts[p]);
    [(p, 1.0 - s), (q, s)]
}

/// Minimizes a convex function on the plane by the ellipsoid method, given
/// a disk around `center` known to contain a minimizer. `f` returns the
/// value and a subgradient.
fn ellipsoid_min<F: FnMut(&Vector) -> (f64, Vector)>(center: Vector, radius: f64, tol: f64, mut f: F) -> f64 {
    let mut c = center;
    let r2 = radius * radius;
    let mut p = [[r2, 0.0], [0.0, r2]];
    let (mut best, mut lower) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..600 {
        let (v, g) = f(&c);
        best = best.min(v);
        let pg = Vector::new2(p[0][0] * g.x() + p[0][1] * g.y(), p[1][0] * g.x() + p[1][1] * g.y());
        let gpg = g.dot(&pg);
        if !(gpg > 0.0) {
            return best;
        }
        let w = gpg.sqrt();
        lower = lower.max(v - w);
        if best - lower <= tol {
            break;
        }
        let b = pg * (1.0 / w);
        c -= b * (1.0 / 3.0);
        for i in 0..2 {
            for j in 0..2 {
                p[i][j] = 4.0 / 3.0 * (p[i][j] - 2.0 / 3.0 * b[i] * b[j]);
            }
        }
    }
    best
}

/// Outer rotational symmetral for a line in ℝ³: the intersection over axis
/// offsets `y` of the smallest rotational bodies containing `K − y`.
///
/// The radius of the smallest rotational body about the axis containing
/// `K − y` is the concave envelope of the vertex distances to the axis; at a
/// fixed level it is convex in `y`, and the optimal `y` lies in the convex
/// hull of `K|H^⊥`, so each station radius is a small convex program.
pub fn outer_rotational(k: &ConvexBody, h: &Subspace, slice_count: usize) -> Result<RevolutionProfile> {
    require_line_in_space(k.dim(), h, "outer rotational symmetrization")?;
    if let Some(r) = fixed_revolution(k, h) {
        return Ok(r);
    }
    let p = polytope_input(k, "outer rotational symmetrization")?;
    let a = h.basis()[0];
    let comp = h.complement();
    let (e1, e2) = (comp.basis()[0], comp.basis()[1]);
    let mut coords: Vec<(f64, Vector)> = p
        .vertices()
        .iter()
        .map(|v| (v.dot(&a), Vector::new2(v.dot(&e1), v.dot(&e2))))
        .collect();
    coords.sort_by(|x, y| x.0.total_cmp(&y.0));
    let levels: Vec<f64> = coords.iter().map(|c| c.0).collect();
    let (mut lo, mut hi) = (coords[0].1, coords[0].1);
    for (_, q) in &coords {
        lo = Vector::new2(lo.x().min(q.x()), lo.y().min(q.y()));
        hi = Vector::new2(hi.x().max(q.x()), hi.y().max(q.y()));
    }
    let center = lo.lerp(&hi, 0.5);
    let radius = 0.5 * lo.distance(&hi) * 1.01 + 1e-12;
    let scale = p.circumradius().max(1e-300);
    let mut ds = vec![0.0; coords.len()];
    let mut hull = Vec::with_capacity(coords.len());
    let pts = sample_concave(stations(p, &a, slice_count), PROFILE_TOL * scale, max_points(slice_count), |t| {
        Ok(ellipsoid_min(center, radius, 1e-9 * scale, |y| {
            for (d, (_, q)) in ds.iter_mut().zip(&coords) {
                *d = q.distance(y);
            }
            let terms = envelope_at(&levels, &ds, t, &mut hull);
            let mut value = 0.0;
            let mut grad = Vector::zeros(2);
            for (k, w) in terms {
                value += w * ds[k];
                if ds[k] > 0.0 {
                    grad += (*y - coords[k].1) * (w / ds[k]);
                }
            }
            (value, grad)
        }))
    })?;
    let (profile, _) = RevolutionProfile::with_correction(h.clone(), Vector::zeros(3), pts)?;
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> VPolytope {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push(Vector::new3(
                2.0 * (i & 1) as f64 - 1.0,
                2.0 * ((i >> 1) & 1) as f64 - 1.0,
                2.0 * ((i >> 2) & 1) as f64 - 1.0,
            ));
        }
        VPolytope::hull(&pts).unwrap()
    }

    fn e1_axis() -> Subspace {
        Subspace::coordinate(3, &[0]).unwrap()
    }

    #[test]
    fn schwarz_cube() {
        let s = schwarz(&cube().into(), &e1_axis(), 256).unwrap();
        let r = 2.0 / PI.sqrt();
        assert!(s.stations().iter().all(|st| (st.1 - r).abs() < 1e-12));
        assert!((s.volume() - 8.0).abs() < 1e-4 * 8.0);
    }

    #[test]
    fn schwarz_box() {
        let mut pts = Vec::new();
        let a = 0.7;
        for i in 0..8 {
            pts.push(Vector::new3(
                2.0 * (i & 1) as f64 - 1.0,
                2.0 * ((i >> 1) & 1) as f64 - 1.0,
                a * (2.0 * ((i >> 2) & 1) as f64 - 1.0),
            ));
        }
        let b = VPolytope::hull(&pts).unwrap();
        let s = schwarz(&b.into(), &e1_axis(), 64).unwrap();
        assert!(s.stations().iter().all(|st| (st.1 - (4.0 * a / PI).sqrt()).abs() < 1e-12));
    }

    #[test]
    fn inner_cube() {
        let s = inner_rotational(&cube().into(), &e1_axis(), 32).unwrap();
        assert!(s.stations().iter().all(|st| (st.1 - 1.0).abs() < 1e-9));
    }

    #[test]
    fn outer_cube() {
        // the square cross-section's circumradius is √2, attained with y = 0
        let s = outer_rotational(&cube().into(), &e1_axis(), 32).unwrap();
        assert!(s.stations().iter().all(|st| (st.1 - 2f64.sqrt()).abs() < 1e-9));
    }

    #[test]
    fn outer_matches_grid_search() {
        let p = crate::analytic::make_random_polytope(3, 15, 3).unwrap();
        let h = e1_axis();
        let prof = outer_rotational(&p.clone().into(), &h, 16).unwrap();
        let pts: Vec<(f64, f64, f64)> = p.vertices().iter().map(|v| (v.x(), v.y(), v.z())).collect();
        let (t0, t1) = prof.t_range();
        for k in 1..8 {
            let t = t0 + (t1 - t0) * k as f64 / 8.0;
            // brute force: for each offset, max over vertex pairs spanning t
            let mut grid_min = f64::INFINITY;
            for i in 0..=120 {
                for j in 0..=120 {
                    let (y1, y2) = (-1.0 + i as f64 / 60.0, -1.0 + j as f64 / 60.0);
                    let d = |q: &(f64, f64, f64)| ((q.1 - y1).powi(2) + (q.2 - y2).powi(2)).sqrt();
                    let mut env: f64 = 0.0;
                    for a in &pts {
                        for b in &pts {
                            if a.0 <= t && t <= b.0 && a.0 < b.0 {
                                let s = (t - a.0) / (b.0 - a.0);
                                env = env.max((1.0 - s) * d(a) + s * d(b));
                            }
                        }
                    }
                    grid_min = grid_min.min(env);
                }
            }
            let r = prof.radius_at(t).unwrap();
            assert!(r <= grid_min + 1e-4, "t = {t}: {r} vs {grid_min}");
            assert!(r >= grid_min - 0.02, "t = {t}: {r} vs {grid_min}");
        }
    }

    #[test]
    fn profiles_resolve_steep_ends() {
        let p: ConvexBody = crate::analytic::make_random_polytope(3, 20, 2).unwrap().into();
        let h = e1_axis();
        for f in [schwarz, inner_rotational, outer_rotational] {
            let coarse = f(&p, &h, 8).unwrap();
            let fine = f(&p, &h, 512).unwrap();
            let (t0, t1) = fine.t_range();
            for k in 1..1000 {
                let t = t0 + (t1 - t0) * k as f64 / 1000.0;
                let (a, b) = (coarse.radius_at(t).unwrap(), fine.radius_at(t).unwrap());
                assert!((a - b).abs() < 1e-4, "t = {t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn cylinders_are_fixed() {
        let c = RevolutionProfile::cylinder(e1_axis(), 0.8, -1.0, 2.0).unwrap();
        let k: ConvexBody = c.clone().into();
        assert_eq!(schwarz(&k, &e1_axis(), 16).unwrap(), c);
        assert_eq!(inner_rotational(&k, &e1_axis(), 16).unwrap(), c);
        assert_eq!(outer_rotational(&k, &e1_axis(), 16).unwrap(), c);
    }

    #[test]
    fn unsupported_dimensions() {
        let sq: ConvexBody = VPolytope::hull(&[Vector::new2(0.0, 0.0), Vector::new2(1.0, 0.0), Vector::new2(0.0, 1.0)])
            .unwrap()
            .into();
        let h = Subspace::coordinate(2, &[0]).unwrap();
        assert!(matches!(schwarz(&sq, &h, 16), Err(Error::Unsupported(_))));
    }
}
