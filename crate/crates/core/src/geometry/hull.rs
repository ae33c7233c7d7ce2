//! Planar monotone-chain and spatial quickhull, both index based so that the
//! caller keeps bit-exact input coordinates.

use std::collections::HashMap;

use super::vector::Vector;

/// Hull of a point set, classified by affine dimension.
#[derive(Debug, Clone)]
pub(crate) enum RawHull {
    Point(usize),
    Segment(usize, usize),
    /// Counter-clockwise polygon. In 3-D `normal` orients the plane.
    Polygon { ring: Vec<usize>, normal: Option<Vector> },
    Solid { facets: Vec<RawFacet> },
}

#[derive(Debug, Clone)]
pub(crate) struct RawFacet {
    pub normal: Vector,
    pub offset: f64,
    /// Counter-clockwise seen from outside.
    pub ring: Vec<usize>,
}

/// Radius of the point cloud about its bounding-box center.
pub(crate) fn cloud_scale(points: &[Vector]) -> f64 {
    let dim = points[0].dim();
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in points {
        for k in 0..dim {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let mut c = Vector::zeros(dim);
    for k in 0..dim {
        let mid = 0.5 * (lo[k] + hi[k]);
        c = c + Vector::unit(dim, k) * mid;
    }
    points.iter().fold(0.0_f64, |m, p| m.max(p.distance(&c)))
}

/// Andrew's monotone chain over `points[idx]`. Points within `eps` of a hull
/// edge are dropped. Returns a counter-clockwise ring starting at the
/// lexicographically smallest point.
pub(crate) fn hull2d(points: &[Vector], eps: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        let (p, q) = (points[a], points[b]);
        p.x().total_cmp(&q.x()).then(p.y().total_cmp(&q.y())).then(a.cmp(&b))
    });
    idx.dedup_by(|a, b| points[*a].distance(&points[*b]) <= eps);
    if idx.len() <= 2 {
        return idx;
    }
    let keeps_turn = |o: Vector, a: Vector, b: Vector| {
        let cr = (a - o).perp_dot(&(b - o));
        cr > eps * (b - o).norm()
    };
    let mut lower: Vec<usize> = Vec::with_capacity(idx.len());
    for &i in &idx {
        while lower.len() >= 2
            && !keeps_turn(points[lower[lower.len() - 2]], points[lower[lower.len() - 1]], points[i])
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::with_capacity(idx.len());
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && !keeps_turn(points[upper[upper.len() - 2]], points[upper[upper.len() - 1]], points[i])
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && points[lower[0]].distance(&points[lower[1]]) <= eps {
        lower.truncate(1);
    }
    lower
}

/// Orthonormal pair spanning `n^⊥`, oriented so that `e1 × e2 = n`.
pub(crate) fn plane_basis(n: &Vector) -> (Vector, Vector) {
    let helper = if n.x().abs() < 0.6 {
        Vector::new3(1.0, 0.0, 0.0)
    } else if n.y().abs() < 0.6 {
        Vector::new3(0.0, 1.0, 0.0)
    } else {
        Vector::new3(0.0, 0.0, 1.0)
    };
    let e1 = (helper - *n * helper.dot(n)).normalized().expect("helper is not parallel to n");
    let e2 = n.cross(&e1);
    (e1, e2)
}

fn farthest<F: Fn(&Vector) -> f64>(points: &[Vector], f: F) -> (usize, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, p) in points.iter().enumerate() {
        let d = f(p);
        if d > best.1 {
            best = (i, d);
        }
    }
    best
}

/// Hull of a 2-D point set.
pub(crate) fn hull_planar(points: &[Vector], eps: f64) -> RawHull {
    let ring = hull2d(points, eps);
    match ring.len() {
        1 => RawHull::Point(ring[0]),
        2 => RawHull::Segment(ring[0], ring[1]),
        _ => RawHull::Polygon { ring, normal: None },
    }
}

/// Hull of a 3-D point set.
pub(crate) fn hull_spatial(points: &[Vector], eps: f64) -> RawHull {
    let p0 = farthest(points, |p| -p.x()).0;
    let (p1, d1) = farthest(points, |p| p.distance(&points[p0]));
    if d1 <= eps {
        return RawHull::Point(p0);
    }
    let dir = (points[p1] - points[p0]) * (1.0 / d1);
    let off_line = |p: &Vector| {
        let w = *p - points[p0];
        (w - dir * w.dot(&dir)).norm()
    };
    let (p2, d2) = farthest(points, off_line);
    if d2 <= eps {
        let lo = farthest(points, |p| -p.dot(&dir)).0;
        let hi = farthest(points, |p| p.dot(&dir)).0;
        return RawHull::Segment(lo, hi);
    }
    let normal = (points[p1] - points[p0])
        .cross(&(points[p2] - points[p0]))
        .normalized()
        .expect("three non-collinear points span a plane");
    let (p3, d3) = farthest(points, |p| (p.dot(&normal) - points[p0].dot(&normal)).abs());
    if d3 <= eps {
        let (e1, e2) = plane_basis(&normal);
        let flat: Vec<Vector> = points.iter().map(|p| Vector::new2(p.dot(&e1), p.dot(&e2))).collect();
        let ring = hull2d(&flat, eps);
        return match ring.len() {
            1 => RawHull::Point(ring[0]),
            2 => RawHull::Segment(ring[0], ring[1]),
            _ => RawHull::Polygon { ring, normal: Some(normal) },
        };
    }
    let tris = quickhull(points, [p0, p1, p2, p3], eps);
    RawHull::Solid { facets: extract_facets(points, &tris, eps) }
}


struct Face {
    v: [usize; 3],
    n: Vector,
    d: f64,
    alive: bool,
    outside: Vec<usize>,
}

impl Face {
    fn new(points: &[Vector], v: [usize; 3]) -> Self {
        let (a, b, c) = (points[v[0]], points[v[1]], points[v[2]]);
        let raw = (b - a).cross(&(c - a));
        let n = raw.normalized().unwrap_or(raw);
        let d = (n.dot(&a) + n.dot(&b) + n.dot(&c)) / 3.0;
        Face { v, n, d, alive: true, outside: Vec::new() }
    }

    fn dist(&self, p: &Vector) -> f64 {
        self.n.dot(p) - self.d
    }
}

fn quickhull(points: &[Vector], seed: [usize; 4], eps: f64) -> Vec<[usize; 3]> {
    let [a, b, c, d] = seed;
    let mut faces: Vec<Face> = Vec::new();
    let orient = (points[b] - points[a]).cross(&(points[c] - points[a])).dot(&(points[d] - points[a]));
    let tris = if orient < 0.0 {
        [[a, b, c], [a, d, b], [b, d, c], [c, d, a]]
    } else {
        [[a, c, b], [a, b, d], [b, c, d], [c, a, d]]
    };
    let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
    for t in tris {
        let f = faces.len();
        faces.push(Face::new(points, t));
        for k in 0..3 {
            edges.insert((t[k], t[(k + 1) % 3]), f);
        }
    }
    for (i, p) in points.iter().enumerate() {
        if seed.contains(&i) {
            continue;
        }
        let mut best: Option<(usize, f64)> = None;
        for (f, face) in faces.iter().enumerate() {
            let dd = face.dist(p);
            if dd > eps && best.map_or(true, |(_, bd)| dd > bd) {
                best = Some((f, dd));
            }
        }
        if let Some((f, _)) = best {
            faces[f].outside.push(i);
        }
    }
    let mut pending: Vec<usize> = (0..faces.len()).collect();
    let mut mark: Vec<u32> = vec![0; faces.len()];
    let mut round: u32 = 0;
    while let Some(f0) = pending.pop() {
        if !faces[f0].alive || faces[f0].outside.is_empty() {
            continue;
        }
        round += 1;
        let apex = *faces[f0]
            .outside
            .iter()
            .max_by(|&&i, &&j| faces[f0].dist(&points[i]).total_cmp(&faces[f0].dist(&points[j])))
            .expect("outside set is nonempty");
        let ap = points[apex];
        let mut visible = vec![f0];
        mark[f0] = round;
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        let mut q = 0;
        while q < visible.len() {
            let g = visible[q];
            q += 1;
            let v = faces[g].v;
            for k in 0..3 {
                let (ea, eb) = (v[k], v[(k + 1) % 3]);
                let Some(&h) = edges.get(&(eb, ea)) else { continue };
                if mark[h] == round {
                    continue;
                }
                if faces[h].dist(&ap) > eps {
                    mark[h] = round;
                    visible.push(h);
                } else {
                    horizon.push((ea, eb));
                }
            }
        }
        let mut orphans: Vec<usize> = Vec::new();
        for &g in &visible {
            faces[g].alive = false;
            let v = faces[g].v;
            for k in 0..3 {
                let key = (v[k], v[(k + 1) % 3]);
                if edges.get(&key) == Some(&g) {
                    edges.remove(&key);
                }
            }
            orphans.append(&mut faces[g].outside);
        }
        let first_new = faces.len();
        for &(ea, eb) in &horizon {
            let f = faces.len();
            faces.push(Face::new(points, [ea, eb, apex]));
            mark.push(0);
            edges.insert((ea, eb), f);
            edges.insert((eb, apex), f);
            edges.insert((apex, ea), f);
        }
        for i in orphans {
            if i == apex {
                continue;
            }
            let p = points[i];
            let mut best: Option<(usize, f64)> = None;
            for (f, face) in faces.iter().enumerate().skip(first_new) {
                let dd = face.dist(&p);
                if dd > eps && best.map_or(true, |(_, bd)| dd > bd) {
                    best = Some((f, dd));
                }
            }
            if let Some((f, _)) = best {
                faces[f].outside.push(i);
            }
        }
        pending.extend(first_new..faces.len());
    }
    faces.into_iter().filter(|f| f.alive).map(|f| f.v).collect()
}

/// Groups hull triangles into maximal planar facets by merging coplanar
/// neighbours, keeping only vertices that lie on at least three facets.
fn extract_facets(points: &[Vector], tris: &[[usize; 3]], eps: f64) -> Vec<RawFacet> {
    let plane_eps = 4.0 * eps;
    let faces: Vec<Face> = tris.iter().map(|t| Face::new(points, *t)).collect();
    let flat = |f: &Face| f.n.norm() < 0.5;
    let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, t) in tris.iter().enumerate() {
        for k in 0..3 {
            edges.insert((t[k], t[(k + 1) % 3]), i);
        }
    }
    // grow each facet from its largest unassigned triangle, admitting
    // neighbours only while they stay on the seed plane
    let area: Vec<f64> = tris
        .iter()
        .map(|t| (points[t[1]] - points[t[0]]).cross(&(points[t[2]] - points[t[0]])).norm())
        .collect();
    let mut order: Vec<usize> = (0..tris.len()).filter(|&i| !flat(&faces[i])).collect();
    order.sort_by(|&a, &b| area[b].total_cmp(&area[a]).then(a.cmp(&b)));
    let mut owner: Vec<Option<usize>> = vec![None; tris.len()];
    let mut groups: Vec<(Vector, Vec<usize>)> = Vec::new();
    for seed in order {
        if owner[seed].is_some() {
            continue;
        }
        let g = groups.len();
        let plane = &faces[seed];
        owner[seed] = Some(g);
        let mut stack = vec![seed];
        let mut normal = Vector::zeros(3);
        let mut members: Vec<usize> = Vec::new();
        while let Some(i) = stack.pop() {
            let t = tris[i];
            normal = normal + (points[t[1]] - points[t[0]]).cross(&(points[t[2]] - points[t[0]]));
            members.extend_from_slice(&t);
            for k in 0..3 {
                let Some(&j) = edges.get(&(t[(k + 1) % 3], t[k])) else { continue };
                if owner[j].is_some() || flat(&faces[j]) || plane.n.dot(&faces[j].n) <= 0.0 {
                    continue;
                }
                if tris[j].iter().all(|&v| plane.dist(&points[v]).abs() <= plane_eps) {
                    owner[j] = Some(g);
                    stack.push(j);
                }
            }
        }
        groups.push((normal, members));
    }
    for g in &mut groups {
        g.1.sort_unstable();
        g.1.dedup();
    }
    groups.sort_by(|a, b| a.1.cmp(&b.1));

    let mut facets: Vec<RawFacet> = Vec::new();
    for (nw, s) in groups {
        let Some(n) = nw.normalized() else { continue };
        let (e1, e2) = plane_basis(&n);
        let proj: Vec<Vector> = s.iter().map(|&v| Vector::new2(points[v].dot(&e1), points[v].dot(&e2))).collect();
        let ring: Vec<usize> = hull2d(&proj, eps).into_iter().map(|k| s[k]).collect();
        if ring.len() < 3 {
            continue;
        }
        facets.push(refit(points, ring, n));
    }

    let mut count: HashMap<usize, usize> = HashMap::new();
    for f in &facets {
        for &v in &f.ring {
            *count.entry(v).or_default() += 1;
        }
    }
    let mut out = Vec::with_capacity(facets.len());
    for f in facets {
        let ring: Vec<usize> = f.ring.iter().copied().filter(|v| count[v] >= 3).collect();
        if ring.len() >= 3 {
            if ring.len() == f.ring.len() {
                out.push(f);
            } else {
                out.push(refit(points, ring, f.normal));
            }
        }
    }
    out
}

/// Newell normal and mean offset of a planar ring; `hint` fixes orientation.
fn refit(points: &[Vector], ring: Vec<usize>, hint: Vector) -> RawFacet {
    let m = ring.len();
    let mut nw = Vector::zeros(3);
    for k in 0..m {
        let a = points[ring[k]];
        let b = points[ring[(k + 1) % m]];
        nw = nw + a.cross(&b);
    }
    let mut normal = nw.normalized().unwrap_or(hint);
    if normal.dot(&hint) < 0.0 {
        normal = -normal;
    }
    let offset = ring.iter().map(|&v| normal.dot(&points[v])).sum::<f64>() / m as f64;
    RawFacet { normal, offset, ring }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_hull_drops_interior_and_collinear_points() {
        let pts = vec![
            Vector::new2(0.0, 0.0),
            Vector::new2(1.0, 0.0),
            Vector::new2(0.5, 0.0),
            Vector::new2(0.0, 1.0),
            Vector::new2(0.25, 0.25),
        ];
        let ring = hull2d(&pts, 1e-12);
        assert_eq!(ring, vec![0, 1, 3]);
    }

    #[test]
    fn cube_with_face_and_edge_points() {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push(Vector::new3((i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64));
        }
        pts.push(Vector::new3(0.5, 0.5, 0.0));
        pts.push(Vector::new3(0.5, 0.5, 1.0));
        pts.push(Vector::new3(0.5, 0.0, 0.0));
        pts.push(Vector::new3(0.5, 0.5, 0.5));
        let RawHull::Solid { facets } = hull_spatial(&pts, 1e-12) else { panic!("expected a solid") };
        assert_eq!(facets.len(), 6);
        for f in &facets {
            assert_eq!(f.ring.len(), 4);
            assert!(f.ring.iter().all(|&v| v < 8));
        }
    }

    #[test]
    fn degenerate_spatial_inputs() {
        let seg = [Vector::new3(0.0, 0.0, 0.0), Vector::new3(1.0, 1.0, 1.0), Vector::new3(0.5, 0.5, 0.5)];
        assert!(matches!(hull_spatial(&seg, 1e-12), RawHull::Segment(_, _)));
        let flat = [
            Vector::new3(0.0, 0.0, 1.0),
            Vector::new3(1.0, 0.0, 1.0),
            Vector::new3(0.0, 1.0, 1.0),
            Vector::new3(0.2, 0.2, 1.0),
        ];
        match hull_spatial(&flat, 1e-12) {
            RawHull::Polygon { ring, normal } => {
                assert_eq!(ring.len(), 3);
                assert!(normal.is_some());
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
