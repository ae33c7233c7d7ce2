use std::collections::HashMap;
use std::f64::consts::PI;

use super::hull::{cloud_scale, hull_planar, hull_spatial, RawHull};
use super::subspace::Subspace;
use super::vector::{Matrix, Vector};
use crate::error::{check_dim, Error, Result};

/// A closed halfspace `normal · x ≤ offset` with unit `normal`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: f64,
}

impl Halfspace {
    pub fn new(normal: Vector, offset: f64) -> Self {
        Self { normal, offset }
    }

    pub fn violation(&self, x: &Vector) -> f64 {
        self.normal.dot(x) - self.offset
    }
}

/// A facet of a polytope; `ring` indexes into the vertex list and runs
/// counter-clockwise when seen from outside (in 2-D it is the edge `[a, b]`).
#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    pub normal: Vector,
    pub offset: f64,
    pub ring: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
enum Shape {
    Point,
    Segment,
    /// Vertices are stored counter-clockwise; in 3-D `normal` orients the plane.
    Polygon(Option<Vector>),
    Solid(Vec<Facet>),
}

/// Convex polytope stored by its extreme points.
#[derive(Clone, Debug, PartialEq)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Vector>,
    shape: Shape,
}

/// Convex hull of a finite point set with the default relative tolerance.
pub fn convex_hull(points: &[Vector]) -> Result<VPolytope> {
    VPolytope::hull_with_eps(points, 1e-9)
}

impl VPolytope {
    pub fn hull(points: &[Vector]) -> Result<Self> {
        convex_hull(points)
    }

    /// Hull with points closer than `rel_eps × scale` to the boundary of the
    /// hull of the others treated as non-extreme.
    pub fn hull_with_eps(points: &[Vector], rel_eps: f64) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput)?;
        let dim = first.dim();
        if !(dim == 2 || dim == 3) {
            return Err(Error::Unsupported(format!("dimension {dim}")));
        }
        for p in points {
            check_dim(dim, p.dim())?;
            if !p.is_finite() {
                return Err(Error::InvalidInput("non-finite coordinate".into()));
            }
        }
        let scale = cloud_scale(points);
        let eps = rel_eps * scale.max(f64::MIN_POSITIVE);
        let raw = if dim == 2 { hull_planar(points, eps) } else { hull_spatial(points, eps) };
        Ok(Self::from_raw(dim, points, raw))
    }

    fn from_raw(dim: usize, points: &[Vector], raw: RawHull) -> Self {
        match raw {
            RawHull::Point(i) => Self { dim, vertices: vec![points[i]], shape: Shape::Point },
            RawHull::Segment(i, j) => {
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                Self { dim, vertices: vec![points[a], points[b]], shape: Shape::Segment }
            }
            RawHull::Polygon { ring, normal } => Self {
                dim,
                vertices: ring.iter().map(|&i| points[i]).collect(),
                shape: Shape::Polygon(normal),
            },
            RawHull::Solid { facets } => {
                let mut used: Vec<usize> = facets.iter().flat_map(|f| f.ring.iter().copied()).collect();
                used.sort_unstable();
                used.dedup();
                let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(k, &i)| (i, k)).collect();
                let facets = facets
                    .into_iter()
                    .map(|f| Facet {
                        normal: f.normal,
                        offset: f.offset,
                        ring: f.ring.iter().map(|i| remap[i]).collect(),
                    })
                    .collect();
                Self { dim, vertices: used.iter().map(|&i| points[i]).collect(), shape: Shape::Solid(facets) }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points; counter-clockwise for polygons.
    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        match self.shape {
            Shape::Point => 0,
            Shape::Segment => 1,
            Shape::Polygon(_) => 2,
            Shape::Solid(_) => 3,
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    /// Facets of a full-dimensional polytope. A planar polygon in 3-D reports
    /// its two faces; lower-dimensional bodies report none.
    pub fn facets(&self) -> Vec<Facet> {
        match &self.shape {
            Shape::Solid(f) => f.clone(),
            Shape::Polygon(None) => {
                let m = self.vertices.len();
                (0..m)
                    .map(|k| {
                        let (a, b) = (self.vertices[k], self.vertices[(k + 1) % m]);
                        let e = b - a;
                        let normal = Vector::new2(e.y(), -e.x()).normalized().expect("distinct hull vertices");
                        Facet { normal, offset: normal.dot(&a), ring: vec![k, (k + 1) % m] }
                    })
                    .collect()
            }
            Shape::Polygon(Some(n)) => {
                let m = self.vertices.len();
                let off = self.vertices.iter().map(|v| n.dot(v)).sum::<f64>() / m as f64;
                vec![
                    Facet { normal: *n, offset: off, ring: (0..m).collect() },
                    Facet { normal: -*n, offset: -off, ring: (0..m).rev().collect() },
                ]
            }
            _ => Vec::new(),
        }
    }

    /// Undirected edges as index pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match &self.shape {
            Shape::Point => Vec::new(),
            Shape::Segment => vec![(0, 1)],
            Shape::Polygon(_) => {
                let m = self.vertices.len();
                (0..m).map(|k| (k, (k + 1) % m)).collect()
            }
            Shape::Solid(facets) => {
                let mut out = Vec::new();
                for f in facets {
                    let m = f.ring.len();
                    for k in 0..m {
                        let (a, b) = (f.ring[k], f.ring[(k + 1) % m]);
                        if a < b {
                            out.push((a, b));
                        }
                    }
                }
                out.sort_unstable();
                out.dedup();
                out
            }
        }
    }

    /// Complete H-representation, including equality pairs for flat bodies.
    pub fn halfspaces(&self) -> Vec<Halfspace> {
        let v0 = self.vertices[0];
        let pair = |n: Vector, out: &mut Vec<Halfspace>| {
            out.push(Halfspace::new(n, n.dot(&v0)));
            out.push(Halfspace::new(-n, -n.dot(&v0)));
        };
        let mut out = Vec::new();
        match &self.shape {
            Shape::Point => {
                for k in 0..self.dim {
                    pair(Vector::unit(self.dim, k), &mut out);
                }
            }
            Shape::Segment => {
                let b = self.vertices[1];
                let d = (b - v0).normalized().expect("distinct endpoints");
                out.push(Halfspace::new(d, d.dot(&b)));
                out.push(Halfspace::new(-d, -d.dot(&v0)));
                for n in Subspace::line(d).expect("nonzero direction").complement().basis() {
                    pair(*n, &mut out);
                }
            }
            Shape::Polygon(Some(n)) => {
                pair(*n, &mut out);
                let m = self.vertices.len();
                for k in 0..m {
                    let (a, b) = (self.vertices[k], self.vertices[(k + 1) % m]);
                    let w = (b - a).cross(n).normalized().expect("distinct hull vertices");
                    out.push(Halfspace::new(w, w.dot(&a)));
                }
            }
            _ => {
                for f in self.facets() {
                    out.push(Halfspace::new(f.normal, f.offset));
                }
            }
        }
        out
    }

    pub fn support(&self, u: &Vector) -> f64 {
        self.vertices.iter().fold(f64::NEG_INFINITY, |m, v| m.max(v.dot(u)))
    }

    /// Support values for many directions. Planar polygons sweep the
    /// vertex ring once over the directions sorted by angle.
    pub fn support_many(&self, dirs: &[Vector]) -> Vec<f64> {
        let m = self.vertices.len();
        if !(self.dim == 2 && matches!(self.shape, Shape::Polygon(None)) && m > 16 && dirs.len() > 16) {
            return dirs.iter().map(|u| self.support(u)).collect();
        }
        let mut order: Vec<usize> = (0..dirs.len()).collect();
        let angles: Vec<f64> = dirs.iter().map(|u| u.angle()).collect();
        order.sort_by(|&a, &b| angles[a].total_cmp(&angles[b]));
        let v = &self.vertices;
        let mut out = vec![0.0; dirs.len()];
        let first = &dirs[order[0]];
        let mut j = (0..m).max_by(|&a, &b| v[a].dot(first).total_cmp(&v[b].dot(first))).expect("nonempty");
        for &k in &order {
            let u = &dirs[k];
            let mut steps = 0;
            while steps < m && v[(j + 1) % m].dot(u) > v[j].dot(u) {
                j = (j + 1) % m;
                steps += 1;
            }
            out[k] = v[j].dot(u);
        }
        out
    }

    pub fn support_point(&self, u: &Vector) -> Vector {
        let mut best = self.vertices[0];
        let mut bv = best.dot(u);
        for v in &self.vertices[1..] {
            let d = v.dot(u);
            if d > bv {
                bv = d;
                best = *v;
            }
        }
        best
    }

    /// Radius about the center of the bounding box.
    pub fn circumradius(&self) -> f64 {
        cloud_scale(&self.vertices)
    }

    /// Largest distance of a vertex from the origin.
    pub fn max_norm(&self) -> f64 {
        self.vertices.iter().fold(0.0_f64, |m, v| m.max(v.norm()))
    }

    pub fn volume(&self) -> f64 {
        match &self.shape {
            Shape::Polygon(None) => polygon_area(&self.vertices),
            Shape::Solid(facets) => {
                let c = Vector::centroid(&self.vertices).expect("nonempty");
                facets
                    .iter()
                    .map(|f| self.facet_area(f) * (f.offset - f.normal.dot(&c)) / 3.0)
                    .sum()
            }
            _ => 0.0,
        }
    }

    /// Area of a 3-D facet.
    pub fn facet_area(&self, f: &Facet) -> f64 {
        let m = f.ring.len();
        let mut acc = Vector::zeros(3);
        for k in 0..m {
            acc = acc + self.vertices[f.ring[k]].cross(&self.vertices[f.ring[(k + 1) % m]]);
        }
        0.5 * acc.dot(&f.normal)
    }

    /// Boundary length of a polygon (a segment counts both sides).
    pub fn perimeter(&self) -> f64 {
        match &self.shape {
            Shape::Point => 0.0,
            Shape::Segment => 2.0 * self.vertices[0].distance(&self.vertices[1]),
            _ if self.affine_dim() == 2 => {
                let m = self.vertices.len();
                (0..m).map(|k| self.vertices[k].distance(&self.vertices[(k + 1) % m])).sum()
            }
            _ => 0.0,
        }
    }

    /// Surface area in 3-D (both sides of a flat body), perimeter in 2-D.
    pub fn surface_area(&self) -> f64 {
        if self.dim == 2 {
            return self.perimeter();
        }
        match &self.shape {
            Shape::Solid(facets) => facets.iter().map(|f| self.facet_area(f)).sum(),
            Shape::Polygon(_) => 2.0 * polygon_area_3d(&self.vertices),
            _ => 0.0,
        }
    }

    /// First intrinsic volume: half the perimeter in 2-D, the edge-angle sum
    /// `Σ ℓ(e)·ext(e) / 2π` for 3-D solids.
    pub fn intrinsic_volume_1(&self) -> f64 {
        match &self.shape {
            Shape::Point => 0.0,
            Shape::Segment => self.vertices[0].distance(&self.vertices[1]),
            Shape::Polygon(_) => 0.5 * self.perimeter(),
            Shape::Solid(facets) => {
                let mut normals: HashMap<(usize, usize), Vec<Vector>> = HashMap::new();
                for f in facets {
                    let m = f.ring.len();
                    for k in 0..m {
                        let (a, b) = (f.ring[k], f.ring[(k + 1) % m]);
                        normals.entry((a.min(b), a.max(b))).or_default().push(f.normal);
                    }
                }
                let mut keys: Vec<_> = normals.keys().copied().collect();
                keys.sort_unstable();
                keys.iter()
                    .map(|e| {
                        let ns = &normals[e];
                        if ns.len() != 2 {
                            return 0.0;
                        }
                        let ang = ns[0].dot(&ns[1]).clamp(-1.0, 1.0).acos();
                        self.vertices[e.0].distance(&self.vertices[e.1]) * ang
                    })
                    .sum::<f64>()
                    / (2.0 * PI)
            }
        }
    }

    /// Intrinsic volume `V_j` for `j ∈ {0, 1, n−1, n}`.
    pub fn intrinsic_volume(&self, j: usize) -> Result<f64> {
        match j {
            0 => Ok(1.0),
            _ if j == self.dim => Ok(self.volume()),
            1 => Ok(self.intrinsic_volume_1()),
            _ if j + 1 == self.dim => Ok(0.5 * self.surface_area()),
            _ => Err(Error::Unsupported(format!("intrinsic volume V_{j}"))),
        }
    }

    /// Centroid of the body within its affine hull.
    pub fn centroid(&self) -> Vector {
        match &self.shape {
            Shape::Polygon(None) => polygon_centroid(&self.vertices),
            Shape::Polygon(Some(_)) => {
                let c0 = self.vertices[0];
                let mut acc = Vector::zeros(3);
                let mut total = 0.0;
                for k in 1..self.vertices.len() - 1 {
                    let (a, b) = (self.vertices[k], self.vertices[k + 1]);
                    let w = (a - c0).cross(&(b - c0)).norm();
                    acc = acc + (c0 + a + b) * (w / 3.0);
                    total += w;
                }
                acc * (1.0 / total)
            }
            Shape::Solid(facets) => {
                let c = Vector::centroid(&self.vertices).expect("nonempty");
                let mut acc = Vector::zeros(3);
                let mut total = 0.0;
                for f in facets {
                    let a = self.vertices[f.ring[0]];
                    for k in 1..f.ring.len() - 1 {
                        let b = self.vertices[f.ring[k]];
                        let d = self.vertices[f.ring[k + 1]];
                        let vol = (a - c).dot(&(b - c).cross(&(d - c))) / 6.0;
                        acc = acc + (c + a + b + d) * (vol / 4.0);
                        total += vol;
                    }
                }
                acc * (1.0 / total)
            }
            _ => Vector::centroid(&self.vertices).expect("nonempty"),
        }
    }

    /// Exact translation; the combinatorial structure is reused.
    pub fn translate(&self, t: &Vector) -> Self {
        let vertices = self.vertices.iter().map(|v| *v + *t).collect();
        let shape = match &self.shape {
            Shape::Solid(facets) => Shape::Solid(
                facets
                    .iter()
                    .map(|f| Facet { normal: f.normal, offset: f.offset + f.normal.dot(t), ring: f.ring.clone() })
                    .collect(),
            ),
            s => s.clone(),
        };
        Self { dim: self.dim, vertices, shape }
    }

    /// Hull of the image of the vertices under `f`.
    pub fn map_points<F: Fn(&Vector) -> Vector>(&self, f: F) -> Self {
        let pts: Vec<Vector> = self.vertices.iter().map(f).collect();
        Self::hull(&pts).expect("image of a nonempty polytope is nonempty")
    }

    pub fn linear_map(&self, a: &Matrix) -> Result<Self> {
        check_dim(self.dim, a.dim())?;
        Ok(self.map_points(|v| a.apply(v)))
    }

    pub fn reflect(&self, h: &Subspace) -> Result<Self> {
        check_dim(self.dim, h.ambient_dim())?;
        Ok(self.map_points(|v| h.reflect_point(v)))
    }

    /// Orthogonal projection onto `H`, in ambient coordinates.
    pub fn project(&self, h: &Subspace) -> Result<Self> {
        check_dim(self.dim, h.ambient_dim())?;
        Ok(self.map_points(|v| h.project_point(v)))
    }

    pub fn scale_about(&self, center: &Vector, s: f64) -> Self {
        self.map_points(|v| *center + (*v - *center) * s)
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        if self.dim == 2 && self.affine_dim() == 2 && other.affine_dim() == 2 {
            return Self::hull(&merge_polygons(&self.vertices, &other.vertices));
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(*a + *b);
            }
        }
        Self::hull(&pts)
    }

    /// `s·P + t·Q`.
    pub fn weighted_sum(&self, s: f64, other: &Self, t: f64) -> Result<Self> {
        let a = self.map_points(|v| *v * s);
        let b = other.map_points(|v| *v * t);
        a.minkowski_sum(&b)
    }

    /// Directions worth probing when comparing support functions: facet
    /// normals and normalized vertex positions.
    pub fn probe_directions(&self) -> Vec<Vector> {
        let mut out: Vec<Vector> = self.halfspaces().iter().map(|h| h.normal).collect();
        out.extend(self.vertices.iter().filter_map(|v| v.normalized()));
        out
    }
}

fn polygon_area(v: &[Vector]) -> f64 {
    let m = v.len();
    let o = v[0];
    let mut s = 0.0;
    for k in 1..m.saturating_sub(1) {
        s += (v[k] - o).perp_dot(&(v[k + 1] - o));
    }
    0.5 * s
}

fn polygon_area_3d(v: &[Vector]) -> f64 {
    let o = v[0];
    let mut acc = Vector::zeros(3);
    for k in 1..v.len().saturating_sub(1) {
        acc = acc + (v[k] - o).cross(&(v[k + 1] - o));
    }
    0.5 * acc.norm()
}

fn polygon_centroid(v: &[Vector]) -> Vector {
    let o = v[0];
    let mut acc = Vector::zeros(2);
    let mut total = 0.0;
    for k in 1..v.len() - 1 {
        let w = (v[k] - o).perp_dot(&(v[k + 1] - o));
        acc = acc + (o + v[k] + v[k + 1]) * (w / 3.0);
        total += w;
    }
    acc * (1.0 / total)
}

/// Candidate vertices of the sum of two counter-clockwise convex polygons,
/// produced by merging their edge sequences by angle.
fn merge_polygons(p: &[Vector], q: &[Vector]) -> Vec<Vector> {
    let start = |v: &[Vector]| {
        (0..v.len())
            .min_by(|&i, &j| v[i].y().total_cmp(&v[j].y()).then(v[i].x().total_cmp(&v[j].x())))
            .expect("nonempty")
    };
    let (i0, j0) = (start(p), start(q));
    let (n, m) = (p.len(), q.len());
    let mut out = Vec::with_capacity(n + m);
    let (mut i, mut j) = (0, 0);
    while i < n || j < m {
        out.push(p[(i0 + i) % n] + q[(j0 + j) % m]);
        let ep = p[(i0 + i + 1) % n] - p[(i0 + i) % n];
        let eq = q[(j0 + j + 1) % m] - q[(j0 + j) % m];
        let cr = if i >= n {
            -1.0
        } else if j >= m {
            1.0
        } else {
            ep.perp_dot(&eq)
        };
        if cr > 0.0 {
            i += 1;
        } else if cr < 0.0 {
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v2(x: f64, y: f64) -> Vector {
        Vector::new2(x, y)
    }

    fn cube() -> VPolytope {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push(Vector::new3((i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64));
        }
        VPolytope::hull(&pts).unwrap()
    }

    #[test]
    fn triangle_hull_and_measures() {
        let p = VPolytope::hull(&[v2(0.0, 0.0), v2(1.0, 0.0), v2(0.0, 1.0), v2(0.25, 0.25)]).unwrap();
        assert_eq!(p.vertices(), &[v2(0.0, 0.0), v2(1.0, 0.0), v2(0.0, 1.0)]);
        assert!((p.volume() - 0.5).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((p.support(&v2(s, s)) - s).abs() < 1e-15);
    }

    #[test]
    fn single_point_hull() {
        let p = VPolytope::hull(&[v2(0.0, 0.0)]).unwrap();
        assert_eq!(p.vertices().len(), 1);
        assert_eq!(p.volume(), 0.0);
        assert!(matches!(VPolytope::hull(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn cube_measures() {
        let mut pts: Vec<Vector> = cube().vertices().to_vec();
        pts.push(Vector::new3(0.5, 0.5, 0.5));
        let c = VPolytope::hull(&pts).unwrap();
        assert_eq!(c.vertices().len(), 8);
        assert!((c.volume() - 1.0).abs() < 1e-14);
        assert!((c.surface_area() - 6.0).abs() < 1e-14);
        assert!((c.intrinsic_volume_1() - 3.0).abs() < 1e-14);
        assert!((c.centroid() - Vector::new3(0.5, 0.5, 0.5)).norm() < 1e-14);
    }

    #[test]
    fn square_and_segment_intrinsic_volumes() {
        let sq = VPolytope::hull(&[v2(0.0, 0.0), v2(1.0, 0.0), v2(1.0, 1.0), v2(0.0, 1.0)]).unwrap();
        assert!((sq.intrinsic_volume_1() - 2.0).abs() < 1e-15);
        let seg = VPolytope::hull(&[v2(0.0, -1.0), v2(0.0, 1.0)]).unwrap();
        assert!((seg.intrinsic_volume_1() - 2.0).abs() < 1e-15);
        assert_eq!(seg.volume(), 0.0);
    }

    #[test]
    fn flat_polygon_in_space() {
        let p = VPolytope::hull(&[
            Vector::new3(0.0, 0.0, 0.0),
            Vector::new3(1.0, 0.0, 0.0),
            Vector::new3(1.0, 1.0, 0.0),
            Vector::new3(0.0, 1.0, 0.0),
        ])
        .unwrap();
        assert_eq!(p.affine_dim(), 2);
        assert!((p.intrinsic_volume_1() - 2.0).abs() < 1e-15);
        assert!((p.surface_area() - 2.0).abs() < 1e-15);
        assert_eq!(p.halfspaces().len(), 6);
    }

    #[test]
    fn minkowski_examples() {
        let sq = VPolytope::hull(&[v2(0.0, 0.0), v2(1.0, 0.0), v2(1.0, 1.0), v2(0.0, 1.0)]).unwrap();
        let pt = VPolytope::hull(&[v2(2.0, 0.0)]).unwrap();
        let moved = sq.minkowski_sum(&pt).unwrap();
        assert!((moved.support(&v2(1.0, 0.0)) - 3.0).abs() < 1e-15);
        assert!((moved.volume() - 1.0).abs() < 1e-15);

        let t = VPolytope::hull(&[v2(0.0, 0.0), v2(1.0, 0.0), v2(0.0, 1.0)]).unwrap();
        let mt = t.map_points(|v| -*v);
        let hex = t.minkowski_sum(&mt).unwrap();
        // brute force hull of the 9 pairwise sums
        let mut sums = Vec::new();
        for a in t.vertices() {
            for b in mt.vertices() {
                sums.push(*a + *b);
            }
        }
        let brute = VPolytope::hull(&sums).unwrap();
        assert_eq!(hex.vertices().len(), 6);
        assert_eq!(brute.vertices().len(), 6);
        for v in brute.vertices() {
            assert!(hex.vertices().iter().any(|w| w.distance(v) < 1e-15));
        }
    }

    #[test]
    fn translate_keeps_volume() {
        let c = cube();
        let t = c.translate(&Vector::new3(1.5, -2.0, 0.25));
        assert!((t.volume() - 1.0).abs() < 1e-14);
        assert_eq!(t.facets().len(), 6);
    }

    #[test]
    fn batched_support_matches_direct() {
        let pts: Vec<Vector> = (0..200)
            .map(|k| {
                let t = k as f64 * 2.399963;
                let r = 1.0 + 0.3 * (k as f64 * 0.77).sin();
                v2(r * t.cos(), 0.6 * r * t.sin())
            })
            .collect();
        let p = VPolytope::hull(&pts).unwrap();
        let dirs: Vec<Vector> = (0..500).map(|k| v2((k as f64 * 1.3).cos(), (k as f64 * 1.3).sin())).collect();
        let batch = p.support_many(&dirs);
        for (u, h) in dirs.iter().zip(&batch) {
            assert_eq!(*h, p.support(u));
        }
    }
}
