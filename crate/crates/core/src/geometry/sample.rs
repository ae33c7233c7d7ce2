use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use super::halfspace::{intersect_halfspaces_from, HPolytope};
use super::hull::{hull_spatial, RawHull};
use super::polytope::{Halfspace, VPolytope};
use super::subspace::Subspace;
use super::vector::Vector;
use crate::error::{check_dim, Error, Result};

/// A finite set of unit directions closed under `u ↦ −u`.
///
/// Planar grids are equally spaced in angle. Spatial grids place a Fibonacci
/// spiral on the upper hemisphere and add the antipodes; they carry a
/// spherical triangulation (the hull of the directions) for interpolation.
#[derive(Debug)]
pub struct DirectionGrid {
    dim: usize,
    dirs: Vec<Vector>,
    antipode: Vec<usize>,
    mesh: OnceLock<SphereMesh>,
}

#[derive(Debug)]
struct SphereMesh {
    tris: Vec<[usize; 3]>,
    adj: Vec<[usize; 3]>,
    /// `a × b`, `b × c`, `c × a` per triangle.
    edge_normals: Vec<[Vector; 3]>,
    /// `∫_T u dσ` per triangle.
    moments: Vec<Vector>,
    cells: Vec<usize>,
}

const NZ: usize = 48;
const NPHI: usize = 96;

impl PartialEq for DirectionGrid {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.dirs == other.dirs
    }
}

fn cache() -> &'static Mutex<HashMap<(usize, usize), Arc<DirectionGrid>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<DirectionGrid>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl DirectionGrid {
    /// Shared grid of `count` directions in dimension `dim` (`count` is
    /// rounded up to an even number, at least 8).
    pub fn shared(dim: usize, count: usize) -> Result<Arc<Self>> {
        if !(dim == 2 || dim == 3) {
            return Err(Error::Unsupported(format!("dimension {dim}")));
        }
        let count = count.max(8).next_multiple_of(2);
        let mut map = cache().lock().expect("grid cache poisoned");
        Ok(map
            .entry((dim, count))
            .or_insert_with(|| Arc::new(if dim == 2 { Self::circle(count) } else { Self::sphere(count) }))
            .clone())
    }

    fn circle(count: usize) -> Self {
        let dirs = (0..count)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / count as f64;
                Vector::new2(t.cos(), t.sin())
            })
            .collect();
        let antipode = (0..count).map(|k| (k + count / 2) % count).collect();
        Self { dim: 2, dirs, antipode, mesh: OnceLock::new() }
    }

    fn sphere(count: usize) -> Self {
        let m = count / 2;
        let golden = PI * (3.0 - 5f64.sqrt());
        let mut dirs = Vec::with_capacity(count);
        for k in 0..m {
            let z = 1.0 - (k as f64 + 0.5) / m as f64;
            let rho = (1.0 - z * z).sqrt();
            let phi = golden * k as f64;
            dirs.push(Vector::new3(rho * phi.cos(), rho * phi.sin(), z));
        }
        for k in 0..m {
            dirs.push(-dirs[k]);
        }
        let antipode = (0..count).map(|k| (k + m) % count).collect();
        Self { dim: 3, dirs, antipode, mesh: OnceLock::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn directions(&self) -> &[Vector] {
        &self.dirs
    }

    pub fn antipode(&self, k: usize) -> usize {
        self.antipode[k]
    }

    fn mesh(&self) -> &SphereMesh {
        self.mesh.get_or_init(|| build_mesh(&self.dirs))
    }

    /// Indices and weights with `u = Σ w_k g_k` over the grid cone containing `u`.
    fn cone_weights(&self, u: &Vector) -> ([usize; 3], [f64; 3]) {
        if self.dim == 2 {
            let n = self.dirs.len();
            let step = 2.0 * PI / n as f64;
            let mut a = u.angle();
            if a < 0.0 {
                a += 2.0 * PI;
            }
            let k = ((a / step).floor() as usize).min(n - 1);
            let (g0, g1) = (self.dirs[k], self.dirs[(k + 1) % n]);
            let det = g0.perp_dot(&g1);
            let w0 = u.perp_dot(&g1) / det;
            let w1 = g0.perp_dot(u) / det;
            ([k, (k + 1) % n, 0], [w0, w1, 0.0])
        } else {
            let mesh = self.mesh();
            let t = mesh.locate(u);
            let [a, b, c] = mesh.tris[t];
            let en = &mesh.edge_normals[t];
            let det = self.dirs[a].dot(&en[1]);
            ([a, b, c], [u.dot(&en[1]) / det, u.dot(&en[2]) / det, u.dot(&en[0]) / det])
        }
    }

    /// Exact integral over the sphere of the cone-linear interpolant of `values`.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        if self.dim == 2 {
            let n = self.dirs.len();
            let step = 2.0 * PI / n as f64;
            // on each arc h(u) = w·u with w fixed by the two end values
            let mut s = 0.0;
            for k in 0..n {
                let (g0, g1) = (self.dirs[k], self.dirs[(k + 1) % n]);
                let t0 = step * k as f64;
                let t1 = t0 + step;
                let moment = Vector::new2(t1.sin() - t0.sin(), t0.cos() - t1.cos());
                let det = g0.perp_dot(&g1);
                // w solves g0·w = h0, g1·w = h1
                let w = Vector::new2(
                    (values[k] * g1.y() - values[(k + 1) % n] * g0.y()) / det,
                    (g0.x() * values[(k + 1) % n] - g1.x() * values[k]) / det,
                );
                s += w.dot(&moment);
            }
            s
        } else {
            let mesh = self.mesh();
            let mut s = 0.0;
            for (t, tri) in mesh.tris.iter().enumerate() {
                let en = &mesh.edge_normals[t];
                let det = self.dirs[tri[0]].dot(&en[1]);
                // w = (h_a (b×c) + h_b (c×a) + h_c (a×b)) / det
                let w = (en[1] * values[tri[0]] + en[2] * values[tri[1]] + en[0] * values[tri[2]]) * (1.0 / det);
                s += w.dot(&mesh.moments[t]);
            }
            s
        }
    }
}

impl SphereMesh {
    fn locate(&self, u: &Vector) -> usize {
        let z = u.z() / u.norm();
        let phi = u.y().atan2(u.x()) + PI;
        let iz = (((z + 1.0) * 0.5 * NZ as f64) as usize).min(NZ - 1);
        let ip = ((phi / (2.0 * PI) * NPHI as f64) as usize).min(NPHI - 1);
        self.walk(u, self.cells[iz * NPHI + ip])
    }

    fn walk(&self, u: &Vector, start: usize) -> usize {
        let mut t = start;
        for _ in 0..4 * self.tris.len().max(16) {
            let en = &self.edge_normals[t];
            let s = [u.dot(&en[0]), u.dot(&en[1]), u.dot(&en[2])];
            let mut k = 0;
            for j in 1..3 {
                if s[j] < s[k] {
                    k = j;
                }
            }
            if s[k] >= -1e-15 * u.norm() {
                return t;
            }
            t = self.adj[t][k];
        }
        // walking only cycles on numerically flat configurations
        (0..self.tris.len())
            .max_by(|&a, &b| {
                let ma = self.edge_normals[a].iter().map(|n| u.dot(n)).fold(f64::INFINITY, f64::min);
                let mb = self.edge_normals[b].iter().map(|n| u.dot(n)).fold(f64::INFINITY, f64::min);
                ma.total_cmp(&mb)
            })
            .expect("mesh is nonempty")
    }
}

fn build_mesh(dirs: &[Vector]) -> SphereMesh {
    let RawHull::Solid { facets } = hull_spatial(dirs, 1e-13) else {
        panic!("direction grid must span space");
    };
    let mut tris = Vec::new();
    for f in facets {
        for k in 1..f.ring.len() - 1 {
            tris.push([f.ring[0], f.ring[k], f.ring[k + 1]]);
        }
    }
    let mut by_edge: HashMap<(usize, usize), usize> = HashMap::new();
    for (t, tri) in tris.iter().enumerate() {
        for k in 0..3 {
            by_edge.insert((tri[k], tri[(k + 1) % 3]), t);
        }
    }
    let adj = tris
        .iter()
        .map(|tri| {
            let mut a = [0; 3];
            for k in 0..3 {
                a[k] = by_edge[&(tri[(k + 1) % 3], tri[k])];
            }
            a
        })
        .collect();
    let mut edge_normals = Vec::with_capacity(tris.len());
    let mut moments = Vec::with_capacity(tris.len());
    for tri in &tris {
        let [a, b, c] = [dirs[tri[0]], dirs[tri[1]], dirs[tri[2]]];
        edge_normals.push([a.cross(&b), b.cross(&c), c.cross(&a)]);
        let mut m = Vector::zeros(3);
        for (p, q) in [(a, b), (b, c), (c, a)] {
            let cr = p.cross(&q);
            let ang = cr.norm().atan2(p.dot(&q));
            m = m + cr.normalized().unwrap_or(cr) * (0.5 * ang);
        }
        moments.push(m);
    }
    let mut mesh = SphereMesh { tris, adj, edge_normals, moments, cells: Vec::new() };
    let mut cells = Vec::with_capacity(NZ * NPHI);
    let mut last = 0;
    for iz in 0..NZ {
        let z = -1.0 + (iz as f64 + 0.5) * 2.0 / NZ as f64;
        let rho = (1.0 - z * z).sqrt();
        for ip in 0..NPHI {
            let phi = (ip as f64 + 0.5) * 2.0 * PI / NPHI as f64 - PI;
            let u = Vector::new3(rho * phi.cos(), rho * phi.sin(), z);
            last = mesh.walk(&u, last);
            cells.push(last);
        }
    }
    mesh.cells = cells;
    mesh
}

/// A convex body known through its support function on a direction grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportSample {
    grid: Arc<DirectionGrid>,
    values: Vec<f64>,
}

impl SupportSample {
    pub fn new(grid: Arc<DirectionGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidInput(format!(
                "{} values for a grid of {} directions",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite support value".into()));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn<F: Fn(&Vector) -> f64>(grid: Arc<DirectionGrid>, f: F) -> Self {
        let values = grid.directions().iter().map(f).collect();
        Self { grid, values }
    }

    pub fn from_polytope(p: &VPolytope, grid: Arc<DirectionGrid>) -> Result<Self> {
        check_dim(grid.dim(), p.dim())?;
        Ok(Self::from_fn(grid, |u| p.support(u)))
    }

    /// Ball of radius `r` centered at `center`.
    pub fn ball(grid: Arc<DirectionGrid>, center: &Vector, r: f64) -> Self {
        Self::from_fn(grid, |u| u.dot(center) + r)
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn grid(&self) -> &Arc<DirectionGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Cone-linear interpolation; exact at grid directions and positively
    /// homogeneous in `u`.
    pub fn support(&self, u: &Vector) -> f64 {
        let (idx, w) = self.grid.cone_weights(u);
        let k = if self.dim() == 2 { 2 } else { 3 };
        (0..k).map(|j| w[j] * self.values[idx[j]]).sum()
    }

    /// Value at the antipode of grid direction `k`.
    pub fn value_at_antipode(&self, k: usize) -> f64 {
        self.values[self.grid.antipode(k)]
    }

    pub fn map_values<F: Fn(usize, &Vector, f64) -> f64>(&self, f: F) -> Self {
        let values = self
            .grid
            .directions()
            .iter()
            .enumerate()
            .map(|(k, u)| f(k, u, self.values[k]))
            .collect();
        Self { grid: self.grid.clone(), values }
    }

    /// `V_1 = (1/κ_{n−1}) ∫_S h`, integrated exactly for the interpolant.
    pub fn intrinsic_volume_1(&self) -> f64 {
        let kappa = if self.dim() == 2 { 2.0 } else { PI };
        self.grid.integrate(&self.values) / kappa
    }

    /// Wulff shape `⋂_k {g_k · x ≤ h_k}` of the samples.
    pub fn wulff_polytope(&self) -> Result<VPolytope> {
        let dim = self.dim();
        let hs: Vec<Halfspace> = self
            .grid
            .directions()
            .iter()
            .zip(&self.values)
            .map(|(g, h)| Halfspace::new(*g, *h))
            .collect();
        let hint = self.steiner_point_estimate();
        intersect_halfspaces_from(&HPolytope::new(dim, hs)?, &hint)
    }

    /// Grid approximation of the Steiner point `(1/κ_n) ∫ h(u) u dσ`.
    pub fn steiner_point_estimate(&self) -> Vector {
        let dim = self.dim();
        let mut acc = Vector::zeros(dim);
        for (g, h) in self.grid.directions().iter().zip(&self.values) {
            acc = acc + *g * *h;
        }
        acc * (dim as f64 / self.grid.len() as f64)
    }

    pub fn volume(&self) -> f64 {
        self.wulff_polytope().map(|p| p.volume()).unwrap_or(0.0)
    }

    pub fn translate(&self, t: &Vector) -> Self {
        self.map_values(|_, u, h| h + u.dot(t))
    }

    /// `h_{K†}(u) = h_K(u†)`, interpolated where the grid is not reflection invariant.
    pub fn reflect(&self, h: &Subspace) -> Result<Self> {
        check_dim(self.dim(), h.ambient_dim())?;
        Ok(self.map_values(|_, u, _| self.support(&h.reflect_point(u))))
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map_values(|_, _, h| s * h)
    }

    pub fn max_abs_value(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Smallest value of `h(u) + h(v) − h(u + v)` over the given pairs;
    /// negative values indicate samples that are not a support function.
    pub fn subadditivity_margin(&self, pairs: &[(Vector, Vector)]) -> f64 {
        pairs
            .iter()
            .map(|(u, v)| self.support(u) + self.support(v) - self.support(&(*u + *v)))
            .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_are_antipodal() {
        for dim in [2, 3] {
            let g = DirectionGrid::shared(dim, 512).unwrap();
            for k in 0..g.len() {
                let a = g.antipode(k);
                assert!((g.directions()[k] + g.directions()[a]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn interpolation_is_exact_on_linear_functions() {
        for dim in [2, 3] {
            let g = DirectionGrid::shared(dim, 1000).unwrap();
            let c = if dim == 2 { Vector::new2(0.3, -0.7) } else { Vector::new3(0.3, -0.7, 0.2) };
            let s = SupportSample::from_fn(g, |u| u.dot(&c));
            let u = if dim == 2 { Vector::new2(0.6, 0.8) } else { Vector::new3(0.48, 0.6, 0.64) };
            assert!((s.support(&u) - u.dot(&c)).abs() < 1e-12);
        }
    }

    #[test]
    fn ball_intrinsic_volume() {
        let g2 = DirectionGrid::shared(2, 4096).unwrap();
        let b2 = SupportSample::ball(g2, &Vector::zeros(2), 1.0);
        assert!((b2.intrinsic_volume_1() - PI).abs() < 1e-6);
        let g3 = DirectionGrid::shared(3, 4096).unwrap();
        let b3 = SupportSample::ball(g3, &Vector::zeros(3), 1.0);
        assert!((b3.intrinsic_volume_1() - 4.0).abs() / 4.0 < 1e-3);
    }

    #[test]
    fn translation_does_not_change_mean_width() {
        let g3 = DirectionGrid::shared(3, 2048).unwrap();
        let b = SupportSample::ball(g3, &Vector::zeros(3), 1.0);
        let t = b.translate(&Vector::new3(3.0, -1.0, 2.0));
        assert!((b.intrinsic_volume_1() - t.intrinsic_volume_1()).abs() < 1e-10);
    }

    #[test]
    fn square_wulff_shape() {
        let g = DirectionGrid::shared(2, 256).unwrap();
        let sq = VPolytope::hull(&[
            Vector::new2(-1.0, -1.0),
            Vector::new2(1.0, -1.0),
            Vector::new2(1.0, 1.0),
            Vector::new2(-1.0, 1.0),
        ])
        .unwrap();
        let s = SupportSample::from_polytope(&sq, g).unwrap();
        assert!((s.volume() - 4.0).abs() < 1e-9);
        assert!((s.intrinsic_volume_1() - 4.0).abs() < 1e-9);
    }
}
