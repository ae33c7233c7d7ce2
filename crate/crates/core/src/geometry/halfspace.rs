use minilp::{ComparisonOp, OptimizationDirection, Problem};

use super::hull::{hull_planar, hull_spatial, RawHull};
use super::polytope::{Halfspace, VPolytope};
use super::vector::{solve2, solve3, Vector};
use crate::error::{check_dim, Error, Result};

/// Intersection of finitely many closed halfspaces.
#[derive(Clone, Debug, PartialEq)]
pub struct HPolytope {
    dim: usize,
    halfspaces: Vec<Halfspace>,
}

impl HPolytope {
    /// Normalizes every normal to unit length. Zero normals are dropped when
    /// trivially satisfied and rejected otherwise.
    pub fn new(dim: usize, raw: Vec<Halfspace>) -> Result<Self> {
        let mut halfspaces = Vec::with_capacity(raw.len());
        for h in raw {
            check_dim(dim, h.normal.dim())?;
            let n = h.normal.norm();
            if !n.is_finite() || !h.offset.is_finite() {
                return Err(Error::InvalidInput("non-finite halfspace".into()));
            }
            if n < 1e-300 {
                if h.offset < 0.0 {
                    return Err(Error::Empty);
                }
                continue;
            }
            halfspaces.push(Halfspace::new(h.normal * (1.0 / n), h.offset / n));
        }
        Ok(Self { dim, halfspaces })
    }

    pub fn from_polytope(p: &VPolytope) -> Self {
        Self { dim: p.dim(), halfspaces: p.halfspaces() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn contains_point(&self, x: &Vector, tol: f64) -> bool {
        self.halfspaces.iter().all(|h| h.violation(x) <= tol)
    }
}

/// Vertex enumeration of a bounded, nonempty H-polytope.
pub fn intersect_halfspaces(hp: &HPolytope) -> Result<VPolytope> {
    intersect_impl(hp, None)
}

/// As [`intersect_halfspaces`] with a point believed to be strictly inside,
/// which saves the linear program when it is.
pub fn intersect_halfspaces_from(hp: &HPolytope, interior: &Vector) -> Result<VPolytope> {
    intersect_impl(hp, Some(*interior))
}

fn offset_scale(hp: &HPolytope) -> f64 {
    hp.halfspaces.iter().fold(0.0_f64, |m, h| m.max(h.offset.abs())) + 1e-300
}

fn intersect_impl(hp: &HPolytope, hint: Option<Vector>) -> Result<VPolytope> {
    let dim = hp.dim;
    if hp.halfspaces.is_empty() {
        return Err(Error::Unbounded);
    }
    let scale = offset_scale(hp);
    let tol = 1e-9 * scale;
    let center = match hint {
        Some(c) if slack(hp, &c) > tol => c,
        _ => {
            let (c, r) = chebyshev_center(dim, &hp.halfspaces, 10.0 * scale + 1.0)?;
            if r < -tol {
                return Err(Error::Empty);
            }
            if r >= 10.0 * scale {
                return Err(Error::Unbounded);
            }
            if r <= tol {
                return enumerate_flat(hp, tol);
            }
            c
        }
    };
    let dual: Vec<Vector> = hp
        .halfspaces
        .iter()
        .map(|h| h.normal * (1.0 / (h.offset - h.normal.dot(&center))))
        .collect();
    let dual_tol = 1e-12 * max_norm(&dual);
    let hs = &hp.halfspaces;
    // each dual facet (m, e) is the primal vertex center + m / e
    let pick = |m: Vector, e: f64, solved: Option<Vector>| {
        let fallback = center + m * (1.0 / e);
        match solved {
            Some(v) if v.distance(&fallback) <= 1e-6 * (1.0 + fallback.norm()) => v,
            _ => fallback,
        }
    };
    let mut verts = Vec::new();
    if dim == 2 {
        let RawHull::Polygon { ring, normal: None } = hull_planar(&dual, dual_tol) else {
            return Err(Error::Unbounded);
        };
        let m = ring.len();
        for k in 0..m {
            let (i, j) = (ring[k], ring[(k + 1) % m]);
            let e = dual[j] - dual[i];
            let n = Vector::new2(e.y(), -e.x()).normalized().expect("distinct dual points");
            let off = n.dot(&dual[i]);
            if off <= dual_tol {
                return Err(Error::Unbounded);
            }
            verts.push(pick(n, off, solve2([hs[i].normal, hs[j].normal], [hs[i].offset, hs[j].offset])));
        }
    } else {
        let RawHull::Solid { facets } = hull_spatial(&dual, dual_tol) else {
            return Err(Error::Unbounded);
        };
        for f in facets {
            if f.offset <= dual_tol {
                return Err(Error::Unbounded);
            }
            let [a, b, c] = best_triple(hs, &f.ring);
            verts.push(pick(f.normal, f.offset, solve3([hs[a].normal, hs[b].normal, hs[c].normal], [hs[a].offset, hs[b].offset, hs[c].offset])));
        }
    }
    VPolytope::hull(&verts)
}

/// Three planes of a dual facet whose normals are as far from coplanar as
/// the ring allows.
fn best_triple(hs: &[Halfspace], ring: &[usize]) -> [usize; 3] {
    let a = ring[0];
    let b = *ring
        .iter()
        .max_by(|&&i, &&j| hs[a].normal.cross(&hs[i].normal).norm().total_cmp(&hs[a].normal.cross(&hs[j].normal).norm()))
        .expect("nonempty ring");
    let ab = hs[a].normal.cross(&hs[b].normal);
    let c = *ring
        .iter()
        .max_by(|&&i, &&j| ab.dot(&hs[i].normal).abs().total_cmp(&ab.dot(&hs[j].normal).abs()))
        .expect("nonempty ring");
    [a, b, c]
}

fn max_norm(pts: &[Vector]) -> f64 {
    pts.iter().fold(0.0_f64, |m, p| m.max(p.norm()))
}

fn slack(hp: &HPolytope, c: &Vector) -> f64 {
    hp.halfspaces.iter().fold(f64::INFINITY, |m, h| m.min(-h.violation(c)))
}

/// Center and radius of the largest ball inside `⋂ {n·x ≤ d}` (normals of
/// unit length). The radius is capped at `r_cap` and may be negative when the
/// system is infeasible.
pub fn chebyshev_center(dim: usize, hs: &[Halfspace], r_cap: f64) -> Result<(Vector, f64)> {
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let xs: Vec<_> = (0..dim).map(|_| lp.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY))).collect();
    let r = lp.add_var(1.0, (f64::NEG_INFINITY, r_cap));
    for h in hs {
        let mut terms: Vec<_> = xs.iter().enumerate().map(|(k, &x)| (x, h.normal[k])).collect();
        terms.push((r, 1.0));
        lp.add_constraint(&terms[..], ComparisonOp::Le, h.offset);
    }
    let sol = lp.solve().map_err(|e| match e {
        minilp::Error::Infeasible => Error::Empty,
        minilp::Error::Unbounded => Error::Unbounded,
    })?;
    let coords: Vec<f64> = xs.iter().map(|&x| *sol.var_value(x)).collect();
    let c = Vector::from_slice(&coords).expect("dimension 2 or 3");
    Ok((c, *sol.var_value(r)))
}

fn coordinate_bounded(hp: &HPolytope) -> Result<bool> {
    for k in 0..hp.dim {
        for dir in [OptimizationDirection::Maximize, OptimizationDirection::Minimize] {
            let mut lp = Problem::new(dir);
            let xs: Vec<_> = (0..hp.dim)
                .map(|j| lp.add_var(if j == k { 1.0 } else { 0.0 }, (f64::NEG_INFINITY, f64::INFINITY)))
                .collect();
            for h in &hp.halfspaces {
                let terms: Vec<_> = xs.iter().enumerate().map(|(j, &x)| (x, h.normal[j])).collect();
                // a hair of slack keeps numerically flat systems feasible
                lp.add_constraint(&terms[..], ComparisonOp::Le, h.offset + 1e-9 * offset_scale(hp));
            }
            match lp.solve() {
                Ok(_) => {}
                Err(minilp::Error::Unbounded) => return Ok(false),
                Err(minilp::Error::Infeasible) => return Err(Error::Empty),
            }
        }
    }
    Ok(true)
}

/// Brute-force vertex enumeration for systems without interior.
fn enumerate_flat(hp: &HPolytope, tol: f64) -> Result<VPolytope> {
    if !coordinate_bounded(hp)? {
        return Err(Error::Unbounded);
    }
    let hs = &hp.halfspaces;
    let m = hs.len();
    let mut pts = Vec::new();
    let feasible = |x: &Vector| hs.iter().all(|h| h.violation(x) <= 10.0 * tol);
    if hp.dim == 2 {
        for a in 0..m {
            for b in a + 1..m {
                if let Some(x) = solve2([hs[a].normal, hs[b].normal], [hs[a].offset, hs[b].offset]) {
                    if feasible(&x) {
                        pts.push(x);
                    }
                }
            }
        }
    } else {
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    if let Some(x) = solve3(
                        [hs[a].normal, hs[b].normal, hs[c].normal],
                        [hs[a].offset, hs[b].offset, hs[c].offset],
                    ) {
                        if feasible(&x) {
                            pts.push(x);
                        }
                    }
                }
            }
        }
    }
    if pts.is_empty() {
        return Err(Error::Empty);
    }
    VPolytope::hull(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs(n: Vector, d: f64) -> Halfspace {
        Halfspace::new(n, d)
    }

    #[test]
    fn unit_square() {
        let hp = HPolytope::new(
            2,
            vec![
                hs(Vector::new2(1.0, 0.0), 1.0),
                hs(Vector::new2(-1.0, 0.0), 0.0),
                hs(Vector::new2(0.0, 1.0), 1.0),
                hs(Vector::new2(0.0, -1.0), 0.0),
            ],
        )
        .unwrap();
        let p = intersect_halfspaces(&hp).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert!((p.volume() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn triangle_from_three_halfspaces() {
        let hp = HPolytope::new(
            2,
            vec![
                hs(Vector::new2(-1.0, 0.0), 0.0),
                hs(Vector::new2(0.0, -1.0), 0.0),
                hs(Vector::new2(1.0, 1.0), 1.0),
            ],
        )
        .unwrap();
        let p = intersect_halfspaces(&hp).unwrap();
        let mut vs: Vec<Vector> = p.vertices().to_vec();
        vs.sort_by(|a, b| a.x().total_cmp(&b.x()).then(a.y().total_cmp(&b.y())));
        let want = [Vector::new2(0.0, 0.0), Vector::new2(0.0, 1.0), Vector::new2(1.0, 0.0)];
        for (a, b) in vs.iter().zip(want.iter()) {
            assert!(a.distance(b) < 1e-14);
        }
    }

    #[test]
    fn unit_cube_and_errors() {
        let mut list = Vec::new();
        for k in 0..3 {
            list.push(hs(Vector::unit(3, k), 1.0));
            list.push(hs(-Vector::unit(3, k), 0.0));
        }
        let hp = HPolytope::new(3, list.clone()).unwrap();
        let p = intersect_halfspaces(&hp).unwrap();
        assert_eq!(p.vertices().len(), 8);
        assert!((p.volume() - 1.0).abs() < 1e-13);

        let open = HPolytope::new(3, list[..5].to_vec()).unwrap();
        assert_eq!(intersect_halfspaces(&open), Err(Error::Unbounded));

        let mut bad = list.clone();
        bad.push(hs(Vector::new3(1.0, 0.0, 0.0), -1.0));
        let bad = HPolytope::new(3, bad).unwrap();
        assert_eq!(intersect_halfspaces(&bad), Err(Error::Empty));
    }

    #[test]
    fn flat_system_is_enumerated() {
        let hp = HPolytope::new(
            2,
            vec![
                hs(Vector::new2(0.0, 1.0), 0.0),
                hs(Vector::new2(0.0, -1.0), 0.0),
                hs(Vector::new2(1.0, 0.0), 1.0),
                hs(Vector::new2(-1.0, 0.0), 1.0),
            ],
        )
        .unwrap();
        let p = intersect_halfspaces(&hp).unwrap();
        assert_eq!(p.affine_dim(), 1);
        assert!((p.intrinsic_volume_1() - 2.0).abs() < 1e-12);
    }
}
