use std::sync::Arc;

use super::polytope::VPolytope;
use super::revolution::RevolutionProfile;
use super::sample::{DirectionGrid, SupportSample};
use super::subspace::Subspace;
use super::tolerance::ToleranceConfig;
use super::vector::{Matrix, Vector};
use crate::error::{check_dim, Error, Result};

/// The representations a symmetral can take.
#[derive(Clone, Debug, PartialEq)]
pub enum ConvexBody {
    Polytope(VPolytope),
    Sample(SupportSample),
    Revolution(RevolutionProfile),
}

impl From<VPolytope> for ConvexBody {
    fn from(p: VPolytope) -> Self {
        ConvexBody::Polytope(p)
    }
}

impl From<SupportSample> for ConvexBody {
    fn from(s: SupportSample) -> Self {
        ConvexBody::Sample(s)
    }
}

impl From<RevolutionProfile> for ConvexBody {
    fn from(r: RevolutionProfile) -> Self {
        ConvexBody::Revolution(r)
    }
}

impl ConvexBody {
    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Polytope(p) => p.dim(),
            ConvexBody::Sample(s) => s.dim(),
            ConvexBody::Revolution(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ConvexBody::Polytope(_) => "vpolytope",
            ConvexBody::Sample(_) => "support_sample",
            ConvexBody::Revolution(_) => "revolution_profile",
        }
    }

    pub fn as_polytope(&self) -> Option<&VPolytope> {
        match self {
            ConvexBody::Polytope(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_sample(&self) -> Option<&SupportSample> {
        match self {
            ConvexBody::Sample(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_revolution(&self) -> Option<&RevolutionProfile> {
        match self {
            ConvexBody::Revolution(r) => Some(r),
            _ => None,
        }
    }

    /// True when the representation is exact (no grid or station sampling).
    pub fn is_exact(&self) -> bool {
        matches!(self, ConvexBody::Polytope(_))
    }

    pub fn support(&self, u: &Vector) -> f64 {
        match self {
            ConvexBody::Polytope(p) => p.support(u),
            ConvexBody::Sample(s) => s.support(u),
            ConvexBody::Revolution(r) => r.support(u),
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            ConvexBody::Polytope(p) => p.volume(),
            ConvexBody::Sample(s) => s.volume(),
            ConvexBody::Revolution(r) => r.volume(),
        }
    }

    pub fn intrinsic_volume_1(&self) -> f64 {
        match self {
            ConvexBody::Polytope(p) => p.intrinsic_volume_1(),
            ConvexBody::Sample(s) => s.intrinsic_volume_1(),
            ConvexBody::Revolution(r) => r.intrinsic_volume_1(),
        }
    }

    /// `V_j` for `j ∈ {1, n−1, n}`. Support samples use their Wulff shape
    /// for `V_{n−1}` in 3-D.
    pub fn intrinsic_volume(&self, j: usize) -> Result<f64> {
        match self {
            ConvexBody::Polytope(p) => p.intrinsic_volume(j),
            ConvexBody::Revolution(r) => r.intrinsic_volume(j),
            ConvexBody::Sample(s) => match j {
                1 => Ok(s.intrinsic_volume_1()),
                _ if j == s.dim() => Ok(s.volume()),
                _ => s.wulff_polytope()?.intrinsic_volume(j),
            },
        }
    }

    /// Size scale used to make tolerances relative.
    pub fn circumradius(&self) -> f64 {
        match self {
            ConvexBody::Polytope(p) => p.circumradius(),
            ConvexBody::Sample(s) => {
                let g = s.grid();
                // half the largest width
                (0..g.len())
                    .map(|k| 0.5 * (s.values()[k] + s.value_at_antipode(k)))
                    .fold(0.0_f64, f64::max)
            }
            ConvexBody::Revolution(r) => r.circumradius(),
        }
    }

    /// Support values for many directions at once.
    pub fn support_many(&self, dirs: &[Vector]) -> Vec<f64> {
        match self {
            ConvexBody::Polytope(p) => p.support_many(dirs),
            _ => dirs.iter().map(|u| self.support(u)).collect(),
        }
    }

    /// Largest distance of a point of the body from the origin.
    pub fn max_norm(&self) -> f64 {
        match self {
            ConvexBody::Polytope(p) => p.max_norm(),
            ConvexBody::Sample(s) => s.values().iter().fold(0.0_f64, |m, v| m.max(*v)),
            ConvexBody::Revolution(r) => r.max_norm(),
        }
    }

    pub fn reflect(&self, h: &Subspace) -> Result<Self> {
        check_dim(self.dim(), h.ambient_dim())?;
        Ok(match self {
            ConvexBody::Polytope(p) => p.reflect(h)?.into(),
            ConvexBody::Sample(s) => s.reflect(h)?.into(),
            ConvexBody::Revolution(r) => r.reflect(h)?.into(),
        })
    }

    pub fn translate(&self, v: &Vector) -> Result<Self> {
        check_dim(self.dim(), v.dim())?;
        Ok(match self {
            ConvexBody::Polytope(p) => p.translate(v).into(),
            ConvexBody::Sample(s) => s.translate(v).into(),
            ConvexBody::Revolution(r) => r.translate(v).into(),
        })
    }

    /// Support-function sample on `grid` (exact values at grid directions).
    pub fn to_sample(&self, grid: Arc<DirectionGrid>) -> Result<SupportSample> {
        check_dim(self.dim(), grid.dim())?;
        Ok(match self {
            ConvexBody::Sample(s) if Arc::ptr_eq(s.grid(), &grid) => s.clone(),
            _ => {
                let values = self.support_many(grid.directions());
                SupportSample::new(grid, values)?
            }
        })
    }

    /// Directions besides a uniform grid at which support functions are probed.
    pub fn probe_directions(&self) -> Vec<Vector> {
        match self {
            ConvexBody::Polytope(p) => p.probe_directions(),
            ConvexBody::Sample(_) => Vec::new(),
            ConvexBody::Revolution(r) => vec![r.direction(), -r.direction()],
        }
    }
}

/// Directions used to compare two bodies: the shared uniform grid plus the
/// bodies' own probe directions.
pub fn comparison_directions(a: &ConvexBody, b: &ConvexBody, tol: &ToleranceConfig) -> Result<Vec<Vector>> {
    check_dim(a.dim(), b.dim())?;
    let grid = DirectionGrid::shared(a.dim(), tol.hausdorff_grid(a.dim()))?;
    let mut dirs = grid.directions().to_vec();
    dirs.extend(a.probe_directions());
    dirs.extend(b.probe_directions());
    Ok(dirs)
}

/// `sup_u |h_A(u) − h_B(u)|` over the comparison directions.
pub fn hausdorff_distance(a: &ConvexBody, b: &ConvexBody, tol: &ToleranceConfig) -> Result<f64> {
    let dirs = comparison_directions(a, b, tol)?;
    let (ha, hb) = (a.support_many(&dirs), b.support_many(&dirs));
    Ok(ha.iter().zip(&hb).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs())))
}

/// `sup_u (h_inner(u) − h_outer(u))`; nonpositive when `inner ⊂ outer`.
pub fn containment_margin(outer: &ConvexBody, inner: &ConvexBody, tol: &ToleranceConfig) -> Result<f64> {
    let dirs = comparison_directions(outer, inner, tol)?;
    let (ho, hi) = (outer.support_many(&dirs), inner.support_many(&dirs));
    Ok(ho.iter().zip(&hi).fold(f64::NEG_INFINITY, |m, (o, i)| m.max(i - o)))
}

/// `inner ⊂ outer` up to the absolute tolerance `eps`.
pub fn contains(outer: &ConvexBody, inner: &ConvexBody, eps: f64, tol: &ToleranceConfig) -> Result<bool> {
    Ok(containment_margin(outer, inner, tol)? <= eps)
}

/// `sup_u |h_K(u) − r|`: distance from `K` to the ball `r·Bⁿ` about the origin.
pub fn distance_to_ball(k: &ConvexBody, r: f64, tol: &ToleranceConfig) -> Result<f64> {
    let grid = DirectionGrid::shared(k.dim(), tol.hausdorff_grid(k.dim()))?;
    let mut dirs = grid.directions().to_vec();
    dirs.extend(k.probe_directions());
    Ok(k.support_many(&dirs).iter().fold(0.0_f64, |m, h| m.max((h - r).abs())))
}

pub fn support(body: &ConvexBody, u: &Vector) -> f64 {
    body.support(u)
}

pub fn volume(body: &ConvexBody) -> f64 {
    body.volume()
}

pub fn intrinsic_volume_1(body: &ConvexBody) -> f64 {
    body.intrinsic_volume_1()
}

pub fn reflect(body: &ConvexBody, h: &Subspace) -> Result<ConvexBody> {
    body.reflect(h)
}

pub fn translate(body: &ConvexBody, v: &Vector) -> Result<ConvexBody> {
    body.translate(v)
}

/// Projection onto `H`; polytopes only.
pub fn project(body: &ConvexBody, h: &Subspace) -> Result<VPolytope> {
    match body {
        ConvexBody::Polytope(p) => p.project(h),
        _ => Err(Error::Unsupported(format!("projection of a {}", body.kind()))),
    }
}

/// Image under a linear map; polytopes only.
pub fn linear_map(body: &ConvexBody, a: &Matrix) -> Result<ConvexBody> {
    match body {
        ConvexBody::Polytope(p) => Ok(p.linear_map(a)?.into()),
        _ => Err(Error::Unsupported(format!("linear image of a {}", body.kind()))),
    }
}

pub fn minkowski_sum(p: &VPolytope, q: &VPolytope) -> Result<VPolytope> {
    p.minkowski_sum(q)
}
