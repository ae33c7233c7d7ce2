//! Symmetrization operators and their dispatch.

pub mod blaschke;
pub mod fiber;
pub mod formulas;
pub mod minkowski;
pub mod rotational;
pub mod steiner;

use std::fmt;
use std::str::FromStr;

use crate::error::{check_dim, Error, Result};
use crate::geometry::{ConvexBody, Subspace, ToleranceConfig, VPolytope};

pub use blaschke::blaschke2d;
pub use fiber::{distance_to_hyperplane, fiber, vexlast};
pub use minkowski::{central, central_p, m_symmetrization, minkowski, minkowski_blaschke, minkowski_polytope, validate_m};
pub use rotational::{inner_rotational, outer_rotational, schwarz};
pub use steiner::{steiner, steiner_facet_pair_2d, steiner_facet_pair_3d};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    Steiner,
    Schwarz,
    Minkowski,
    Fiber,
    Central,
    CentralP,
    MSym,
    MinkowskiBlaschke,
    InnerRot,
    OuterRot,
    Blaschke2d,
    Vexlast,
}

impl OpKind {
    pub const ALL: [OpKind; 12] = [
        OpKind::Steiner,
        OpKind::Schwarz,
        OpKind::Minkowski,
        OpKind::Fiber,
        OpKind::Central,
        OpKind::CentralP,
        OpKind::MSym,
        OpKind::MinkowskiBlaschke,
        OpKind::InnerRot,
        OpKind::OuterRot,
        OpKind::Blaschke2d,
        OpKind::Vexlast,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OpKind::Steiner => "steiner",
            OpKind::Schwarz => "schwarz",
            OpKind::Minkowski => "minkowski",
            OpKind::Fiber => "fiber",
            OpKind::Central => "central",
            OpKind::CentralP => "central_p",
            OpKind::MSym => "m_sym",
            OpKind::MinkowskiBlaschke => "minkowski_blaschke",
            OpKind::InnerRot => "inner_rot",
            OpKind::OuterRot => "outer_rot",
            OpKind::Blaschke2d => "blaschke2d",
            OpKind::Vexlast => "vexlast",
        }
    }

    /// Whether the operator is defined for subspace dimension `i` in ℝⁿ.
    pub fn supports(self, n: usize, i: usize) -> bool {
        if !(n == 2 || n == 3) || i >= n {
            return false;
        }
        match self {
            OpKind::Steiner | OpKind::Vexlast => i == n - 1,
            OpKind::Schwarz | OpKind::MinkowskiBlaschke => n == 3 && i == 1,
            OpKind::Minkowski | OpKind::Fiber | OpKind::MSym => true,
            OpKind::Central | OpKind::CentralP => i == 0,
            OpKind::InnerRot | OpKind::OuterRot => i == n - 1 || (n == 3 && i == 1),
            OpKind::Blaschke2d => n == 2,
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OpKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OpKind::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown operator '{s}'")))
    }
}

/// Optional operator parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct SymParams {
    pub p: Option<f64>,
    pub m_polygon: Option<VPolytope>,
    pub c: Option<f64>,
    pub g: Option<Subspace>,
    pub slice_count: Option<usize>,
}

impl Default for SymParams {
    fn default() -> Self {
        Self { p: None, m_polygon: None, c: None, g: None, slice_count: None }
    }
}

/// An operator together with its subspace and parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct SymSpec {
    pub op: OpKind,
    pub h: Subspace,
    pub params: SymParams,
}

impl SymSpec {
    pub fn new(op: OpKind, h: Subspace) -> Self {
        Self { op, h, params: SymParams::default() }
    }

    pub fn with_params(mut self, params: SymParams) -> Self {
        self.params = params;
        self
    }

    pub fn n(&self) -> usize {
        self.h.ambient_dim()
    }

    pub fn i(&self) -> usize {
        self.h.dim()
    }

    /// Checks the operator/dimension combination and the parameters.
    pub fn validate(&self) -> Result<()> {
        let (n, i) = (self.n(), self.i());
        if !self.op.supports(n, i) {
            return Err(Error::Unsupported(format!("{} with n = {n}, i = {i}", self.op)));
        }
        if let Some(g) = &self.params.g {
            if g.ambient_dim() != n || !self.h.contains_subspace(g) {
                return Err(Error::InvalidSubspace("G must be a subspace of H".into()));
            }
        }
        if let Some(p) = self.params.p {
            if !(p >= 1.0) {
                return Err(Error::InvalidInput(format!("p must be at least 1, got {p}")));
            }
        }
        if self.op == OpKind::MSym {
            let m = self
                .params
                .m_polygon
                .as_ref()
                .ok_or_else(|| Error::InvalidM("m_sym needs an M polygon".into()))?;
            validate_m(m, self.params.c.unwrap_or(1.0))?;
        }
        Ok(())
    }
}

fn polytope_of<'a>(k: &'a ConvexBody, op: OpKind) -> Result<&'a VPolytope> {
    k.as_polytope()
        .ok_or_else(|| Error::Unsupported(format!("{op} of a {}", k.kind())))
}

/// Applies the operator with default tolerances.
pub fn apply(k: &ConvexBody, spec: &SymSpec) -> Result<ConvexBody> {
    apply_with(k, spec, &ToleranceConfig::default())
}

pub fn apply_with(k: &ConvexBody, spec: &SymSpec, tol: &ToleranceConfig) -> Result<ConvexBody> {
    check_dim(spec.n(), k.dim())?;
    spec.validate()?;
    let h = &spec.h;
    let (n, i) = (spec.n(), spec.i());
    let slices = spec.params.slice_count.unwrap_or(tol.slice_count);
    Ok(match spec.op {
        OpKind::Steiner => steiner(polytope_of(k, spec.op)?, h)?.into(),
        OpKind::Schwarz => schwarz(k, h, slices)?.into(),
        OpKind::Minkowski => minkowski(k, h, tol)?,
        OpKind::Central => central(k, tol)?,
        OpKind::CentralP => central_p(k, spec.params.p.unwrap_or(1.0), tol)?.into(),
        OpKind::Fiber => {
            let g = spec.params.g.clone().unwrap_or_else(|| h.clone());
            fiber(polytope_of(k, spec.op)?, h, &g)?.into()
        }
        OpKind::MSym => {
            let m = spec.params.m_polygon.as_ref().expect("validated");
            m_symmetrization(k, m, spec.params.c.unwrap_or(1.0), h, tol)?.into()
        }
        OpKind::MinkowskiBlaschke => minkowski_blaschke(k, h, slices, tol)?.into(),
        OpKind::InnerRot if i == n - 1 => steiner(polytope_of(k, spec.op)?, h)?.into(),
        OpKind::InnerRot => inner_rotational(k, h, slices)?.into(),
        OpKind::OuterRot if i == n - 1 => minkowski(k, h, tol)?,
        OpKind::OuterRot => outer_rotational(k, h, slices)?.into(),
        OpKind::Blaschke2d => blaschke2d(polytope_of(k, spec.op)?, h)?.into(),
        OpKind::Vexlast => vexlast(polytope_of(k, spec.op)?, h)?.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vector;

    #[test]
    fn names_round_trip() {
        for op in OpKind::ALL {
            assert_eq!(op.name().parse::<OpKind>().unwrap(), op);
        }
        assert!("bogus".parse::<OpKind>().is_err());
    }

    #[test]
    fn unsupported_combinations() {
        let tri: ConvexBody = VPolytope::hull(&[Vector::new2(0.0, 0.0), Vector::new2(1.0, 0.0), Vector::new2(0.0, 1.0)])
            .unwrap()
            .into();
        let spec = SymSpec::new(OpKind::Steiner, Subspace::origin(2));
        assert!(matches!(apply(&tri, &spec), Err(Error::Unsupported(_))));
        let spec = SymSpec::new(OpKind::Schwarz, Subspace::coordinate(2, &[0]).unwrap());
        assert!(matches!(apply(&tri, &spec), Err(Error::Unsupported(_))));
        let spec = SymSpec::new(OpKind::MSym, Subspace::coordinate(2, &[0]).unwrap());
        assert!(matches!(apply(&tri, &spec), Err(Error::InvalidM(_))));
    }

    #[test]
    fn dispatch_matches_direct_calls() {
        let tri = VPolytope::hull(&[Vector::new2(0.0, 0.0), Vector::new2(1.0, 0.0), Vector::new2(0.0, 1.0)]).unwrap();
        let h = Subspace::coordinate(2, &[0]).unwrap();
        let out = apply(&tri.clone().into(), &SymSpec::new(OpKind::InnerRot, h.clone())).unwrap();
        assert_eq!(out.as_polytope().unwrap(), &steiner(&tri, &h).unwrap());
        let out = apply(&tri.clone().into(), &SymSpec::new(OpKind::OuterRot, h.clone())).unwrap();
        assert_eq!(out.as_polytope().unwrap(), &minkowski::minkowski_polytope(&tri, &h).unwrap());
    }
}
