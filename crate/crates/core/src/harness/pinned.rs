use super::{Case, Expected};
use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Subspace, VPolytope, Vector};
use crate::symmetrize::{OpKind, SymParams, SymSpec};

use Expected::{Fails, Holds, NotChecked, Preserves, PreservesNone, Strict};

/// Expected verdicts for properties 1–8, when tabulated.
pub fn pinned_row(op: OpKind, n: usize, i: usize) -> Option<[Expected; 8]> {
    if !op.supports(n, i) {
        return None;
    }
    let steiner = [Strict, Preserves(n), Holds, Holds, Holds, Holds, Holds, Fails];
    let minkowski = [Strict, Preserves(1), Holds, Holds, Holds, Holds, Holds, Holds];
    Some(match op {
        OpKind::Steiner => steiner,
        OpKind::Minkowski | OpKind::Central => minkowski,
        OpKind::Schwarz => [Holds, Preserves(n), Holds, Fails, Holds, Holds, Holds, Fails],
        OpKind::MinkowskiBlaschke => [Strict, Preserves(1), Holds, Fails, Holds, Holds, Holds, Fails],
        OpKind::Fiber if i == n - 1 => steiner,
        OpKind::Fiber if i == 0 => minkowski,
        OpKind::Fiber => [Strict, PreservesNone, Holds, Holds, Holds, Holds, Holds, Fails],
        OpKind::InnerRot if i == n - 1 => steiner,
        OpKind::OuterRot if i == n - 1 => minkowski,
        OpKind::InnerRot => [Holds, PreservesNone, Holds, Fails, Holds, Holds, Holds, NotChecked],
        OpKind::OuterRot => [Strict, PreservesNone, Holds, Fails, Holds, Holds, Holds, NotChecked],
        OpKind::Blaschke2d => [Fails, Preserves(n - 1), Holds, Holds, Holds, Fails, Holds, NotChecked],
        OpKind::Vexlast => [Strict, PreservesNone, Holds, Holds, Holds, Holds, Fails, NotChecked],
        // with M = [(1/4, 3/4), (3/4, 1/4)] and c = 1
        OpKind::MSym => [Strict, PreservesNone, Holds, Holds, Holds, Holds, Fails, Holds],
        OpKind::CentralP => return None,
    })
}

/// The subspace and parameters used for an operator's table row.
pub fn table_spec(op: OpKind, n: usize) -> Result<SymSpec> {
    let i = match op {
        OpKind::Central | OpKind::CentralP => 0,
        OpKind::Schwarz | OpKind::MinkowskiBlaschke | OpKind::Fiber => 1,
        OpKind::InnerRot | OpKind::OuterRot if n == 3 => 1,
        _ => n - 1,
    };
    if !op.supports(n, i) {
        return Err(Error::Unsupported(format!("{op} with n = {n}")));
    }
    let h = match (n, i) {
        (_, 0) => Subspace::origin(n),
        (2, 1) => Subspace::line_at_angle(0.3),
        (3, 1) => Subspace::line(Vector::new3(1.0, 0.3, -0.2))?,
        (3, 2) => Subspace::hyperplane(Vector::new3(0.2, -0.3, 1.0))?,
        _ => return Err(Error::Unsupported(format!("{op} with n = {n}"))),
    };
    let mut params = SymParams::default();
    if op == OpKind::MSym {
        params.m_polygon = Some(VPolytope::hull(&[Vector::new2(0.25, 0.75), Vector::new2(0.75, 0.25)])?);
        params.c = Some(1.0);
    }
    Ok(SymSpec::new(op, h).with_params(params))
}

/// A hand-built case, usually a counterexample.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectedCase {
    pub description: String,
    pub case: Case,
}

/// Maps coordinates in the frame (basis of `H`, then of `H^⊥`) to ℝⁿ.
fn local(h: &Subspace, c: &[f64]) -> Vector {
    let comp = h.complement();
    h.basis()
        .iter()
        .chain(comp.basis())
        .zip(c)
        .fold(Vector::zeros(h.ambient_dim()), |acc, (b, x)| acc + *b * *x)
}

fn body(h: &Subspace, pts: &[&[f64]]) -> Result<ConvexBody> {
    let v: Vec<Vector> = pts.iter().map(|c| local(h, c)).collect();
    Ok(VPolytope::hull(&v)?.into())
}

fn cube(h: &Subspace, half: &[f64]) -> Result<ConvexBody> {
    let n = half.len();
    let pts: Vec<Vec<f64>> = (0..1usize << n)
        .map(|bits| (0..n).map(|k| if bits >> k & 1 == 1 { half[k] } else { -half[k] }).collect())
        .collect();
    let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
    body(h, &refs)
}

fn tilted_simplex(h: &Subspace) -> Result<ConvexBody> {
    match h.ambient_dim() {
        2 => body(h, &[&[0.0, 0.0], &[1.0, 1.0], &[2.0, -0.2]]),
        _ => body(h, &[&[0.0, 0.0, 0.0], &[2.0, 0.0, 0.8], &[0.0, 1.5, -0.5], &[0.5, 0.5, 1.2]]),
    }
}

/// Directed counterexamples for cells expected to fail.
pub fn directed_cases(op: OpKind, property: super::Property, h: &Subspace) -> Result<Vec<DirectedCase>> {
    use super::Property as P;
    let n = h.ambient_dim();
    let i = h.dim();
    let mut out = Vec::new();
    let mut push = |description: &str, case: Case| out.push(DirectedCase { description: description.into(), case });
    match (op, property) {
        (OpKind::Schwarz | OpKind::InnerRot | OpKind::OuterRot | OpKind::MinkowskiBlaschke, P::InvariantHSymmetric)
            if n == 3 && i == 1 =>
        {
            push("box [-1,1]×[-1,1]×[-1/2,1/2] with H along its first axis", Case::Single {
                body: cube(h, &[1.0, 1.0, 0.5])?,
            });
        }
        (OpKind::Steiner | OpKind::Schwarz | OpKind::Fiber | OpKind::MinkowskiBlaschke, P::ProjectionCovariant) => {
            push("tilted simplex projected on H^⊥", Case::Projected { body: tilted_simplex(h)?, t: h.complement() });
        }
        (OpKind::Vexlast | OpKind::MSym, P::TranslationInvariant) => {
            let mut shift = vec![0.0; n];
            shift[n - 1] = 3.0;
            push("H-symmetric cube translated by 3 along H^⊥", Case::Translated {
                body: cube(h, &vec![1.0; n])?,
                shift: local(h, &shift),
            });
        }
        (OpKind::Blaschke2d, P::Monotonic) => {
            push("K = conv{(9.6,0),(10,0),(9.6,0.02)} inside L = conv{(0,0),(10,0),(0,1)}", Case::Nested {
                inner: body(h, &[&[9.6, 0.0], &[10.0, 0.0], &[9.6, 0.02]])?,
                outer: body(h, &[&[0.0, 0.0], &[10.0, 0.0], &[0.0, 1.0]])?,
            });
        }
        (OpKind::Blaschke2d, P::ProjectionInvariant) => {
            push("triangle conv{(0,0),(10,0),(0,1)}", Case::Single {
                body: body(h, &[&[0.0, 0.0], &[10.0, 0.0], &[0.0, 1.0]])?,
            });
        }
        _ => {}
    }
    Ok(out)
}

/// A nested pair with equal symmetrals, for operators that are monotonic
/// but not strictly so.
pub fn non_strict_case(op: OpKind, h: &Subspace) -> Result<Option<DirectedCase>> {
    if !(matches!(op, OpKind::Schwarz | OpKind::InnerRot) && h.ambient_dim() == 3 && h.dim() == 1) {
        return Ok(None);
    }
    Ok(Some(DirectedCase {
        description: "segment [-e, e] on H inside the triangle conv{-e, e, f}, f ⊥ H".into(),
        case: Case::Nested {
            inner: body(h, &[&[-1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]])?,
            outer: body(h, &[&[-1.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]])?,
        },
    }))
}
