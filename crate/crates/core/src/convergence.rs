//! Iterated symmetrization along subspace sequences.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analytic::{kappa, make_box, random_in_ball};
use crate::error::{Error, Result};
use crate::geometry::{distance_to_ball, ConvexBody, DirectionGrid, Subspace, ToleranceConfig, VPolytope, Vector};
use crate::symmetrize::{apply_with, OpKind, SymParams, SymSpec};

/// Default angle of the rotation sequence, `π(√5 − 1)/2`.
pub fn default_theta() -> f64 {
    PI * (5f64.sqrt() - 1.0) / 2.0
}

#[derive(Clone, Debug, PartialEq)]
pub enum SequenceKind {
    FixedList(Vec<Subspace>),
    /// Alternates the line at angle `θ` with the x-axis (n = 2, i = 1).
    IrrationalRotation(f64),
    UniformRandom(u64),
    /// A deterministic sequence whose directions are dense in the sphere.
    DenseEnumeration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceSequence {
    pub kind: SequenceKind,
    pub n: usize,
    pub i: usize,
    elements: Vec<Subspace>,
}

impl SubspaceSequence {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    /// The `k`-th subspace, counting from 1.
    pub fn get(&self, k: usize) -> Option<&Subspace> {
        k.checked_sub(1).and_then(|k| self.elements.get(k))
    }
}

fn subspace_from_direction(n: usize, i: usize, d: Vector) -> Result<Subspace> {
    match (n, i) {
        (_, 0) => Ok(Subspace::origin(n)),
        (_, _) if i + 1 == n => Subspace::hyperplane(d),
        (3, 1) => Subspace::line(d),
        _ => Err(Error::Unsupported(format!("sequences of {i}-subspaces in ℝ{n}"))),
    }
}

fn kronecker_direction(n: usize, k: usize) -> Vector {
    let frac = |x: f64| x - x.floor();
    let kf = k as f64;
    if n == 2 {
        let t = PI * frac(kf * (5f64.sqrt() - 1.0) / 2.0);
        return Vector::new2(t.cos(), t.sin());
    }
    let z = 2.0 * frac(kf * (2f64.sqrt() - 1.0)) - 1.0;
    let phi = 2.0 * PI * frac(kf * (3f64.sqrt() - 1.0));
    let rho = (1.0 - z * z).max(0.0).sqrt();
    Vector::new3(rho * phi.cos(), rho * phi.sin(), z)
}

/// Builds `length` subspaces of dimension `i` in ℝⁿ.
pub fn make_sequence(kind: SequenceKind, n: usize, i: usize, length: usize) -> Result<SubspaceSequence> {
    if !(n == 2 || n == 3) || i >= n {
        return Err(Error::Unsupported(format!("sequences of {i}-subspaces in ℝ{n}")));
    }
    let elements = match &kind {
        SequenceKind::FixedList(list) => {
            if list.is_empty() {
                return Err(Error::EmptyInput);
            }
            if list.iter().any(|h| h.ambient_dim() != n || h.dim() != i) {
                return Err(Error::InvalidSubspace(format!("every element must be an {i}-subspace of ℝ{n}")));
            }
            list.iter().cycle().take(length).cloned().collect()
        }
        SequenceKind::IrrationalRotation(theta) => {
            if (n, i) != (2, 1) {
                return Err(Error::Unsupported("the rotation sequence is defined for n = 2, i = 1".into()));
            }
            let h1 = Subspace::line_at_angle(*theta);
            let h2 = Subspace::line_at_angle(0.0);
            (0..length).map(|k| if k % 2 == 0 { h1.clone() } else { h2.clone() }).collect()
        }
        SequenceKind::UniformRandom(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut out = Vec::with_capacity(length);
            for _ in 0..length {
                let d = loop {
                    let v = random_in_ball(n, &mut rng);
                    if let Some(d) = (v.norm() > 1e-3).then(|| v.normalized()).flatten() {
                        break d;
                    }
                    let _: f64 = rng.gen();
                };
                out.push(subspace_from_direction(n, i, d)?);
            }
            out
        }
        SequenceKind::DenseEnumeration => (1..=length)
            .map(|k| subspace_from_direction(n, i, kronecker_direction(n, k)))
            .collect::<Result<_>>()?,
    };
    Ok(SubspaceSequence { kind, n, i, elements })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Matching {
    ByV1,
    ByVn,
}

/// Radius of the ball whose `V_1` or `V_n` equals the body's.
pub fn matching_radius(k: &ConvexBody, matching: Matching) -> f64 {
    let n = k.dim();
    match matching {
        Matching::ByVn => (k.volume() / kappa(n)).powf(1.0 / n as f64),
        Matching::ByV1 => k.intrinsic_volume_1() * kappa(n - 1) / (n as f64 * kappa(n)),
    }
}

/// Distance from `K` to the origin-centered ball matched in `V_1` or `V_n`.
pub fn ball_distance(k: &ConvexBody, matching: Matching, tol: &ToleranceConfig) -> Result<f64> {
    distance_to_ball(k, matching_radius(k, matching), tol)
}

/// Grid estimate of the Steiner point.
pub fn steiner_point(k: &ConvexBody, tol: &ToleranceConfig) -> Result<Vector> {
    let grid = DirectionGrid::shared(k.dim(), tol.hausdorff_grid(k.dim()))?;
    Ok(k.to_sample(grid)?.steiner_point_estimate())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrajectoryRow {
    pub step: usize,
    #[serde(rename = "V_n")]
    pub v_n: f64,
    #[serde(rename = "V_1")]
    pub v_1: f64,
    pub ball_distance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub rows: Vec<TrajectoryRow>,
    pub snapshots: Vec<(usize, ConvexBody)>,
    pub final_body: ConvexBody,
    /// Set when the run stopped early at the vertex cap.
    pub halted: Option<Error>,
}

impl Trajectory {
    pub fn into_result(self) -> Result<Self> {
        match self.halted {
            Some(e) => Err(e),
            None => Ok(self),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterateConfig {
    pub vertex_cap: usize,
    /// Planar outputs drop vertices within this multiple of the circumradius
    /// of the chord through their neighbours, then are rescaled to restore
    /// the operator's preserved functional. `None` keeps every vertex.
    pub coarsen: Option<f64>,
    pub snapshot_every: Option<usize>,
    pub matching: Matching,
    pub tol: ToleranceConfig,
}

impl Default for IterateConfig {
    fn default() -> Self {
        Self { vertex_cap: 10_000, coarsen: None, snapshot_every: None, matching: Matching::ByVn, tol: ToleranceConfig::default() }
    }
}

/// One pass removing vertices closer than `delta` to the chord joining their
/// neighbours; no two adjacent vertices are removed in the same pass.
pub fn coarsen_polygon(p: &VPolytope, delta: f64) -> Result<VPolytope> {
    if p.dim() != 2 || !p.is_full_dimensional() {
        return Ok(p.clone());
    }
    let ring = p.vertices();
    let m = ring.len();
    let mut keep = vec![true; m];
    let mut left = m;
    for i in 0..m {
        if left <= 3 {
            break;
        }
        let prev = (i + m - 1) % m;
        if !keep[prev] {
            continue;
        }
        let (a, b, c) = (ring[prev], ring[i], ring[(i + 1) % m]);
        let base = c - a;
        let len = base.norm();
        if len == 0.0 {
            continue;
        }
        if (b - a).perp_dot(&base).abs() / len < delta && (i + 1 < m || keep[0]) {
            keep[i] = false;
            left -= 1;
        }
    }
    let pts: Vec<Vector> = ring.iter().zip(&keep).filter(|(_, k)| **k).map(|(v, _)| *v).collect();
    VPolytope::hull(&pts)
}

fn preserved(op: OpKind) -> Matching {
    match op {
        OpKind::Steiner | OpKind::Fiber | OpKind::Vexlast | OpKind::InnerRot | OpKind::Schwarz => Matching::ByVn,
        _ => Matching::ByV1,
    }
}

/// Coarsens a planar output and rescales it about a point of `h` so that
/// the preserved functional matches the uncoarsened output.
fn simplify(out: &VPolytope, h: &Subspace, rel: f64, which: Matching) -> Result<VPolytope> {
    let coarse = coarsen_polygon(out, rel * out.circumradius())?;
    if coarse.vertices().len() == out.vertices().len() {
        return Ok(out.clone());
    }
    let (target, have): (f64, f64) = match which {
        Matching::ByVn => (out.volume(), coarse.volume()),
        Matching::ByV1 => (out.intrinsic_volume_1(), coarse.intrinsic_volume_1()),
    };
    if !(have > 0.0) {
        return Ok(out.clone());
    }
    let degree = if which == Matching::ByVn { 2.0 } else { 1.0 };
    let lambda = (target / have).powf(1.0 / degree);
    let center = h.project_point(&coarse.centroid());
    Ok(coarse.scale_about(&center, lambda))
}

/// Metrics of one step; the ball distance is taken after moving the body's
/// Steiner point to the origin.
pub fn measure(k: &ConvexBody, step: usize, matching: Matching, tol: &ToleranceConfig) -> Result<TrajectoryRow> {
    let centered = k.translate(&-steiner_point(k, tol)?)?;
    Ok(TrajectoryRow {
        step,
        v_n: k.volume(),
        v_1: k.intrinsic_volume_1(),
        ball_distance: ball_distance(&centered, matching, tol)?,
    })
}

/// Applies `op` with respect to `H_j, …, H_m` in order.
pub fn iterate(
    op: OpKind,
    params: &SymParams,
    k: &ConvexBody,
    seq: &SubspaceSequence,
    j: usize,
    m: usize,
    cfg: &IterateConfig,
) -> Result<Trajectory> {
    if j == 0 || m < j || m > seq.len() {
        return Err(Error::InvalidInput(format!(
            "step range {j}..={m} outside a sequence of length {}",
            seq.len()
        )));
    }
    let tol = &cfg.tol;
    let which = preserved(op);
    let mut body = k.clone();
    let mut rows = Vec::with_capacity(m - j + 1);
    let mut snapshots = Vec::new();
    for step in j..=m {
        let h = seq.get(step).expect("range checked");
        let spec = SymSpec { op, h: h.clone(), params: params.clone() };
        let mut next = apply_with(&body, &spec, tol)?;
        if let (Some(rel), ConvexBody::Polytope(p)) = (cfg.coarsen, &next) {
            if p.dim() == 2 {
                next = simplify(p, h, rel, which)?.into();
            }
        }
        if let ConvexBody::Polytope(p) = &next {
            if p.vertices().len() > cfg.vertex_cap {
                let err = Error::CapExceeded { step, vertices: p.vertices().len(), cap: cfg.vertex_cap };
                return Ok(Trajectory { rows, snapshots, final_body: body, halted: Some(err) });
            }
        }
        body = next;
        rows.push(measure(&body, step, cfg.matching, tol)?);
        if let Some(every) = cfg.snapshot_every {
            if every > 0 && (step - j) % every == 0 {
                snapshots.push((step, body.clone()));
            }
        }
    }
    Ok(Trajectory { rows, snapshots, final_body: body, halted: None })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeakdiResult {
    pub a: f64,
    pub b: f64,
    pub theta: f64,
    pub steps: usize,
    pub area_from_step1: f64,
    pub area_from_step2: f64,
    pub ratio: f64,
    pub ball_distance_from_step1: f64,
    pub ball_distance_from_step2: f64,
}

/// Checks that `[−a,a] × [1,1+b]` meets the line at angle `θ` and that the
/// origin lies in its projection onto that line.
pub fn weakdi_preconditions(a: f64, b: f64, theta: f64) -> Result<()> {
    if !(a > 0.0 && b > 0.0 && theta.is_finite()) {
        return Err(Error::InvalidInput("need a, b > 0 and a finite angle".into()));
    }
    let k = make_box(&[2.0 * a, b])?.translate(&Vector::new2(0.0, 1.0 + 0.5 * b));
    let d = Vector::new2(theta.cos(), theta.sin());
    let u = d.perp();
    let eps = 1e-12 * (a + b + 1.0);
    let (lo, hi) = k.vertices().iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v.dot(&u)), hi.max(v.dot(&u)))
    });
    if lo > eps || hi < -eps {
        return Err(Error::InvalidInput(format!("K does not meet the line at angle {theta}")));
    }
    let (lo, hi) = k.vertices().iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v.dot(&d)), hi.max(v.dot(&d)))
    });
    if lo > eps || hi < -eps {
        return Err(Error::InvalidInput(format!("o is not in the projection of K onto the line at angle {theta}")));
    }
    Ok(())
}

/// Runs the `vexlast` process on `[−a,a] × [1,1+b]` along the alternating
/// sequence (line at `θ`, x-axis), once starting with the line and once
/// starting with the x-axis.
pub fn example_weakdi(a: f64, b: f64, theta: f64, steps: usize) -> Result<WeakdiResult> {
    weakdi_preconditions(a, b, theta)?;
    if steps == 0 {
        return Err(Error::InvalidInput("need at least one step".into()));
    }
    let k: ConvexBody = make_box(&[2.0 * a, b])?.translate(&Vector::new2(0.0, 1.0 + 0.5 * b)).into();
    let seq = make_sequence(SequenceKind::IrrationalRotation(theta), 2, 1, steps + 1)?;
    let cfg = IterateConfig { coarsen: Some(1e-6), ..IterateConfig::default() };
    let params = SymParams::default();
    let first = iterate(OpKind::Vexlast, &params, &k, &seq, 1, steps, &cfg)?.into_result()?;
    let second = iterate(OpKind::Vexlast, &params, &k, &seq, 2, steps + 1, &cfg)?.into_result()?;
    let last = |t: &Trajectory| *t.rows.last().expect("at least one step");
    let (r1, r2) = (last(&first), last(&second));
    Ok(WeakdiResult {
        a,
        b,
        theta,
        steps,
        area_from_step1: r1.v_n,
        area_from_step2: r2.v_n,
        ratio: r1.v_n / r2.v_n,
        ball_distance_from_step1: r1.ball_distance,
        ball_distance_from_step2: r2.ball_distance,
    })
}
