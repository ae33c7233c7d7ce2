use std::fmt;

use super::generators::{random_body, random_subspace_of_complement, BodyGenerator, GeneratorKind, Instance};
use super::pinned::{directed_cases, non_strict_case, pinned_row};
use super::{
    Case, Expected, FunctionalResult, HarnessConfig, Property, PropertyReport, PropertyResult, Verdict, Witness,
};
use crate::error::{check_dim, Error, Result};
use crate::geometry::body::comparison_directions;
use crate::geometry::{containment_margin, hausdorff_distance, ConvexBody, Subspace, ToleranceConfig, VPolytope};
use crate::symmetrize::{apply_with, OpKind, SymSpec};

type OpFn = dyn Fn(&ConvexBody) -> Result<ConvexBody> + Send + Sync;

/// A symmetrization as seen by the harness: a subspace and a map on bodies.
pub struct Operator {
    pub name: String,
    pub h: Subspace,
    pub kind: Option<OpKind>,
    polytope_input: bool,
    f: Box<OpFn>,
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Operator").field("name", &self.name).field("h", &self.h).finish()
    }
}

fn polytope_only(op: OpKind, n: usize, i: usize) -> bool {
    match op {
        OpKind::Steiner | OpKind::Fiber | OpKind::Blaschke2d | OpKind::Vexlast => true,
        OpKind::InnerRot => i == n - 1,
        _ => false,
    }
}

impl Operator {
    pub fn from_spec(spec: &SymSpec, tol: &ToleranceConfig) -> Result<Self> {
        spec.validate()?;
        let (s, t) = (spec.clone(), *tol);
        Ok(Self {
            name: spec.op.name().into(),
            h: spec.h.clone(),
            kind: Some(spec.op),
            polytope_input: polytope_only(spec.op, spec.n(), spec.i()),
            f: Box::new(move |k| apply_with(k, &s, &t)),
        })
    }

    /// An arbitrary map, e.g. a deliberately broken one.
    pub fn custom<F>(name: &str, h: Subspace, polytope_input: bool, f: F) -> Self
    where
        F: Fn(&ConvexBody) -> Result<ConvexBody> + Send + Sync + 'static,
    {
        Self { name: name.into(), h, kind: None, polytope_input, f: Box::new(f) }
    }

    pub fn needs_polytope(&self) -> bool {
        self.polytope_input
    }

    pub fn apply(&self, k: &ConvexBody) -> Result<ConvexBody> {
        check_dim(self.h.ambient_dim(), k.dim())?;
        if self.polytope_input && k.as_polytope().is_none() {
            return (self.f)(&super::polytope_form(k)?.into());
        }
        (self.f)(k)
    }
}

/// A property evaluation: `value` is the violation (relative to the
/// circumradius, or the relative change of a functional) and the property
/// holds on the case when `value ≤ tol`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Measure {
    pub value: f64,
    pub tol: f64,
}

impl Measure {
    pub fn violated(&self) -> bool {
        !(self.value <= self.tol)
    }
}

fn scale(k: &ConvexBody) -> f64 {
    k.circumradius().max(1e-12)
}

fn rel_tol(cfg: &HarnessConfig, bodies: &[&ConvexBody]) -> f64 {
    if bodies.iter().all(|b| b.is_exact()) {
        cfg.tol.inclusion_eps
    } else {
        cfg.sampled_tol
    }
}

fn as_polytope<'a>(k: &'a ConvexBody, what: &str) -> Result<&'a VPolytope> {
    k.as_polytope().ok_or_else(|| Error::Unsupported(format!("{what} of a {}", k.kind())))
}

/// Evaluates one property on one case.
pub fn evaluate(property: Property, op: &Operator, case: &Case, cfg: &HarnessConfig) -> Result<Measure> {
    let tol = &cfg.tol;
    match (property, case) {
        (Property::Monotonic, Case::Nested { inner, outer }) => {
            let (a, b) = (op.apply(inner)?, op.apply(outer)?);
            Ok(Measure { value: containment_margin(&b, &a, tol)? / scale(outer), tol: rel_tol(cfg, &[&a, &b]) })
        }
        (Property::FPreserving, Case::Functional { body, j }) => {
            let a = op.apply(body)?;
            let (f0, f1) = (body.intrinsic_volume(*j)?, a.intrinsic_volume(*j)?);
            let t = match a {
                ConvexBody::Polytope(_) if a.dim() == 2 => 1e-9,
                ConvexBody::Polytope(_) => 1e-7,
                _ => cfg.sampled_tol,
            };
            Ok(Measure { value: (f1 - f0).abs() / f0.abs().max(1e-300), tol: t })
        }
        (Property::Idempotent, Case::Single { body }) => {
            let a = op.apply(body)?;
            let b = op.apply(&a)?;
            Ok(Measure { value: hausdorff_distance(&a, &b, tol)? / scale(&a), tol: rel_tol(cfg, &[&a, &b]) })
        }
        (Property::InvariantHSymmetric | Property::InvariantCylinder, Case::Single { body }) => {
            let a = op.apply(body)?;
            Ok(Measure { value: hausdorff_distance(&a, body, tol)? / scale(body), tol: rel_tol(cfg, &[&a, body]) })
        }
        (Property::ProjectionInvariant, Case::Single { body }) => {
            let a = op.apply(body)?;
            let dirs = op.h.sample_directions(360);
            let (ha, hk) = (a.support_many(&dirs), body.support_many(&dirs));
            let d = ha.iter().zip(&hk).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
            Ok(Measure { value: d / scale(body), tol: rel_tol(cfg, &[&a, body]) })
        }
        (Property::TranslationInvariant, Case::Translated { body, shift }) => {
            let a = op.apply(body)?;
            let b = op.apply(&body.translate(shift)?)?;
            Ok(Measure { value: hausdorff_distance(&a, &b, tol)? / scale(body), tol: rel_tol(cfg, &[&a, &b]) })
        }
        (Property::ProjectionCovariant, Case::Projected { body, t }) => {
            let a = op.apply(body)?;
            let kt: ConvexBody = as_polytope(body, "projection")?.project(t)?.into();
            let b = op.apply(&kt)?;
            let dirs = comparison_directions(&a, &b, tol)?;
            let pdirs: Vec<_> = dirs.iter().map(|u| t.project_point(u)).collect();
            let ha: Vec<f64> = match &a {
                ConvexBody::Polytope(p) => p.support_many(&pdirs),
                _ => pdirs.iter().map(|v| if v.norm() < 1e-14 { 0.0 } else { a.support(v) }).collect(),
            };
            let hb = b.support_many(&dirs);
            let d = ha.iter().zip(&hb).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
            Ok(Measure { value: d / scale(body), tol: rel_tol(cfg, &[&a, &b]) })
        }
        _ => Err(Error::InvalidInput(format!("case does not fit property {property}"))),
    }
}

fn generator(property: Property, cfg: &HarnessConfig) -> BodyGenerator {
    let kind = match property {
        Property::Monotonic => GeneratorKind::NestedPair,
        Property::InvariantHSymmetric => GeneratorKind::HSymmetric,
        Property::InvariantCylinder => GeneratorKind::SphericalCylinder,
        Property::TranslationInvariant => GeneratorKind::TranslatedHSymmetric,
        _ => GeneratorKind::RandomPolytope,
    };
    BodyGenerator::new(kind, cfg.seed, cfg.trials)
}

fn case_for(property: Property, inst: Instance, op: &Operator, trial: usize, cfg: &HarnessConfig, j: usize) -> Result<Case> {
    Ok(match (property, inst) {
        (Property::Monotonic, Instance::Nested { inner, outer }) => Case::Nested { inner, outer },
        (Property::TranslationInvariant, Instance::Translated { body, shift }) => Case::Translated { body, shift },
        (Property::FPreserving, Instance::Body(body)) => Case::Functional { body, j },
        (Property::ProjectionCovariant, Instance::Body(body)) => {
            let mut rng = BodyGenerator::new(GeneratorKind::RandomPolytope, cfg.seed ^ 0x7e57, 0).rng(trial);
            Case::Projected { body, t: random_subspace_of_complement(&op.h, trial, &mut rng)? }
        }
        (_, Instance::Body(body)) => Case::Single { body },
        _ => return Err(Error::InvalidInput(format!("generator does not fit property {property}"))),
    })
}

/// Random trials, then the directed cases if no trial violated the property.
fn run(property: Property, op: &Operator, cfg: &HarnessConfig, j: usize) -> Result<PropertyResult> {
    let gen = generator(property, cfg);
    let mut res = PropertyResult::new(property);
    for trial in 0..cfg.trials {
        let inst = gen.instance(&op.h, trial, op.needs_polytope())?;
        let case = case_for(property, inst, op, trial, cfg, j)?;
        let m = evaluate(property, op, &case, cfg)?;
        res.trials += 1;
        res.tolerance = res.tolerance.max(m.tol);
        if m.violated() && res.witness.as_ref().map_or(true, |w| m.value > w.margin) {
            res.witness = Some(Witness {
                property,
                trial: Some(trial),
                description: format!("{:?} trial {trial}, seed {}", gen.kind, cfg.seed),
                case,
                margin: m.value,
                tolerance: m.tol,
            });
        }
        res.worst_margin = res.worst_margin.max(m.value);
    }
    if res.witness.is_none() {
        if let Some(kind) = op.kind {
            for d in directed_cases(kind, property, &op.h)? {
                let case = match (property, d.case) {
                    (Property::FPreserving, Case::Single { body }) => Case::Functional { body, j },
                    (_, c) => c,
                };
                let m = evaluate(property, op, &case, cfg)?;
                if m.violated() {
                    res.note = format!("directed counterexample: {}", d.description);
                    res.worst_margin = res.worst_margin.max(m.value);
                    res.witness =
                        Some(Witness { property, trial: None, description: d.description, case, margin: m.value, tolerance: m.tol });
                    break;
                }
            }
        }
    }
    res.verdict = if res.witness.is_some() { Verdict::Fail } else { Verdict::Pass };
    Ok(res)
}

pub fn check_monotonic(op: &Operator, cfg: &HarnessConfig) -> Result<PropertyResult> {
    run(Property::Monotonic, op, cfg, 0)
}

/// Property 2 for `V_j`.
pub fn check_f_preserving(op: &Operator, j: usize, cfg: &HarnessConfig) -> Result<PropertyResult> {
    let n = op.h.ambient_dim();
    if !(j == 1 || j == n - 1 || j == n) {
        return Err(Error::InvalidInput(format!("functional V_{j} is not one of V_1, V_{{n-1}}, V_n")));
    }
    run(Property::FPreserving, op, cfg, j)
}

pub fn check_idempotent(op: &Operator, cfg: &HarnessConfig) -> Result<PropertyResult> {
    run(Property::Idempotent, op, cfg, 0)
}

pub fn check_invariant_h_symmetric(op: &Operator, cfg: &HarnessConfig) -> Result<PropertyResult> {
    run(Property::InvariantHSymmetric, op, cfg, 0)
}

pub fn check_invariant_spherical_cylinder(op: &Operator, cfg: &HarnessConfig) -> Result<PropertyResult> {
    run(Property::InvariantCylinder, op, cfg, 0)
}

pub fn check_projection_invariant(op: &Operator, cfg: &HarnessConfig) -> Result<PropertyResult> {
    run(Property::ProjectionInvariant, op, cfg, 0)
}

pub fn check_translation_invariant(op: &Operator, cfg: &HarnessConfig) -> Result<PropertyResult> {
    run(Property::TranslationInvariant, op, cfg, 0)
}

pub fn check_projection_covariant(op: &Operator, cfg: &HarnessConfig) -> Result<PropertyResult> {
    if op.h.dim() == op.h.ambient_dim() {
        return Err(Error::InvalidSubspace("H^⊥ is trivial".into()));
    }
    run(Property::ProjectionCovariant, op, cfg, 0)
}

/// Strictness on nested pairs `K ⊂ L = conv(K ∪ {p})` with `p` well
/// outside `K`: returns whether every pair had distinct symmetrals, the
/// smallest separation, and a pair with equal symmetrals if any.
pub fn check_strictness(op: &Operator, cfg: &HarnessConfig) -> Result<(bool, f64, Option<Witness>)> {
    let n = op.h.ambient_dim();
    let gen = BodyGenerator::new(GeneratorKind::NestedPair, cfg.seed ^ 0x5717c7, cfg.strict_trials);
    let mut min_sep = f64::INFINITY;
    let mut witness = None;
    for trial in 0..cfg.strict_trials {
        let mut rng = gen.rng(trial);
        let k = random_body(n, &mut rng)?;
        let c = k.centroid();
        let far = k.vertices().iter().copied().fold(c, |m, v| if v.distance(&c) > m.distance(&c) { v } else { m });
        let mut pts = k.vertices().to_vec();
        pts.push(c + (far - c) * 1.5);
        let l = VPolytope::hull(&pts)?;
        let (k, l): (ConvexBody, ConvexBody) = (k.into(), l.into());
        let (a, b) = (op.apply(&k)?, op.apply(&l)?);
        let sep = hausdorff_distance(&a, &b, &cfg.tol)? / scale(&l);
        let t = rel_tol(cfg, &[&a, &b]);
        min_sep = min_sep.min(sep);
        if sep <= t && witness.is_none() {
            witness = Some(Witness {
                property: Property::Monotonic,
                trial: Some(trial),
                description: "nested pair with equal symmetrals".into(),
                case: Case::Nested { inner: k, outer: l },
                margin: sep,
                tolerance: t,
            });
        }
    }
    Ok((witness.is_none(), min_sep, witness))
}

fn functionals(n: usize) -> Vec<usize> {
    let mut js = vec![1, n - 1, n];
    js.dedup();
    js
}

/// Runs every applicable check for `spec` and compares with the pinned row.
pub fn table_report(spec: &SymSpec, cfg: &HarnessConfig) -> Result<PropertyReport> {
    let op = Operator::from_spec(spec, &cfg.tol)?;
    let (n, i) = (spec.n(), spec.i());
    let row = pinned_row(spec.op, n, i);
    let mut results = Vec::new();
    for property in Property::ALL {
        let expected = row.map(|r| r[property.number() - 1]);
        if expected == Some(Expected::NotChecked) {
            results.push(PropertyResult::skipped(property, "not defined or not tabulated for this operator"));
            continue;
        }
        let mut res = match property {
            Property::Monotonic => {
                let mut r = check_monotonic(&op, cfg)?;
                if r.verdict == Verdict::Pass {
                    match expected {
                        Some(Expected::Holds) => {
                            if let Some(d) = non_strict_case(spec.op, &op.h)? {
                                if let Case::Nested { inner, outer } = &d.case {
                                    let (a, b) = (op.apply(inner)?, op.apply(outer)?);
                                    let sep = hausdorff_distance(&a, &b, &cfg.tol)? / scale(outer);
                                    let strict = sep > rel_tol(cfg, &[&a, &b]);
                                    r.strict = Some(strict);
                                    if !strict {
                                        r.note = format!("not strict: {}", d.description);
                                    }
                                }
                            }
                        }
                        _ => {
                            let (strict, sep, w) = check_strictness(&op, cfg)?;
                            r.strict = Some(strict);
                            r.note = format!("smallest separation on strictness pairs {sep:.3e}");
                            if let Some(w) = w {
                                r.note = format!("not strict: {}", w.description);
                            }
                        }
                    }
                }
                r
            }
            Property::FPreserving => {
                let mut r = PropertyResult::new(property);
                for j in functionals(n) {
                    let f = check_f_preserving(&op, j, cfg)?;
                    r.trials = r.trials.max(f.trials);
                    r.tolerance = r.tolerance.max(f.tolerance);
                    r.functionals.push(FunctionalResult {
                        j,
                        verdict: f.verdict,
                        worst_margin: f.worst_margin,
                        witness: f.witness,
                    });
                }
                let target = match expected {
                    Some(Expected::Preserves(j)) => Some(j),
                    _ => None,
                };
                let pick = r.functionals.iter().find(|f| Some(f.j) == target).or_else(|| {
                    r.functionals.iter().find(|f| f.verdict == Verdict::Pass).or(r.functionals.first())
                });
                if let Some(f) = pick {
                    r.worst_margin = f.worst_margin;
                    r.witness = f.witness.clone();
                }
                r.verdict = match target {
                    Some(j) => r.functionals.iter().find(|f| f.j == j).map_or(Verdict::Skipped, |f| f.verdict),
                    None if r.functionals.iter().all(|f| f.verdict == Verdict::Fail) => Verdict::Fail,
                    None => Verdict::Pass,
                };
                r
            }
            Property::Idempotent => check_idempotent(&op, cfg)?,
            Property::InvariantHSymmetric => check_invariant_h_symmetric(&op, cfg)?,
            Property::InvariantCylinder => check_invariant_spherical_cylinder(&op, cfg)?,
            Property::ProjectionInvariant => check_projection_invariant(&op, cfg)?,
            Property::TranslationInvariant => check_translation_invariant(&op, cfg)?,
            Property::ProjectionCovariant => check_projection_covariant(&op, cfg)?,
        };
        res.expected = expected;
        if let Some(e) = expected {
            let whitelisted = cfg.whitelist.contains(&(spec.op, property));
            if matches!(e, Expected::Fails | Expected::PreservesNone) && res.verdict == Verdict::Pass {
                res.verdict = Verdict::Inconclusive;
                res.note = "no counterexample found by random search or directed cases".into();
            }
            let ok = match e {
                Expected::Strict => res.verdict == Verdict::Pass && res.strict == Some(true),
                Expected::Holds | Expected::Preserves(_) => res.verdict == Verdict::Pass,
                Expected::Fails | Expected::PreservesNone => {
                    res.verdict == Verdict::Fail || (res.verdict == Verdict::Inconclusive && whitelisted)
                }
                Expected::NotChecked => true,
            };
            res.matches = Some(ok);
        }
        results.push(res);
    }
    let matches = results.iter().all(|r| r.matches != Some(false));
    Ok(PropertyReport { spec: spec.clone(), results, matches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vector;

    fn cfg(trials: usize) -> HarnessConfig {
        HarnessConfig { trials, ..HarnessConfig::default() }
    }

    fn op(kind: OpKind, n: usize) -> Operator {
        Operator::from_spec(&super::super::table_spec(kind, n).unwrap(), &ToleranceConfig::default()).unwrap()
    }

    fn assert_reproduces(r: &PropertyResult, op: &Operator, cfg: &HarnessConfig) {
        assert_eq!(r.verdict, Verdict::Fail);
        let w = r.witness.as_ref().expect("fail ships a witness");
        let m = w.recheck(op, cfg).unwrap();
        assert!(m.violated());
        assert_eq!(m.value, w.margin);
    }

    #[test]
    fn steiner_preserves_area_not_perimeter() {
        let (op, cfg) = (op(OpKind::Steiner, 2), cfg(40));
        assert_eq!(check_f_preserving(&op, 2, &cfg).unwrap().verdict, Verdict::Pass);
        assert_reproduces(&check_f_preserving(&op, 1, &cfg).unwrap(), &op, &cfg);
    }

    #[test]
    fn minkowski_preserves_mean_width_not_area() {
        let (op, cfg) = (op(OpKind::Minkowski, 2), cfg(40));
        assert_eq!(check_f_preserving(&op, 1, &cfg).unwrap().verdict, Verdict::Pass);
        assert_reproduces(&check_f_preserving(&op, 2, &cfg).unwrap(), &op, &cfg);
        assert_eq!(check_projection_covariant(&op, &cfg).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn unknown_functional_is_rejected() {
        let op = op(OpKind::Steiner, 3);
        assert!(matches!(check_f_preserving(&op, 0, &cfg(1)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn vexlast_is_not_translation_invariant() {
        let (op, cfg) = (op(OpKind::Vexlast, 2), cfg(20));
        assert_reproduces(&check_translation_invariant(&op, &cfg).unwrap(), &op, &cfg);
        assert_eq!(check_monotonic(&op, &cfg).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn schwarz_moves_symmetric_boxes() {
        let (op, cfg) = (op(OpKind::Schwarz, 3), cfg(3));
        assert_reproduces(&check_invariant_h_symmetric(&op, &cfg).unwrap(), &op, &cfg);
    }

    #[test]
    fn steiner_projection_checks() {
        let (op, cfg) = (op(OpKind::Steiner, 2), cfg(30));
        assert_eq!(check_projection_invariant(&op, &cfg).unwrap().verdict, Verdict::Pass);
        assert_reproduces(&check_projection_covariant(&op, &cfg).unwrap(), &op, &cfg);
    }

    // dilating only the smaller half of the generated bodies pushes some
    // inner symmetrals out of their outer ones
    #[test]
    fn broken_operator_fails_monotonicity() {
        let cfg = cfg(60);
        let h = Subspace::line_at_angle(0.3);
        let gen = generator(Property::Monotonic, &cfg);
        let mut vols = Vec::new();
        for t in 0..cfg.trials {
            if let Instance::Nested { inner, outer } = gen.instance(&h, t, true).unwrap() {
                vols.push(inner.volume());
                vols.push(outer.volume());
            }
        }
        vols.sort_by(f64::total_cmp);
        let median = vols[vols.len() / 2];
        let hh = h.clone();
        let broken = Operator::custom("broken", h.clone(), true, move |k| {
            let s = crate::symmetrize::steiner(k.as_polytope().unwrap(), &hh)?;
            if k.volume() > median {
                return Ok(s.into());
            }
            let c = s.centroid();
            Ok(s.map_points(|v| c + (*v - c) * (1.0 + 1e-3)).into())
        });
        let r = check_monotonic(&broken, &cfg).unwrap();
        assert_reproduces(&r, &broken, &cfg);
        assert!(r.witness.unwrap().trial.is_some());
        let honest = op(OpKind::Steiner, 2);
        assert_eq!(check_monotonic(&honest, &cfg).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn strictness_pairs_separate() {
        let (strict, sep, w) = check_strictness(&op(OpKind::Minkowski, 2), &cfg(1)).unwrap();
        assert!(strict && w.is_none() && sep > 1e-3);
    }

    #[test]
    fn deterministic_per_seed() {
        let op = op(OpKind::Steiner, 2);
        let a = check_f_preserving(&op, 1, &cfg(15)).unwrap();
        let b = check_f_preserving(&op, 1, &cfg(15)).unwrap();
        assert_eq!(a, b);
        let c = check_f_preserving(&op, 1, &HarnessConfig { seed: 9, ..cfg(15) }).unwrap();
        assert_ne!(a.worst_margin, c.worst_margin);
    }

    #[test]
    fn cases_must_fit_properties() {
        let op = op(OpKind::Steiner, 2);
        let body: ConvexBody = VPolytope::hull(&[Vector::new2(0.0, 0.0), Vector::new2(1.0, 0.0), Vector::new2(0.0, 1.0)])
            .unwrap()
            .into();
        let r = evaluate(Property::Monotonic, &op, &Case::Single { body }, &cfg(1));
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn steiner_row_matches() {
        let r = table_report(&super::super::table_spec(OpKind::Steiner, 2).unwrap(), &cfg(25)).unwrap();
        assert!(r.matches, "{}", r.row());
        assert_eq!(r.row(), "s✓ V_2 ✓ ✓ ✓ ✓ ✓ ✗");
    }
}
