//! Randomized checks of the eight symmetrization properties:
//!
//! 1. monotonicity (strict or not), 2. preservation of an intrinsic volume,
//! 3. idempotence, 4. invariance on `H`-symmetric sets, 5. invariance on
//! spherical cylinders, 6. projection invariance `(⋄K)|H = K|H`,
//! 7. invariance under translations orthogonal to `H` of `H`-symmetric sets,
//! 8. projection covariance `(⋄K)|T = ⋄(K|T)` for `T ⊂ H^⊥`.

mod checks;
mod generators;
mod pinned;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{ConvexBody, Subspace, ToleranceConfig, Vector};
use crate::symmetrize::{OpKind, SymSpec};

pub use checks::{
    check_f_preserving, check_idempotent, check_invariant_h_symmetric, check_invariant_spherical_cylinder,
    check_monotonic, check_projection_covariant, check_projection_invariant, check_strictness,
    check_translation_invariant, evaluate, table_report, Measure, Operator,
};
pub use generators::{
    h_symmetric, nested_pair, polytope_form, random_body, random_subspace_of_complement, BodyGenerator,
    GeneratorKind, Instance,
};
pub use pinned::{directed_cases, non_strict_case, pinned_row, table_spec, DirectedCase};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Monotonic,
    FPreserving,
    Idempotent,
    InvariantHSymmetric,
    InvariantCylinder,
    ProjectionInvariant,
    TranslationInvariant,
    ProjectionCovariant,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Monotonic,
        Property::FPreserving,
        Property::Idempotent,
        Property::InvariantHSymmetric,
        Property::InvariantCylinder,
        Property::ProjectionInvariant,
        Property::TranslationInvariant,
        Property::ProjectionCovariant,
    ];

    /// Column number, 1 to 8.
    pub fn number(self) -> usize {
        Property::ALL.iter().position(|p| *p == self).expect("listed") + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::Monotonic => "monotonic",
            Property::FPreserving => "f_preserving",
            Property::Idempotent => "idempotent",
            Property::InvariantHSymmetric => "invariant_h_symmetric",
            Property::InvariantCylinder => "invariant_spherical_cylinder",
            Property::ProjectionInvariant => "projection_invariant",
            Property::TranslationInvariant => "translation_invariant",
            Property::ProjectionCovariant => "projection_covariant",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
    Inconclusive,
}

/// A pinned table cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    /// Strictly monotonic.
    Strict,
    Holds,
    Fails,
    /// Preserves `V_j`.
    Preserves(usize),
    /// Preserves none of `V_1`, `V_{n−1}`, `V_n`.
    PreservesNone,
    NotChecked,
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Strict => f.write_str("s✓"),
            Expected::Holds => f.write_str("✓"),
            Expected::Fails | Expected::PreservesNone => f.write_str("✗"),
            Expected::Preserves(j) => write!(f, "V_{j}"),
            Expected::NotChecked => f.write_str("-"),
        }
    }
}

/// Inputs of one property evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum Case {
    Nested { inner: ConvexBody, outer: ConvexBody },
    Functional { body: ConvexBody, j: usize },
    Single { body: ConvexBody },
    Translated { body: ConvexBody, shift: Vector },
    Projected { body: ConvexBody, t: Subspace },
}

/// Inputs that violate a property, with the observed margin.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub property: Property,
    /// Generator trial, or `None` for a directed case.
    pub trial: Option<usize>,
    pub description: String,
    pub case: Case,
    /// Violation relative to the circumradius.
    pub margin: f64,
    pub tolerance: f64,
}

impl Witness {
    /// Re-evaluates the property on the stored inputs.
    pub fn recheck(&self, op: &Operator, cfg: &HarnessConfig) -> crate::Result<Measure> {
        evaluate(self.property, op, &self.case, cfg)
    }
}

/// Outcome for one intrinsic volume in property 2.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionalResult {
    pub j: usize,
    pub verdict: Verdict,
    pub worst_margin: f64,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyResult {
    pub property: Property,
    pub verdict: Verdict,
    pub trials: usize,
    /// Largest violation relative to the circumradius (or relative change of
    /// the functional); at most `tolerance` on a pass.
    pub worst_margin: f64,
    pub tolerance: f64,
    pub witness: Option<Witness>,
    /// Property 1: whether strictness was observed on the directed family.
    pub strict: Option<bool>,
    /// Property 2: one entry per intrinsic volume.
    pub functionals: Vec<FunctionalResult>,
    pub expected: Option<Expected>,
    pub matches: Option<bool>,
    pub note: String,
}

impl PropertyResult {
    pub(crate) fn new(property: Property) -> Self {
        Self {
            property,
            verdict: Verdict::Pass,
            trials: 0,
            worst_margin: f64::NEG_INFINITY,
            tolerance: 0.0,
            witness: None,
            strict: None,
            functionals: Vec::new(),
            expected: None,
            matches: None,
            note: String::new(),
        }
    }

    pub(crate) fn skipped(property: Property, note: &str) -> Self {
        let mut r = Self::new(property);
        r.verdict = Verdict::Skipped;
        r.expected = Some(Expected::NotChecked);
        r.matches = Some(true);
        r.note = note.into();
        r
    }
}

/// Harness settings.
#[derive(Clone, Debug, PartialEq)]
pub struct HarnessConfig {
    pub trials: usize,
    pub seed: u64,
    pub tol: ToleranceConfig,
    /// Relative tolerance when an output is sampled or a body of revolution.
    pub sampled_tol: f64,
    /// Nested pairs used to probe strict monotonicity.
    pub strict_trials: usize,
    /// Cells that may stay inconclusive without failing the row.
    pub whitelist: Vec<(OpKind, Property)>,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self {
            trials: 100,
            seed: 0,
            tol: ToleranceConfig::default(),
            sampled_tol: 1e-3,
            strict_trials: 20,
            whitelist: Vec::new(),
        }
    }
}

/// One table row.
#[derive(Clone, Debug, PartialEq)]
pub struct PropertyReport {
    pub spec: SymSpec,
    pub results: Vec<PropertyResult>,
    pub matches: bool,
}

impl PropertyReport {
    pub fn result(&self, p: Property) -> Option<&PropertyResult> {
        self.results.iter().find(|r| r.property == p)
    }

    /// Properties whose observation contradicts the pinned cell.
    pub fn mismatches(&self) -> Vec<Property> {
        self.results.iter().filter(|r| r.matches == Some(false)).map(|r| r.property).collect()
    }

    /// The row as table cells, e.g. `s✓ V_2 ✓ ✓ ✓ ✓ ✓ ✗`.
    pub fn row(&self) -> String {
        let cells: Vec<String> = self
            .results
            .iter()
            .map(|r| match (r.property, r.verdict) {
                (_, Verdict::Skipped) => "-".into(),
                (_, Verdict::Inconclusive) => "?".into(),
                (Property::Monotonic, Verdict::Pass) if r.strict == Some(true) => "s✓".into(),
                (Property::FPreserving, _) => {
                    let kept: Vec<String> = r
                        .functionals
                        .iter()
                        .filter(|f| f.verdict == Verdict::Pass)
                        .map(|f| format!("V_{}", f.j))
                        .collect();
                    if kept.is_empty() {
                        "✗".into()
                    } else {
                        kept.join(",")
                    }
                }
                (_, Verdict::Pass) => "✓".into(),
                (_, Verdict::Fail) => "✗".into(),
            })
            .collect();
        cells.join(" ")
    }
}
