use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analytic::{make_spherical_cylinder, random_in_ball};
use crate::error::{Error, Result};
use crate::geometry::{contains, ConvexBody, Subspace, ToleranceConfig, VPolytope, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    RandomPolytope,
    NestedPair,
    HSymmetric,
    SphericalCylinder,
    TranslatedHSymmetric,
}

impl GeneratorKind {
    fn stream(self) -> u64 {
        match self {
            GeneratorKind::RandomPolytope => 0,
            GeneratorKind::NestedPair => 1,
            GeneratorKind::HSymmetric => 2,
            GeneratorKind::SphericalCylinder => 3,
            GeneratorKind::TranslatedHSymmetric => 4,
        }
    }
}

/// One generated test input.
#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Body(ConvexBody),
    Nested { inner: ConvexBody, outer: ConvexBody },
    Translated { body: ConvexBody, shift: Vector },
}

/// Seeded source of test bodies. Trial `k` draws from its own stream, so
/// instances do not depend on which other trials were generated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BodyGenerator {
    pub kind: GeneratorKind,
    pub seed: u64,
    pub count: usize,
}

impl BodyGenerator {
    pub fn new(kind: GeneratorKind, seed: u64, count: usize) -> Self {
        Self { kind, seed, count }
    }

    pub fn rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((trial as u64) << 3) | self.kind.stream());
        rng
    }

    /// Instance number `trial` for subspace `h`. With `polytopes` set,
    /// cylinders are returned as inscribed polytopes.
    pub fn instance(&self, h: &Subspace, trial: usize, polytopes: bool) -> Result<Instance> {
        let n = h.ambient_dim();
        let mut rng = self.rng(trial);
        match self.kind {
            GeneratorKind::RandomPolytope => Ok(Instance::Body(random_body(n, &mut rng)?.into())),
            GeneratorKind::NestedPair => {
                let (inner, outer) = nested_pair(n, &mut rng)?;
                let (inner, outer): (ConvexBody, ConvexBody) = (inner.into(), outer.into());
                let tol = ToleranceConfig::default();
                if !contains(&outer, &inner, tol.inclusion_abs(outer.circumradius()), &tol)? {
                    return Err(Error::Degenerate("nested pair is not nested".into()));
                }
                Ok(Instance::Nested { inner, outer })
            }
            GeneratorKind::HSymmetric => Ok(Instance::Body(h_symmetric(h, &mut rng)?.into())),
            GeneratorKind::SphericalCylinder => {
                let x = if h.dim() == 0 { Vector::zeros(n) } else { h.project_point(&random_in_ball(n, &mut rng)) };
                let r = rng.gen_range(0.3..1.2);
                let s = rng.gen_range(0.3..1.2);
                let c = make_spherical_cylinder(h, &x, r, s)?;
                Ok(Instance::Body(if polytopes { polytope_form(&c)?.into() } else { c }))
            }
            GeneratorKind::TranslatedHSymmetric => {
                let body = h_symmetric(h, &mut rng)?;
                let shift = h.complement().project_point(&(random_in_ball(n, &mut rng) * 1.5));
                Ok(Instance::Translated { body: body.into(), shift })
            }
        }
    }
}

/// Polytope approximation used to feed polytope-only operators.
pub fn polytope_form(k: &ConvexBody) -> Result<VPolytope> {
    match k {
        ConvexBody::Polytope(p) => Ok(p.clone()),
        ConvexBody::Revolution(r) => r.to_polytope(64),
        ConvexBody::Sample(s) => s.wulff_polytope(),
    }
}

/// Hull of 4–16 (2-D) or 5–17 (3-D) points in a ball of radius 0.5–1.2
/// whose center is within 1.2 of the origin.
pub fn random_body<R: Rng>(n: usize, rng: &mut R) -> Result<VPolytope> {
    let m = rng.gen_range(n + 2..=n + 14);
    let c = random_in_ball(n, rng) * 1.2;
    let s = rng.gen_range(0.5..1.2);
    let pts: Vec<Vector> = (0..m).map(|_| c + random_in_ball(n, rng) * s).collect();
    VPolytope::hull(&pts)
}

/// `K` and the hull of `K` with one to three extra points.
pub fn nested_pair<R: Rng>(n: usize, rng: &mut R) -> Result<(VPolytope, VPolytope)> {
    let k = random_body(n, rng)?;
    let c = k.centroid();
    let s = k.circumradius();
    let mut pts = k.vertices().to_vec();
    for _ in 0..rng.gen_range(1..=3) {
        pts.push(c + random_in_ball(n, rng) * (1.6 * s));
    }
    let l = VPolytope::hull(&pts)?;
    Ok((k, l))
}

/// `conv(K ∪ K†)` for a random `K`.
pub fn h_symmetric<R: Rng>(h: &Subspace, rng: &mut R) -> Result<VPolytope> {
    let k = random_body(h.ambient_dim(), rng)?;
    let mut pts = k.vertices().to_vec();
    pts.extend(k.vertices().iter().map(|v| h.reflect_point(v)));
    VPolytope::hull(&pts)
}

/// A random nontrivial subspace of `H^⊥`: `H^⊥` itself on even trials,
/// a random line in it on odd ones.
pub fn random_subspace_of_complement<R: Rng>(h: &Subspace, trial: usize, rng: &mut R) -> Result<Subspace> {
    let comp = h.complement();
    if comp.dim() <= 1 || trial % 2 == 0 {
        return Ok(comp);
    }
    loop {
        let v = comp.project_point(&random_in_ball(h.ambient_dim(), rng));
        if v.norm() > 1e-3 {
            return Subspace::line(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_trial() {
        let h = Subspace::coordinate(3, &[0]).unwrap();
        let g = BodyGenerator::new(GeneratorKind::NestedPair, 9, 10);
        let a = g.instance(&h, 4, true).unwrap();
        let _ = g.instance(&h, 3, true).unwrap();
        assert_eq!(a, g.instance(&h, 4, true).unwrap());
        assert_ne!(a, g.instance(&h, 5, true).unwrap());
        let other = BodyGenerator::new(GeneratorKind::NestedPair, 10, 10);
        assert_ne!(a, other.instance(&h, 4, true).unwrap());
    }

    #[test]
    fn h_symmetric_bodies_are_symmetric() {
        let tol = ToleranceConfig::default();
        for (n, axes) in [(2, vec![0]), (3, vec![0]), (3, vec![0, 1]), (3, vec![])] {
            let h = Subspace::coordinate(n, &axes).unwrap();
            let g = BodyGenerator::new(GeneratorKind::HSymmetric, 1, 5);
            for t in 0..5 {
                let Instance::Body(k) = g.instance(&h, t, true).unwrap() else { panic!() };
                let d = crate::geometry::hausdorff_distance(&k, &k.reflect(&h).unwrap(), &tol).unwrap();
                assert!(d < 1e-12);
            }
        }
    }

    #[test]
    fn translations_are_orthogonal() {
        let h = Subspace::line(Vector::new3(1.0, 2.0, 2.0)).unwrap();
        let g = BodyGenerator::new(GeneratorKind::TranslatedHSymmetric, 2, 5);
        for t in 0..5 {
            let Instance::Translated { shift, .. } = g.instance(&h, t, true).unwrap() else { panic!() };
            assert!(h.project_point(&shift).norm() < 1e-12);
        }
    }

    #[test]
    fn cylinders_in_polytope_form() {
        let h = Subspace::coordinate(3, &[0, 1]).unwrap();
        let g = BodyGenerator::new(GeneratorKind::SphericalCylinder, 3, 2);
        assert!(matches!(g.instance(&h, 0, false).unwrap(), Instance::Body(ConvexBody::Revolution(_))));
        assert!(matches!(g.instance(&h, 0, true).unwrap(), Instance::Body(ConvexBody::Polytope(_))));
    }
}
