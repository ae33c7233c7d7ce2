//! Closed-form cases and canonical test bodies.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{contains, ConvexBody, DirectionGrid, RevolutionProfile, Subspace, SupportSample, ToleranceConfig, VPolytope, Vector};
use crate::symmetrize::{minkowski, schwarz};

/// Volume of the unit ball in ℝᵐ.
pub fn kappa(m: usize) -> f64 {
    match m {
        0 => 1.0,
        1 => 2.0,
        _ => kappa(m - 2) * 2.0 * PI / m as f64,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlaschkeConeResult {
    pub n: usize,
    pub radius_a: f64,
    pub top_radius_h: f64,
    pub height: f64,
    /// Largest residual of the balance equations the parameters solve.
    pub residual: f64,
}

/// Blaschke body of the unit cone `Tⁿ`: an o-symmetric truncated double cone.
pub fn blaschke_cone(n: usize) -> Result<BlaschkeConeResult> {
    if n < 3 {
        return Err(Error::Unsupported("the cone computation needs n ≥ 3".into()));
    }
    let m = (n - 1) as f64;
    let a = 1.0;
    let h = 2f64.powf(-1.0 / m);
    let height = 2.0 * (a - h);
    let k = kappa(n - 1);
    let top = k * h.powf(m) - k / 2.0;
    let curved = 2f64.sqrt() * (a.powf(m) - h.powf(m)) * k - 2f64.sqrt() * k / 2.0;
    if !(height < 1.0 && 0.0 < h && h < a) {
        return Err(Error::Degenerate(format!("cone parameters out of range for n = {n}")));
    }
    Ok(BlaschkeConeResult { n, radius_a: a, top_radius_h: h, height, residual: top.abs().max(curved.abs()) })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlaschkePrismResult {
    pub n: usize,
    pub width_b: f64,
    pub radius_a: f64,
    pub top_radius_h: f64,
    pub residual: f64,
}

/// Width in direction `e₁` of the Blaschke body of the prism `[−½,½] × Tⁿ⁻¹`.
pub fn blaschke_prism(n: usize) -> Result<BlaschkePrismResult> {
    if n < 3 {
        return Err(Error::Unsupported("the prism computation needs n ≥ 3".into()));
    }
    let (m1, m2) = ((n - 1) as f64, (n - 2) as f64);
    let b = 2f64.powf(-1.0 / m1) * (2f64.powf(m1 / m2) - 1.0).powf(m2 / m1);
    // solve the balance equations independently of the closed form
    let h = (2.0 * (2f64.powf(m1 / m2) - 1.0)).powf(-1.0 / m1);
    let a = 2f64.powf(1.0 / m2) * h;
    let residual = [
        h.powf(m2) * b - 0.5,
        2.0 * (a.powf(m1) - h.powf(m1)) - 1.0,
        2.0 * (a.powf(m2) - h.powf(m2)) * b - 1.0,
    ]
    .iter()
    .fold(0.0_f64, |r, e| r.max(e.abs()));
    Ok(BlaschkePrismResult { n, width_b: b, radius_a: a, top_radius_h: h, residual })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConeWitness {
    pub s: f64,
    pub cylinder_height: f64,
    pub cone_symmetral_height: f64,
    pub violation: bool,
}

/// The inscribed cylinder of base radius `s` in the 3-D unit cone is its own
/// Blaschke body up to translation; it is too tall to fit in the cone's.
pub fn blaschke_cone_nonmonotonicity_witness(s: f64) -> Result<ConeWitness> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::InvalidInput(format!("s must lie in (0, 1), got {s}")));
    }
    let w = 1.0 - s;
    let cone = blaschke_cone(3)?.height;
    Ok(ConeWitness { s, cylinder_height: w, cone_symmetral_height: cone, violation: w > cone })
}

/// Radius of the Schwarz symmetral of `[−1,1]ⁿ⁻¹ × [−a,a]` about
/// `span(e₁,…,eᵢ)`: `κ_{n−i} rⁿ⁻ⁱ = 2ⁿ⁻ⁱ a`.
pub fn schwarz_box_radius(n: usize, i: usize, a: f64) -> f64 {
    let k = n - i;
    (2f64.powi(k as i32) * a / kappa(k)).powf(1.0 / k as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchwarzBoxResult {
    pub a: f64,
    pub closed_form_radius: f64,
    pub computed_radius: f64,
    pub minkowski_contains_schwarz: bool,
}

/// Numerical Schwarz and Minkowski symmetrals of `[−1,1]² × [−a,a]` about the
/// `e₁`-axis.
pub fn schwarz_box(a: f64, tol: &ToleranceConfig) -> Result<SchwarzBoxResult> {
    if !(a > 0.0) {
        return Err(Error::InvalidInput(format!("a must be positive, got {a}")));
    }
    let k: ConvexBody = make_box(&[2.0, 2.0, 2.0 * a])?.into();
    let h = Subspace::coordinate(3, &[0])?;
    let s = schwarz(&k, &h, tol.slice_count)?;
    let computed = s.stations().iter().fold(0.0_f64, |m, st| m.max(st.1));
    let m = minkowski(&k, &h, tol)?;
    let s: ConvexBody = s.into();
    let inside = contains(&m, &s, tol.inclusion_abs(m.circumradius()), tol)?;
    Ok(SchwarzBoxResult {
        a,
        closed_form_radius: schwarz_box_radius(3, 1, a),
        computed_radius: computed,
        minkowski_contains_schwarz: inside,
    })
}

/// `D_r(x) + s(Bⁿ ∩ H^⊥)`: a rectangle in the plane, a body of revolution in
/// space, and a sampled ball when `H = {o}`.
pub fn make_spherical_cylinder(h: &Subspace, x: &Vector, r: f64, s: f64) -> Result<ConvexBody> {
    let n = h.ambient_dim();
    if !(r > 0.0 && s > 0.0) {
        return Err(Error::InvalidInput("spherical cylinders need r, s > 0".into()));
    }
    if x.dim() != n || !h.contains_vector(x, 1e-12) {
        return Err(Error::InvalidInput("the center must lie in H".into()));
    }
    if h.dim() == 0 {
        let grid = DirectionGrid::shared(n, ToleranceConfig::default().hausdorff_grid(n))?;
        return Ok(SupportSample::ball(grid, x, s).into());
    }
    if h.dim() == n {
        return Err(Error::InvalidSubspace("H must be a proper subspace".into()));
    }
    match (n, h.dim()) {
        (2, 1) => {
            let e = h.basis()[0];
            let u = h.normal().expect("line in the plane");
            let pts: Vec<Vector> = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]
                .iter()
                .map(|&(p, q)| *x + e * (p * r) + u * (q * s))
                .collect();
            Ok(VPolytope::hull(&pts)?.into())
        }
        (3, 1) => {
            let t = x.dot(&h.basis()[0]);
            Ok(RevolutionProfile::cylinder(h.clone(), s, t - r, t + r)?.into())
        }
        _ => {
            let axis = h.complement();
            Ok(RevolutionProfile::with_offset(axis, *x, vec![(-s, r), (s, r)])?.into())
        }
    }
}

/// Unit-height cone with base radius 1, axis `eₙ` and centroid at the origin.
pub fn make_cone(n: usize) -> Result<ConvexBody> {
    match n {
        2 => Ok(VPolytope::hull(&[
            Vector::new2(-1.0, -1.0 / 3.0),
            Vector::new2(1.0, -1.0 / 3.0),
            Vector::new2(0.0, 2.0 / 3.0),
        ])?
        .into()),
        3 => Ok(RevolutionProfile::new(Subspace::coordinate(3, &[2])?, vec![(-0.25, 1.0), (0.75, 0.0)])?.into()),
        _ => Err(Error::Unsupported(format!("cones in dimension {n}"))),
    }
}

/// Origin-centered box with the given side lengths.
pub fn make_box(sides: &[f64]) -> Result<VPolytope> {
    let n = sides.len();
    if !(n == 2 || n == 3) || sides.iter().any(|s| !(*s > 0.0)) {
        return Err(Error::InvalidInput("boxes need 2 or 3 positive side lengths".into()));
    }
    let pts: Vec<Vector> = (0..1usize << n)
        .map(|bits| {
            let c: Vec<f64> = (0..n)
                .map(|k| if bits >> k & 1 == 1 { 0.5 * sides[k] } else { -0.5 * sides[k] })
                .collect();
            Vector::from_slice(&c).expect("2 or 3 coordinates")
        })
        .collect();
    VPolytope::hull(&pts)
}

/// Uniform point in the unit ball of ℝⁿ.
pub fn random_in_ball<R: Rng>(n: usize, rng: &mut R) -> Vector {
    loop {
        let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let v = Vector::from_slice(&c).expect("2 or 3 coordinates");
        if v.norm_squared() <= 1.0 {
            return v;
        }
    }
}

/// Hull of `m` uniform points in the unit ball, deterministic per seed.
pub fn make_random_polytope(n: usize, m: usize, seed: u64) -> Result<VPolytope> {
    if !(n == 2 || n == 3) {
        return Err(Error::Unsupported(format!("random polytopes in dimension {n}")));
    }
    if m < n + 1 {
        return Err(Error::InvalidInput(format!("need at least {} points, got {m}", n + 1)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vector> = (0..m).map(|_| random_in_ball(n, &mut rng)).collect();
    VPolytope::hull(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_volumes() {
        assert!((kappa(2) - PI).abs() < 1e-15);
        assert!((kappa(3) - 4.0 * PI / 3.0).abs() < 1e-15);
        assert!((kappa(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn cone_numbers() {
        let c = blaschke_cone(3).unwrap();
        assert!((c.height - 0.585786).abs() < 5e-7);
        assert!((c.top_radius_h - 0.707107).abs() < 5e-7);
        let mut last = 1.0;
        for n in 3..=10 {
            let c = blaschke_cone(n).unwrap();
            assert!(c.residual <= 1e-12);
            assert!(c.height < last);
            last = c.height;
        }
        assert!(matches!(blaschke_cone(2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn prism_numbers() {
        // substitution oracle for n = 3: h = 1/√6, a = 2h, b = 1/(2h)
        let p = blaschke_prism(3).unwrap();
        assert!((p.width_b - 1.5f64.sqrt()).abs() < 1e-15);
        assert!((p.top_radius_h - 1.0 / 6f64.sqrt()).abs() < 1e-15);
        for n in 3..=10 {
            let p = blaschke_prism(n).unwrap();
            assert!(p.residual <= 1e-12, "n = {n}: {}", p.residual);
            assert!(p.width_b > 1.0);
        }
    }

    #[test]
    fn witness_threshold() {
        assert!(blaschke_cone_nonmonotonicity_witness(0.2).unwrap().violation);
        assert!(!blaschke_cone_nonmonotonicity_witness(0.5).unwrap().violation);
        assert!(blaschke_cone_nonmonotonicity_witness(1e-9).unwrap().violation);
        for s in [0.0, 1.0, -0.1, f64::NAN] {
            assert!(matches!(blaschke_cone_nonmonotonicity_witness(s), Err(Error::InvalidInput(_))));
        }
    }

    #[test]
    fn cylinders_and_boxes() {
        let h = Subspace::coordinate(2, &[0]).unwrap();
        let sq = make_spherical_cylinder(&h, &Vector::zeros(2), 1.0, 1.0).unwrap();
        let b = make_box(&[2.0, 2.0]).unwrap();
        assert_eq!(sq.as_polytope().unwrap(), &b);
        let h3 = Subspace::coordinate(3, &[0, 1]).unwrap();
        let disk = make_spherical_cylinder(&h3, &Vector::new3(0.5, 0.0, 0.0), 1.0, 0.3).unwrap();
        assert!((disk.volume() - PI * 0.6).abs() < 1e-14);
        assert!((disk.support(&Vector::new3(1.0, 0.0, 0.0)) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn cone_centroid() {
        let c = make_cone(3).unwrap();
        let r = c.as_revolution().unwrap();
        // volume-weighted mean height of the disks vanishes
        let st = r.stations();
        let (t0, t1) = (st[0].0, st[1].0);
        let mean: f64 = (0..10000)
            .map(|k| {
                let t = t0 + (t1 - t0) * (k as f64 + 0.5) / 10000.0;
                let rad = r.radius_at(t).unwrap();
                t * rad * rad * (t1 - t0) / 10000.0
            })
            .sum();
        assert!(mean.abs() < 1e-6);
    }

    #[test]
    fn random_polytopes_are_deterministic() {
        let a = make_random_polytope(2, 10, 42).unwrap();
        let b = make_random_polytope(2, 10, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, make_random_polytope(2, 10, 43).unwrap());
        assert!(a.max_norm() <= 1.0);
        assert!(matches!(make_random_polytope(3, 3, 1), Err(Error::InvalidInput(_))));
    }
}
