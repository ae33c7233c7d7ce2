use std::f64::consts::PI;

use super::polytope::VPolytope;
use super::subspace::Subspace;
use super::vector::Vector;
use crate::error::{Error, Result};

/// A body of revolution in ℝ³: the union of disks of radius `r(t)` centered
/// at `offset + t·a` orthogonal to the unit axis direction `a`, with `r` the
/// piecewise-linear concave function through the stations.
#[derive(Clone, Debug, PartialEq)]
pub struct RevolutionProfile {
    axis: Subspace,
    offset: Vector,
    stations: Vec<(f64, f64)>,
}

impl RevolutionProfile {
    /// Builds a profile about a line through the origin; stations are sorted
    /// and the radius function is replaced by its concave envelope.
    pub fn new(axis: Subspace, stations: Vec<(f64, f64)>) -> Result<Self> {
        Self::with_offset(axis, Vector::zeros(3), stations)
    }

    /// Profile about the line `offset + H` (`offset` is made orthogonal to `H`).
    pub fn with_offset(axis: Subspace, offset: Vector, stations: Vec<(f64, f64)>) -> Result<Self> {
        Ok(Self::with_correction(axis, offset, stations)?.0)
    }

    /// Also returns the largest increase made by the concave envelope.
    pub fn with_correction(axis: Subspace, offset: Vector, stations: Vec<(f64, f64)>) -> Result<(Self, f64)> {
        if axis.ambient_dim() != 3 || axis.dim() != 1 {
            return Err(Error::Unsupported("bodies of revolution need a line in ℝ³".into()));
        }
        if stations.is_empty() {
            return Err(Error::EmptyInput);
        }
        if stations.iter().any(|&(t, r)| !t.is_finite() || !r.is_finite() || r < 0.0) {
            return Err(Error::InvalidInput("stations need finite t and r ≥ 0".into()));
        }
        let a = axis.basis()[0];
        let offset = offset - a * offset.dot(&a);
        let (stations, correction) = concavify(stations);
        Ok((Self { axis, offset, stations }, correction))
    }

    /// Solid cylinder `{|x_⊥| ≤ r, t0 ≤ t ≤ t1}` about `axis`.
    pub fn cylinder(axis: Subspace, r: f64, t0: f64, t1: f64) -> Result<Self> {
        Self::new(axis, vec![(t0, r), (t1, r)])
    }

    pub fn axis(&self) -> &Subspace {
        &self.axis
    }

    pub fn direction(&self) -> Vector {
        self.axis.basis()[0]
    }

    pub fn offset(&self) -> Vector {
        self.offset
    }

    pub fn stations(&self) -> &[(f64, f64)] {
        &self.stations
    }

    pub fn t_range(&self) -> (f64, f64) {
        (self.stations[0].0, self.stations[self.stations.len() - 1].0)
    }

    /// Radius at axis coordinate `t`, or `None` outside the profile.
    pub fn radius_at(&self, t: f64) -> Option<f64> {
        let (t0, t1) = self.t_range();
        if t < t0 || t > t1 {
            return None;
        }
        let k = self.stations.partition_point(|s| s.0 < t);
        if k == 0 {
            return Some(self.stations[0].1);
        }
        let (ta, ra) = self.stations[k - 1];
        let (tb, rb) = self.stations[k.min(self.stations.len() - 1)];
        if tb <= ta {
            return Some(ra.max(rb));
        }
        Some(ra + (rb - ra) * (t - ta) / (tb - ta))
    }

    /// Same body described about the same axis line; used to compare profiles.
    pub fn same_axis(&self, other: &Self) -> bool {
        self.axis.same_as(&other.axis) && self.offset.distance(&other.offset) <= 1e-12 * (1.0 + self.offset.norm())
    }

    pub fn support(&self, u: &Vector) -> f64 {
        let a = self.direction();
        let ua = u.dot(&a);
        let up = (*u - a * ua).norm();
        let best = self.stations.iter().fold(f64::NEG_INFINITY, |m, &(t, r)| m.max(t * ua + r * up));
        best + u.dot(&self.offset)
    }

    /// `π ∫ r(t)² dt`, exact for the piecewise-linear profile.
    pub fn volume(&self) -> f64 {
        self.stations
            .windows(2)
            .map(|w| {
                let ((t0, r0), (t1, r1)) = (w[0], w[1]);
                PI * (t1 - t0) * (r0 * r0 + r0 * r1 + r1 * r1) / 3.0
            })
            .sum()
    }

    pub fn surface_area(&self) -> f64 {
        let (first, last) = (self.stations[0].1, self.stations[self.stations.len() - 1].1);
        let lateral: f64 = self
            .stations
            .windows(2)
            .map(|w| {
                let ((t0, r0), (t1, r1)) = (w[0], w[1]);
                PI * (r0 + r1) * ((t1 - t0).powi(2) + (r1 - r0).powi(2)).sqrt()
            })
            .sum();
        lateral + PI * (first * first + last * last)
    }

    /// Closed boundary of the meridian half-section, from `(t0, 0)` along the
    /// profile to `(t1, 0)`.
    fn meridian(&self) -> Vec<(f64, f64)> {
        let mut pts = Vec::with_capacity(self.stations.len() + 2);
        let (t0, t1) = self.t_range();
        if self.stations[0].1 > 0.0 {
            pts.push((t0, 0.0));
        }
        pts.extend_from_slice(&self.stations);
        if self.stations[self.stations.len() - 1].1 > 0.0 {
            pts.push((t1, 0.0));
        }
        pts
    }

    /// First intrinsic volume: each frustum contributes its axial length and
    /// each ridge circle of radius `r` with turning angle `φ` contributes `r·φ`.
    pub fn intrinsic_volume_1(&self) -> f64 {
        let m = self.meridian();
        if m.len() == 1 {
            return 0.0;
        }
        let (t0, t1) = self.t_range();
        let mut total = t1 - t0;
        let normal = |p: (f64, f64), q: (f64, f64)| {
            let (dt, dr) = (q.0 - p.0, q.1 - p.1);
            let len = (dt * dt + dr * dr).sqrt();
            (-dr / len, dt / len)
        };
        let segs: Vec<((f64, f64), (f64, f64))> = m
            .windows(2)
            .filter(|w| (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1) > 0.0)
            .map(|w| (w[0], w[1]))
            .collect();
        for w in segs.windows(2) {
            let (n0, n1) = (normal(w[0].0, w[0].1), normal(w[1].0, w[1].1));
            let ang = (n0.0 * n1.1 - n0.1 * n1.0).atan2(n0.0 * n1.0 + n0.1 * n1.1).abs();
            total += w[0].1 .1 * ang;
        }
        total
    }

    pub fn intrinsic_volume(&self, j: usize) -> Result<f64> {
        match j {
            0 => Ok(1.0),
            1 => Ok(self.intrinsic_volume_1()),
            2 => Ok(0.5 * self.surface_area()),
            3 => Ok(self.volume()),
            _ => Err(Error::Unsupported(format!("intrinsic volume V_{j}"))),
        }
    }

    /// Image under an orthogonal reflection in `h`.
    pub fn reflect(&self, h: &Subspace) -> Result<Self> {
        let a = h.reflect_point(&self.direction());
        Ok(Self {
            axis: Subspace::line(a)?,
            offset: h.reflect_point(&self.offset),
            stations: self.stations.clone(),
        })
    }

    pub fn translate(&self, v: &Vector) -> Self {
        let a = self.direction();
        let along = v.dot(&a);
        Self {
            axis: self.axis.clone(),
            offset: self.offset + (*v - a * along),
            stations: self.stations.iter().map(|&(t, r)| (t + along, r)).collect(),
        }
    }

    pub fn circumradius(&self) -> f64 {
        let (t0, t1) = self.t_range();
        let rmax = self.stations.iter().fold(0.0_f64, |m, s| m.max(s.1));
        (0.5 * (t1 - t0)).hypot(rmax)
    }

    /// Largest distance from the origin.
    pub fn max_norm(&self) -> f64 {
        let o = self.offset.norm();
        self.stations.iter().fold(0.0_f64, |m, &(t, r)| m.max(t.hypot(o + r)))
    }

    /// Inscribed polytope with `segments` vertices on every station circle.
    pub fn to_polytope(&self, segments: usize) -> Result<VPolytope> {
        let a = self.direction();
        let comp = self.axis.complement();
        let (e1, e2) = (comp.basis()[0], comp.basis()[1]);
        let mut pts = Vec::new();
        for &(t, r) in &self.stations {
            let c = self.offset + a * t;
            if r == 0.0 {
                pts.push(c);
                continue;
            }
            for k in 0..segments {
                let phi = 2.0 * PI * k as f64 / segments as f64;
                pts.push(c + (e1 * phi.cos() + e2 * phi.sin()) * r);
            }
        }
        VPolytope::hull(&pts)
    }
}

/// Upper concave envelope of `(t, r)` points over their `t`-range. Returns the
/// envelope vertices and the largest lift applied to an input point.
pub fn concavify(mut pts: Vec<(f64, f64)>) -> (Vec<(f64, f64)>, f64) {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
    pts.dedup_by(|b, a| a.0 == b.0);
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            let scale = (p.0 - o.0).abs() + (p.1 - o.1).abs();
            if cross >= -1e-14 * scale * scale {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut correction = 0.0_f64;
    let mut k = 0;
    for &(t, r) in &pts {
        while k + 1 < hull.len() && hull[k + 1].0 < t {
            k += 1;
        }
        let env = if k + 1 < hull.len() && hull[k + 1].0 > hull[k].0 {
            let (a, b) = (hull[k], hull[k + 1]);
            a.1 + (b.1 - a.1) * (t - a.0) / (b.0 - a.0)
        } else {
            hull[k].1
        };
        correction = correction.max(env - r);
    }
    (hull, correction)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axis() -> Subspace {
        Subspace::coordinate(3, &[0]).unwrap()
    }

    #[test]
    fn cylinder_measures() {
        let c = RevolutionProfile::cylinder(axis(), 1.0, 0.0, 1.0).unwrap();
        assert!((c.volume() - PI).abs() < 1e-14);
        assert!((c.intrinsic_volume_1() - (1.0 + PI)).abs() < 1e-14);
        assert!((c.surface_area() - 4.0 * PI).abs() < 1e-14);
        assert!((c.support(&Vector::new3(0.0, 1.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((c.support(&Vector::new3(1.0, 0.0, 0.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn disk_and_segment() {
        let d = RevolutionProfile::new(axis(), vec![(0.0, 1.0)]).unwrap();
        assert!((d.intrinsic_volume_1() - PI).abs() < 1e-14);
        assert_eq!(d.volume(), 0.0);
        let s = RevolutionProfile::new(axis(), vec![(-1.0, 0.0), (2.0, 0.0)]).unwrap();
        assert!((s.intrinsic_volume_1() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn cone_mean_width_matches_polytope_limit() {
        let cone = RevolutionProfile::new(axis(), vec![(0.0, 1.0), (1.0, 0.0)]).unwrap();
        let poly = cone.to_polytope(2000).unwrap();
        assert!((cone.intrinsic_volume_1() - poly.intrinsic_volume_1()).abs() < 1e-5);
        assert!((cone.volume() - PI / 3.0).abs() < 1e-14);
    }

    #[test]
    fn concavify_lifts_dents() {
        let (env, corr) = concavify(vec![(0.0, 0.0), (1.0, 0.5), (2.0, 2.0), (4.0, 0.0)]);
        assert_eq!(env, vec![(0.0, 0.0), (2.0, 2.0), (4.0, 0.0)]);
        assert!((corr - 0.5).abs() < 1e-15);
    }

    #[test]
    fn translate_and_reflect() {
        let c = RevolutionProfile::cylinder(axis(), 1.0, 0.0, 1.0).unwrap();
        let t = c.translate(&Vector::new3(1.0, 2.0, 0.0));
        assert!((t.support(&Vector::new3(0.0, 1.0, 0.0)) - 3.0).abs() < 1e-15);
        let h = Subspace::coordinate(3, &[1, 2]).unwrap();
        let r = c.reflect(&h).unwrap();
        assert!((r.support(&Vector::new3(-1.0, 0.0, 0.0)) - 1.0).abs() < 1e-15);
    }
}
