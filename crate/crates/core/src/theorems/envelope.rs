//! Envelopes of orbit families through a fixed point, and a tangency oracle
//! that works from the envelope's equation alone.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::square;
use crate::orbit::{fit, KeplerOrbit, OrbitClass, PlanePoint, SAMPLE_MARGIN};

/// Parabola enveloping the orbits through `(x₁, 0)` with minor axis `B`:
/// `y² = 4p(x + p)` with `p = B²/(4x₁)`.
pub fn envelope_minor_axis(minor_axis: f64, x1: f64) -> Result<KeplerOrbit> {
    if !(minor_axis > 0.0 && x1 > 0.0) {
        return Err(Error::InvalidArgument(format!("B = {minor_axis}, x1 = {x1}")));
    }
    let p = minor_axis * minor_axis / (4.0 * x1);
    KeplerOrbit::new(-0.5 / p, 0.0, 0.5 / p)
}

/// The member of the minor-axis family through `(x₁, 0)` with dual `b`
/// coordinate `b`.
pub fn minor_axis_member(minor_axis: f64, x1: f64, b: f64) -> Result<KeplerOrbit> {
    if !(minor_axis > 0.0 && x1 > 0.0) {
        return Err(Error::InvalidArgument(format!("B = {minor_axis}, x1 = {x1}")));
    }
    let c = 0.5 * x1 * (1.0 / (x1 * x1) + b * b + 4.0 / (minor_axis * minor_axis));
    KeplerOrbit::new(1.0 / x1 - c, b, c)
}

/// Ellipse enveloping the energy-`E` orbits through `(x₀, 0)`; dual
/// `(−1/(2p), 0, 1/(2p) − E)` with `p = (1 + Ex₀)/(x₀E²)`.
pub fn envelope_energy(e: f64, x0: f64) -> Result<KeplerOrbit> {
    if !(e < 0.0) {
        return Err(Error::InvalidArgument(format!("energy {e} must be negative")));
    }
    if !(x0 > 0.0) {
        return Err(Error::InvalidArgument(format!("x0 = {x0} must be positive")));
    }
    let value = 1.0 + e * x0;
    if value <= 0.0 {
        return Err(Error::OutsideHillRegion { value });
    }
    let p = value / (x0 * e * e);
    KeplerOrbit::new(-0.5 / p, 0.0, 0.5 / p - e)
}

/// The energy-`E` orbit through `(x₀, 0)` with dual `b` coordinate `b`.
pub fn energy_member(e: f64, x0: f64, b: f64) -> Result<KeplerOrbit> {
    let value = 1.0 + e * x0;
    if !(x0 > 0.0) || value <= 0.0 {
        return Err(Error::OutsideHillRegion { value });
    }
    let c = (1.0 / (x0 * x0) + b * b) * x0 / (2.0 * value);
    KeplerOrbit::new(1.0 / x0 - c, b, c)
}

/// The focus of an ellipse other than the origin.
pub fn second_focus(o: &KeplerOrbit) -> Result<PlanePoint> {
    if o.class() != OrbitClass::Ellipse {
        return Err(Error::NotEllipse);
    }
    let semi_major = o.geometry().semi_major.expect("ellipse has a semi-major axis");
    let d = 2.0 * semi_major * o.eccentricity();
    let (s, c) = o.pericenter_angle().sin_cos();
    Ok(PlanePoint::new(-d * c, -d * s))
}

/// Lines `Y = ±k` enveloping the centered ellipses through `(1, 0)` that
/// enclose area `Δ`, so `k = Δ/π`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HookeEnvelope {
    pub k: f64,
}

pub fn envelope_hooke(area: f64) -> Result<HookeEnvelope> {
    if !(area > 0.0) {
        return Err(Error::InvalidArgument(format!("area {area} must be positive")));
    }
    Ok(HookeEnvelope { k: area / PI })
}

impl HookeEnvelope {
    /// The member `t ↦ (cos t + s k sin t, k sin t)`: the shear by `s` of the
    /// axis-aligned member.
    pub fn member(&self, shear: f64, t: f64) -> PlanePoint {
        let (s, c) = t.sin_cos();
        PlanePoint::new(c + shear * self.k * s, self.k * s)
    }

    /// Tangency of a member to the upper line: `k − y(t)` along the member.
    pub fn tangency(&self, shear: f64) -> Tangency {
        tangency_profile(|t| self.k - self.member(shear, t).y, 0.0, 2.0 * PI)
    }

    /// The Kepler orbit obtained by squaring a member, recovered by fitting.
    pub fn squared_member(&self, shear: f64) -> Result<KeplerOrbit> {
        let pts: Vec<PlanePoint> = (0..16).map(|i| square(self.member(shear, 2.0 * PI * i as f64 / 16.0))).collect();
        fit(&pts)?.orbit().ok_or(Error::NotEllipse)
    }

    /// Image of the lines under squaring: the parabola enveloping the Kepler
    /// orbits through `(1, 0)` with minor axis `2k`.
    pub fn squared_envelope(&self) -> Result<KeplerOrbit> {
        envelope_minor_axis(2.0 * self.k, 1.0)
    }
}

/// Contact data of a candidate envelope along a family member.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tangency {
    /// Parameter of the point of closest approach.
    pub at: f64,
    /// `|h|` at that point.
    pub residual: f64,
    /// Whether `h` takes both signs away from the contact.
    pub crosses: bool,
}

impl Tangency {
    pub fn is_tangent(&self, tol: f64) -> bool {
        self.residual <= tol && !self.crosses
    }
}

const TANGENCY_GRID: usize = 4096;
/// Values of `h` within this band do not count as a sign.
const SIGN_BAND: f64 = 1e-9;

fn tangency_profile<F: Fn(f64) -> f64>(h: F, start: f64, len: f64) -> Tangency {
    let n = TANGENCY_GRID;
    let ts: Vec<f64> = (0..=n).map(|i| start + len * i as f64 / n as f64).collect();
    let hs: Vec<f64> = ts.iter().map(|&t| h(t)).collect();
    let crosses = hs.iter().any(|&v| v > SIGN_BAND) && hs.iter().any(|&v| v < -SIGN_BAND);
    let i = (0..=n).min_by(|&i, &j| hs[i].abs().total_cmp(&hs[j].abs())).expect("grid is nonempty");
    let lo = ts[i.saturating_sub(1)];
    let hi = ts[(i + 1).min(n)];
    let at = golden_min(|t| h(t).abs(), lo, hi);
    Tangency { at, residual: h(at).abs(), crosses }
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..100 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        x1
    } else {
        x2
    }
}

/// `h(θ) = a x + b y + c r − 1` of `envelope`, evaluated along `member` (on
/// its valid arc). Tangency is a zero of `h` where `h` keeps its sign.
pub fn tangency(member: &KeplerOrbit, envelope: &KeplerOrbit) -> Tangency {
    let (start, len) = member.valid_arc(SAMPLE_MARGIN);
    let h = |theta: f64| envelope.rho(theta) / member.rho(theta) - 1.0;
    tangency_profile(h, start, len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::Membership;

    #[test]
    fn minor_axis_envelope_formula() {
        let p = envelope_minor_axis(2.0, 1.0).unwrap();
        assert_eq!((p.a(), p.b(), p.c()), (-0.5, 0.0, 0.5));
        assert_eq!(p.class(), OrbitClass::Parabola);
        for y in [-3.0, 0.0, 1.5] {
            let x = y * y / 4.0 - 1.0;
            assert!(p.residual(PlanePoint::new(x, y)).abs() < 1e-14);
        }
    }

    #[test]
    fn minor_axis_members_touch_the_parabola() {
        let env = envelope_minor_axis(2.0, 1.0).unwrap();
        for i in 0..20 {
            let b = -2.0 + 0.2 * i as f64;
            let m = minor_axis_member(2.0, 1.0, b).unwrap();
            assert_eq!(m.contains(PlanePoint::new(1.0, 0.0), 1e-12), Membership::OnAttractive);
            assert!((-m.dual().norm2() - 1.0).abs() < 1e-12, "minor axis 2");
            let t = tangency(&m, &env);
            assert!(t.is_tangent(1e-7), "b = {b}: {t:?}");
        }
    }

    #[test]
    fn energy_envelope_worked_case() {
        let env = envelope_energy(-0.5, 1.0).unwrap();
        assert_eq!((env.a(), env.b(), env.c()), (-0.25, 0.0, 0.75));
        assert!((env.eccentricity() - 1.0 / 3.0).abs() < 1e-15);
        assert!((env.geometry().semi_major.unwrap() - 1.5).abs() < 1e-15);
        let f = second_focus(&env).unwrap();
        assert!(f.dist(PlanePoint::new(1.0, 0.0)) < 1e-9);
    }

    #[test]
    fn energy_members_touch_the_envelope() {
        let (e, x0) = (-0.5, 1.0);
        let env = envelope_energy(e, x0).unwrap();
        for i in 0..20 {
            let b = -1.0 + 0.1 * i as f64;
            let m = energy_member(e, x0, b).unwrap();
            assert!((m.energy() - e).abs() < 1e-12);
            assert!(tangency(&m, &env).is_tangent(1e-7));
        }
    }

    #[test]
    fn energy_envelope_domain() {
        assert_eq!(envelope_energy(-0.5, 2.0), Err(Error::OutsideHillRegion { value: 0.0 }));
        assert!(envelope_energy(0.5, 1.0).is_err());
        // p grows without bound and the envelope tends to the Hill circle r = 1/|E|.
        let near = envelope_energy(-0.5, 1e-6).unwrap();
        assert!(near.a().abs() < 1e-6 && (near.c() - 0.5).abs() < 1e-6);
    }

    #[test]
    fn crossing_orbit_is_not_tangent() {
        let env = envelope_minor_axis(2.0, 1.0).unwrap();
        let t = tangency(&KeplerOrbit::new(0.0, 0.0, 0.5).unwrap(), &env);
        assert!(t.crosses);
    }

    #[test]
    fn hooke_lines_and_shears() {
        let h = envelope_hooke(PI).unwrap();
        assert_eq!(h.k, 1.0);
        for s in [-2.0, 0.0, 0.7, 3.0] {
            assert!(h.tangency(s).is_tangent(1e-12));
            assert_eq!(h.member(s, 0.0), PlanePoint::new(1.0, 0.0));
        }
    }

    #[test]
    fn squared_hooke_family_touches_the_squared_lines() {
        let h = envelope_hooke(0.8 * PI).unwrap();
        let env = h.squared_envelope().unwrap();
        let line = crate::maps::square_line_image(0.0, 1.0 / h.k).unwrap();
        assert!((line.dual() - env.dual()).euclid_norm2().sqrt() < 1e-12);
        for s in [-1.5, -0.4, 0.0, 0.9, 2.0] {
            let m = h.squared_member(s).unwrap();
            assert!((-m.dual().norm2() - 1.0 / (h.k * h.k)).abs() < 1e-9, "minor axis 2k");
            assert!(tangency(&m, &env).is_tangent(1e-7));
        }
    }
}
