//! The minor-axis form of Lambert's theorem:
//! `B² sin²(Δu/2) = r₁₂² − (r₁ − r₂)²` for two points of an ellipse with minor
//! axis `B`, eccentric anomalies `u₁, u₂` and focal radii `r₁, r₂`.

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbit::{KeplerOrbit, OrbitClass, PlanePoint, Sheet};
use crate::symmetry::{exp, AlgebraElement};

/// Semi-axes and eccentricity of an ellipse.
fn ellipse_axes(o: &KeplerOrbit) -> Result<(f64, f64, f64)> {
    if o.class() != OrbitClass::Ellipse {
        return Err(Error::NotEllipse);
    }
    let gap = -o.dual().norm2();
    Ok((o.c() / gap, 1.0 / gap.sqrt(), o.eccentricity()))
}

/// Focus-centered point at eccentric anomaly `u`:
/// `(ā(cos u − e), b̄ sin u)` in the pericenter frame.
pub fn eccentric_point(o: &KeplerOrbit, u: f64) -> Result<PlanePoint> {
    let (semi_major, semi_minor, e) = ellipse_axes(o)?;
    let (s, c) = u.sin_cos();
    let (x, y) = (semi_major * (c - e), semi_minor * s);
    let (sr, cr) = o.pericenter_angle().sin_cos();
    Ok(PlanePoint::new(cr * x - sr * y, sr * x + cr * y))
}

/// Eccentric anomaly of a point on the ellipse, in `(−π, π]`.
pub fn eccentric_anomaly(o: &KeplerOrbit, p: PlanePoint) -> Result<f64> {
    let (semi_major, semi_minor, e) = ellipse_axes(o)?;
    let (sr, cr) = o.pericenter_angle().sin_cos();
    let (x, y) = (cr * p.x + sr * p.y, -sr * p.x + cr * p.y);
    Ok((y / semi_minor).atan2(x / semi_major + e))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambertSides {
    /// `B² sin²(Δu/2)`.
    pub lhs: f64,
    /// `r₁₂² − (r₁ − r₂)²`.
    pub rhs: f64,
    /// The minor axis `B`.
    pub minor_axis: f64,
}

impl LambertSides {
    /// `|lhs − rhs| / (1 + B²)`.
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs() / (1.0 + self.minor_axis * self.minor_axis)
    }
}

pub fn lambert_check(o: &KeplerOrbit, u1: f64, u2: f64) -> Result<LambertSides> {
    let (_, semi_minor, _) = ellipse_axes(o)?;
    let p1 = eccentric_point(o, u1)?;
    let p2 = eccentric_point(o, u2)?;
    Ok(sides_from_points(2.0 * semi_minor, p1, p2, u1, u2))
}

fn sides_from_points(minor_axis: f64, p1: PlanePoint, p2: PlanePoint, u1: f64, u2: f64) -> LambertSides {
    let half = (0.5 * (u1 - u2)).sin();
    let chord = p1.dist(p2);
    let dr = p1.r() - p2.r();
    LambertSides { lhs: minor_axis * minor_axis * half * half, rhs: chord * chord - dr * dr, minor_axis }
}

/// Exact sides for a rational dual triple and rational `(cos u, sin u)` pairs.
/// Uses `ā = c/(c² − a² − b²)`, `b̄² = 1/(c² − a² − b²)`, `ā²e² = ā²(a² + b²)/c²`.
pub fn lambert_check_exact(
    dual: [Rational64; 3],
    anomaly1: (Rational64, Rational64),
    anomaly2: (Rational64, Rational64),
) -> Result<(Rational64, Rational64)> {
    let [a, b, c] = dual;
    let gap = c * c - a * a - b * b;
    if c <= Rational64::zero() || gap <= Rational64::zero() {
        return Err(Error::NotEllipse);
    }
    for (cu, su) in [anomaly1, anomaly2] {
        if cu * cu + su * su != Rational64::one() {
            return Err(Error::InvalidArgument(format!("({cu}, {su}) is not on the unit circle")));
        }
    }
    let semi_major = c / gap;
    let semi_minor2 = Rational64::one() / gap;
    let focal2 = semi_major * semi_major * (a * a + b * b) / (c * c);
    let dcos = anomaly1.0 - anomaly2.0;
    let dsin = anomaly1.1 - anomaly2.1;
    let chord2 = semi_major * semi_major * dcos * dcos + semi_minor2 * dsin * dsin;
    let dr2 = focal2 * dcos * dcos;
    let two = Rational64::from_integer(2);
    let half2 = (Rational64::one() - anomaly1.0 * anomaly2.0 - anomaly1.1 * anomaly2.1) / two;
    let lhs = Rational64::from_integer(4) * semi_minor2 * half2;
    Ok((lhs, chord2 - dr2))
}

/// Carries two points of the ellipse along the plane flow of a Lorentz
/// generator (basis index 2, 3 or 4) for time `t` and returns the sides on
/// the image ellipse. The minor axis is unchanged by these flows.
pub fn lambert_transported(o: &KeplerOrbit, u1: f64, u2: f64, generator: usize, t: f64) -> Result<LambertSides> {
    if !(2..=4).contains(&generator) {
        return Err(Error::InvalidArgument(format!("generator {generator} is not a Lorentz generator")));
    }
    let g = exp(&AlgebraElement::basis(generator), t);
    let image = KeplerOrbit::from_dual(g.act_dual(o.dual())?)?;
    let (_, semi_minor, _) = ellipse_axes(&image)?;
    let q1 = g.act_plane(eccentric_point(o, u1)?, Sheet::Upper)?;
    let q2 = g.act_plane(eccentric_point(o, u2)?, Sheet::Upper)?;
    let v1 = eccentric_anomaly(&image, q1)?;
    let v2 = eccentric_anomaly(&image, q2)?;
    Ok(sides_from_points(2.0 * semi_minor, q1, q2, v1, v2))
}
