//! Kepler orbits as dual triples.
//!
//! The orbit `a x + b y + c r = 1` (with `r = √(x²+y²)`) is stored with
//! `c > 0`; `(a, b, c)` and `(a, b, −c)` cut the cone in the same pair of
//! branches. In polar form the attractive branch is `r = 1/ρ(θ)` with
//! `ρ(θ) = a cos θ + b sin θ + c`.

mod dynamics;
mod fit;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::MinkVec;

pub use dynamics::{newton_flow, FlowConfig, Trajectory, TrajectoryState};
pub use fit::{fit, Fit, FitShape};

/// Margin kept between sample points and the asymptotic directions of open orbits.
pub const SAMPLE_MARGIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub const fn new(x: f64, y: f64) -> Self {
        PlanePoint { x, y }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        PlanePoint::new(r * theta.cos(), r * theta.sin())
    }

    pub fn r(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn theta(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn dist(self, o: PlanePoint) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }
}

/// Sheet of the cone `x² + y² = z²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sheet {
    Upper,
    Lower,
}

impl Sheet {
    pub fn sign(self) -> f64 {
        match self {
            Sheet::Upper => 1.0,
            Sheet::Lower => -1.0,
        }
    }

    pub fn from_sign(s: f64) -> Self {
        if s < 0.0 {
            Sheet::Lower
        } else {
            Sheet::Upper
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ConePoint {
    pub fn cone_residual(self) -> f64 {
        (self.x * self.x + self.y * self.y - self.z * self.z).abs() / (self.z * self.z).max(f64::MIN_POSITIVE)
    }
}

pub fn lift(p: PlanePoint, sheet: Sheet) -> ConePoint {
    ConePoint { x: p.x, y: p.y, z: sheet.sign() * p.r() }
}

pub fn project(q: ConePoint) -> PlanePoint {
    PlanePoint::new(q.x, q.y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitClass {
    Ellipse,
    Parabola,
    Hyperbola,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    OnAttractive,
    OnRepelling,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conserved {
    pub eccentricity: f64,
    pub energy: f64,
    /// |M|; the sign is not determined by the curve.
    pub angular_momentum: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitGeometry {
    pub eccentricity: f64,
    /// Absent for parabolas. For hyperbolas this is the real semi-axis.
    pub semi_major: Option<f64>,
    /// Absent for parabolas. For hyperbolas this is the conjugate semi-axis.
    pub semi_minor: Option<f64>,
    pub latus_rectum: f64,
    pub pericenter_angle: f64,
    pub energy: f64,
    pub angular_momentum: f64,
}

/// A Kepler orbit in canonical dual coordinates (`c > 0`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTriple")]
pub struct KeplerOrbit {
    a: f64,
    b: f64,
    c: f64,
}

#[derive(Deserialize)]
struct RawTriple {
    a: f64,
    b: f64,
    c: f64,
}

impl TryFrom<RawTriple> for KeplerOrbit {
    type Error = Error;
    fn try_from(t: RawTriple) -> Result<Self> {
        KeplerOrbit::new(t.a, t.b, t.c)
    }
}

pub fn from_abc(a: f64, b: f64, c: f64) -> Result<KeplerOrbit> {
    KeplerOrbit::new(a, b, c)
}

impl KeplerOrbit {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite triple ({a}, {b}, {c})")));
        }
        if a == 0.0 && b == 0.0 && c == 0.0 {
            return Err(Error::ZeroTriple);
        }
        if c == 0.0 {
            return Err(Error::LineNotOrbit);
        }
        Ok(if c > 0.0 { KeplerOrbit { a, b, c } } else { KeplerOrbit { a, b, c: -c } })
    }

    pub fn from_dual(v: MinkVec) -> Result<Self> {
        KeplerOrbit::new(v.a, v.b, v.c)
    }

    /// Circular orbit of radius `r`.
    pub fn circle(r: f64) -> Result<Self> {
        KeplerOrbit::new(0.0, 0.0, 1.0 / r)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn dual(&self) -> MinkVec {
        MinkVec::new(self.a, self.b, self.c)
    }

    /// √(a² + b²).
    pub fn focal_norm(&self) -> f64 {
        self.a.hypot(self.b)
    }

    pub fn class(&self) -> OrbitClass {
        let n = self.dual().norm2();
        if n.abs() <= self.dual().null_tolerance() {
            OrbitClass::Parabola
        } else if n < 0.0 {
            OrbitClass::Ellipse
        } else {
            OrbitClass::Hyperbola
        }
    }

    pub fn eccentricity(&self) -> f64 {
        self.focal_norm() / self.c
    }

    pub fn energy(&self) -> f64 {
        self.dual().norm2() / (2.0 * self.c)
    }

    pub fn angular_momentum(&self) -> f64 {
        1.0 / self.c.sqrt()
    }

    pub fn conserved(&self) -> Conserved {
        Conserved {
            eccentricity: self.eccentricity(),
            energy: self.energy(),
            angular_momentum: self.angular_momentum(),
        }
    }

    pub fn pericenter_angle(&self) -> f64 {
        self.b.atan2(self.a)
    }

    pub fn pericenter_distance(&self) -> f64 {
        1.0 / (self.focal_norm() + self.c)
    }

    pub fn geometry(&self) -> OrbitGeometry {
        let (semi_major, semi_minor) = match self.class() {
            OrbitClass::Parabola => (None, None),
            _ => {
                let gap = (self.dual().norm2()).abs();
                (Some(self.c / gap), Some(1.0 / gap.sqrt()))
            }
        };
        OrbitGeometry {
            eccentricity: self.eccentricity(),
            semi_major,
            semi_minor,
            latus_rectum: 2.0 / self.c,
            pericenter_angle: self.pericenter_angle(),
            energy: self.energy(),
            angular_momentum: self.angular_momentum(),
        }
    }

    /// ρ(θ) = a cos θ + b sin θ + c, the reciprocal radius on the attractive branch.
    pub fn rho(&self, theta: f64) -> f64 {
        self.a * theta.cos() + self.b * theta.sin() + self.c
    }

    /// (ρ, ρ′, ρ″) at θ.
    pub fn rho_jet(&self, theta: f64) -> (f64, f64, f64) {
        let (s, c) = theta.sin_cos();
        let rho = self.a * c + self.b * s + self.c;
        (rho, -self.a * s + self.b * c, -self.a * c - self.b * s)
    }

    /// a cos θ + b sin θ − c, the reciprocal radius on the repelling branch.
    pub fn rho_repelling(&self, theta: f64) -> f64 {
        self.a * theta.cos() + self.b * theta.sin() - self.c
    }

    pub fn radius(&self, theta: f64) -> Result<f64> {
        let rho = self.rho(theta);
        if rho <= 0.0 {
            return Err(Error::OutsideAttractiveBranch { theta, rho });
        }
        Ok(1.0 / rho)
    }

    pub fn point_at(&self, theta: f64) -> Result<PlanePoint> {
        Ok(PlanePoint::from_polar(self.radius(theta)?, theta))
    }

    /// Angular interval of the attractive branch on which ρ > `margin`, as
    /// (start, length). Closed orbits return a full turn from the pericenter.
    pub fn valid_arc(&self, margin: f64) -> (f64, f64) {
        let theta0 = self.pericenter_angle();
        let k = self.focal_norm();
        if self.class() == OrbitClass::Ellipse || k == 0.0 {
            return (theta0, 2.0 * PI);
        }
        let cos_phi = ((margin - self.c) / k).clamp(-1.0, 1.0);
        let phi = cos_phi.acos();
        (theta0 - phi, 2.0 * phi)
    }

    /// `n` points equally spaced in θ: a full turn for ellipses, midpoints of
    /// `n` equal cells of the valid arc for open orbits.
    pub fn sample_polar(&self, n: usize) -> Result<Vec<(f64, PlanePoint)>> {
        if n < 3 {
            return Err(Error::TooFewPoints { needed: 3, got: n });
        }
        let (start, len) = self.valid_arc(SAMPLE_MARGIN);
        let closed = self.class() == OrbitClass::Ellipse || self.focal_norm() == 0.0;
        (0..n)
            .map(|k| {
                let theta =
                    if closed { start + len * k as f64 / n as f64 } else { start + len * (k as f64 + 0.5) / n as f64 };
                Ok((theta, self.point_at(theta)?))
            })
            .collect()
    }

    pub fn sample(&self, n: usize) -> Result<Vec<PlanePoint>> {
        Ok(self.sample_polar(n)?.into_iter().map(|(_, p)| p).collect())
    }

    /// `a x + b y + c r − 1` at `p`.
    pub fn residual(&self, p: PlanePoint) -> f64 {
        self.a * p.x + self.b * p.y + self.c * p.r() - 1.0
    }

    /// `a x + b y − c r − 1` at `p`.
    pub fn repelling_residual(&self, p: PlanePoint) -> f64 {
        self.a * p.x + self.b * p.y - self.c * p.r() - 1.0
    }

    pub fn contains(&self, p: PlanePoint, tol: f64) -> Membership {
        if self.residual(p).abs() <= tol {
            Membership::OnAttractive
        } else if self.repelling_residual(p).abs() <= tol {
            Membership::OnRepelling
        } else {
            Membership::Off
        }
    }
}

impl std::fmt::Display for KeplerOrbit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}
