//! The Minkowski space ℝ²,¹: ℝ³ with quadratic form a² + b² − c².
//!
//! A point (a, b, c) doubles as the dual coordinates of the Kepler orbit
//! `a x + b y + c r = 1`.

use std::ops;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MinkVec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Causal {
    Spacelike,
    Null,
    Timelike,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaneKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl MinkVec {
    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        MinkVec { a, b, c }
    }

    pub fn norm2(self) -> f64 {
        self.a * self.a + self.b * self.b - self.c * self.c
    }

    /// Minkowski inner product.
    pub fn dot(self, o: MinkVec) -> f64 {
        self.a * o.a + self.b * o.b - self.c * o.c
    }

    pub fn euclid_norm2(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c
    }

    pub fn is_zero(self) -> bool {
        self.a == 0.0 && self.b == 0.0 && self.c == 0.0
    }

    /// Tolerance below which `norm2` counts as null.
    pub fn null_tolerance(self) -> f64 {
        1e-10 * (1.0 + self.euclid_norm2())
    }

    pub fn classify(self) -> Result<Causal> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let n = self.norm2();
        Ok(if n.abs() <= self.null_tolerance() {
            Causal::Null
        } else if n > 0.0 {
            Causal::Spacelike
        } else {
            Causal::Timelike
        })
    }

    pub fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.a, self.b, self.c)
    }

    pub fn from_vector(v: &Vector3<f64>) -> Self {
        MinkVec::new(v[0], v[1], v[2])
    }

    pub fn transform(self, m: &Matrix3<f64>) -> Self {
        MinkVec::from_vector(&(m * self.to_vector()))
    }
}

impl ops::Add for MinkVec {
    type Output = MinkVec;
    fn add(self, o: MinkVec) -> MinkVec {
        MinkVec::new(self.a + o.a, self.b + o.b, self.c + o.c)
    }
}

impl ops::Sub for MinkVec {
    type Output = MinkVec;
    fn sub(self, o: MinkVec) -> MinkVec {
        MinkVec::new(self.a - o.a, self.b - o.b, self.c - o.c)
    }
}

impl ops::Mul<f64> for MinkVec {
    type Output = MinkVec;
    fn mul(self, s: f64) -> MinkVec {
        MinkVec::new(self.a * s, self.b * s, self.c * s)
    }
}

impl ops::Neg for MinkVec {
    type Output = MinkVec;
    fn neg(self) -> MinkVec {
        MinkVec::new(-self.a, -self.b, -self.c)
    }
}

pub fn norm2(v: MinkVec) -> f64 {
    v.norm2()
}

pub fn classify_vector(v: MinkVec) -> Result<Causal> {
    v.classify()
}

/// The metric diag(1, 1, −1).
pub fn metric() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0))
}

/// Rotation by `phi` in the (a, b) plane.
pub fn rotation(phi: f64) -> Matrix3<f64> {
    let (s, c) = phi.sin_cos();
    Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

/// Boost with rapidity `eta` mixing a and c.
pub fn boost_a(eta: f64) -> Matrix3<f64> {
    let (ch, sh) = (eta.cosh(), eta.sinh());
    Matrix3::new(ch, 0.0, sh, 0.0, 1.0, 0.0, sh, 0.0, ch)
}

/// Boost with rapidity `eta` mixing b and c.
pub fn boost_b(eta: f64) -> Matrix3<f64> {
    let (ch, sh) = (eta.cosh(), eta.sinh());
    Matrix3::new(1.0, 0.0, 0.0, 0.0, ch, sh, 0.0, sh, ch)
}

/// The plane `{v : normal · v = offset}` (Euclidean dot product).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinkPlane {
    pub normal: [f64; 3],
    pub offset: f64,
}

impl MinkPlane {
    pub fn new(normal: [f64; 3], offset: f64) -> Result<Self> {
        if normal == [0.0; 3] {
            return Err(Error::ZeroVector);
        }
        Ok(MinkPlane { normal, offset })
    }

    /// The restricted metric is positive definite, degenerate or indefinite
    /// exactly when the normal is timelike, null or spacelike.
    pub fn classify(&self) -> PlaneKind {
        let n = MinkVec::new(self.normal[0], self.normal[1], self.normal[2]);
        match n.classify().expect("plane normal is nonzero") {
            Causal::Timelike => PlaneKind::Elliptic,
            Causal::Null => PlaneKind::Parabolic,
            Causal::Spacelike => PlaneKind::Hyperbolic,
        }
    }

    pub fn contains(&self, v: MinkVec, tol: f64) -> bool {
        (self.normal[0] * v.a + self.normal[1] * v.b + self.normal[2] * v.c - self.offset).abs() <= tol
    }
}

pub fn classify_plane(p: &MinkPlane) -> PlaneKind {
    p.classify()
}

/// The plane of all orbits through the plane point (x, y): `a x + b y + c r = 1`.
pub fn point_plane(x: f64, y: f64) -> Result<MinkPlane> {
    if x == 0.0 && y == 0.0 {
        return Err(Error::Origin);
    }
    MinkPlane::new([x, y, x.hypot(y)], 1.0)
}

/// A line of ℝ²,¹, i.e. a one-parameter family of orbits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pencil {
    pub base: MinkVec,
    pub direction: MinkVec,
}

impl Pencil {
    pub fn through(v1: MinkVec, v2: MinkVec) -> Result<Self> {
        let direction = v2 - v1;
        if direction.is_zero() {
            return Err(Error::EqualPoints);
        }
        Ok(Pencil { base: v1, direction })
    }

    pub fn at(&self, t: f64) -> MinkVec {
        self.base + self.direction * t
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilClass {
    pub kind: Causal,
    /// Common points of the two orbits predicted from the causal type.
    pub common_points: u8,
}

/// Causal type of the chord `v₂ − v₁` and the number of points two orbits
/// share: 2, 1 or 0 for spacelike, null or timelike chords. The count is
/// certified only for ellipse pairs.
pub fn pencil_classify(v1: MinkVec, v2: MinkVec) -> Result<PencilClass> {
    let pencil = Pencil::through(v1, v2)?;
    let kind = pencil.direction.classify()?;
    let common_points = match kind {
        Causal::Spacelike => 2,
        Causal::Null => 1,
        Causal::Timelike => 0,
    };
    Ok(PencilClass { kind, common_points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms_and_types() {
        assert_eq!(norm2(MinkVec::new(0.0, 0.0, 1.0)), -1.0);
        assert_eq!(norm2(MinkVec::new(3.0, 4.0, 5.0)), 0.0);
        assert_eq!(norm2(MinkVec::new(1.0, 0.0, 0.0)), 1.0);
        assert_eq!(classify_vector(MinkVec::new(3.0, 4.0, 5.0)), Ok(Causal::Null));
        assert_eq!(classify_vector(MinkVec::new(0.0, 0.0, 2.0)), Ok(Causal::Timelike));
        assert_eq!(classify_vector(MinkVec::new(1.0, 1.0, 1.0)), Ok(Causal::Spacelike));
        assert_eq!(classify_vector(MinkVec::default()), Err(Error::ZeroVector));
    }

    #[test]
    fn planes() {
        assert_eq!(MinkPlane::new([0.0, 0.0, 1.0], 0.0).unwrap().classify(), PlaneKind::Elliptic);
        assert_eq!(MinkPlane::new([1.0, 0.0, 1.0], 1.0).unwrap().classify(), PlaneKind::Parabolic);
        assert_eq!(MinkPlane::new([1.0, 0.0, 0.0], 1.0).unwrap().classify(), PlaneKind::Hyperbolic);
        assert_eq!(MinkPlane::new([0.0; 3], 1.0), Err(Error::ZeroVector));
    }

    #[test]
    fn point_planes() {
        assert_eq!(point_plane(1.0, 0.0).unwrap(), MinkPlane { normal: [1.0, 0.0, 1.0], offset: 1.0 });
        assert_eq!(point_plane(0.0, 2.0).unwrap(), MinkPlane { normal: [0.0, 2.0, 2.0], offset: 1.0 });
        assert_eq!(point_plane(0.0, 0.0), Err(Error::Origin));
        assert_eq!(point_plane(0.3, -1.7).unwrap().classify(), PlaneKind::Parabolic);
    }

    #[test]
    fn pencils() {
        let c = |a, b, c| MinkVec::new(a, b, c);
        let p = pencil_classify(c(0.0, 0.0, 1.0), c(0.0, 0.0, 2.0)).unwrap();
        assert_eq!((p.kind, p.common_points), (Causal::Timelike, 0));
        let p = pencil_classify(c(0.0, 0.0, 1.0), c(1.0, 0.0, 1.0)).unwrap();
        assert_eq!((p.kind, p.common_points), (Causal::Spacelike, 2));
        let p = pencil_classify(c(0.0, 0.0, 1.0), c(1.0, 0.0, 2.0)).unwrap();
        assert_eq!((p.kind, p.common_points), (Causal::Null, 1));
        assert_eq!(pencil_classify(c(1.0, 2.0, 3.0), c(1.0, 2.0, 3.0)), Err(Error::EqualPoints));
    }

    #[test]
    fn lorentz_matrices_preserve_metric() {
        let j = metric();
        for m in [rotation(0.7), boost_a(-1.3), boost_b(0.4)] {
            assert!((m.transpose() * j * m - j).norm() < 1e-12);
        }
    }
}
