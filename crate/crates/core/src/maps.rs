//! Point maps that carry one family of orbits onto another, each paired with
//! a predictor for the image on the dual side.

use crate::error::{Error, Result};
use crate::minkowski::MinkVec;
use crate::orbit::{ConePoint, KeplerOrbit, PlanePoint};

const SINGULAR_TOL: f64 = 1e-12;

/// `z ↦ z²` in complex notation.
pub fn square(p: PlanePoint) -> PlanePoint {
    PlanePoint::new(p.x * p.x - p.y * p.y, 2.0 * p.x * p.y)
}

/// Image under [`square`] of the line `u x + v y = 1`: the parabola with dual
/// `((u² − v²)/2, u v, (u² + v²)/2)`.
pub fn square_line_image(u: f64, v: f64) -> Result<KeplerOrbit> {
    KeplerOrbit::new((u * u - v * v) / 2.0, u * v, (u * u + v * v) / 2.0)
}

/// Image under [`square`] of the centered ellipse with semi-axes `alpha`
/// (along x) and `beta`: a Kepler ellipse with minor axis `2 alpha beta`.
pub fn square_hooke_image(alpha: f64, beta: f64) -> Result<KeplerOrbit> {
    let d = 2.0 * alpha * alpha * beta * beta;
    KeplerOrbit::new(-(alpha * alpha - beta * beta) / d, 0.0, (alpha * alpha + beta * beta) / d)
}

/// `r⃗ ↦ r⃗ / (1 − r/M²)`; straightens orbits of angular momentum `|M|`.
pub fn flatten_m(p: PlanePoint, m: f64) -> Result<PlanePoint> {
    if m == 0.0 {
        return Err(Error::InvalidArgument("M must be nonzero".into()));
    }
    let den = 1.0 - p.r() / (m * m);
    if den.abs() <= SINGULAR_TOL {
        return Err(Error::SingularRadius { r: p.r() });
    }
    Ok(PlanePoint::new(p.x / den, p.y / den))
}

/// Dual of the image of `dual` under [`flatten_m`]: the translation
/// `(a, b, c) ↦ (a, b, c − 1/M²)`.
pub fn flatten_m_dual(dual: MinkVec, m: f64) -> MinkVec {
    MinkVec::new(dual.a, dual.b, dual.c - 1.0 / (m * m))
}

fn require_positive_energy(e: f64) -> Result<()> {
    if e > 0.0 && e.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("energy must be positive, got {e}")))
    }
}

/// `r⃗ ↦ r⃗ / (1 + 2 E r)`; embeds energy-`E` orbits into energy `−E`.
pub fn hill_embed(p: PlanePoint, e: f64) -> Result<PlanePoint> {
    require_positive_energy(e)?;
    let den = 1.0 + 2.0 * e * p.r();
    Ok(PlanePoint::new(p.x / den, p.y / den))
}

/// Predicted image of a positive-energy orbit under [`hill_embed`], in
/// canonical coordinates: `(a, b, c) ↦ (a, b, c + 2E)`.
pub fn hill_image(o: &KeplerOrbit) -> Result<KeplerOrbit> {
    let e = o.energy();
    require_positive_energy(e)?;
    KeplerOrbit::new(o.a(), o.b(), o.c() + 2.0 * e)
}

/// The same prediction as a reflection `c ↦ 2|E| − c` of the signed
/// representative (`c < 0` for positive energy).
pub fn hill_reflection(signed: MinkVec, e: f64) -> MinkVec {
    MinkVec::new(signed.a, signed.b, 2.0 * e.abs() - signed.c)
}

/// `r⃗ ↦ r⃗ / (1 − 2 E r)`; sends repelling branches of energy-`E` orbits into
/// the annulus `1/(2E) < r < 1/E`.
pub fn repel_embed(p: PlanePoint, e: f64) -> Result<PlanePoint> {
    require_positive_energy(e)?;
    let den = 1.0 - 2.0 * e * p.r();
    if den.abs() <= SINGULAR_TOL {
        return Err(Error::SingularRadius { r: p.r() });
    }
    Ok(PlanePoint::new(p.x / den, p.y / den))
}

/// `(X, Y) ↦ ((X² − 1)/Y, 2X/Y)`.
pub fn parabola_chart(x: f64, y: f64) -> Result<PlanePoint> {
    if y == 0.0 {
        return Err(Error::InvalidArgument("Y must be nonzero".into()));
    }
    Ok(PlanePoint::new((x * x - 1.0) / y, 2.0 * x / y))
}

/// Cone lift of [`parabola_chart`]: `z = (X² + 1)/Y`, on the sheet of `sgn Y`.
pub fn parabola_chart_lift(x: f64, y: f64) -> Result<ConePoint> {
    let p = parabola_chart(x, y)?;
    Ok(ConePoint { x: p.x, y: p.y, z: (x * x + 1.0) / y })
}

/// Image of the vertical parabola `Y = A X² + B X + C`: dual
/// `((A − C)/2, B/2, (A + C)/2)`, before sign canonicalization.
pub fn parabola_image_dual(a: f64, b: f64, c: f64) -> MinkVec {
    MinkVec::new((a - c) / 2.0, b / 2.0, (a + c) / 2.0)
}

pub fn parabola_image(a: f64, b: f64, c: f64) -> Result<KeplerOrbit> {
    KeplerOrbit::from_dual(parabola_image_dual(a, b, c))
}
