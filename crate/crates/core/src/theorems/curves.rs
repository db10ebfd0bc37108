//! Parametrized plane curves, point-line duality and osculating orbits.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbit::{KeplerOrbit, OrbitClass, PlanePoint, SAMPLE_MARGIN};

/// Position and the first three derivatives of a curve at one parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveJet {
    pub point: PlanePoint,
    pub d1: [f64; 2],
    pub d2: [f64; 2],
    pub d3: [f64; 2],
}

type JetFn = dyn Fn(f64) -> CurveJet + Send + Sync;

/// A curve `t ↦ (x(t), y(t))` on `[start, end]` with derivative access.
#[derive(Clone)]
pub struct ParametricCurve {
    jet: Arc<JetFn>,
    start: f64,
    end: f64,
    closed: bool,
}

impl fmt::Debug for ParametricCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricCurve")
            .field("start", &self.start)
            .field("end", &self.end)
            .field("closed", &self.closed)
            .finish()
    }
}

/// Step used for finite-difference derivatives, relative to the interval length.
const FD_STEP: f64 = 1e-4;

impl ParametricCurve {
    /// Curve with analytic derivatives. A closed curve has period `end − start`.
    pub fn new<F>(jet: F, start: f64, end: f64, closed: bool) -> Result<Self>
    where
        F: Fn(f64) -> CurveJet + Send + Sync + 'static,
    {
        if !(start.is_finite() && end.is_finite() && start < end) {
            return Err(Error::InvalidArgument(format!("parameter interval [{start}, {end}]")));
        }
        Ok(ParametricCurve { jet: Arc::new(jet), start, end, closed })
    }

    /// Curve from positions only; derivatives by central differences.
    pub fn from_fn<F>(f: F, start: f64, end: f64, closed: bool) -> Result<Self>
    where
        F: Fn(f64) -> (f64, f64) + Send + Sync + 'static,
    {
        let h = FD_STEP * (end - start).abs().max(1e-12);
        let jet = move |t: f64| {
            let p = |k: f64| {
                let (x, y) = f(t + k * h);
                [x, y]
            };
            let (m2, m1, z, p1, p2) = (p(-2.0), p(-1.0), p(0.0), p(1.0), p(2.0));
            let comb = |w: [f64; 5], s: f64| {
                let v = |i| (w[0] * m2[i] + w[1] * m1[i] + w[2] * z[i] + w[3] * p1[i] + w[4] * p2[i]) / s;
                [v(0), v(1)]
            };
            CurveJet {
                point: PlanePoint::new(z[0], z[1]),
                d1: comb([1.0, -8.0, 0.0, 8.0, -1.0], 12.0 * h),
                d2: comb([-1.0, 16.0, -30.0, 16.0, -1.0], 12.0 * h * h),
                d3: comb([-1.0, 2.0, 0.0, -2.0, 1.0], 2.0 * h * h * h),
            }
        };
        ParametricCurve::new(jet, start, end, closed)
    }

    /// Circle `center + R(cos t, sin t)`, `t ∈ [0, 2π]`.
    pub fn circle(center: PlanePoint, radius: f64) -> Result<Self> {
        ParametricCurve::ellipse(center, radius, radius)
    }

    /// Axis-aligned ellipse `center + (p cos t, q sin t)`, `t ∈ [0, 2π]`.
    pub fn ellipse(center: PlanePoint, p: f64, q: f64) -> Result<Self> {
        if !(p > 0.0 && q > 0.0) {
            return Err(Error::InvalidArgument(format!("semi-axes {p}, {q}")));
        }
        let jet = move |t: f64| {
            let (s, c) = t.sin_cos();
            CurveJet {
                point: PlanePoint::new(center.x + p * c, center.y + q * s),
                d1: [-p * s, q * c],
                d2: [-p * c, -q * s],
                d3: [p * s, -q * c],
            }
        };
        ParametricCurve::new(jet, 0.0, 2.0 * PI, true)
    }

    /// Star-shaped curve `r = 1/ρ(θ)` from the polar function and its first
    /// three derivatives `[ρ, ρ′, ρ″, ρ‴]`.
    pub fn polar<F>(rho: F, start: f64, end: f64, closed: bool) -> Result<Self>
    where
        F: Fn(f64) -> [f64; 4] + Send + Sync + 'static,
    {
        let jet = move |theta: f64| {
            let [p0, p1, p2, p3] = rho(theta);
            let r0 = 1.0 / p0;
            let r1 = -p1 / (p0 * p0);
            let r2 = -p2 / (p0 * p0) + 2.0 * p1 * p1 / (p0 * p0 * p0);
            let r3 = -p3 / (p0 * p0) + 6.0 * p1 * p2 / p0.powi(3) - 6.0 * p1.powi(3) / p0.powi(4);
            let (s, c) = theta.sin_cos();
            CurveJet {
                point: PlanePoint::new(r0 * c, r0 * s),
                d1: [r1 * c - r0 * s, r1 * s + r0 * c],
                d2: [r2 * c - 2.0 * r1 * s - r0 * c, r2 * s + 2.0 * r1 * c - r0 * s],
                d3: [r3 * c - 3.0 * r2 * s - 3.0 * r1 * c + r0 * s, r3 * s + 3.0 * r2 * c - 3.0 * r1 * s - r0 * c],
            }
        };
        ParametricCurve::new(jet, start, end, closed)
    }

    /// Star-shaped curve with `ρ(θ) = c₀ + Σₖ (aₖ cos kθ + bₖ sin kθ)`,
    /// `harmonics[k−1] = (aₖ, bₖ)`. Convex exactly where `ρ + ρ″ > 0`.
    pub fn trig(c0: f64, harmonics: &[(f64, f64)]) -> Result<Self> {
        let h = harmonics.to_vec();
        let curve = ParametricCurve::polar(move |theta| trig_rho(c0, &h, theta), 0.0, 2.0 * PI, true)?;
        let grid = 1024;
        for i in 0..grid {
            let theta = 2.0 * PI * i as f64 / grid as f64;
            let [p0, _, p2, _] = trig_rho(c0, harmonics, theta);
            if p0 <= 0.0 {
                return Err(Error::InvalidArgument(format!("rho = {p0} at theta = {theta}")));
            }
            if p0 + p2 <= 0.0 {
                return Err(Error::InvalidArgument(format!("curve is not convex at theta = {theta}")));
            }
        }
        Ok(curve)
    }

    /// Attractive branch of a Kepler orbit, parametrized by the polar angle.
    /// Ellipses are closed; open orbits use the valid arc.
    pub fn from_orbit(o: &KeplerOrbit) -> Result<Self> {
        let (a, b, c) = (o.a(), o.b(), o.c());
        let (start, len) = o.valid_arc(SAMPLE_MARGIN);
        let closed = o.class() == OrbitClass::Ellipse || o.focal_norm() == 0.0;
        ParametricCurve::polar(
            move |theta| {
                let (s, co) = theta.sin_cos();
                let rho1 = -a * s + b * co;
                [a * co + b * s + c, rho1, -a * co - b * s, -rho1]
            },
            start,
            start + len,
            closed,
        )
    }

    pub fn jet(&self, t: f64) -> CurveJet {
        (self.jet)(t)
    }

    pub fn point(&self, t: f64) -> PlanePoint {
        self.jet(t).point
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.start, self.end)
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// `n` parameters: equally spaced over a period for closed curves,
    /// including both endpoints for open ones.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        let len = self.end - self.start;
        if self.closed {
            (0..n).map(|i| self.start + len * i as f64 / n as f64).collect()
        } else {
            let d = (n.max(2) - 1) as f64;
            (0..n.max(2)).map(|i| self.start + len * i as f64 / d).collect()
        }
    }

    /// Signed Euclidean curvature `(x′y″ − y′x″)/|γ′|³`.
    pub fn curvature(&self, t: f64) -> f64 {
        let j = self.jet(t);
        let speed2 = j.d1[0] * j.d1[0] + j.d1[1] * j.d1[1];
        cross(j.d1, j.d2) / (speed2 * speed2.sqrt())
    }

    /// Derivative of [`curvature`](Self::curvature) from the third derivative.
    pub fn curvature_derivative(&self, t: f64) -> f64 {
        let j = self.jet(t);
        let speed2 = j.d1[0] * j.d1[0] + j.d1[1] * j.d1[1];
        let dot12 = j.d1[0] * j.d2[0] + j.d1[1] * j.d2[1];
        cross(j.d1, j.d3) / speed2.powf(1.5) - 3.0 * cross(j.d1, j.d2) * dot12 / speed2.powf(2.5)
    }
}

fn cross(u: [f64; 2], v: [f64; 2]) -> f64 {
    u[0] * v[1] - u[1] * v[0]
}

/// `[ρ, ρ′, ρ″, ρ‴]` of a trigonometric reciprocal radius.
pub fn trig_rho(c0: f64, harmonics: &[(f64, f64)], theta: f64) -> [f64; 4] {
    let mut out = [c0, 0.0, 0.0, 0.0];
    for (i, &(a, b)) in harmonics.iter().enumerate() {
        let k = (i + 1) as f64;
        let (s, c) = (k * theta).sin_cos();
        out[0] += a * c + b * s;
        out[1] += k * (-a * s + b * c);
        out[2] += -k * k * (a * c + b * s);
        out[3] += k * k * k * (a * s - b * c);
    }
    out
}

/// `xy′ − yx′` at or below this fraction of `|γ||γ′|` counts as a tangent
/// through the origin.
const TANGENT_TOL: f64 = 1e-12;
/// Grid on which `dual_curve` checks its precondition.
const DUAL_CHECK_GRID: usize = 1024;

/// The curve of tangent lines: the line `αx + βy = 1` tangent at `γ(t)` is
/// sent to `(α, β) = (y′, −x′)/(xy′ − yx′)`.
pub fn dual_curve(curve: &ParametricCurve) -> Result<ParametricCurve> {
    let mut sign = 0.0;
    for t in curve.grid(DUAL_CHECK_GRID) {
        let j = curve.jet(t);
        let w = j.point.x * j.d1[1] - j.point.y * j.d1[0];
        let scale = j.point.r() * j.d1[0].hypot(j.d1[1]);
        if !(w.abs() > TANGENT_TOL * scale) || w.signum() * sign < 0.0 {
            return Err(Error::TangentThroughOrigin { t });
        }
        sign = w.signum();
    }
    let src = curve.clone();
    let (start, end) = curve.interval();
    let h = FD_STEP * 0.1 * (end - start);
    let second = move |t: f64| -> ([f64; 2], [f64; 2], [f64; 2]) {
        let j = src.jet(t);
        let (x, y) = (j.point.x, j.point.y);
        let [x1, y1] = j.d1;
        let [x2, y2] = j.d2;
        let [x3, y3] = j.d3;
        let w = x * y1 - y * x1;
        let w1 = x * y2 - y * x2;
        let w2 = x1 * y2 + x * y3 - y1 * x2 - y * x3;
        let n = [y1, -x1];
        let n1 = [y2, -x2];
        let n2 = [y3, -x3];
        let f = |i: usize| {
            let p = n[i] / w;
            let d1 = n1[i] / w - n[i] * w1 / (w * w);
            let d2 = n2[i] / w - 2.0 * n1[i] * w1 / (w * w) - n[i] * w2 / (w * w) + 2.0 * n[i] * w1 * w1 / (w * w * w);
            (p, d1, d2)
        };
        let (px, dx1, dx2) = f(0);
        let (py, dy1, dy2) = f(1);
        ([px, py], [dx1, dy1], [dx2, dy2])
    };
    let jet = move |t: f64| {
        let (p, d1, d2) = second(t);
        let (_, _, plus) = second(t + h);
        let (_, _, minus) = second(t - h);
        CurveJet {
            point: PlanePoint::new(p[0], p[1]),
            d1,
            d2,
            d3: [(plus[0] - minus[0]) / (2.0 * h), (plus[1] - minus[1]) / (2.0 * h)],
        }
    };
    ParametricCurve::new(jet, start, end, curve.is_closed())
}

/// A circle in the plane of dual coordinates `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualCircle {
    pub center: PlanePoint,
    pub radius: f64,
}

impl DualCircle {
    /// Signed distance of `p` from the circle, positive outside.
    pub fn offset(&self, p: PlanePoint) -> f64 {
        p.dist(self.center) - self.radius
    }
}

/// Tangent lines of the orbit `(a, b, c)` dualize to the circle of radius `c`
/// about `(a, b)`.
pub fn dual_of_orbit(o: &KeplerOrbit) -> DualCircle {
    DualCircle { center: PlanePoint::new(o.a(), o.b()), radius: o.c() }
}

/// Polar 2-jet `(θ, ρ, ρ′, ρ″)` of a star-shaped curve, with `ρ = 1/r` and
/// derivatives in θ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Jet2Polar {
    pub theta: f64,
    pub rho: f64,
    pub rho1: f64,
    pub rho2: f64,
}

impl Jet2Polar {
    pub fn new(theta: f64, rho: f64, rho1: f64, rho2: f64) -> Result<Self> {
        if !(rho > 0.0) {
            return Err(Error::InvalidArgument(format!("rho = {rho} must be positive")));
        }
        Ok(Jet2Polar { theta, rho, rho1, rho2 })
    }
}

/// Polar 2-jet of the curve at parameter `t`.
pub fn polar_jet(curve: &ParametricCurve, t: f64) -> Result<Jet2Polar> {
    let j = curve.jet(t);
    let (x, y) = (j.point.x, j.point.y);
    let [x1, y1] = j.d1;
    let [x2, y2] = j.d2;
    let r2 = x * x + y * y;
    if r2 == 0.0 {
        return Err(Error::Origin);
    }
    let r = r2.sqrt();
    let w = x * y1 - y * x1;
    if !(w.abs() > TANGENT_TOL * r * x1.hypot(y1)) {
        return Err(Error::TangentThroughOrigin { t });
    }
    // dθ/dt = w/r², dρ/dt = −s/r³ with s = xx′ + yy′.
    let s = x * x1 + y * y1;
    let theta_dot = w / r2;
    let rho1 = -s / (r * w);
    let s1 = x1 * x1 + y1 * y1 + x * x2 + y * y2;
    let w1 = x * y2 - y * x2;
    let r_dot = s / r;
    let rho1_dot = -(s1 * r * w - s * (r_dot * w + r * w1)) / (r * w).powi(2);
    Jet2Polar::new(y.atan2(x), 1.0 / r, rho1, rho1_dot / theta_dot)
}

/// Kepler orbit with second-order contact to the jet. A negative `c` means
/// the contact is with a repelling branch, returned as its canonical orbit.
pub fn osculating_orbit(j: &Jet2Polar) -> Result<KeplerOrbit> {
    let (s, c) = j.theta.sin_cos();
    let a = -j.rho2 * c - j.rho1 * s;
    let b = -j.rho2 * s + j.rho1 * c;
    let cc = j.rho + j.rho2;
    if cc.abs() <= 1e-12 * (j.rho.abs() + j.rho2.abs()) {
        return Err(Error::OsculatingLine);
    }
    KeplerOrbit::new(a, b, cc)
}
