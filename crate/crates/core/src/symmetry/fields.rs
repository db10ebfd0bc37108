use nalgebra::{RowVector4, Vector4};
use serde::{Deserialize, Serialize};

use super::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::minkowski::MinkVec;
use crate::orbit::{PlanePoint, Sheet};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneVector {
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
}

impl PlaneVector {
    pub fn velocity(&self) -> (f64, f64) {
        (self.vx, self.vy)
    }
}

/// Velocity at `p` of `t ↦ π(e^{tX} q)`, with `q` the lift of `p` to `sheet`.
pub fn vf_plane(x: &AlgebraElement, p: PlanePoint, sheet: Sheet) -> PlaneVector {
    let q = Vector4::new(p.x, p.y, sheet.sign() * p.r(), 1.0);
    let w = x.matrix() * q;
    PlaneVector { x: p.x, y: p.y, vx: w[0] - p.x * w[3], vy: w[1] - p.y * w[3] }
}

/// Velocity at `v` of `t ↦ π(p e^{−tX})` with `p = (v, −1)`.
pub fn vf_dual(x: &AlgebraElement, v: MinkVec) -> MinkVec {
    let p = RowVector4::new(v.a, v.b, v.c, -1.0);
    let w = -(p * x.matrix());
    MinkVec::new(w[0] + v.a * w[3], w[1] + v.b * w[3], w[2] + v.c * w[3])
}

/// Closed form of the plane field of basis element `i ∈ 1..=7`:
/// `r∂r`, `∂θ`, `r∂x`, `r∂y`, `−x r∂r`, `−y r∂r`, `−r² ∂r` (with `r` signed by the sheet).
pub fn basis_plane_field(i: usize, p: PlanePoint, sheet: Sheet) -> (f64, f64) {
    let (x, y) = (p.x, p.y);
    let r = sheet.sign() * p.r();
    match i {
        1 => (x, y),
        2 => (-y, x),
        3 => (r, 0.0),
        4 => (0.0, r),
        5 => (-x * x, -x * y),
        6 => (-y * x, -y * y),
        7 => (-r * x, -r * y),
        _ => panic!("basis index {i} out of range 1..=7"),
    }
}

/// Closed form of the dual field of basis element `i ∈ 1..=7`:
/// `−a∂a−b∂b−c∂c`, `−b∂a+a∂b`, `−c∂a−a∂c`, `−c∂b−b∂c`, `∂a`, `∂b`, `∂c`.
pub fn basis_dual_field(i: usize, v: MinkVec) -> MinkVec {
    let MinkVec { a, b, c } = v;
    match i {
        1 => MinkVec::new(-a, -b, -c),
        2 => MinkVec::new(-b, a, 0.0),
        3 => MinkVec::new(-c, 0.0, -a),
        4 => MinkVec::new(0.0, -c, -b),
        5 => MinkVec::new(1.0, 0.0, 0.0),
        6 => MinkVec::new(0.0, 1.0, 0.0),
        7 => MinkVec::new(0.0, 0.0, 1.0),
        _ => panic!("basis index {i} out of range 1..=7"),
    }
}

/// Plane fields of the fixed-energy generators at energy `e`:
/// `∂θ`, `r(∂x + E x ∂r)`, `r(∂y + E y ∂r)`.
pub fn fixed_energy_plane_field(k: usize, e: f64, p: PlanePoint) -> (f64, f64) {
    let (x, y, r) = (p.x, p.y, p.r());
    match k {
        0 => (-y, x),
        1 => (r + e * x * x, e * x * y),
        2 => (e * x * y, r + e * y * y),
        _ => panic!("fixed-energy generator index {k} out of range 0..=2"),
    }
}

/// Lift sheet on which the fixed-energy generators reproduce the closed
/// forms: upper for negative energy, lower (with a sign flip of the last two
/// fields) for positive energy.
pub fn fixed_energy_sheet(e: f64) -> Sheet {
    if e < 0.0 {
        Sheet::Upper
    } else {
        Sheet::Lower
    }
}

/// Number of RK4 steps used by [`flow`] and [`flow_dual`] when not given.
pub const FLOW_STEPS: usize = 1000;

/// RK4 integration of the plane field of `x` for time `t`.
pub fn flow(x: &AlgebraElement, p: PlanePoint, t: f64, sheet: Sheet) -> Result<PlanePoint> {
    flow_with_steps(x, p, t, sheet, FLOW_STEPS)
}

pub fn flow_with_steps(x: &AlgebraElement, p: PlanePoint, t: f64, sheet: Sheet, steps: usize) -> Result<PlanePoint> {
    if t == 0.0 {
        return Ok(p);
    }
    let h = t / steps as f64;
    let f = |q: PlanePoint| {
        let v = vf_plane(x, q, sheet);
        (v.vx, v.vy)
    };
    let shift = |q: PlanePoint, k: (f64, f64), s: f64| PlanePoint::new(q.x + s * k.0, q.y + s * k.1);
    let limit = 1e8 * (1.0 + p.r());
    let mut q = p;
    for i in 0..steps {
        let k1 = f(q);
        let k2 = f(shift(q, k1, h / 2.0));
        let k3 = f(shift(q, k2, h / 2.0));
        let k4 = f(shift(q, k3, h));
        q = PlanePoint::new(
            q.x + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            q.y + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        );
        let r = q.r();
        if !r.is_finite() || r > limit {
            return Err(Error::FlowChartExit { t: (i + 1) as f64 * h });
        }
        if r == 0.0 {
            return Err(Error::ConeVertex);
        }
    }
    Ok(q)
}

/// RK4 integration of the dual field of `x`, returning every state.
pub fn flow_dual(x: &AlgebraElement, v: MinkVec, t: f64, steps: usize) -> Vec<MinkVec> {
    let h = t / steps.max(1) as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut s = v;
    out.push(s);
    for _ in 0..steps {
        let k1 = vf_dual(x, s);
        let k2 = vf_dual(x, s + k1 * (h / 2.0));
        let k3 = vf_dual(x, s + k2 * (h / 2.0));
        let k4 = vf_dual(x, s + k3 * h);
        s = s + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        out.push(s);
    }
    out
}

/// `a² + b² − (c − |E|)² + E²`, zero exactly on the dual points of energy-`E`
/// orbits (signed representative: `c > 0` for `E < 0`, `c < 0` for `E > 0`).
pub fn energy_quadric(v: MinkVec, e: f64) -> f64 {
    let k = e.abs();
    v.a * v.a + v.b * v.b - (v.c - k) * (v.c - k) + e * e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{act_plane, exp, fixed_energy_algebra};

    fn b(i: usize) -> AlgebraElement {
        AlgebraElement::basis(i)
    }

    #[test]
    fn recipe_examples() {
        let v = vf_plane(&b(2), PlanePoint::new(1.0, 0.0), Sheet::Upper);
        assert_eq!(v.velocity(), (0.0, 1.0));
        let v = vf_plane(&b(7), PlanePoint::new(1.0, 0.0), Sheet::Upper);
        assert_eq!(v.velocity(), (-1.0, 0.0));
        let v = vf_plane(&b(3), PlanePoint::new(0.0, 1.0), Sheet::Upper);
        assert_eq!(v.velocity(), (1.0, 0.0));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(vf_dual(&b(5), MinkVec::new(0.3, 2.0, -1.0)), MinkVec::new(1.0, 0.0, 0.0));
        assert_eq!(vf_dual(&b(1), MinkVec::new(1.0, 2.0, 3.0)), MinkVec::new(-1.0, -2.0, -3.0));
        assert_eq!(vf_dual(&b(2), MinkVec::new(1.0, 0.0, 0.0)), MinkVec::new(0.0, 1.0, 0.0));
    }

    #[test]
    fn recipe_matches_closed_forms() {
        let pts = [PlanePoint::new(0.4, -1.3), PlanePoint::new(-2.0, 0.5)];
        for i in 1..=7 {
            for &p in &pts {
                for sheet in [Sheet::Upper, Sheet::Lower] {
                    let v = vf_plane(&b(i), p, sheet);
                    let (cx, cy) = basis_plane_field(i, p, sheet);
                    assert!((v.vx - cx).abs() + (v.vy - cy).abs() < 1e-14, "plane field {i}");
                }
                let d = MinkVec::new(p.x, p.y, 0.7);
                let diff = vf_dual(&b(i), d) - basis_dual_field(i, d);
                assert!(diff.euclid_norm2() < 1e-28, "dual field {i}");
            }
        }
    }

    #[test]
    fn fixed_energy_fields() {
        let g = fixed_energy_algebra(-1.0).unwrap();
        let v = vf_plane(&g[1], PlanePoint::new(1.0, 0.0), Sheet::Upper);
        assert!(v.vx.abs() < 1e-15 && v.vy.abs() < 1e-15);
        let p = PlanePoint::new(0.3, 0.8);
        let v = vf_plane(&g[0], p, Sheet::Upper);
        assert_eq!(v.velocity(), (-0.8, 0.3));
        let g = fixed_energy_algebra(1.0).unwrap();
        let v = vf_plane(&g[1], p, fixed_energy_sheet(1.0));
        let (cx, cy) = fixed_energy_plane_field(1, 1.0, p);
        assert!((v.vx + cx).abs() < 1e-15 && (v.vy + cy).abs() < 1e-15);
    }

    #[test]
    fn flow_matches_group_action() {
        let p = PlanePoint::new(1.0, 0.0);
        let by_flow = flow(&b(7), p, 0.1, Sheet::Upper).unwrap();
        let by_exp = act_plane(&exp(&b(7), 0.1), p, Sheet::Upper).unwrap();
        assert!(by_flow.dist(by_exp) < 1e-8);
        let rot = flow(&b(2), p, 0.5, Sheet::Upper).unwrap();
        assert!(rot.dist(PlanePoint::new(0.5f64.cos(), 0.5f64.sin())) < 1e-12);
        assert_eq!(flow(&AlgebraElement::default(), p, 1.0, Sheet::Upper).unwrap(), p);
    }

    #[test]
    fn flow_reports_chart_exit() {
        // Along r²∂r the radius obeys r′ = r², so r = 1/(1 − t) blows up at t = 1.
        let err = flow(&b(7).scale(-1.0), PlanePoint::new(1.0, 0.0), 2.0, Sheet::Upper).unwrap_err();
        assert!(matches!(err, Error::FlowChartExit { t } if t > 0.9 && t < 1.1), "{err:?}");
    }

    #[test]
    fn dual_flows_preserve_energy_quadric() {
        for e in [-1.0, 0.5] {
            let start = if e < 0.0 {
                crate::orbit::KeplerOrbit::new(0.3, 0.0, 1.0 / (1.0 - 0.3f64.powi(2)).sqrt()).unwrap()
            } else {
                crate::orbit::KeplerOrbit::new(2.0, 0.0, 1.0).unwrap()
            };
            let e = start.energy();
            let signed = if e < 0.0 { start.dual() } else { MinkVec::new(start.a(), start.b(), -start.c()) };
            assert!(energy_quadric(signed, e).abs() < 1e-12);
            for g in fixed_energy_algebra(e).unwrap() {
                for v in flow_dual(&g, signed, 0.5, 500) {
                    assert!(energy_quadric(v, e).abs() < 1e-9);
                }
            }
        }
    }
}
