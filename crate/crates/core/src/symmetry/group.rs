use nalgebra::{Matrix3, Matrix4, RowVector3, Vector3};
use serde::{Deserialize, Serialize};

use super::algebra::{expm, AlgebraElement};
use crate::error::{Error, Result};
use crate::minkowski::{metric, MinkVec};
use crate::orbit::{ConePoint, PlanePoint, Sheet};

/// `|λ + bᵀq| ≤ CHART_TOL·‖q‖` means the image left the affine chart.
pub const CHART_TOL: f64 = 1e-12;

/// Group element `[[A, 0], [bᵀ, λ]]` acting on the cone by
/// `q ↦ A q / (λ + bᵀq)` and on dual points by `p ↦ (λ p + bᵀ) A⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement {
    m: Matrix4<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConformalCheck {
    /// Conformal factor κ in `AᵀJA = κJ`.
    pub kappa: f64,
    /// `‖AᵀJA − κJ‖ / |κ|`.
    pub residual: f64,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement { m: Matrix4::identity() }
    }

    pub fn from_blocks(a: Matrix3<f64>, b: Vector3<f64>, lambda: f64) -> Result<Self> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::NotGroupElement);
        }
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&a);
        m.fixed_view_mut::<1, 3>(3, 0).copy_from(&b.transpose());
        m[(3, 3)] = lambda;
        Ok(GroupElement { m })
    }

    pub fn from_matrix(m: Matrix4<f64>) -> Result<Self> {
        let top_right = m[(0, 3)].abs() + m[(1, 3)].abs() + m[(2, 3)].abs();
        if top_right > 1e-12 * m.norm() || m[(3, 3)] == 0.0 || m.iter().any(|v| !v.is_finite()) {
            return Err(Error::NotGroupElement);
        }
        let mut m = m;
        for i in 0..3 {
            m[(i, 3)] = 0.0;
        }
        Ok(GroupElement { m })
    }

    /// The element with `A = id`, `λ = 1`; it sends dual points `p` to `p + b`.
    pub fn dual_translation(b: Vector3<f64>) -> Self {
        GroupElement::from_blocks(Matrix3::identity(), b, 1.0).expect("λ = 1")
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    pub fn a(&self) -> Matrix3<f64> {
        self.m.fixed_view::<3, 3>(0, 0).into_owned()
    }

    pub fn b(&self) -> Vector3<f64> {
        self.m.fixed_view::<1, 3>(3, 0).transpose()
    }

    pub fn lambda(&self) -> f64 {
        self.m[(3, 3)]
    }

    pub fn compose(&self, o: &GroupElement) -> GroupElement {
        GroupElement { m: self.m * o.m }
    }

    pub fn inverse(&self) -> Option<GroupElement> {
        self.m.try_inverse().map(|m| GroupElement { m })
    }

    pub fn conformal_check(&self) -> ConformalCheck {
        let a = self.a();
        let j = metric();
        let g = a.transpose() * j * a;
        let kappa = g[(0, 0)];
        let residual = (g - j * kappa).norm() / kappa.abs().max(f64::MIN_POSITIVE);
        ConformalCheck { kappa, residual }
    }

    /// Image of a cone point; fails when the image leaves the affine chart.
    pub fn act_cone(&self, q: ConePoint) -> Result<ConePoint> {
        let qv = Vector3::new(q.x, q.y, q.z);
        let den = self.lambda() + self.b().dot(&qv);
        if den.abs() <= CHART_TOL * qv.norm() {
            return Err(Error::ChartExit { denominator: den });
        }
        let img = self.a() * qv / den;
        Ok(ConePoint { x: img[0], y: img[1], z: img[2] })
    }

    /// Plane action through the lift of `p` to the given sheet.
    pub fn act_plane(&self, p: PlanePoint, sheet: Sheet) -> Result<PlanePoint> {
        let img = self.act_cone(crate::orbit::lift(p, sheet))?;
        let out = PlanePoint::new(img.x, img.y);
        if !(out.r() > 1e-12 * p.r()) || !out.r().is_finite() {
            return Err(Error::ConeVertex);
        }
        Ok(out)
    }

    /// Dual action `p ↦ (λ p + bᵀ) A⁻¹` on row vectors.
    pub fn act_dual(&self, v: MinkVec) -> Result<MinkVec> {
        let a_inv = self.a().try_inverse().ok_or(Error::NotGroupElement)?;
        let row = (RowVector3::new(v.a, v.b, v.c) * self.lambda() + self.b().transpose()) * a_inv;
        let out = MinkVec::new(row[0], row[1], row[2]);
        if !(out.a.is_finite() && out.b.is_finite() && out.c.is_finite()) {
            return Err(Error::ChartExit { denominator: 0.0 });
        }
        Ok(out)
    }
}

/// `exp(t X)`, validated against the block form.
pub fn exp(x: &AlgebraElement, t: f64) -> GroupElement {
    GroupElement::from_matrix(expm(&(x.matrix() * t))).expect("exponential of an algebra element has block form")
}

pub fn act_plane(g: &GroupElement, p: PlanePoint, sheet: Sheet) -> Result<PlanePoint> {
    g.act_plane(p, sheet)
}

pub fn act_dual(g: &GroupElement, v: MinkVec) -> Result<MinkVec> {
    g.act_dual(v)
}

/// Distance of a plane point from the full conic of `dual`, with either sign
/// of `r`, relative to the size of the terms.
pub fn conic_residual(dual: MinkVec, p: PlanePoint) -> f64 {
    let (ax, by, cr) = (dual.a * p.x, dual.b * p.y, dual.c * p.r());
    let scale = (ax.abs() + by.abs() + cr.abs()).max(1.0);
    let plus = (ax + by + cr - 1.0).abs();
    let minus = (ax + by - cr - 1.0).abs();
    plus.min(minus) / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::KeplerOrbit;

    #[test]
    fn identity_acts_trivially() {
        let g = GroupElement::identity();
        let p = PlanePoint::new(0.3, -0.8);
        assert_eq!(g.act_plane(p, Sheet::Upper).unwrap(), p);
        let v = MinkVec::new(1.0, 2.0, 3.0);
        assert_eq!(g.act_dual(v).unwrap(), v);
    }

    #[test]
    fn dilation_flow() {
        let t = 0.7;
        let g = exp(&AlgebraElement::basis(1), t);
        let img = g.act_plane(PlanePoint::new(1.0, 0.0), Sheet::Upper).unwrap();
        assert!((img.x - t.exp()).abs() < 1e-13 && img.y.abs() < 1e-15);
        let v = g.act_dual(MinkVec::new(1.0, -2.0, 0.5)).unwrap();
        let s = (-t).exp();
        assert!((v - MinkVec::new(s, -2.0 * s, 0.5 * s)).euclid_norm2().sqrt() < 1e-14);
    }

    #[test]
    fn translations_and_rotations() {
        let g = exp(&AlgebraElement::basis(5), 0.4);
        let v = g.act_dual(MinkVec::new(1.0, 2.0, 3.0)).unwrap();
        assert!((v - MinkVec::new(1.4, 2.0, 3.0)).euclid_norm2().sqrt() < 1e-15);
        let g = exp(&AlgebraElement::basis(2), 0.5);
        let a = g.a();
        assert!((a[(0, 0)] - 0.5f64.cos()).abs() < 1e-15 && (a[(1, 0)] - 0.5f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn flattening_translation() {
        let m2 = 1.0;
        let g = GroupElement::dual_translation(Vector3::new(0.0, 0.0, -1.0 / m2));
        let v = g.act_dual(MinkVec::new(0.5, 0.0, 1.0 / m2)).unwrap();
        assert_eq!(v, MinkVec::new(0.5, 0.0, 0.0));
    }

    #[test]
    fn chart_exit_is_reported() {
        let g = GroupElement::from_blocks(Matrix3::identity(), Vector3::new(-1.0, 0.0, 0.0), 1.0).unwrap();
        assert!(matches!(g.act_plane(PlanePoint::new(1.0, 0.0), Sheet::Upper), Err(Error::ChartExit { .. })));
    }

    #[test]
    fn one_parameter_subgroup() {
        let x = AlgebraElement::new([0.3, -0.5, 0.2, 0.7, -0.1, 0.4, 0.25]);
        let lhs = exp(&x, 0.3).compose(&exp(&x, 0.9));
        let rhs = exp(&x, 1.2);
        assert!((lhs.matrix() - rhs.matrix()).norm() < 1e-11);
    }

    #[test]
    fn conformal_factor() {
        let x = AlgebraElement::new([0.3, -0.5, 0.2, 0.7, -0.1, 0.4, 0.25]);
        let c = exp(&x, 1.0).conformal_check();
        assert!(c.residual < 1e-12);
        assert!((c.kappa - 0.15f64.exp()).abs() < 1e-13);
    }

    #[test]
    fn images_of_orbit_points_lie_on_image_conic() {
        let o = KeplerOrbit::new(0.3, -0.2, 1.0).unwrap();
        let g = exp(&AlgebraElement::new([0.1, 0.2, -0.3, 0.1, 0.05, -0.02, 0.1]), 1.0);
        let dual = g.act_dual(o.dual()).unwrap();
        for p in o.sample(20).unwrap() {
            let img = g.act_plane(p, Sheet::Upper).unwrap();
            assert!(conic_residual(dual, img) < 1e-12);
        }
    }
}
