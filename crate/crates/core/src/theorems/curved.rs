//! Central projection of the Kepler problem on a surface of constant
//! curvature `k`: orbits of angular momentum `M` and curved energy `E_k`
//! project to planar Kepler orbits with dual point on
//! `a² + b² − (c − |E_k|)² = −E_k² − k`.

use crate::minkowski::MinkVec;

/// `E_k = E + k M²/2`.
pub fn curved_energy(e: f64, m: f64, k: f64) -> f64 {
    e + 0.5 * k * m * m
}

/// `|a² + b² − (c − |E_k|)² + E_k² + k|` for the signed representative `v`,
/// whose `c` is positive for negative `E_k`.
pub fn curved_quadric_residual(v: MinkVec, e_k: f64, k: f64) -> f64 {
    let shifted = v.c - e_k.abs();
    (v.a * v.a + v.b * v.b - shifted * shifted + e_k * e_k + k).abs()
}

/// Curvature for which the orbits of minor axis `B` are the zero-energy
/// curved family: `k = 4/B²`.
pub fn minor_axis_curvature(minor_axis: f64) -> f64 {
    4.0 / (minor_axis * minor_axis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::envelope::minor_axis_member;

    #[test]
    fn energies() {
        assert_eq!(curved_energy(-0.3, 2.0, 0.0), -0.3);
        assert_eq!(curved_energy(-0.5, 1.0, 1.0), 0.0);
        assert_eq!(curved_energy(1.0, 2.0, -1.0), -1.0);
    }

    #[test]
    fn flat_limit_is_the_energy_hyperboloid() {
        assert_eq!(curved_quadric_residual(MinkVec::new(0.0, 0.0, 1.0), -0.5, 0.0), 0.0);
        let v = MinkVec::new(3f64.sqrt(), 0.0, -1.0);
        assert!(curved_quadric_residual(v, 1.0, 0.0) < 1e-15);
    }

    #[test]
    fn minor_axis_family_is_a_zero_energy_curved_family() {
        let big_b = 1.6;
        let k = minor_axis_curvature(big_b);
        for b in [-1.0, 0.0, 0.4, 2.0] {
            let o = minor_axis_member(big_b, 0.8, b).unwrap();
            assert!(curved_quadric_residual(o.dual(), 0.0, k) < 1e-12);
            assert!(curved_quadric_residual(o.dual(), 0.0, -k) > 1.0);
        }
    }
}
