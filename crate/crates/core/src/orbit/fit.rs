use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{KeplerOrbit, PlanePoint};
use crate::error::{Error, Result};
use crate::minkowski::MinkVec;

/// Ratio of smallest to largest singular value below which the design
/// matrix counts as rank deficient.
const RANK_TOL: f64 = 1e-12;
/// `|c| ≤ LINE_TOL·√(a²+b²)` classifies the fit as a line.
const LINE_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FitShape {
    Orbit {
        orbit: KeplerOrbit,
    },
    /// The line `a x + b y = 1`.
    Line {
        a: f64,
        b: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub shape: FitShape,
    /// Raw least-squares solution, before sign canonicalization.
    pub dual: MinkVec,
    /// Root mean square of `a xᵢ + b yᵢ + c rᵢ − 1`.
    pub residual: f64,
}

impl Fit {
    pub fn orbit(&self) -> Option<KeplerOrbit> {
        match self.shape {
            FitShape::Orbit { orbit } => Some(orbit),
            FitShape::Line { .. } => None,
        }
    }

    pub fn is_line(&self) -> bool {
        matches!(self.shape, FitShape::Line { .. })
    }
}

/// Least-squares fit of `a x + b y + c r = 1` through the points.
pub fn fit(points: &[PlanePoint]) -> Result<Fit> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: points.len() });
    }
    if points.iter().any(|p| p.r() == 0.0) {
        return Err(Error::Origin);
    }
    let n = points.len();
    let design = DMatrix::from_fn(n, 3, |i, j| match j {
        0 => points[i].x,
        1 => points[i].y,
        _ => points[i].r(),
    });
    let rhs = DVector::from_element(n, 1.0);
    let svd = design.clone().svd(true, true);
    let sv = &svd.singular_values;
    let (smax, smin) = (sv.max(), sv.min());
    if smax == 0.0 || smin <= RANK_TOL * smax {
        return Err(Error::RankDeficient);
    }
    let sol = svd.solve(&rhs, 0.0).map_err(|_| Error::RankDeficient)?;
    let residual = ((&design * &sol - &rhs).norm_squared() / n as f64).sqrt();
    let dual = MinkVec::new(sol[0], sol[1], sol[2]);
    let shape = if dual.c.abs() <= LINE_TOL * dual.a.hypot(dual.b) {
        FitShape::Line { a: dual.a, b: dual.b }
    } else {
        FitShape::Orbit { orbit: KeplerOrbit::from_dual(dual)? }
    };
    Ok(Fit { shape, dual, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_samples() {
        let o = KeplerOrbit::new(0.5, 0.0, 1.0).unwrap();
        let f = fit(&o.sample(5).unwrap()).unwrap();
        let g = f.orbit().unwrap();
        assert!((g.dual() - o.dual()).euclid_norm2().sqrt() < 1e-12);
        assert!(f.residual <= 1e-12);
    }

    #[test]
    fn collinear_points_give_a_line() {
        let pts = [PlanePoint::new(2.0, 0.0), PlanePoint::new(2.0, 1.0), PlanePoint::new(2.0, -3.0)];
        let f = fit(&pts).unwrap();
        match f.shape {
            FitShape::Line { a, b } => {
                assert!((a - 0.5).abs() < 1e-12 && b.abs() < 1e-12);
            }
            other => panic!("expected a line, got {other:?}"),
        }
    }

    #[test]
    fn coincident_points_are_rank_deficient() {
        let p = PlanePoint::new(1.0, 2.0);
        assert_eq!(fit(&[p, p, p, p]), Err(Error::RankDeficient));
        assert!(matches!(fit(&[p, p]), Err(Error::TooFewPoints { .. })));
    }

    #[test]
    fn perturbed_samples_stay_close() {
        let o = KeplerOrbit::new(0.5, 0.0, 1.0).unwrap();
        let pts: Vec<_> = o
            .sample(24)
            .unwrap()
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                let s = if i % 2 == 0 { 1e-6 } else { -1e-6 };
                PlanePoint::new(p.x + s, p.y - s)
            })
            .collect();
        let f = fit(&pts).unwrap();
        assert!(f.residual <= 1e-5);
        assert!((f.orbit().unwrap().dual() - o.dual()).euclid_norm2().sqrt() <= 1e-4);
    }
}
