use nalgebra::{DMatrix, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of the 7-dimensional algebra, stored by its coordinates
/// `x₁ … x₇` (index 0 … 6). Its matrix is
///
/// ```text
/// [ x₁/4  −x₂    x₃    0     ]
/// [ x₂    x₁/4   x₄    0     ]
/// [ x₃    x₄     x₁/4  0     ]
/// [ x₅    x₆     x₇   −3x₁/4 ]
/// ```
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AlgebraElement {
    pub x: [f64; 7],
}

impl AlgebraElement {
    pub const fn new(x: [f64; 7]) -> Self {
        AlgebraElement { x }
    }

    /// The `i`-th basis element, `i ∈ 1..=7`.
    pub fn basis(i: usize) -> Self {
        assert!((1..=7).contains(&i), "basis index {i} out of range 1..=7");
        let mut x = [0.0; 7];
        x[i - 1] = 1.0;
        AlgebraElement { x }
    }

    pub fn matrix(&self) -> Matrix4<f64> {
        let [x1, x2, x3, x4, x5, x6, x7] = self.x;
        let d = x1 / 4.0;
        Matrix4::new(
            d,
            -x2,
            x3,
            0.0, //
            x2,
            d,
            x4,
            0.0, //
            x3,
            x4,
            d,
            0.0, //
            x5,
            x6,
            x7,
            -3.0 * d,
        )
    }

    /// Reads coordinates back from a matrix, failing if the matrix is not of
    /// the parametrized form.
    pub fn from_matrix(m: &Matrix4<f64>) -> Result<Self> {
        let x =
            AlgebraElement::new([4.0 * m[(0, 0)], m[(1, 0)], m[(0, 2)], m[(1, 2)], m[(3, 0)], m[(3, 1)], m[(3, 2)]]);
        let residual = (x.matrix() - m).norm();
        if residual > 1e-10 * (1.0 + m.norm()) {
            return Err(Error::NotAlgebraElement { residual });
        }
        Ok(x)
    }

    pub fn scale(&self, s: f64) -> Self {
        AlgebraElement::new(self.x.map(|v| v * s))
    }

    pub fn add(&self, o: &AlgebraElement) -> Self {
        let mut x = self.x;
        for (xi, oi) in x.iter_mut().zip(o.x) {
            *xi += oi;
        }
        AlgebraElement::new(x)
    }
}

pub fn algebra(x: [f64; 7]) -> AlgebraElement {
    AlgebraElement::new(x)
}

pub fn commutator(a: &Matrix4<f64>, b: &Matrix4<f64>) -> Matrix4<f64> {
    a * b - b * a
}

/// Matrix commutator, re-expressed in coordinates.
pub fn bracket(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    AlgebraElement::from_matrix(&commutator(&a.matrix(), &b.matrix()))
}

/// Numeric rank and singular-value gap σ₇/σ₈ of the seven basis matrices
/// together with `extra`, each flattened to a 16-vector.
pub fn span_rank_with(extra: &Matrix4<f64>) -> (usize, f64) {
    let mut cols: Vec<f64> = Vec::with_capacity(16 * 8);
    for i in 1..=7 {
        cols.extend(AlgebraElement::basis(i).matrix().iter());
    }
    cols.extend(extra.iter());
    let m = DMatrix::from_column_slice(16, 8, &cols);
    let mut sv: Vec<f64> = m.svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let rank = sv.iter().filter(|s| **s > 1e-10 * sv[0]).count();
    let gap = if sv[7] == 0.0 { f64::INFINITY } else { sv[6] / sv[7] };
    (rank, gap)
}

/// The three generators preserving energy `e`: x₂, x₃ + |E|x₅, x₄ + |E|x₆.
pub fn fixed_energy_algebra(e: f64) -> Result<[AlgebraElement; 3]> {
    if e == 0.0 || !e.is_finite() {
        return Err(Error::ZeroEnergy);
    }
    let k = e.abs();
    let b = AlgebraElement::basis;
    Ok([b(2), b(3).add(&b(5).scale(k)), b(4).add(&b(6).scale(k))])
}

/// Matrix exponential by scaling and squaring of a Taylor series.
pub fn expm(m: &Matrix4<f64>) -> Matrix4<f64> {
    let norm = m.iter().map(|v| v.abs()).fold(0.0, f64::max) * 4.0;
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let scaled = m / 2f64.powi(squarings);
    let mut sum = Matrix4::identity();
    let mut term = Matrix4::identity();
    for k in 1..=30 {
        term = term * scaled / k as f64;
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}
