use std::fmt;

use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, Signed, ToPrimitive, Zero};

/// A numeric constant: exact rational when possible, IEEE double otherwise.
///
/// Arithmetic on two rationals stays exact until an `i64` overflow, at which
/// point the result degrades to a real.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Number {
    Rational(Rational64),
    Real(f64),
}

impl Number {
    pub const ZERO: Number = Number::Rational(Rational64::new_raw(0, 1));
    pub const ONE: Number = Number::Rational(Rational64::new_raw(1, 1));

    pub fn int(n: i64) -> Self {
        Number::Rational(Rational64::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Number::Rational(Rational64::new(num, den))
    }

    /// Wraps a double, recovering an exact rational for integers and dyadic
    /// values that fit comfortably in `i64`.
    pub fn real(x: f64) -> Self {
        if x.is_finite() && x.fract() == 0.0 && x.abs() < 1e15 {
            return Number::int(x as i64);
        }
        Number::Real(x)
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Number::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Number::Real(x) => x,
        }
    }

    pub fn is_zero(self) -> bool {
        match self {
            Number::Rational(r) => r.is_zero(),
            Number::Real(x) => x == 0.0,
        }
    }

    pub fn is_one(self) -> bool {
        matches!(self, Number::Rational(r) if r == Rational64::from_integer(1))
            || matches!(self, Number::Real(x) if x == 1.0)
    }

    pub fn is_negative(self) -> bool {
        match self {
            Number::Rational(r) => r.is_negative(),
            Number::Real(x) => x < 0.0,
        }
    }

    pub fn as_integer(self) -> Option<i64> {
        match self {
            Number::Rational(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    /// Exact quotient; `None` on division by zero.
    pub fn checked_div(self, other: Number) -> Option<Number> {
        if other.is_zero() {
            return None;
        }
        if let (Number::Rational(a), Number::Rational(b)) = (self, other) {
            if let Some(q) = a.checked_div(&b) {
                return Some(Number::Rational(q));
            }
        }
        Some(Number::Real(self.to_f64() / other.to_f64()))
    }

    /// Exact power when the exponent is an integer and the base rational;
    /// `None` when the result would need a real root or division by zero.
    pub fn checked_pow(self, exp: Number) -> Option<Number> {
        let n = exp.as_integer()?;
        if self.is_zero() && n < 0 {
            return None;
        }
        match self {
            Number::Rational(r) => {
                let mut acc = Rational64::from_integer(1);
                let base = if n < 0 { r.recip() } else { r };
                for _ in 0..n.unsigned_abs() {
                    acc = acc.checked_mul(&base)?;
                }
                Some(Number::Rational(acc))
            }
            Number::Real(x) => Some(Number::Real(x.powi(n as i32))),
        }
    }
}

impl std::ops::Add for Number {
    type Output = Number;
    fn add(self, other: Number) -> Number {
        if let (Number::Rational(a), Number::Rational(b)) = (self, other) {
            if let Some(s) = a.checked_add(&b) {
                return Number::Rational(s);
            }
        }
        Number::Real(self.to_f64() + other.to_f64())
    }
}

impl std::ops::Mul for Number {
    type Output = Number;
    fn mul(self, other: Number) -> Number {
        if let (Number::Rational(a), Number::Rational(b)) = (self, other) {
            if let Some(p) = a.checked_mul(&b) {
                return Number::Rational(p);
            }
        }
        Number::Real(self.to_f64() * other.to_f64())
    }
}

impl std::ops::Neg for Number {
    type Output = Number;
    fn neg(self) -> Number {
        match self {
            Number::Rational(r) => Number::Rational(-r),
            Number::Real(x) => Number::Real(-x),
        }
    }
}

impl std::ops::Sub for Number {
    type Output = Number;
    fn sub(self, other: Number) -> Number {
        self + (-other)
    }
}

impl From<i64> for Number {
    fn from(n: i64) -> Self {
        Number::int(n)
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Rational(r) if r.is_integer() => write!(f, "{}", r.to_integer()),
            Number::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Number::Real(x) => write!(f, "{x:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_stays_exact() {
        let a = Number::ratio(1, 3);
        let b = Number::ratio(1, 6);
        assert_eq!(a + b, Number::ratio(1, 2));
        assert_eq!(a * b, Number::ratio(1, 18));
        assert_eq!(a.checked_div(b), Some(Number::int(2)));
        assert_eq!(Number::ratio(2, 3).checked_pow(Number::int(-2)), Some(Number::ratio(9, 4)));
    }

    #[test]
    fn overflow_degrades_to_real() {
        let big = Number::int(i64::MAX / 2);
        match big * Number::int(4) {
            Number::Real(x) => assert!((x - (i64::MAX / 2) as f64 * 4.0).abs() < 1e6),
            other => panic!("expected real, got {other:?}"),
        }
    }

    #[test]
    fn division_by_zero_is_none() {
        assert_eq!(Number::int(1).checked_div(Number::ZERO), None);
        assert_eq!(Number::ZERO.checked_pow(Number::int(-1)), None);
    }
}
