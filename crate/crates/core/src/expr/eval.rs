use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Expr, Func, Node, Number};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of negative value {0}")]
    SqrtOfNegative(f64),
    #[error("logarithm of non-positive value {0}")]
    LogOfNonPositive(f64),
    #[error("fractional power {exp} of negative base {base}")]
    NegativeBaseFractionalPower { base: f64, exp: f64 },
    #[error("no interval given for variable `{0}`")]
    MissingInterval(String),
    #[error("evaluation of `{expr}` failed at {point}: {source}")]
    AtSample {
        expr: String,
        point: String,
        #[source]
        source: Box<EvalError>,
    },
}

/// Values for named variables.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Bindings(BTreeMap<String, f64>);

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, f64)>) -> Self {
        Bindings(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn set(&mut self, name: &str, value: f64) -> &mut Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl std::fmt::Display for Bindings {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        write!(f, "}}")
    }
}

/// Closed intervals for named variables.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EvalBox(BTreeMap<String, (f64, f64)>);

impl EvalBox {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, lo: f64, hi: f64) -> Self {
        self.0.insert(name.to_string(), (lo.min(hi), lo.max(hi)));
        self
    }

    /// Fixes a variable to a single value.
    pub fn fixed(self, name: &str, value: f64) -> Self {
        self.with(name, value, value)
    }

    pub fn get(&self, name: &str) -> Option<(f64, f64)> {
        self.0.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, (f64, f64))> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Uniform samples of the box from a seeded generator. Variables are drawn
    /// in name order so the same seed always yields the same points.
    pub fn sample(&self, n: usize, seed: u64) -> Vec<Bindings> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                Bindings(
                    self.0
                        .iter()
                        .map(|(k, &(lo, hi))| {
                            let v = if hi > lo { rng.random_range(lo..=hi) } else { lo };
                            (k.clone(), v)
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

pub(crate) fn eval(e: &Expr, b: &Bindings) -> Result<f64, EvalError> {
    let mut ignore = 0.0;
    eval_tracked(e, b, &mut ignore)
}

/// Evaluates `e`, recording the largest magnitude of any intermediate value in
/// `scale`. The scale is what a cancellation-aware zero test compares against.
pub(crate) fn eval_tracked(e: &Expr, b: &Bindings, scale: &mut f64) -> Result<f64, EvalError> {
    let v = match e.node() {
        Node::Const(n) => n.to_f64(),
        Node::Var(name) => b.get(name).ok_or_else(|| EvalError::Unbound(name.to_string()))?,
        Node::Sum(xs) => {
            let mut acc = 0.0;
            for x in xs {
                acc += eval_tracked(x, b, scale)?;
            }
            acc
        }
        Node::Product(xs) => {
            let mut acc = 1.0;
            for x in xs {
                acc *= eval_tracked(x, b, scale)?;
            }
            acc
        }
        Node::Quotient(num, den) => {
            let n = eval_tracked(num, b, scale)?;
            let d = eval_tracked(den, b, scale)?;
            if d == 0.0 {
                return Err(EvalError::DivisionByZero);
            }
            n / d
        }
        Node::Power(base, exp) => power(eval_tracked(base, b, scale)?, *exp)?,
        Node::Func(f, arg) => {
            let x = eval_tracked(arg, b, scale)?;
            match f {
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Sqrt if x < 0.0 => return Err(EvalError::SqrtOfNegative(x)),
                Func::Sqrt => x.sqrt(),
                Func::Ln if x <= 0.0 => return Err(EvalError::LogOfNonPositive(x)),
                Func::Ln => x.ln(),
            }
        }
    };
    if v.is_finite() {
        *scale = scale.max(v.abs());
    }
    Ok(v)
}

fn power(base: f64, exp: Number) -> Result<f64, EvalError> {
    if base == 0.0 && exp.is_negative() {
        return Err(EvalError::DivisionByZero);
    }
    if let Some(k) = exp.as_integer() {
        if let Ok(k) = i32::try_from(k) {
            return Ok(base.powi(k));
        }
        return Ok(base.powf(k as f64));
    }
    if base >= 0.0 {
        return Ok(base.powf(exp.to_f64()));
    }
    // Negative base: real only for rationals with odd denominator.
    match exp {
        Number::Rational(r) if r.denom() % 2 != 0 => {
            let mag = (-base).powf(exp.to_f64());
            Ok(if r.numer() % 2 == 0 { mag } else { -mag })
        }
        _ => Err(EvalError::NegativeBaseFractionalPower { base, exp: exp.to_f64() }),
    }
}

/// Settings for the randomized zero test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroTest {
    pub trials: usize,
    pub rel_tol: f64,
    pub seed: u64,
}

impl Default for ZeroTest {
    fn default() -> Self {
        ZeroTest { trials: 16, rel_tol: 1e-9, seed: 0x5eed }
    }
}

impl ZeroTest {
    /// Largest value of `|e| / (1 + largest intermediate)` over the sample
    /// points. Evaluation failures are returned with the offending point.
    pub fn worst_residual(&self, e: &Expr, domain: &EvalBox) -> Result<f64, EvalError> {
        for v in e.free_vars() {
            if domain.get(&v).is_none() {
                return Err(EvalError::MissingInterval(v));
            }
        }
        let mut worst: f64 = 0.0;
        for point in domain.sample(self.trials, self.seed) {
            let mut scale = 0.0;
            let v = eval_tracked(e, &point, &mut scale).map_err(|err| EvalError::AtSample {
                expr: e.to_string(),
                point: point.to_string(),
                source: Box::new(err),
            })?;
            let rel = v.abs() / (1.0 + scale);
            if !rel.is_finite() {
                return Ok(f64::INFINITY);
            }
            worst = worst.max(rel);
        }
        Ok(worst)
    }

    pub fn check(&self, e: &Expr, domain: &EvalBox) -> Result<bool, EvalError> {
        Ok(self.worst_residual(e, domain)? <= self.rel_tol)
    }
}

/// Randomized zero test with default settings.
pub fn is_zero(e: &Expr, domain: &EvalBox) -> Result<bool, EvalError> {
    ZeroTest::default().check(e, domain)
}

/// Largest `|e|` over `n` seeded samples of the box.
pub fn max_abs_on_box(e: &Expr, domain: &EvalBox, n: usize, seed: u64) -> Result<f64, EvalError> {
    for v in e.free_vars() {
        if domain.get(&v).is_none() {
            return Err(EvalError::MissingInterval(v));
        }
    }
    let mut worst: f64 = 0.0;
    for point in domain.sample(n, seed) {
        worst = worst.max(eval(e, &point)?.abs());
    }
    Ok(worst)
}
