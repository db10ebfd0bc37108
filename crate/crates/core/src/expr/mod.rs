//! A small computer-algebra core.
//!
//! Expressions are immutable trees over named variables with exact rational
//! constants. The node set is deliberately closed: constants, variables,
//! sums, products, quotients, powers with a constant exponent, and the unary
//! functions `sin`, `cos`, `sqrt` and `ln`. Differentiation never leaves this
//! set, and simplification is limited to local rules applied by the smart
//! constructors (dropping zeros and ones, folding constant subtrees).
//! Equality of two expressions is decided numerically, see [`is_zero`].

mod diff;
mod eval;
mod number;
mod parse;

use std::collections::BTreeSet;
use std::fmt;
use std::ops;
use std::sync::Arc;

pub use diff::{total_derivative, JetContext};
pub use eval::{is_zero, max_abs_on_box, Bindings, EvalBox, EvalError, ZeroTest};
pub use number::Number;
pub use parse::{parse, ParseError};

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Sqrt,
    Ln,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
            Func::Ln => "ln",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        match name {
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "sqrt" => Some(Func::Sqrt),
            "ln" => Some(Func::Ln),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Const(Number),
    Var(Arc<str>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Quotient(Expr, Expr),
    Power(Expr, Number),
    Func(Func, Expr),
}

/// Shared, immutable expression tree. Cloning is a reference-count bump.
#[derive(Clone, Debug, PartialEq)]
pub struct Expr(Arc<Node>);

/// Errors raised while building ODE contexts or other derived expressions.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("right-hand side uses variable `{0}` which is neither a jet variable nor a declared parameter")]
    UndeclaredVariable(String),
}

impl Expr {
    fn from_node(node: Node) -> Self {
        Expr(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn constant(n: impl Into<Number>) -> Self {
        Expr::from_node(Node::Const(n.into()))
    }

    pub fn int(n: i64) -> Self {
        Expr::constant(Number::int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Expr::constant(Number::ratio(num, den))
    }

    pub fn real(x: f64) -> Self {
        Expr::constant(Number::real(x))
    }

    pub fn zero() -> Self {
        Expr::constant(Number::ZERO)
    }

    pub fn one() -> Self {
        Expr::constant(Number::ONE)
    }

    pub fn var(name: &str) -> Self {
        Expr::from_node(Node::Var(Arc::from(name)))
    }

    pub fn as_number(&self) -> Option<Number> {
        match self.node() {
            Node::Const(n) => Some(*n),
            _ => None,
        }
    }

    pub fn is_zero_const(&self) -> bool {
        self.as_number().is_some_and(Number::is_zero)
    }

    pub fn is_one_const(&self) -> bool {
        self.as_number().is_some_and(Number::is_one)
    }

    /// Sum with flattening and constant folding.
    pub fn sum(terms: impl IntoIterator<Item = Expr>) -> Self {
        let mut constant = Number::ZERO;
        let mut rest = Vec::new();
        for t in terms {
            match t.node() {
                Node::Const(n) => constant = constant + *n,
                Node::Sum(inner) => {
                    for u in inner {
                        match u.node() {
                            Node::Const(n) => constant = constant + *n,
                            _ => rest.push(u.clone()),
                        }
                    }
                }
                _ => rest.push(t),
            }
        }
        if !constant.is_zero() {
            rest.push(Expr::constant(constant));
        }
        match rest.len() {
            0 => Expr::zero(),
            1 => rest.pop().unwrap(),
            _ => Expr::from_node(Node::Sum(rest)),
        }
    }

    /// Product with flattening, constant folding and the `0·x → 0` rule.
    pub fn product(factors: impl IntoIterator<Item = Expr>) -> Self {
        let mut constant = Number::ONE;
        let mut rest = Vec::new();
        for f in factors {
            match f.node() {
                Node::Const(n) => constant = constant * *n,
                Node::Product(inner) => {
                    for u in inner {
                        match u.node() {
                            Node::Const(n) => constant = constant * *n,
                            _ => rest.push(u.clone()),
                        }
                    }
                }
                _ => rest.push(f),
            }
        }
        if constant.is_zero() {
            return Expr::zero();
        }
        if !constant.is_one() {
            rest.insert(0, Expr::constant(constant));
        }
        match rest.len() {
            0 => Expr::one(),
            1 => rest.pop().unwrap(),
            _ => Expr::from_node(Node::Product(rest)),
        }
    }

    /// Quotient. Division by a literal zero is kept in the tree so that
    /// evaluation reports it.
    pub fn quotient(num: Expr, den: Expr) -> Self {
        if den.is_one_const() {
            return num;
        }
        if num.is_zero_const() && !den.is_zero_const() {
            return Expr::zero();
        }
        if let (Some(a), Some(b)) = (num.as_number(), den.as_number()) {
            if let Some(q) = a.checked_div(b) {
                return Expr::constant(q);
            }
        }
        Expr::from_node(Node::Quotient(num, den))
    }

    /// Power with a constant exponent; `x^1 → x`, `x^0 → 1`.
    pub fn pow(base: Expr, exp: impl Into<Number>) -> Self {
        let exp = exp.into();
        if exp.is_one() {
            return base;
        }
        if exp.is_zero() {
            return Expr::one();
        }
        if let Some(b) = base.as_number() {
            if let Some(p) = b.checked_pow(exp) {
                return Expr::constant(p);
            }
        }
        Expr::from_node(Node::Power(base, exp))
    }

    pub fn func(f: Func, arg: Expr) -> Self {
        if arg.is_zero_const() {
            match f {
                Func::Sin | Func::Sqrt => return Expr::zero(),
                Func::Cos => return Expr::one(),
                Func::Ln => {}
            }
        }
        if arg.is_one_const() {
            match f {
                Func::Ln => return Expr::zero(),
                Func::Sqrt => return Expr::one(),
                _ => {}
            }
        }
        Expr::from_node(Node::Func(f, arg))
    }

    pub fn sin(self) -> Self {
        Expr::func(Func::Sin, self)
    }

    pub fn cos(self) -> Self {
        Expr::func(Func::Cos, self)
    }

    pub fn sqrt(self) -> Self {
        Expr::func(Func::Sqrt, self)
    }

    pub fn ln(self) -> Self {
        Expr::func(Func::Ln, self)
    }

    pub fn powi(self, n: i64) -> Self {
        Expr::pow(self, Number::int(n))
    }

    pub fn recip(self) -> Self {
        Expr::quotient(Expr::one(), self)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self.node() {
            Node::Const(_) => {}
            Node::Var(v) => {
                out.insert(v.to_string());
            }
            Node::Sum(xs) | Node::Product(xs) => xs.iter().for_each(|x| x.collect_vars(out)),
            Node::Quotient(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Node::Power(a, _) | Node::Func(_, a) => a.collect_vars(out),
        }
    }

    /// Replaces every occurrence of `var` with `with`, re-running the local
    /// simplification rules on the way up.
    pub fn substitute(&self, var: &str, with: &Expr) -> Expr {
        match self.node() {
            Node::Const(_) => self.clone(),
            Node::Var(v) if &**v == var => with.clone(),
            Node::Var(_) => self.clone(),
            Node::Sum(xs) => Expr::sum(xs.iter().map(|x| x.substitute(var, with))),
            Node::Product(xs) => Expr::product(xs.iter().map(|x| x.substitute(var, with))),
            Node::Quotient(a, b) => Expr::quotient(a.substitute(var, with), b.substitute(var, with)),
            Node::Power(a, n) => Expr::pow(a.substitute(var, with), *n),
            Node::Func(f, a) => Expr::func(*f, a.substitute(var, with)),
        }
    }

    /// Number of nodes, counting shared subtrees once per occurrence.
    pub fn size(&self) -> usize {
        1 + match self.node() {
            Node::Const(_) | Node::Var(_) => 0,
            Node::Sum(xs) | Node::Product(xs) => xs.iter().map(Expr::size).sum(),
            Node::Quotient(a, b) => a.size() + b.size(),
            Node::Power(a, _) | Node::Func(_, a) => a.size(),
        }
    }

    pub fn diff(&self, var: &str) -> Expr {
        diff::diff(self, var)
    }

    pub fn eval(&self, bindings: &Bindings) -> Result<f64, EvalError> {
        eval::eval(self, bindings)
    }
}

impl From<Number> for Expr {
    fn from(n: Number) -> Self {
        Expr::constant(n)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::sum([self, rhs])
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::sum([self, -rhs])
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::product([self, rhs])
    }
}

impl ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::quotient(self, rhs)
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::product([Expr::int(-1), self])
    }
}

impl ops::Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        Expr::sum([self.clone(), rhs.clone()])
    }
}

impl ops::Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        self.clone() - rhs.clone()
    }
}

impl ops::Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        Expr::product([self.clone(), rhs.clone()])
    }
}

impl ops::Div for &Expr {
    type Output = Expr;
    fn div(self, rhs: &Expr) -> Expr {
        Expr::quotient(self.clone(), rhs.clone())
    }
}

// Printing is fully parenthesized wherever precedence could matter, so the
// output always parses back to a tree with the same value.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const(n) => {
                if n.is_negative() || matches!(n, Number::Rational(r) if !r.is_integer()) {
                    write!(f, "({n})")
                } else {
                    write!(f, "{n}")
                }
            }
            Node::Var(v) => write!(f, "{v}"),
            Node::Sum(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Node::Product(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    match x.node() {
                        Node::Sum(_) | Node::Quotient(..) => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
            Node::Quotient(a, b) => write!(f, "({a})/({b})"),
            Node::Power(a, n) => {
                match a.node() {
                    Node::Var(_) | Node::Func(..) => write!(f, "{a}")?,
                    _ => write!(f, "({a})")?,
                }
                match n.as_integer() {
                    Some(k) if k >= 0 => write!(f, "^{k}"),
                    _ => write!(f, "^({n})"),
                }
            }
            Node::Func(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
