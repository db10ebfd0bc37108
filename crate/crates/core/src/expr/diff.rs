use std::collections::BTreeSet;

use super::{Expr, ExprError, Func, Node, Number};

pub(crate) fn diff(e: &Expr, var: &str) -> Expr {
    match e.node() {
        Node::Const(_) => Expr::zero(),
        Node::Var(v) => {
            if &**v == var {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Node::Sum(xs) => Expr::sum(xs.iter().map(|x| diff(x, var))),
        Node::Product(xs) => {
            let mut terms = Vec::with_capacity(xs.len());
            for (i, xi) in xs.iter().enumerate() {
                let dxi = diff(xi, var);
                if dxi.is_zero_const() {
                    continue;
                }
                let factors = xs.iter().enumerate().map(|(j, xj)| if i == j { dxi.clone() } else { xj.clone() });
                terms.push(Expr::product(factors));
            }
            Expr::sum(terms)
        }
        Node::Quotient(num, den) => {
            let dn = diff(num, var);
            let dd = diff(den, var);
            if dd.is_zero_const() {
                return Expr::quotient(dn, den.clone());
            }
            let top = dn * den.clone() - num.clone() * dd;
            Expr::quotient(top, den.clone().powi(2))
        }
        Node::Power(base, n) => {
            let db = diff(base, var);
            if db.is_zero_const() {
                return Expr::zero();
            }
            Expr::product([Expr::constant(*n), Expr::pow(base.clone(), *n - Number::ONE), db])
        }
        Node::Func(f, arg) => {
            let da = diff(arg, var);
            if da.is_zero_const() {
                return Expr::zero();
            }
            let outer = match f {
                Func::Sin => arg.clone().cos(),
                Func::Cos => -arg.clone().sin(),
                Func::Sqrt => Expr::quotient(Expr::ratio(1, 2), e.clone()),
                Func::Ln => arg.clone().recip(),
            };
            outer * da
        }
    }
}

/// Jet coordinates of an ODE `y^(n) = rhs(x, y, y', …, y^(n-1))`.
///
/// `dependent` holds the names of y, y′, …, y^(n−1); the total derivative
/// substitutes `rhs` wherever y^(n) would appear.
#[derive(Clone, Debug)]
pub struct JetContext {
    independent: String,
    dependent: Vec<String>,
    rhs: Expr,
}

impl JetContext {
    /// `dependent` lists y, y′, …, y^(n−1). Every free variable of `rhs` must
    /// be one of the jet coordinates or one of `params`.
    pub fn new(independent: &str, dependent: &[&str], rhs: Expr, params: &[&str]) -> Result<Self, ExprError> {
        let allowed: BTreeSet<&str> =
            std::iter::once(independent).chain(dependent.iter().copied()).chain(params.iter().copied()).collect();
        if let Some(bad) = rhs.free_vars().into_iter().find(|v| !allowed.contains(v.as_str())) {
            return Err(ExprError::UndeclaredVariable(bad));
        }
        Ok(JetContext {
            independent: independent.to_string(),
            dependent: dependent.iter().map(|s| s.to_string()).collect(),
            rhs,
        })
    }

    /// Context of `y″ = f(x, y, p)` with `p = y′`.
    pub fn order2(x: &str, y: &str, p: &str, f: Expr, params: &[&str]) -> Result<Self, ExprError> {
        Self::new(x, &[y, p], f, params)
    }

    /// Context of `y‴ = F(t, y, y′, y″)`.
    pub fn order3(t: &str, y: &str, y1: &str, y2: &str, f: Expr, params: &[&str]) -> Result<Self, ExprError> {
        Self::new(t, &[y, y1, y2], f, params)
    }

    pub fn rhs(&self) -> &Expr {
        &self.rhs
    }

    pub fn independent(&self) -> &str {
        &self.independent
    }

    pub fn dependent(&self) -> &[String] {
        &self.dependent
    }
}

/// `∂ₓe + y′∂_y e + … + rhs·∂_{y^(n−1)} e`.
pub fn total_derivative(e: &Expr, ctx: &JetContext) -> Expr {
    let mut terms = vec![e.diff(&ctx.independent)];
    let n = ctx.dependent.len();
    for (k, name) in ctx.dependent.iter().enumerate() {
        let partial = e.diff(name);
        if partial.is_zero_const() {
            continue;
        }
        let next = if k + 1 < n { Expr::var(&ctx.dependent[k + 1]) } else { ctx.rhs.clone() };
        terms.push(next * partial);
    }
    Expr::sum(terms)
}
