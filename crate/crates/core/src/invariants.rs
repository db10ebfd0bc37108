//! Relative invariants of second-order ODEs and the third-order central-force
//! equation.
//!
//! Everything is assembled symbolically with [`crate::expr`] and decided by
//! randomized evaluation on a box.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{total_derivative, EvalBox, Expr, JetContext, ZeroTest};
use crate::par::{self, Execution};

/// `y″ = f(x, y, p)` with `p = y′`.
#[derive(Clone, Debug)]
pub struct SecondOrderOde {
    pub ctx: JetContext,
}

/// `y‴ = F(t, y, y′, y″)`.
#[derive(Clone, Debug)]
pub struct ThirdOrderOde {
    pub ctx: JetContext,
}

/// Default jet variable names of generated second-order equations
/// (independent variable, dependent variable, first derivative).
pub const X: &str = "x";
pub const Y: &str = "y";
pub const P: &str = "p";
/// Default names for third-order equations: θ, ρ, ρ′, ρ″.
pub const T: &str = "t";
pub const R: &str = "rho";
pub const R1: &str = "rho1";
pub const R2: &str = "rho2";
/// Radial variable of force laws and potentials.
pub const RADIUS: &str = "r";

impl SecondOrderOde {
    /// Equation in the default variables `x, y, p`.
    pub fn new(f: Expr, params: &[&str]) -> Result<Self> {
        Ok(SecondOrderOde { ctx: JetContext::order2(X, Y, P, f, params)? })
    }

    pub fn with_names(f: Expr, x: &str, y: &str, p: &str, params: &[&str]) -> Result<Self> {
        Ok(SecondOrderOde { ctx: JetContext::order2(x, y, p, f, params)? })
    }

    pub fn rhs(&self) -> &Expr {
        self.ctx.rhs()
    }

    fn y(&self) -> &str {
        &self.ctx.dependent()[0]
    }

    fn p(&self) -> &str {
        &self.ctx.dependent()[1]
    }

    fn total(&self, e: &Expr) -> Expr {
        total_derivative(e, &self.ctx)
    }
}

impl ThirdOrderOde {
    pub fn new(f: Expr, params: &[&str]) -> Result<Self> {
        Ok(ThirdOrderOde { ctx: JetContext::order3(T, R, R1, R2, f, params)? })
    }

    pub fn rhs(&self) -> &Expr {
        self.ctx.rhs()
    }
}

/// `I₁ = f_pppp`.
pub fn i1(ode: &SecondOrderOde) -> Expr {
    let p = ode.p();
    ode.rhs().diff(p).diff(p).diff(p).diff(p)
}

/// `I₂ = D²f_pp − 4Df_py + f_p(4f_py − Df_pp) − 3f_pp f_y + 6f_yy`
/// with `D = ∂x + p∂y + f∂p`.
pub fn i2(ode: &SecondOrderOde) -> Expr {
    let (y, p) = (ode.y(), ode.p());
    let f = ode.rhs();
    let f_p = f.diff(p);
    let f_y = f.diff(y);
    let f_pp = f_p.diff(p);
    let f_py = f_p.diff(y);
    let f_yy = f_y.diff(y);
    let d_fpp = ode.total(&f_pp);
    let dd_fpp = ode.total(&d_fpp);
    let d_fpy = ode.total(&f_py);
    Expr::sum([
        dd_fpp,
        Expr::int(-4) * d_fpy,
        f_p * (Expr::int(4) * f_py - d_fpp),
        Expr::int(-3) * f_pp * f_y,
        Expr::int(6) * f_yy,
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Flatness {
    pub flat: bool,
    /// Worst relative residual of I₁ over the samples.
    pub i1_residual: f64,
    /// Worst relative residual of I₂ over the samples.
    pub i2_residual: f64,
}

/// Both relative invariants vanish on the box.
pub fn is_flat(ode: &SecondOrderOde, domain: &EvalBox, test: &ZeroTest) -> Result<Flatness> {
    let i1_residual = test.worst_residual(&i1(ode), domain)?;
    let i2_residual = test.worst_residual(&i2(ode), domain)?;
    Ok(Flatness { flat: i1_residual <= test.rel_tol && i2_residual <= test.rel_tol, i1_residual, i2_residual })
}

fn at_reciprocal(e: &Expr, var: &str) -> Expr {
    e.substitute(RADIUS, &Expr::var(var).recip())
}

/// Orbits of the central force `f(r)` with angular momentum `m`, as
/// `ρ″ = −ρ − f(1/ρ) / (M² ρ²)` in the default variables (`y = ρ`, `x = θ`).
pub fn fixed_m_ode(force: &Expr, m: f64) -> Result<SecondOrderOde> {
    if m == 0.0 || !m.is_finite() {
        return Err(Error::InvalidArgument("M must be nonzero".into()));
    }
    let y = Expr::var(Y);
    let f = at_reciprocal(force, Y);
    let rhs = -y.clone() - f / (Expr::real(m * m) * y.powi(2));
    SecondOrderOde::new(rhs, &[])
}

/// Number of grid points used to check `E − V > 0` along the ρ interval.
const POSITIVITY_GRID: usize = 257;

/// Orbits of the central force `f(r)` with potential `V` (`V′ = −f`) at
/// energy `e`:
/// `ρ″ = −ρ − f(1/ρ)(ρ′² + ρ²) / (2ρ²(E − V(1/ρ)))`.
///
/// `domain` must give an interval for `y = ρ`; the potential consistency
/// `V′ + f = 0` and the positivity `E − V(1/ρ) > 0` are both checked there.
pub fn fixed_e_ode(force: &Expr, potential: &Expr, e: f64, domain: &EvalBox) -> Result<SecondOrderOde> {
    let (lo, hi) =
        domain.get(Y).ok_or_else(|| Error::InvalidArgument(format!("evaluation box needs an interval for `{Y}`")))?;
    if lo <= 0.0 {
        return Err(Error::InvalidArgument("rho interval must be positive".into()));
    }
    let consistency = potential.diff(RADIUS) + force.clone();
    let r_box = EvalBox::new().with(RADIUS, 1.0 / hi, 1.0 / lo);
    if ZeroTest::default().worst_residual(&consistency, &r_box)? > 1e-9 {
        return Err(Error::InvalidArgument("potential is not an antiderivative of minus the force".into()));
    }

    let kinetic = Expr::real(e) - at_reciprocal(potential, Y);
    let mut min = f64::INFINITY;
    for i in 0..POSITIVITY_GRID {
        let rho = lo + (hi - lo) * i as f64 / (POSITIVITY_GRID - 1) as f64;
        let v = kinetic.eval(&crate::expr::Bindings::from_pairs([(Y, rho)]))?;
        min = min.min(v);
    }
    if !(min > 0.0) {
        return Err(Error::NonPositiveKinetic { min });
    }

    let (y, p) = (Expr::var(Y), Expr::var(P));
    let f = at_reciprocal(force, Y);
    let rhs = -y.clone() - f * (p.powi(2) + y.clone().powi(2)) / (Expr::int(2) * y.powi(2) * kinetic);
    SecondOrderOde::new(rhs, &[])
}

/// The fixed-energy Kepler equation `ρ″ = (ρ² + ρ′²)/(2(ρ + E)) − ρ`, with `E` bound as a number.
pub fn kepler_fixed_e(e: f64) -> Result<SecondOrderOde> {
    let (y, p) = (Expr::var(Y), Expr::var(P));
    let rhs = (y.clone().powi(2) + p.powi(2)) / (Expr::int(2) * (y.clone() + Expr::real(e))) - y;
    SecondOrderOde::new(rhs, &[])
}

/// `ρ‴ = ρ′[(ρ″ + ρ)(f′(ρ)/f(ρ) − 2/ρ) − 1]` where `force_rho` is the force
/// magnitude at `r = 1/ρ`, written in the variable [`R`].
///
/// `rho_range` is checked for zeros of the force.
pub fn central_3rd_order(force_rho: &Expr, rho_range: (f64, f64)) -> Result<ThirdOrderOde> {
    let (lo, hi) = rho_range;
    let mut sign = 0.0;
    for i in 0..POSITIVITY_GRID {
        let rho = lo + (hi - lo) * i as f64 / (POSITIVITY_GRID - 1) as f64;
        let v = force_rho.eval(&crate::expr::Bindings::from_pairs([(R, rho)]))?;
        if v == 0.0 || (sign != 0.0 && v.signum() != sign) {
            return Err(Error::VanishingForce);
        }
        sign = v.signum();
    }
    let (rho, r1, r2) = (Expr::var(R), Expr::var(R1), Expr::var(R2));
    let log_deriv = force_rho.diff(R) / force_rho.clone();
    let rhs = r1 * ((r2 + rho.clone()) * (log_deriv - Expr::int(2) / rho) - Expr::one());
    ThirdOrderOde::new(rhs, &[])
}

/// `F_ρ + D K − (2/3) F_ρ″ K` with `K = (1/6) D F_ρ″ − (1/9) F_ρ″² − (1/2) F_ρ′`.
pub fn wunschmann_residual(ode: &ThirdOrderOde) -> Expr {
    let deps = ode.ctx.dependent();
    let (y, y1, y2) = (&deps[0], &deps[1], &deps[2]);
    let f = ode.rhs();
    let f_y = f.diff(y);
    let f_y1 = f.diff(y1);
    let f_y2 = f.diff(y2);
    let k = Expr::sum([
        Expr::ratio(1, 6) * total_derivative(&f_y2, &ode.ctx),
        Expr::ratio(-1, 9) * f_y2.clone().powi(2),
        Expr::ratio(-1, 2) * f_y1,
    ]);
    Expr::sum([f_y, total_derivative(&k, &ode.ctx), Expr::ratio(-2, 3) * f_y2 * k])
}

/// Sign making the zero-energy orbits of `f = s·r^α` exist near the origin's
/// complement: attractive (`s = −1`) for `α ≤ −1`, repulsive otherwise.
pub fn power_law_sign(alpha: f64) -> f64 {
    if alpha <= -1.0 {
        -1.0
    } else {
        1.0
    }
}

/// `s·r^α` in the variable [`RADIUS`].
pub fn power_force(alpha: f64, sign: f64) -> Expr {
    Expr::real(sign) * Expr::pow(Expr::var(RADIUS), crate::expr::Number::real(alpha))
}

/// A potential of [`power_force`]: `−s r^{α+1}/(α+1)`, or `−s ln r` at `α = −1`.
pub fn power_potential(alpha: f64, sign: f64) -> Expr {
    let r = Expr::var(RADIUS);
    if alpha == -1.0 {
        Expr::real(-sign) * r.ln()
    } else {
        Expr::real(-sign / (alpha + 1.0)) * Expr::pow(r, crate::expr::Number::real(alpha + 1.0))
    }
}

/// Force at `r = 1/ρ` of `s·r^α`, as a function of [`R`]: `s ρ^{−α}`.
pub fn power_force_rho(alpha: f64, sign: f64) -> Expr {
    Expr::real(sign) * Expr::pow(Expr::var(R), crate::expr::Number::real(-alpha))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanKind {
    /// Wünschmann condition of the third-order central-force equation.
    Wunschmann,
    /// Flatness of the fixed-energy family at `E = 1`.
    FixedEFlat,
    /// Flatness of the fixed-angular-momentum family at `M = 1`.
    FixedMFlat,
    /// Flatness of the zero-energy family.
    ZeroEFlat,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub alpha: f64,
    pub passes: bool,
    /// Worst relative residual of the tested expression(s).
    pub residual: f64,
}

/// Evaluation boxes used by [`power_law_scan`].
pub fn scan_box(kind: ScanKind) -> EvalBox {
    match kind {
        ScanKind::Wunschmann => {
            EvalBox::new().with(T, 0.0, 1.0).with(R, 1.0, 2.0).with(R1, -1.0, 1.0).with(R2, -1.0, 1.0)
        }
        ScanKind::FixedMFlat => EvalBox::new().with(X, 0.0, 1.0).with(Y, 0.5, 2.0).with(P, -1.0, 1.0),
        ScanKind::ZeroEFlat | ScanKind::FixedEFlat => {
            EvalBox::new().with(X, 0.0, 1.0).with(Y, 1.5, 3.0).with(P, -1.0, 1.0)
        }
    }
}

/// Runs one power-law test for `f = s·r^α`.
pub fn power_law_case(alpha: f64, kind: ScanKind, test: &ZeroTest) -> Result<ScanRow> {
    let sign = power_law_sign(alpha);
    let domain = scan_box(kind);
    let residual = match kind {
        ScanKind::Wunschmann => {
            let (lo, hi) = domain.get(R).unwrap();
            let ode = central_3rd_order(&power_force_rho(alpha, sign), (lo, hi))?;
            test.worst_residual(&wunschmann_residual(&ode), &domain)?
        }
        ScanKind::FixedMFlat => {
            let f = is_flat(&fixed_m_ode(&power_force(alpha, sign), 1.0)?, &domain, test)?;
            f.i1_residual.max(f.i2_residual)
        }
        ScanKind::ZeroEFlat | ScanKind::FixedEFlat => {
            let e = if kind == ScanKind::ZeroEFlat { 0.0 } else { 1.0 };
            let ode = fixed_e_ode(&power_force(alpha, sign), &power_potential(alpha, sign), e, &domain)?;
            let f = is_flat(&ode, &domain, test)?;
            f.i1_residual.max(f.i2_residual)
        }
    };
    Ok(ScanRow { alpha, passes: residual <= test.rel_tol, residual })
}

/// [`power_law_case`] over many exponents, in input order.
pub fn power_law_scan(alphas: &[f64], kind: ScanKind, test: &ZeroTest, exec: Execution) -> Result<Vec<ScanRow>> {
    par::map(alphas, exec, |&a| power_law_case(a, kind, test)).into_iter().collect()
}
