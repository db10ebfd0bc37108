//! Seeded verification suites that exercise every module against
//! independently computed expectations.
//!
//! Each case draws its inputs from its own generator, seeded by the suite
//! seed and the case name, so reports do not depend on execution order.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{parse, Bindings, EvalBox, ZeroTest};
use crate::invariants::{
    fixed_e_ode, fixed_m_ode, i1, i2, is_flat, kepler_fixed_e, power_force, power_law_scan, power_law_sign,
    power_potential, scan_box, ScanKind, SecondOrderOde, P, X, Y,
};
use crate::maps;
use crate::minkowski::{pencil_classify, point_plane, Causal, MinkVec, PlaneKind};
use crate::orbit::{fit, newton_flow, FlowConfig, KeplerOrbit, OrbitClass, PlanePoint, Sheet};
use crate::par::{self, Execution};
use crate::symmetry::{
    basis_dual_field, basis_plane_field, bracket, conic_residual, energy_quadric, exp, fixed_energy_algebra, flow_dual,
    span_rank_with, vf_dual, vf_plane, AlgebraElement, GroupElement,
};
use crate::theorems::{
    curved_energy, curved_quadric_residual, dual_curve, dual_of_orbit, energy_member, envelope_energy, envelope_hooke,
    envelope_minor_axis, intersection_count, kepler_vertices, lambert_check, lambert_check_exact, lambert_transported,
    minor_axis_curvature, minor_axis_member, nested, osculating_orbit, polar_jet, second_focus, tait_kneser, tangency,
    Jet2Polar, ParametricCurve,
};

/// Default tolerance for residual-type checks.
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Symmetry,
    Duality,
    Invariants,
    Theorems,
    Maps,
}

impl Suite {
    pub const PARTS: [Suite; 5] = [Suite::Symmetry, Suite::Duality, Suite::Invariants, Suite::Theorems, Suite::Maps];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Symmetry => "symmetry",
            Suite::Duality => "duality",
            Suite::Invariants => "invariants",
            Suite::Theorems => "theorems",
            Suite::Maps => "maps",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "all" => Ok(Suite::All),
            "symmetry" => Ok(Suite::Symmetry),
            "duality" => Ok(Suite::Duality),
            "invariants" => Ok(Suite::Invariants),
            "theorems" => Ok(Suite::Theorems),
            "maps" => Ok(Suite::Maps),
            other => Err(format!("unknown suite '{other}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub name: String,
    pub status: Status,
    /// Measured residual; absent when the case raised an error.
    pub residual: Option<f64>,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
    /// Elapsed time; the only field that varies between identical runs.
    pub wall_time_ms: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.errors == 0
    }

    /// The report with the timing field zeroed, for comparisons.
    pub fn without_timing(&self) -> VerifyReport {
        VerifyReport { wall_time_ms: 0, ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Tolerance of the residual-type checks; other checks carry their own.
    pub tol: f64,
    pub exec: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, tol: DEFAULT_TOL, exec: Execution::default() }
    }
}

#[derive(Clone, Copy)]
enum Tol {
    Default,
    Fixed(f64),
}

type Check = Box<dyn Fn(&mut ChaCha8Rng) -> Result<f64> + Send + Sync>;

struct Case {
    name: String,
    tol: Tol,
    check: Check,
}

fn case<F>(name: impl Into<String>, tol: Tol, f: F) -> Case
where
    F: Fn(&mut ChaCha8Rng) -> Result<f64> + Send + Sync + 'static,
{
    Case { name: name.into(), tol, check: Box::new(f) }
}

/// FNV-1a of the case name mixed into the suite seed.
fn case_seed(seed: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    seed ^ h
}

pub fn run(suite: Suite, config: &VerifyConfig) -> VerifyReport {
    let start = Instant::now();
    let mut cases = Vec::new();
    let parts: Vec<Suite> = if suite == Suite::All { Suite::PARTS.to_vec() } else { vec![suite] };
    for part in parts {
        cases.extend(match part {
            Suite::Symmetry => symmetry_cases(),
            Suite::Duality => duality_cases(),
            Suite::Invariants => invariants_cases(),
            Suite::Theorems => theorems_cases(),
            Suite::Maps => maps_cases(),
            Suite::All => unreachable!(),
        });
    }
    let mut results = par::map(&cases, config.exec, |c| {
        let tol = match c.tol {
            Tol::Default => config.tol,
            Tol::Fixed(t) => t,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(case_seed(config.seed, &c.name));
        match (c.check)(&mut rng) {
            Ok(r) => CaseResult {
                name: c.name.clone(),
                status: if r <= tol { Status::Pass } else { Status::Fail },
                residual: Some(r),
                tol,
                error: None,
            },
            Err(e) => CaseResult {
                name: c.name.clone(),
                status: Status::Error,
                residual: None,
                tol,
                error: Some(e.to_string()),
            },
        }
    });
    results.sort_by(|a, b| a.name.cmp(&b.name));
    let mut summary = Summary { total: results.len(), ..Summary::default() };
    for r in &results {
        match r.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Error => summary.errors += 1,
        }
    }
    VerifyReport { suite, seed: config.seed, cases: results, summary, wall_time_ms: start.elapsed().as_millis() as u64 }
}

// Random inputs shared by the suites.

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

/// Plane point with radius in `[0.2, 2]`.
fn random_point(rng: &mut ChaCha8Rng) -> PlanePoint {
    PlanePoint::from_polar(uniform(rng, 0.2, 2.0), uniform(rng, -PI, PI))
}

fn random_ellipse(rng: &mut ChaCha8Rng) -> KeplerOrbit {
    let c = uniform(rng, 0.5, 2.0);
    let e = uniform(rng, 0.0, 0.9);
    let phi = uniform(rng, -PI, PI);
    KeplerOrbit::new(c * e * phi.cos(), c * e * phi.sin(), c).expect("c > 0")
}

fn random_orbit(rng: &mut ChaCha8Rng, class: OrbitClass) -> KeplerOrbit {
    let c = uniform(rng, 0.5, 2.0);
    let e = match class {
        OrbitClass::Ellipse => uniform(rng, 0.0, 0.9),
        OrbitClass::Parabola => 1.0,
        OrbitClass::Hyperbola => uniform(rng, 1.1, 3.0),
    };
    let phi = uniform(rng, -PI, PI);
    KeplerOrbit::new(c * e * phi.cos(), c * e * phi.sin(), c).expect("c > 0")
}

/// Signed dual point of a random orbit of energy `e`.
fn random_energy_dual(rng: &mut ChaCha8Rng, e: f64) -> MinkVec {
    let (a, b) = (uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
    let root = (a * a + b * b + e * e).sqrt();
    let c = if e < 0.0 { e.abs() + root } else { e.abs() - root };
    MinkVec::new(a, b, c)
}

fn random_algebra(rng: &mut ChaCha8Rng, scale: f64) -> AlgebraElement {
    let mut x = [0.0; 7];
    for v in &mut x {
        *v = uniform(rng, -scale, scale);
    }
    AlgebraElement::new(x)
}

fn relative(diff: f64, size: f64) -> f64 {
    if size >= 1e-8 {
        diff / size
    } else {
        diff
    }
}

fn count(n: usize) -> f64 {
    n as f64
}

fn class_name(c: OrbitClass) -> &'static str {
    match c {
        OrbitClass::Ellipse => "ellipse",
        OrbitClass::Parabola => "parabola",
        OrbitClass::Hyperbola => "hyperbola",
    }
}

const CLASSES: [OrbitClass; 3] = [OrbitClass::Ellipse, OrbitClass::Parabola, OrbitClass::Hyperbola];

fn symmetry_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for i in 1..=7 {
        out.push(case(format!("symmetry/field-plane/x{i}"), Tol::Fixed(1e-12), move |rng| {
            let x = AlgebraElement::basis(i);
            let mut worst: f64 = 0.0;
            for k in 0..200 {
                let p = random_point(rng);
                let sheet = if k % 2 == 0 { Sheet::Upper } else { Sheet::Lower };
                let v = vf_plane(&x, p, sheet);
                let (cx, cy) = basis_plane_field(i, p, sheet);
                worst = worst.max(relative((v.vx - cx).hypot(v.vy - cy), cx.hypot(cy)));
            }
            Ok(worst)
        }));
        out.push(case(format!("symmetry/field-dual/x{i}"), Tol::Fixed(1e-12), move |rng| {
            let x = AlgebraElement::basis(i);
            let mut worst: f64 = 0.0;
            for _ in 0..200 {
                let v = MinkVec::new(uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
                let d = vf_dual(&x, v) - basis_dual_field(i, v);
                worst = worst.max(relative(d.euclid_norm2().sqrt(), basis_dual_field(i, v).euclid_norm2().sqrt()));
            }
            Ok(worst)
        }));
    }
    out.push(case("symmetry/bracket-closure", Tol::Fixed(0.0), |_| {
        let mut misses = 0;
        for i in 1..=7 {
            for j in i + 1..=7 {
                let (a, b) = (AlgebraElement::basis(i), AlgebraElement::basis(j));
                bracket(&a, &b)?;
                let c = crate::symmetry::commutator(&a.matrix(), &b.matrix());
                if span_rank_with(&c).0 != 7 {
                    misses += 1;
                }
            }
        }
        Ok(count(misses))
    }));
    out.push(case("symmetry/bracket-gap", Tol::Fixed(1e-6), |rng| {
        let (a, b) = (random_algebra(rng, 1.0), random_algebra(rng, 1.0));
        let c = crate::symmetry::commutator(&a.matrix(), &b.matrix());
        let (_, gap) = span_rank_with(&c);
        Ok(1.0 / gap)
    }));
    for k in 0..100 {
        out.push(case(format!("symmetry/commuting-square/{k:03}"), Tol::Default, |rng| {
            let g = exp(&random_algebra(rng, 0.4), 1.0);
            let o = random_ellipse(rng);
            commuting_square(&g, &o)
        }));
    }
    out.push(case("symmetry/conformal-factor", Tol::Fixed(1e-12), |rng| {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let c = exp(&random_algebra(rng, 0.5), 1.0).conformal_check();
            if !(c.kappa > 0.0) {
                return Ok(f64::INFINITY);
            }
            worst = worst.max(c.residual);
        }
        Ok(worst)
    }));
    for e in [-1.0, 0.5, 2.0] {
        for k in 0..3 {
            out.push(case(format!("symmetry/energy-quadric/E={e}/g{k}"), Tol::Fixed(1e-9), move |rng| {
                let gens = fixed_energy_algebra(e)?;
                let v = random_energy_dual(rng, e);
                let path = flow_dual(&gens[k], v, 0.5, 1000);
                Ok(path.iter().map(|w| energy_quadric(*w, e).abs()).fold(0.0, f64::max))
            }));
        }
    }
    out
}

/// Largest conic residual of plane images of 20 orbit points against the
/// dual image. Chart exits are declared and skipped.
fn commuting_square(g: &GroupElement, o: &KeplerOrbit) -> Result<f64> {
    let image = match g.act_dual(o.dual()) {
        Ok(v) => v,
        Err(Error::ChartExit { .. }) => return Ok(0.0),
        Err(e) => return Err(e),
    };
    let mut worst: f64 = 0.0;
    for p in o.sample(20)? {
        match g.act_plane(p, Sheet::Upper) {
            Ok(q) => worst = worst.max(conic_residual(image, q)),
            Err(Error::ChartExit { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(worst)
}

fn duality_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for class in CLASSES {
        for k in 0..5 {
            out.push(case(format!("duality/dual-curve/{}/{k}", class_name(class)), Tol::Default, move |rng| {
                let o = random_orbit(rng, class);
                let circle = dual_of_orbit(&o);
                let d = dual_curve(&ParametricCurve::from_orbit(&o)?)?;
                Ok(d.grid(200).into_iter().map(|t| circle.offset(d.point(t)).abs()).fold(0.0, f64::max))
            }));
        }
    }
    out.push(case("duality/double-dual", Tol::Default, |rng| {
        let curve = random_convex_curve(rng)?;
        let dd = dual_curve(&dual_curve(&curve)?)?;
        Ok(curve.grid(200).into_iter().map(|t| curve.point(t).dist(dd.point(t))).fold(0.0, f64::max))
    }));
    out.push(case("duality/point-planes-parabolic", Tol::Fixed(0.0), |rng| {
        let mut misses = 0;
        for _ in 0..100 {
            let p = random_point(rng);
            if point_plane(p.x, p.y)?.classify() != PlaneKind::Parabolic {
                misses += 1;
            }
        }
        Ok(count(misses))
    }));
    out.push(case("duality/pencil-counts", Tol::Fixed(0.0), |rng| {
        let mut misses = 0;
        let mut done = 0;
        while done < 100 {
            let (o1, o2) = (random_ellipse(rng), random_ellipse(rng));
            let chord = o2.dual() - o1.dual();
            if chord.norm2().abs() < 1e-3 * chord.euclid_norm2() {
                continue;
            }
            done += 1;
            if intersection_count(&o1, &o2)? != pencil_classify(o1.dual(), o2.dual())?.common_points {
                misses += 1;
            }
        }
        Ok(count(misses))
    }));
    out.push(case("duality/timelike-pairs-nested", Tol::Fixed(0.0), |rng| {
        let mut misses = 0;
        for _ in 0..100 {
            let o1 = random_ellipse(rng);
            // A future timelike step keeps the second dual point inside the cone.
            let (s, phi) = (uniform(rng, 0.05, 1.0), uniform(rng, -PI, PI));
            let lean = uniform(rng, 0.0, 0.95);
            let step = MinkVec::new(s * lean * phi.cos(), s * lean * phi.sin(), s);
            let o2 = KeplerOrbit::from_dual(o1.dual() + step)?;
            if o2.class() != OrbitClass::Ellipse || pencil_classify(o1.dual(), o2.dual())?.kind != Causal::Timelike {
                continue;
            }
            if !nested(&o1, &o2)? {
                misses += 1;
            }
        }
        Ok(count(misses))
    }));
    for class in CLASSES {
        out.push(case(format!("duality/fit-recovery/{}", class_name(class)), Tol::Default, move |rng| {
            let o = random_orbit(rng, class);
            let f = fit(&o.sample(12)?)?;
            let g = f.orbit().ok_or(Error::LineNotOrbit)?;
            Ok((g.dual() - o.dual()).euclid_norm2().sqrt() / o.dual().euclid_norm2().sqrt())
        }));
    }
    out
}

/// Trigonometric star-shaped curve with small random harmonics 2 and 3.
fn random_convex_curve(rng: &mut ChaCha8Rng) -> Result<ParametricCurve> {
    let mut h = vec![(uniform(rng, -0.3, 0.3), uniform(rng, -0.3, 0.3))];
    for _ in 0..2 {
        h.push((uniform(rng, -0.04, 0.04), uniform(rng, -0.04, 0.04)));
    }
    ParametricCurve::trig(1.0, &h)
}

fn scan_mismatches(kind: ScanKind, expect_pass: &[f64]) -> Result<f64> {
    let alphas = [-3.0, -2.5, -2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0];
    let rows = power_law_scan(&alphas, kind, &ZeroTest::default(), Execution::Sequential)?;
    Ok(count(rows.iter().filter(|r| r.passes != expect_pass.contains(&r.alpha)).count()))
}

fn invariants_cases() -> Vec<Case> {
    let mut out = Vec::new();
    out.push(case("invariants/scan/wunschmann", Tol::Fixed(0.0), |_| {
        scan_mismatches(ScanKind::Wunschmann, &[-2.0, 1.0])
    }));
    out.push(case("invariants/scan/fixed-m", Tol::Fixed(0.0), |_| {
        scan_mismatches(ScanKind::FixedMFlat, &[-3.0, -2.0])
    }));
    out.push(case("invariants/scan/zero-energy", Tol::Fixed(0.0), |_| {
        let all = [-3.0, -2.5, -2.0, -1.5, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0];
        scan_mismatches(ScanKind::ZeroEFlat, &all)
    }));
    for e in [-1.0, 0.5, 2.0] {
        out.push(case(format!("invariants/fixed-energy-i2/E={e}"), Tol::Fixed(1e-10), move |rng| {
            let ode = kepler_fixed_e(e)?;
            let inv = i2(&ode);
            let mut worst: f64 = 0.0;
            for _ in 0..64 {
                let rho = uniform(rng, 1.5, 3.0);
                let b = Bindings::from_pairs([(X, uniform(rng, 0.0, 1.0)), (Y, rho), (P, uniform(rng, -1.0, 1.0))]);
                let expected = 9.0 * e * e / (e + rho).powi(3);
                worst = worst.max((inv.eval(&b)? - expected).abs() / expected.abs());
            }
            Ok(worst)
        }));
        out.push(case(format!("invariants/fixed-energy-i1/E={e}"), Tol::Fixed(1e-10), move |_| {
            let ode = kepler_fixed_e(e)?;
            Ok(ZeroTest::default().worst_residual(&i1(&ode), &scan_box(ScanKind::FixedEFlat))?)
        }));
    }
    for m in [0.5, 1.0, 2.0] {
        out.push(case(format!("invariants/fixed-m-kepler-flat/M={m}"), Tol::Fixed(1e-10), move |_| {
            let kepler = power_force(-2.0, power_law_sign(-2.0));
            let f = is_flat(&fixed_m_ode(&kepler, m)?, &scan_box(ScanKind::FixedMFlat), &ZeroTest::default())?;
            Ok(f.i1_residual.max(f.i2_residual))
        }));
    }
    out.push(case("invariants/zero-energy-kepler-flat", Tol::Fixed(1e-10), |_| {
        let s = power_law_sign(-2.0);
        let domain = scan_box(ScanKind::ZeroEFlat);
        let ode = fixed_e_ode(&power_force(-2.0, s), &power_potential(-2.0, s), 0.0, &domain)?;
        let f = is_flat(&ode, &domain, &ZeroTest::default())?;
        Ok(f.i1_residual.max(f.i2_residual))
    }));
    out.push(case("invariants/fixed-energy-i2-at-point", Tol::Fixed(1e-12), |_| {
        let ode = SecondOrderOde::new(parse("(y^2+p^2)/(2*(y-1))-y").map_err(crate::expr::ExprError::from)?, &[])?;
        let b = Bindings::from_pairs([(X, 0.0), (Y, 2.0), (P, 0.0)]);
        Ok((i2(&ode).eval(&b)? - 9.0).abs())
    }));
    out.push(case("invariants/flat-witness", Tol::Fixed(1e-10), |_| {
        let ode = SecondOrderOde::new(parse("0").map_err(crate::expr::ExprError::from)?, &[])?;
        let domain = EvalBox::new().with(X, 0.0, 1.0).with(Y, 1.0, 2.0).with(P, -1.0, 1.0);
        let f = is_flat(&ode, &domain, &ZeroTest::default())?;
        Ok(f.i1_residual.max(f.i2_residual))
    }));
    out
}

fn theorems_cases() -> Vec<Case> {
    let mut out = Vec::new();
    out.push(case("theorems/lambert/random", Tol::Fixed(1e-10), |rng| {
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let o = random_ellipse(rng);
            let s = lambert_check(&o, uniform(rng, -PI, PI), uniform(rng, -PI, PI))?;
            worst = worst.max(s.residual());
        }
        Ok(worst)
    }));
    out.push(case("theorems/lambert/exact-worked-case", Tol::Fixed(0.0), |_| {
        let r = |n, d| Rational64::new(n, d);
        let (lhs, rhs) = lambert_check_exact([r(1, 2), r(0, 1), r(1, 1)], (r(1, 1), r(0, 1)), (r(-1, 1), r(0, 1)))?;
        Ok(count((lhs != r(16, 3)) as usize + (rhs != r(16, 3)) as usize))
    }));
    out.push(case("theorems/lambert/lorentz-invariance", Tol::Default, |rng| {
        let mut worst: f64 = 0.0;
        for generator in 2..=4 {
            let o = random_ellipse(rng);
            let (u1, u2) = (uniform(rng, -PI, PI), uniform(rng, -PI, PI));
            let base = lambert_check(&o, u1, u2)?;
            let t = uniform(rng, -0.5, 0.5);
            let s = lambert_transported(&o, u1, u2, generator, t)?;
            worst = worst.max((s.lhs - base.lhs).abs()).max((s.rhs - base.rhs).abs());
        }
        Ok(worst)
    }));
    out.push(case("theorems/vertices/offset-circle", Tol::Fixed(1e-6), |_| {
        let curve = ParametricCurve::circle(PlanePoint::new(0.6, 0.0), 1.0)?;
        let vs = kepler_vertices(&curve)?;
        if vs.len() != 4 {
            return Ok(f64::INFINITY);
        }
        let a = (-0.6f64).acos();
        let mut worst: f64 = 0.0;
        for e in [0.0, a, PI, 2.0 * PI - a] {
            let near = vs
                .iter()
                .map(|v| {
                    let d = (v - e).rem_euclid(2.0 * PI);
                    d.min(2.0 * PI - d)
                })
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(near);
        }
        Ok(worst)
    }));
    out.push(case("theorems/vertices/random-convex-curves", Tol::Fixed(0.0), |rng| {
        let mut misses = 0;
        for _ in 0..8 {
            if kepler_vertices(&random_convex_curve(rng)?)?.len() < 4 {
                misses += 1;
            }
        }
        Ok(count(misses))
    }));
    out.push(case("theorems/tait-kneser/offset-circle", Tol::Fixed(0.0), |_| {
        let curve = ParametricCurve::circle(PlanePoint::new(0.6, 0.0), 1.0)?;
        let r = tait_kneser(&curve, (0.0, (-0.6f64).acos()), 12)?;
        Ok(count(2 * r.pairs - r.nested_pairs - r.timelike_chords))
    }));
    out.push(case("theorems/osculating/self-contact", Tol::Default, |rng| {
        let o = random_ellipse(rng);
        let theta = uniform(rng, -PI, PI);
        let (rho, rho1, rho2) = o.rho_jet(theta);
        let back = osculating_orbit(&Jet2Polar::new(theta, rho, rho1, rho2)?)?;
        let from_curve = osculating_orbit(&polar_jet(&ParametricCurve::from_orbit(&o)?, theta)?)?;
        Ok((back.dual() - o.dual()).euclid_norm2().sqrt().max((from_curve.dual() - o.dual()).euclid_norm2().sqrt()))
    }));
    out.push(case("theorems/envelope/minor-axis", Tol::Fixed(1e-7), |rng| {
        let (big_b, x1) = (uniform(rng, 0.5, 3.0), uniform(rng, 0.5, 2.0));
        let env = envelope_minor_axis(big_b, x1)?;
        family_tangency((0..20).map(|_| minor_axis_member(big_b, x1, uniform(rng, -2.0, 2.0))), &env)
    }));
    out.push(case("theorems/envelope/energy", Tol::Fixed(1e-7), |rng| {
        let e = uniform(rng, -1.0, -0.2);
        let x0 = uniform(rng, 0.2, 0.9) / e.abs();
        let env = envelope_energy(e, x0)?;
        family_tangency((0..20).map(|_| energy_member(e, x0, uniform(rng, -1.5, 1.5))), &env)
    }));
    out.push(case("theorems/envelope/energy-second-focus", Tol::Fixed(1e-9), |rng| {
        let e = uniform(rng, -1.0, -0.2);
        let x0 = uniform(rng, 0.2, 0.9) / e.abs();
        Ok(second_focus(&envelope_energy(e, x0)?)?.dist(PlanePoint::new(x0, 0.0)))
    }));
    out.push(case("theorems/envelope/hooke-lines", Tol::Fixed(1e-7), |rng| {
        let h = envelope_hooke(uniform(rng, 0.5, 5.0))?;
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let t = h.tangency(uniform(rng, -2.0, 2.0));
            worst = worst.max(if t.crosses { f64::INFINITY } else { t.residual });
        }
        Ok(worst)
    }));
    out.push(case("theorems/envelope/hooke-squared", Tol::Fixed(1e-7), |rng| {
        let h = envelope_hooke(uniform(rng, 0.5, 5.0))?;
        let env = h.squared_envelope()?;
        family_tangency((0..20).map(|_| h.squared_member(uniform(rng, -2.0, 2.0))), &env)
    }));
    out.push(case("theorems/curved/energy-and-quadric", Tol::Fixed(1e-12), |rng| {
        let mut worst = (curved_energy(-0.5, 1.0, 1.0) - 0.0).abs().max((curved_energy(1.0, 2.0, -1.0) + 1.0).abs());
        worst = worst.max(curved_quadric_residual(MinkVec::new(0.0, 0.0, 1.0), -0.5, 0.0));
        worst = worst.max(curved_quadric_residual(MinkVec::new(3f64.sqrt(), 0.0, -1.0), 1.0, 0.0));
        let big_b = uniform(rng, 0.5, 3.0);
        let o = minor_axis_member(big_b, uniform(rng, 0.5, 2.0), uniform(rng, -2.0, 2.0))?;
        Ok(worst.max(curved_quadric_residual(o.dual(), 0.0, minor_axis_curvature(big_b))))
    }));
    for class in CLASSES {
        out.push(case(format!("theorems/newton/{}/membership", class_name(class)), Tol::Fixed(1e-6), move |rng| {
            let o = random_orbit(rng, class);
            let tr = newton_flow(&o, &FlowConfig { stride: 50, ..FlowConfig::default() })?;
            Ok(tr.max_membership_residual(&o))
        }));
        out.push(case(format!("theorems/newton/{}/conservation", class_name(class)), Tol::Fixed(1e-8), move |rng| {
            let o = random_orbit(rng, class);
            let tr = newton_flow(&o, &FlowConfig { stride: 50, ..FlowConfig::default() })?;
            Ok(tr.max_energy_drift(o.energy()).max(tr.max_momentum_drift(o.angular_momentum())))
        }));
    }
    out
}

fn family_tangency(members: impl Iterator<Item = Result<KeplerOrbit>>, env: &KeplerOrbit) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for m in members {
        let t = tangency(&m?, env);
        worst = worst.max(if t.crosses { f64::INFINITY } else { t.residual });
    }
    Ok(worst)
}

fn maps_cases() -> Vec<Case> {
    let mut out = Vec::new();
    out.push(case("maps/square/lines-to-parabolas", Tol::Fixed(1e-6), |rng| {
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let (u, v) = (uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
            let n2 = u * u + v * v;
            if n2 < 1e-2 {
                continue;
            }
            let pts: Vec<PlanePoint> = (0..20)
                .map(|_| {
                    let s = uniform(rng, -3.0, 3.0);
                    maps::square(PlanePoint::new(u / n2 - s * v, v / n2 + s * u))
                })
                .collect();
            let f = fit(&pts)?.orbit().ok_or(Error::LineNotOrbit)?;
            let predicted = maps::square_line_image(u, v)?;
            worst = worst.max((f.eccentricity() - 1.0).abs());
            worst = worst.max((f.dual() - predicted.dual()).euclid_norm2().sqrt() / predicted.c());
        }
        Ok(worst)
    }));
    for m in [0.5, 1.0, 2.0] {
        out.push(case(format!("maps/flatten-m/M={m}"), Tol::Fixed(1e-10), move |rng| {
            let c = 1.0 / (m * m);
            let (e, phi) = (uniform(rng, 0.0, 2.5), uniform(rng, -PI, PI));
            let o = KeplerOrbit::new(c * e * phi.cos(), c * e * phi.sin(), c)?;
            let line = maps::flatten_m_dual(o.dual(), m);
            let mut worst: f64 = 0.0;
            for p in o.sample(20)? {
                let q = match maps::flatten_m(p, m) {
                    Ok(q) => q,
                    Err(Error::SingularRadius { .. }) => continue,
                    Err(e) => return Err(e),
                };
                let (ax, by) = (line.a * q.x, line.b * q.y);
                worst = worst.max((ax + by - 1.0).abs() / (1.0 + ax.abs() + by.abs()));
            }
            Ok(worst)
        }));
    }
    out.push(case("maps/hill/predicted-duals", Tol::Default, |rng| hill_check(rng, HillCheck::Dual)));
    out.push(case("maps/hill/image-energy", Tol::Default, |rng| hill_check(rng, HillCheck::Energy)));
    out.push(case("maps/hill/radii-inside", Tol::Fixed(0.0), |rng| hill_check(rng, HillCheck::Radii)));
    out.push(case("maps/hill/repelling-annulus", Tol::Fixed(0.0), |rng| hill_check(rng, HillCheck::Repelling)));
    out.push(case("maps/parabola-chart", Tol::Default, |rng| {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let (a, b, c) = (uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
            let dual = maps::parabola_image_dual(a, b, c);
            for _ in 0..20 {
                let x = uniform(rng, -2.0, 2.0);
                let y = a * x * x + b * x + c;
                if y.abs() < 1e-3 {
                    continue;
                }
                worst = worst.max(conic_residual(dual, maps::parabola_chart(x, y)?));
            }
        }
        Ok(worst)
    }));
    out
}

#[derive(Clone, Copy, PartialEq)]
enum HillCheck {
    Dual,
    Energy,
    Radii,
    Repelling,
}

/// Energy-1 orbits under the Hill embeddings.
fn hill_check(rng: &mut ChaCha8Rng, what: HillCheck) -> Result<f64> {
    let mut worst: f64 = 0.0;
    let mut misses = 0;
    for _ in 0..50 {
        // a² + b² = c² + 2c gives energy 1.
        let c = uniform(rng, 0.2, 2.0);
        let phi = uniform(rng, -PI, PI);
        let k = (c * c + 2.0 * c).sqrt();
        let o = KeplerOrbit::new(k * phi.cos(), k * phi.sin(), c)?;
        let image = maps::hill_image(&o)?;
        match what {
            HillCheck::Dual | HillCheck::Radii => {
                for p in o.sample(20)? {
                    let q = maps::hill_embed(p, 1.0)?;
                    worst = worst.max(o.residual(p).abs().max(image.residual(q).abs()));
                    if !(q.r() < 0.5) {
                        misses += 1;
                    }
                }
            }
            HillCheck::Energy => {
                let pts = o.sample(20)?.into_iter().map(|p| maps::hill_embed(p, 1.0)).collect::<Result<Vec<_>>>()?;
                let f = fit(&pts)?.orbit().ok_or(Error::LineNotOrbit)?;
                worst = worst.max((f.energy() + 1.0).abs()).max((image.energy() + 1.0).abs());
            }
            HillCheck::Repelling => {
                for j in 0..20 {
                    // Directions around the pericenter where a cos θ + b sin θ − c > 0.
                    let half = (c / k).acos();
                    let theta = phi + half * (2.0 * (j as f64 + 0.5) / 20.0 - 1.0) * 0.99;
                    let rho = o.rho_repelling(theta);
                    if rho <= 0.0 {
                        continue;
                    }
                    let q = maps::repel_embed(PlanePoint::from_polar(1.0 / rho, theta), 1.0)?;
                    if !(q.r() > 0.5 && q.r() < 1.0) {
                        misses += 1;
                    }
                }
            }
        }
    }
    Ok(match what {
        HillCheck::Radii | HillCheck::Repelling => count(misses),
        _ => worst,
    })
}
