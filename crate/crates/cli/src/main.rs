//! `kepler-sym`: verification suites, orbit inspection, ODE invariants, point
//! maps and envelope data.
//!
//! Exit status: 0 on success, 1 on a verification failure or domain error,
//! 2 on a usage or parse error.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use kepler_sym::expr::{self, Bindings, Expr, ZeroTest};
use kepler_sym::invariants::{self, ScanKind, SecondOrderOde, ThirdOrderOde};
use kepler_sym::maps;
use kepler_sym::orbit::{KeplerOrbit, OrbitClass, PlanePoint};
use kepler_sym::theorems::{self, tangency};
use kepler_sym::verify::{self, Status, Suite, VerifyConfig};

#[derive(Parser)]
#[command(name = "kepler-sym", version, about = "Orbital symmetries of the Kepler problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded verification suite.
    Verify(VerifyArgs),
    /// Inspect or sample a Kepler orbit given by its dual triple.
    #[command(subcommand)]
    Orbit(OrbitCommand),
    /// Evaluate differential invariants of orbit equations.
    #[command(subcommand)]
    Ode(OdeCommand),
    /// Apply a point map to a CSV of points.
    Map(MapArgs),
    /// Envelope of an orbit family through a fixed point.
    #[command(subcommand)]
    Envelope(EnvelopeCommand),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, env = "KEPLER_SYM_SEED", default_value_t = 0)]
    seed: u64,
    /// Tolerance of residual-type checks.
    #[arg(long, default_value_t = verify::DEFAULT_TOL)]
    tol: f64,
    /// Emit the JSON report instead of a table.
    #[arg(long)]
    json: bool,
    /// Run cases on one thread.
    #[arg(long)]
    sequential: bool,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

#[derive(Args, Clone, Copy)]
struct TripleArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    #[arg(long, allow_negative_numbers = true)]
    c: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum OrbitCommand {
    /// Conserved quantities and geometry.
    Info {
        #[command(flatten)]
        triple: TripleArgs,
    },
    /// Points of the attractive branch.
    Sample {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum OdeCommand {
    /// I₁ and I₂ of `y″ = f(x, y, p)` at a point.
    Invariants {
        /// Right-hand side in the variables x, y, p and any parameters.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Bindings such as "y=2,p=0"; x defaults to 0.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Wünschmann residual of the third-order central-force equation.
    Wunschmann {
        /// Power law `f = ±r^α`.
        #[arg(long, allow_negative_numbers = true, conflicts_with = "f")]
        alpha: Option<f64>,
        /// Force magnitude as an expression in r.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        /// Point "t=..,rho=..,rho1=..,rho2=.." at which to print the residual.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapName {
    Square,
    #[value(name = "flattenM")]
    FlattenM,
    Hill,
    ParabolaChart,
}

#[derive(Args)]
struct MapArgs {
    #[arg(value_enum)]
    name: MapName,
    /// CSV with columns x,y (header optional); "-" reads stdin.
    #[arg(long, default_value = "-")]
    input: String,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Angular momentum for flattenM.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    m: f64,
    /// Energy for hill.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    e: f64,
}

#[derive(Subcommand)]
enum EnvelopeCommand {
    /// Orbits through (x1, 0) with minor axis B.
    MinorAxis {
        #[arg(long = "b")]
        minor_axis: f64,
        #[arg(long)]
        x1: f64,
        #[command(flatten)]
        out: EnvelopeOut,
    },
    /// Orbits of energy E through (x0, 0).
    Energy {
        #[arg(long, allow_negative_numbers = true)]
        e: f64,
        #[arg(long)]
        x0: f64,
        #[command(flatten)]
        out: EnvelopeOut,
    },
    /// Centered ellipses through (1, 0) enclosing area Δ.
    Hooke {
        #[arg(long)]
        delta: f64,
        #[command(flatten)]
        out: EnvelopeOut,
    },
}

#[derive(Args, Clone, Copy)]
struct EnvelopeOut {
    /// Family members to report.
    #[arg(long, default_value_t = 20)]
    members: usize,
    /// Sample points per curve.
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// Errors split by exit status.
enum Failure {
    Domain(String),
    Usage(String),
    /// The reader closed stdout; not an error.
    ClosedPipe,
}

impl From<kepler_sym::Error> for Failure {
    fn from(e: kepler_sym::Error) -> Self {
        match e {
            kepler_sym::Error::Expr(expr::ExprError::Parse(p)) => Failure::Usage(p.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<expr::ExprError> for Failure {
    fn from(e: expr::ExprError) -> Self {
        Failure::from(kepler_sym::Error::from(e))
    }
}

impl From<expr::EvalError> for Failure {
    fn from(e: expr::EvalError) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::ClosedPipe
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        if e.is_io_error() {
            if let csv::ErrorKind::Io(io) = e.into_kind() {
                return Failure::from(io);
            }
            unreachable!("checked to be an io error");
        }
        Failure::Domain(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Orbit(cmd) => cmd_orbit(cmd),
        Command::Ode(cmd) => cmd_ode(cmd),
        Command::Map(args) => cmd_map(args),
        Command::Envelope(cmd) => cmd_envelope(cmd),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::ClosedPipe) => ExitCode::SUCCESS,
    }
}

fn print_line(line: &str) -> Result<(), Failure> {
    writeln!(io::stdout().lock(), "{line}")?;
    Ok(())
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    print_line(&serde_json::to_string_pretty(value)?)
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let exec = if args.sequential { kepler_sym::par::Execution::Sequential } else { Default::default() };
    let report = verify::run(args.suite, &VerifyConfig { seed: args.seed, tol: args.tol, exec });
    if args.json {
        print_json(&report)?;
    } else {
        for c in &report.cases {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
            };
            let residual = c.residual.map_or_else(|| "-".to_string(), |r| format!("{r:.3e}"));
            let detail = c.error.as_deref().map(|e| format!("  ({e})")).unwrap_or_default();
            print_line(&format!("{status:<5} {:<48} residual={residual:<10} tol={:.0e}{detail}", c.name, c.tol))?;
        }
        let s = report.summary;
        print_line(&format!(
            "suite {}: {} cases, {} passed, {} failed, {} errors (seed {}, {} ms)",
            report.suite, s.total, s.passed, s.failed, s.errors, report.seed, report.wall_time_ms
        ))?;
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn orbit_of(t: TripleArgs) -> Result<KeplerOrbit, Failure> {
    Ok(KeplerOrbit::new(t.a, t.b, t.c)?)
}

fn class_name(c: OrbitClass) -> &'static str {
    match c {
        OrbitClass::Ellipse => "ellipse",
        OrbitClass::Parabola => "parabola",
        OrbitClass::Hyperbola => "hyperbola",
    }
}

fn orbit_json(o: &KeplerOrbit) -> serde_json::Value {
    let g = o.geometry();
    json!({
        "a": o.a(),
        "b": o.b(),
        "c": o.c(),
        "class": class_name(o.class()),
        "e": o.eccentricity(),
        "E": o.energy(),
        "M": o.angular_momentum(),
        "semi_major": g.semi_major,
        "semi_minor": g.semi_minor,
        "latus_rectum": g.latus_rectum,
        "pericenter_angle": g.pericenter_angle,
        "pericenter_distance": o.pericenter_distance(),
    })
}

#[derive(Serialize)]
struct Sample {
    theta: f64,
    x: f64,
    y: f64,
}

fn write_samples(samples: &[Sample], format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => print_json(&samples),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            for s in samples {
                w.serialize(s)?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn orbit_samples(o: &KeplerOrbit, n: usize) -> Result<Vec<Sample>, Failure> {
    Ok(o.sample_polar(n)?.into_iter().map(|(theta, p)| Sample { theta, x: p.x, y: p.y }).collect())
}

fn cmd_orbit(cmd: OrbitCommand) -> CmdResult {
    match cmd {
        OrbitCommand::Info { triple } => print_json(&orbit_json(&orbit_of(triple)?))?,
        OrbitCommand::Sample { triple, n, format } => {
            let o = orbit_of(triple)?;
            write_samples(&orbit_samples(&o, n)?, format)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Parses "name=value,name=value".
fn parse_bindings(text: &str) -> Result<Bindings, Failure> {
    let mut b = Bindings::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("binding '{part}' is not of the form name=value")))?;
        let value: f64 =
            value.trim().parse().map_err(|_| Failure::Usage(format!("binding '{part}' has a non-numeric value")))?;
        b.set(name.trim(), value);
    }
    Ok(b)
}

fn parse_expr(text: &str) -> Result<Expr, Failure> {
    expr::parse(text).map_err(|e| Failure::Usage(format!("{e} in '{text}'")))
}

fn cmd_ode(cmd: OdeCommand) -> CmdResult {
    match cmd {
        OdeCommand::Invariants { f, at } => {
            let rhs = parse_expr(&f)?;
            let jet = [invariants::X, invariants::Y, invariants::P];
            let params: Vec<String> = rhs.free_vars().into_iter().filter(|v| !jet.contains(&v.as_str())).collect();
            let names: Vec<&str> = params.iter().map(String::as_str).collect();
            let ode = SecondOrderOde::new(rhs, &names)?;
            let mut at = parse_bindings(&at)?;
            if at.get(invariants::X).is_none() {
                at.set(invariants::X, 0.0);
            }
            let i1 = invariants::i1(&ode).eval(&at)?;
            let i2 = invariants::i2(&ode).eval(&at)?;
            print_json(&json!({ "at": at.iter().collect::<std::collections::BTreeMap<_, _>>(), "I1": i1, "I2": i2 }))?;
        }
        OdeCommand::Wunschmann { alpha, f, at } => {
            let domain = invariants::scan_box(ScanKind::Wunschmann);
            let range = domain.get(invariants::R).expect("scan box binds rho");
            let (force_rho, label) = match (alpha, f) {
                (Some(a), None) => {
                    (invariants::power_force_rho(a, invariants::power_law_sign(a)), format!("alpha={a}"))
                }
                (None, Some(text)) => {
                    let force = parse_expr(&text)?;
                    let rho = Expr::var(invariants::R).recip();
                    (force.substitute(invariants::RADIUS, &rho), text)
                }
                _ => return Err(Failure::Usage("give exactly one of --alpha or --f".into())),
            };
            let ode = ThirdOrderOde::new(invariants::central_3rd_order(&force_rho, range)?.rhs().clone(), &[])?;
            let w = invariants::wunschmann_residual(&ode);
            let test = ZeroTest::default();
            let worst = test.worst_residual(&w, &domain)?;
            let mut out = json!({
                "force": label,
                "residual": worst,
                "tol": test.rel_tol,
                "vanishes": worst <= test.rel_tol,
            });
            if let Some(at) = at {
                out["at_value"] = json!(w.eval(&parse_bindings(&at)?)?);
            }
            print_json(&out)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn read_points(input: &str) -> Result<Vec<(f64, f64)>, Failure> {
    let mut text = String::new();
    if input == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        File::open(input).map_err(|e| Failure::Domain(format!("{input}: {e}")))?.read_to_string(&mut text)?;
    }
    let mut reader =
        csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut rows = Vec::new();
    let mut columns = (0usize, 1usize);
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        if i == 0 && record.iter().any(|f| f.parse::<f64>().is_err()) {
            let find = |name: &str| record.iter().position(|f| f.eq_ignore_ascii_case(name));
            columns = match (find("x"), find("y")) {
                (Some(x), Some(y)) => (x, y),
                _ => return Err(Failure::Domain("header must name columns x and y".into())),
            };
            continue;
        }
        let get = |j: usize| -> Result<f64, Failure> {
            record
                .get(j)
                .and_then(|f| f.parse().ok())
                .ok_or_else(|| Failure::Domain(format!("row {}: missing or non-numeric column {j}", i + 1)))
        };
        rows.push((get(columns.0)?, get(columns.1)?));
    }
    Ok(rows)
}

#[derive(Serialize)]
struct MapRow {
    theta: f64,
    x: Option<f64>,
    y: Option<f64>,
    err: Option<String>,
}

fn cmd_map(args: MapArgs) -> CmdResult {
    let points = read_points(&args.input)?;
    let apply = |x: f64, y: f64| -> kepler_sym::Result<PlanePoint> {
        let p = PlanePoint::new(x, y);
        match args.name {
            MapName::Square => Ok(maps::square(p)),
            MapName::FlattenM => maps::flatten_m(p, args.m),
            MapName::Hill => maps::hill_embed(p, args.e),
            MapName::ParabolaChart => maps::parabola_chart(x, y),
        }
    };
    let out: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(File::create(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?),
        None => Box::new(io::stdout()),
    };
    let mut w = csv::Writer::from_writer(out);
    for (x, y) in points {
        let row = match apply(x, y) {
            Ok(q) => MapRow { theta: q.theta(), x: Some(q.x), y: Some(q.y), err: None },
            Err(e) => MapRow { theta: y.atan2(x), x: None, y: None, err: Some(e.to_string()) },
        };
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Member {
    a: f64,
    b: f64,
    c: f64,
    tangency_residual: f64,
    crosses: bool,
}

fn member_rows(
    members: impl Iterator<Item = kepler_sym::Result<KeplerOrbit>>,
    env: &KeplerOrbit,
) -> Result<Vec<Member>, Failure> {
    members
        .map(|m| {
            let m = m?;
            let t = tangency(&m, env);
            Ok(Member { a: m.a(), b: m.b(), c: m.c(), tangency_residual: t.residual, crosses: t.crosses })
        })
        .collect()
}

/// Dual `b` coordinates spread over `[−span, span]`.
fn spread(count: usize, span: f64) -> impl Iterator<Item = f64> {
    let d = (count.max(2) - 1) as f64;
    (0..count).map(move |i| -span + 2.0 * span * i as f64 / d)
}

fn cmd_envelope(cmd: EnvelopeCommand) -> CmdResult {
    match cmd {
        EnvelopeCommand::MinorAxis { minor_axis, x1, out } => {
            let env = theorems::envelope_minor_axis(minor_axis, x1)?;
            if out.format == Format::Csv {
                write_samples(&orbit_samples(&env, out.n)?, Format::Csv)?;
                return Ok(ExitCode::SUCCESS);
            }
            let members =
                member_rows(spread(out.members, 2.0).map(|b| theorems::minor_axis_member(minor_axis, x1, b)), &env)?;
            print_json(&json!({
                "kind": "minor-axis",
                "p": minor_axis * minor_axis / (4.0 * x1),
                "envelope": orbit_json(&env),
                "members": members,
                "samples": orbit_samples(&env, out.n)?,
            }))?;
        }
        EnvelopeCommand::Energy { e, x0, out } => {
            let env = theorems::envelope_energy(e, x0)?;
            if out.format == Format::Csv {
                write_samples(&orbit_samples(&env, out.n)?, Format::Csv)?;
                return Ok(ExitCode::SUCCESS);
            }
            let focus = theorems::second_focus(&env)?;
            let members = member_rows(spread(out.members, 1.5).map(|b| theorems::energy_member(e, x0, b)), &env)?;
            print_json(&json!({
                "kind": "energy",
                "p": (1.0 + e * x0) / (x0 * e * e),
                "envelope": orbit_json(&env),
                "second_focus": [focus.x, focus.y],
                "members": members,
                "samples": orbit_samples(&env, out.n)?,
            }))?;
        }
        EnvelopeCommand::Hooke { delta, out } => {
            let h = theorems::envelope_hooke(delta)?;
            let member_samples = |shear: f64| -> Vec<Sample> {
                (0..out.n)
                    .map(|i| {
                        let t = 2.0 * PI * i as f64 / out.n as f64;
                        let p = h.member(shear, t);
                        Sample { theta: t, x: p.x, y: p.y }
                    })
                    .collect()
            };
            if out.format == Format::Csv {
                write_samples(&member_samples(0.0), Format::Csv)?;
                return Ok(ExitCode::SUCCESS);
            }
            let members: Vec<_> = spread(out.members, 2.0)
                .map(|s| {
                    let t = h.tangency(s);
                    json!({ "shear": s, "tangency_residual": t.residual, "crosses": t.crosses })
                })
                .collect();
            print_json(&json!({
                "kind": "hooke",
                "lines": [h.k, -h.k],
                "members": members,
                "samples": member_samples(0.0),
            }))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
