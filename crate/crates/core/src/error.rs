use thiserror::Error;

use crate::expr::{EvalError, ExprError};

/// Domain errors raised by the geometric and dynamical operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero vector has no causal type")]
    ZeroVector,
    #[error("the origin is excluded")]
    Origin,
    #[error("the two points coincide")]
    EqualPoints,
    #[error("(a, b, c) = 0 does not define a curve")]
    ZeroTriple,
    #[error("c = 0 describes a line, not a Kepler orbit")]
    LineNotOrbit,
    #[error("theta = {theta} is outside the attractive branch domain (rho = {rho})")]
    OutsideAttractiveBranch { theta: f64, rho: f64 },
    #[error("least-squares system is rank deficient")]
    RankDeficient,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("operation requires an ellipse")]
    NotEllipse,
    #[error("integration failed at t = {t}: {reason}")]
    StepFailure { t: f64, reason: String },
    #[error("point leaves the affine chart (denominator {denominator})")]
    ChartExit { denominator: f64 },
    #[error("flow leaves the affine chart near t = {t}")]
    FlowChartExit { t: f64 },
    #[error("image crosses the cone vertex")]
    ConeVertex,
    #[error("singular radius r = {r}")]
    SingularRadius { r: f64 },
    #[error("energy must be nonzero")]
    ZeroEnergy,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("E - V is not positive on the evaluation box (min {min})")]
    NonPositiveKinetic { min: f64 },
    #[error("force vanishes on the evaluation box")]
    VanishingForce,
    #[error("tangent line passes through the origin at t = {t}")]
    TangentThroughOrigin { t: f64 },
    #[error("osculating orbit degenerates to a line")]
    OsculatingLine,
    #[error("curve is itself a Kepler orbit; every point is a vertex")]
    DegenerateCurve,
    #[error("arc contains a Kepler vertex at t = {t}")]
    VertexInArc { t: f64 },
    #[error("point lies outside the Hill region (1 + E x0 = {value})")]
    OutsideHillRegion { value: f64 },
    #[error("matrix is not in the block form of the group")]
    NotGroupElement,
    #[error("matrix leaves the parametrized algebra (residual {residual})")]
    NotAlgebraElement { residual: f64 },
    #[error(transparent)]
    Expr(#[from] ExprError),
}

impl From<EvalError> for Error {
    fn from(e: EvalError) -> Self {
        Error::Expr(ExprError::Eval(e))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
