//! Duality of curves, osculating orbits and Kepler vertices, the minor-axis
//! Lambert identity, envelopes, and the curved Kepler problem.

mod curved;
mod curves;
mod envelope;
mod lambert;
mod vertices;

pub use curved::{curved_energy, curved_quadric_residual, minor_axis_curvature};
pub use curves::{
    dual_curve, dual_of_orbit, osculating_orbit, polar_jet, trig_rho, CurveJet, DualCircle, Jet2Polar, ParametricCurve,
};
pub use envelope::{
    energy_member, envelope_energy, envelope_hooke, envelope_minor_axis, minor_axis_member, second_focus, tangency,
    HookeEnvelope, Tangency,
};
pub use lambert::{
    eccentric_anomaly, eccentric_point, lambert_check, lambert_check_exact, lambert_transported, LambertSides,
};
pub use vertices::{
    intersection_count, kepler_vertices, kepler_vertices_with_grid, nested, tait_kneser, TaitKneserReport, VERTEX_GRID,
};
