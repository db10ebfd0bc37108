//! The 7-dimensional orbital symmetry group.
//!
//! The algebra is realized by traceless 4×4 matrices acting projectively on
//! the cone `x² + y² = z²` (plane side) and on dual planes (dual side).

mod algebra;
mod fields;
mod group;

pub use algebra::{algebra, bracket, commutator, expm, fixed_energy_algebra, span_rank_with, AlgebraElement};
pub use fields::{
    basis_dual_field, basis_plane_field, energy_quadric, fixed_energy_plane_field, fixed_energy_sheet, flow, flow_dual,
    flow_with_steps, vf_dual, vf_plane, PlaneVector, FLOW_STEPS,
};
pub use group::{act_dual, act_plane, conic_residual, exp, ConformalCheck, GroupElement, CHART_TOL};
