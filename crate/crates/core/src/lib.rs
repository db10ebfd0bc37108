//! Kepler orbits as dual points of 2+1 Minkowski space: their projective
//! symmetry group, the point maps between orbit families, ODE flatness
//! invariants and the classical theorems recast in these coordinates.

// `!(x > 0.0)` is used on purpose to reject NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod expr;
pub mod invariants;
pub mod maps;
pub mod minkowski;
pub mod orbit;
pub mod par;
pub mod symmetry;
pub mod theorems;
pub mod verify;

pub use error::{Error, Result};
