//! Solvers and diagnostics for the interaction energy shift of quantum gases:
//! the one-dimensional repulsive Bose gas (ground state and thermal
//! equilibrium), two-dimensional abelian anyons with soft-core boundary
//! conditions, non-abelian Chern-Simons particles, and generic virial
//! thermodynamics.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod numerics;

pub use error::{Error, Result};
pub mod anyon_abelian;
pub mod anyon_nacs;
pub mod lieb_liniger;
pub mod virial;
