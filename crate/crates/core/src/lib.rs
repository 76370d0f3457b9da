//! Numerical verification toolkit for box-dimension formulas of spiral
//! trajectories near degenerate planar foci.
//!
//! The crate is organised bottom-up:
//!
//! * [`polyfield`]: bivariate polynomials, characteristic directions, the
//!   focus integral.
//! * [`systems`]: the built-in vector field families, the quadrant map
//!   `F_{m,n}` and perturbations.
//! * [`flowint`]: adaptive integration, ray crossings and closed-form
//!   polar solutions.
//! * [`fracdim`]: box counting, ε-neighbourhood areas and dimension fits.
//! * [`bifurc`]: return maps, limit cycles, Hopf and cyclicity experiments.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bifurc;
pub mod error;
pub mod flowint;
pub mod fracdim;
pub mod polyfield;
pub mod systems;

pub use error::{Error, Result};
