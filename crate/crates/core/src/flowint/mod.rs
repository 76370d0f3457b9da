//! Trajectory generation: adaptive Dormand–Prince integration with step
//! control, optional unit-speed rescaling, ray crossings and closed-form
//! polar solutions of the homogeneous family.
//!
//! Every run is parametrised so that the unwrapped polar angle `Φ` is the
//! natural progress variable. Repelling systems are integrated in reversed
//! time, so spirals always run into the focus.

mod crossings;
mod oracle;
mod rk;
mod trajectory;
mod transform;

pub use crossings::{crossings, PoincareOrbit, Transversal};
pub use oracle::polar_oracle_hom;
pub use trajectory::{
    integrate, integrate_rescaled, integrate_with, IntegrateOptions, StopRule, Trajectory, TrajectoryMeta,
};
pub use transform::{parallelism_residual, pushforward, ParallelismReport};

/// Tolerances accepted by the integrator.
pub const TOL_RANGE: (f64, f64) = (1e-13, 1e-3);
