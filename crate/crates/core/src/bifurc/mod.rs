//! Poincaré return maps on a ray, their fixed points (limit cycles), the
//! Hopf sweep of the `deg_nn` family in `λ` and the cyclicity experiment for
//! perturbed homogeneous foci.

mod cycles;
mod cyclicity;
mod hopf;
mod return_map;

use serde::{Deserialize, Serialize};

pub use cycles::{find_limit_cycles, find_limit_cycles_with};
pub use cyclicity::{
    cyclicity_experiment, cyclicity_experiment_with, CyclicityExperiment, CyclicityReport, Perturbation,
};
pub use hopf::{hopf_exponent, hopf_sweep, HopfPoint};
pub use return_map::{return_map, return_map_table, ReturnMap};

/// Fixed points are bracketed to this width.
pub const BRACKET_WIDTH: f64 = 1e-8;
/// Cycles inside this radius count as small.
pub const SMALL_CYCLE_RADIUS: f64 = 0.5;

/// Integration settings shared by the searches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleSearch {
    pub tol: f64,
    /// `D ≡ 0` is declared when `|D| < continuum_factor · tol` on the whole
    /// grid.
    pub continuum_factor: f64,
}

impl Default for CycleSearch {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            continuum_factor: 10.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Attracting,
    Repelling,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cycle {
    pub r: f64,
    pub stability: Stability,
    /// `|P(r) − r|` at the reported radius.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitCycleReport {
    pub ray_angle: f64,
    pub window: (f64, f64),
    pub lambda: f64,
    pub cycles: Vec<Cycle>,
    /// Widest final bracket among the cycles.
    pub bracket_width: f64,
    /// `D` vanished on the whole grid (a center); `cycles` is then empty.
    pub continuum_of_cycles: bool,
    /// `(r, D(r))` on the search grid.
    pub samples: Vec<(f64, f64)>,
}

impl LimitCycleReport {
    pub fn attracting(&self) -> impl Iterator<Item = &Cycle> {
        self.cycles
            .iter()
            .filter(|c| c.stability == Stability::Attracting)
    }
}
