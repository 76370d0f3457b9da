use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use crate::error::CliError;

/// Allowed integration tolerances.
pub const TOL_RANGE: (f64, f64) = (1e-14, 1e-4);
/// Allowed winding counts.
pub const WINDINGS_RANGE: (f64, f64) = (1.0, 1e5);

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Print the report as JSON (errors go to stderr as JSON too).
    #[arg(long, global = true)]
    pub json: bool,
    /// Directory for report.json, CSV data and SVG plots.
    #[arg(long, global = true, env = "FOCUSDIM_OUT_DIR", value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Seed for sampled perturbations.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

/// Numerical settings of a trajectory-based command.
#[derive(Args, Debug, Clone)]
pub struct NumArgs {
    /// Integrator tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Turns to integrate.
    #[arg(long, default_value_t = 200.0)]
    pub windings: f64,
    /// Angle of the start ray, in radians.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub angle: f64,
    /// Distance of the start point from the origin.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Chord sagitta relative to the smallest box size.
    #[arg(long, default_value_t = 1.0 / 16.0)]
    pub sagitta_ratio: f64,
}

/// Everything that shaped a run; embedded in each report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub tol: Option<f64>,
    pub windings: Option<f64>,
    pub ray_angle: Option<f64>,
    pub start_radius: Option<f64>,
    pub sagitta_ratio: Option<f64>,
    pub out_dir: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(g: &GlobalArgs) -> Self {
        Self {
            tol: None,
            windings: None,
            ray_angle: None,
            start_radius: None,
            sagitta_ratio: None,
            out_dir: g.out.clone(),
            jobs: g.jobs,
            seed: g.seed,
        }
    }

    pub fn with_num(mut self, n: &NumArgs) -> Result<Self, CliError> {
        check_tol(n.tol)?;
        check_range("windings", n.windings, WINDINGS_RANGE)?;
        check_range("sagitta-ratio", n.sagitta_ratio, (1e-3, 1.0))?;
        if !(n.radius > 0.0 && n.radius.is_finite()) {
            return Err(CliError::usage(format!(
                "radius must be positive, got {}",
                n.radius
            )));
        }
        if !n.angle.is_finite() {
            return Err(CliError::usage("angle must be finite"));
        }
        self.tol = Some(n.tol);
        self.windings = Some(n.windings);
        self.ray_angle = Some(n.angle);
        self.start_radius = Some(n.radius);
        self.sagitta_ratio = Some(n.sagitta_ratio);
        Ok(self)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self, CliError> {
        check_tol(tol)?;
        self.tol = Some(tol);
        Ok(self)
    }

    pub fn with_angle(mut self, angle: f64) -> Result<Self, CliError> {
        if !angle.is_finite() {
            return Err(CliError::usage("angle must be finite"));
        }
        self.ray_angle = Some(angle);
        Ok(self)
    }
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    check_range("tol", tol, TOL_RANGE)
}

fn check_range(name: &str, v: f64, (lo, hi): (f64, f64)) -> Result<(), CliError> {
    if v >= lo && v <= hi {
        Ok(())
    } else {
        Err(CliError::usage(format!(
            "{name} must lie in [{lo:e}, {hi:e}], got {v}"
        )))
    }
}
