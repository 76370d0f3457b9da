use std::fmt::Write as _;

use clap::Args;
use serde_json::json;

use focusdim::fracdim::{
    alpha_prop, alpha_theorem1, measure_dimension, MeasureConfig, Measurement, Method, Reference,
};
use focusdim::systems::{Family, PlanarSystem};

use crate::config::{GlobalArgs, NumArgs, RunConfig};
use crate::error::CliError;
use crate::report::{csv, estimate_svg, loglog_svg, Output};
use crate::system::SystemArgs;

#[derive(Args, Debug, Clone)]
pub struct DimArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub num: NumArgs,
    /// box_count or minkowski_slope.
    #[arg(long, default_value = "box_count")]
    pub method: String,
    /// Dimension at which the content band is evaluated (default: the closed form).
    #[arg(long)]
    pub d_ref: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct OrbitDimArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub num: NumArgs,
}

/// Closed form behind a [`Reference`], as text.
pub fn formula_ref(r: &Reference) -> String {
    let f = match r.source.as_str() {
        s if s.starts_with("Theorem 1") => "d = 2 - 2/(1+2kn)",
        "Proposition 1" => "d = 2 - 2/(s-2k+1)",
        "Theorem 3" => "d >= 2 - (1+n/m)/(1+2km)",
        _ => "",
    };
    format!("{}: {f}", r.source)
}

/// Expected spiral exponent of the built-in families.
fn alpha_formula(sys: &PlanarSystem) -> Option<f64> {
    let p = &sys.params;
    match sys.family {
        Family::WeakFocus => alpha_theorem1(p.k?, 1).ok(),
        Family::DegNn => alpha_theorem1(p.k?, p.n?).ok(),
        Family::Homogeneous => alpha_prop(p.k?, p.s?).ok(),
        _ => None,
    }
}

fn measure(
    sys: &PlanarSystem,
    num: &NumArgs,
    method: Method,
    d_ref: Option<f64>,
    profile: bool,
) -> Result<Measurement, CliError> {
    let cfg = MeasureConfig {
        start: (num.radius * num.angle.cos(), num.radius * num.angle.sin()),
        windings: num.windings,
        tol: num.tol,
        method,
        sagitta_ratio: num.sagitta_ratio,
        d_ref,
        profile,
        ..MeasureConfig::default()
    };
    Ok(measure_dimension(sys, &cfg)?)
}

pub fn dim(g: &GlobalArgs, a: &DimArgs) -> Result<Output, CliError> {
    let config = RunConfig::new(g).with_num(&a.num)?;
    let method = match Method::from_name(&a.method) {
        Some(m @ (Method::BoxCount | Method::MinkowskiSlope)) => m,
        _ => return Err(CliError::usage(format!("unknown method {}", a.method))),
    };
    if let Some(d) = a.d_ref {
        if !(0.0..=2.0).contains(&d) {
            return Err(CliError::usage(format!("d-ref must lie in [0, 2], got {d}")));
        }
    }
    let sys = a.system.build()?;
    let m = measure(&sys, &a.num, method, a.d_ref, true)?;
    let est = &m.estimate;
    let power = m.power_fit().ok();
    let alpha = alpha_formula(&sys);
    let result = json!({
        "d_hat": est.d_hat,
        "stderr": est.stderr,
        "fit_window": est.fit_window,
        "r_squared": est.r_squared,
        "poor_fit": est.poor_fit,
        "method": est.method,
        "nondegenerate_band": est.nondegenerate_band,
        "band_ratio": est.band_ratio(),
        "d_ref": est.d_ref,
        "formula_value": m.reference.as_ref().map(|r| r.value),
        "formula_is_lower_bound": m.reference.as_ref().map(|r| r.lower_bound),
        "difference": m.reference.as_ref().map(|r| est.d_hat - r.value),
        "power_fit": power,
        "alpha_formula": alpha,
        "trajectory_points": m.trajectory.len(),
        "windings": m.trajectory.windings(),
        "samples": est.samples,
    });
    let mut text = String::new();
    let _ = writeln!(
        text,
        "d_hat = {:.4} +/- {:.4} (r^2 = {:.5}, window [{:.3e}, {:.3e}])",
        est.d_hat, est.stderr, est.r_squared, est.fit_window.0, est.fit_window.1
    );
    if let Some(r) = &m.reference {
        let rel = if r.lower_bound { "bound" } else { "formula" };
        let _ = writeln!(
            text,
            "{rel} ({}) = {:.4}, difference {:+.4}",
            r.source,
            r.value,
            est.d_hat - r.value
        );
    }
    if let Some(b) = est.band_ratio() {
        let _ = writeln!(
            text,
            "content band max/min = {b:.3} at d = {:.4}",
            est.d_ref.unwrap_or(est.d_hat)
        );
    }
    if let Some(p) = &power {
        let _ = write!(text, "alpha = {:.4}", p.alpha);
        if let Some(al) = alpha {
            let _ = write!(text, " (expected {al:.4})");
        }
        text.push('\n');
    }
    if est.poor_fit {
        text.push_str("warning: poor fit\n");
    }
    let title = format!("{} box dimension {:.4}", sys.family, est.d_hat);
    Ok(Output::new("dim", config, result)
        .formula(m.reference.as_ref().map(formula_ref))
        .system(&sys)
        .text(text)
        .file("samples.csv", est.samples_csv())
        .file("plot.svg", estimate_svg(&title, est)))
}

pub fn orbitdim(g: &GlobalArgs, a: &OrbitDimArgs) -> Result<Output, CliError> {
    let config = RunConfig::new(g).with_num(&a.num)?;
    let sys = a.system.build()?;
    let m = measure(&sys, &a.num, Method::BoxCount, None, false)?;
    let orbit = m.orbit()?;
    let est = m.orbit_dimension()?;
    let spiral = m.estimate.d_hat;
    let half = spiral / 2.0;
    let result = json!({
        "orbit_d_hat": est.d_hat,
        "stderr": est.stderr,
        "fit_window": est.fit_window,
        "r_squared": est.r_squared,
        "poor_fit": est.poor_fit,
        "crossings": orbit.len(),
        "spiral_d_hat": spiral,
        "half_spiral_d_hat": half,
        "difference": est.d_hat - half,
        "formula_value": m.reference.as_ref().map(|r| r.value / 2.0),
        "samples": est.samples,
    });
    let mut text = format!(
        "orbit d_hat = {:.4} +/- {:.4} over {} crossings\nspiral d_hat / 2 = {:.4}, difference {:+.4}\n",
        est.d_hat,
        est.stderr,
        orbit.len(),
        half,
        est.d_hat - half
    );
    if let Some(r) = &m.reference {
        let _ = writeln!(text, "formula d/2 = {:.4}", r.value / 2.0);
    }
    let pts: Vec<(f64, f64)> = est
        .samples
        .iter()
        .filter_map(|s| Some((s.eps, s.count?)))
        .collect();
    Ok(Output::new("orbitdim", config, result)
        .formula(m.reference.as_ref().map(|r| format!("{} halved", formula_ref(r))))
        .system(&sys)
        .text(text)
        .file("samples.csv", est.samples_csv())
        .file(
            "crossings.csv",
            csv(
                &["angle", "r"],
                orbit.windings.iter().zip(&orbit.radii).map(|(w, r)| vec![*w, *r]),
            ),
        )
        .file(
            "plot.svg",
            loglog_svg("orbit box count", "eps", "box count", &pts, None),
        ))
}
