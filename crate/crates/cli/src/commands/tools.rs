use std::f64::consts::TAU;
use std::fmt::Write as _;

use clap::Args;
use serde_json::json;

use focusdim::flowint::{
    integrate_with, parallelism_residual, polar_oracle_hom, pushforward, IntegrateOptions, StopRule,
};
use focusdim::polyfield::DirectionKind;
use focusdim::systems::{make_deg_mn, make_deg_nn, make_homogeneous, make_weak_focus, QuadrantMap};

use crate::config::{GlobalArgs, RunConfig};
use crate::error::{params, CliError};
use crate::report::{csv, Output};
use crate::system::{radial_form, Sign, SystemArgs};

#[derive(Args, Debug, Clone)]
pub struct ChardirArgs {
    #[command(flatten)]
    pub system: SystemArgs,
}

#[derive(Args, Debug, Clone)]
pub struct TransformArgs {
    /// Exponent of the weak focus.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long)]
    pub n: u32,
    /// Defaults to n.
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, value_enum, default_value = "minus")]
    pub sign: Sign,
    /// Start point of the weak-focus trajectory.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.5,0.1",
        allow_hyphen_values = true
    )]
    pub start: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub windings: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Largest step of the source trajectory.
    #[arg(long, default_value_t = 2e-4)]
    pub max_step: f64,
    /// Points whose preimage lies this close (in radians) to an axis are skipped.
    #[arg(long, default_value_t = 0.05)]
    pub axis_exclusion: f64,
}

#[derive(Args, Debug, Clone)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long)]
    pub s: u32,
    /// Coefficients of R_s (x^s first); default -(x²+y²)^{s/2}.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub r_coeffs: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.4)]
    pub r0: f64,
    /// Turns at which to evaluate, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,1,2,4")]
    pub turns: Vec<f64>,
    /// Also integrate the system and compare.
    #[arg(long)]
    pub compare: bool,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

pub fn chardir(g: &GlobalArgs, a: &ChardirArgs) -> Result<Output, CliError> {
    let config = RunConfig::new(g);
    let sys = a.system.build()?;
    let set = sys.characteristic_directions()?;
    let result = match set.kind {
        DirectionKind::Finite => json!({"kind": set.kind, "directions": set.directions}),
        _ => json!({"kind": set.kind}),
    };
    let text = match set.kind {
        DirectionKind::Empty => "no characteristic directions\n".to_string(),
        DirectionKind::All => "every direction is characteristic\n".to_string(),
        DirectionKind::Finite => set
            .directions
            .iter()
            .map(|d| format!("angle {:.10} (multiplicity {})\n", d.angle, d.multiplicity))
            .collect(),
    };
    Ok(Output::new("chardir", config, result).system(&sys).text(text))
}

pub fn transform(g: &GlobalArgs, a: &TransformArgs) -> Result<Output, CliError> {
    let config = RunConfig::new(g).with_tol(a.tol)?;
    let m = a.m.unwrap_or(a.n);
    if a.start.len() != 2 {
        return Err(CliError::usage("--start takes two numbers x,y"));
    }
    if !(a.max_step > 0.0 && a.windings > 0.0 && (0.0..0.78).contains(&a.axis_exclusion)) {
        return Err(CliError::usage(
            "max-step and windings must be positive, axis-exclusion in [0, 0.78)",
        ));
    }
    let f = QuadrantMap::new(m, a.n).map_err(params)?;
    let source = make_weak_focus(a.k, a.sign.into()).map_err(params)?;
    let target = if m == a.n {
        make_deg_nn(a.k, a.n, a.sign.into(), 0.0)
    } else {
        make_deg_mn(a.k, m, a.n, a.sign.into())
    }
    .map_err(params)?;
    let opts = IntegrateOptions {
        max_step: a.max_step,
        ..IntegrateOptions::with_tol(a.tol)
    };
    let tr = integrate_with(
        &source,
        (a.start[0], a.start[1]),
        StopRule::Windings(a.windings),
        &opts,
    )?;
    let img = pushforward(&tr, &f);
    let rep = parallelism_residual(&img, &f, &target, a.axis_exclusion);
    let text = format!(
        "max residual {:.3e}, mean {:.3e} over {} points ({} near the axes skipped)\n",
        rep.max_residual, rep.mean_residual, rep.used, rep.excluded
    );
    Ok(Output::new(
        "transform",
        config,
        json!({"m": m, "n": a.n, "k": a.k, "parallelism": rep}),
    )
    .system(&target)
    .text(text)
    .file(
        "pushforward.csv",
        csv(&["t", "x", "y"], img.iter().map(|p| vec![p.0, p.1, p.2])),
    ))
}

pub fn oracle(g: &GlobalArgs, a: &OracleArgs) -> Result<Output, CliError> {
    let config = RunConfig::new(g).with_tol(a.tol)?;
    let r = radial_form(a.s, a.r_coeffs.as_deref())?;
    if a.turns.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(CliError::usage("turns must be positive"));
    }
    let sys = make_homogeneous(a.k, &r).map_err(params)?;
    let mut rows = Vec::new();
    let mut table = Vec::new();
    let mut text = String::from("phi            r_oracle            r_integrated        rel_error\n");
    for &turns in &a.turns {
        let phi = turns * TAU;
        let want = polar_oracle_hom(a.k, &r, a.r0, phi).map_err(params)?;
        let got = if a.compare {
            let opts = IntegrateOptions {
                reverse: Some(false),
                ..IntegrateOptions::with_tol(a.tol)
            };
            let tr = integrate_with(&sys, (a.r0, 0.0), StopRule::Windings(turns), &opts)?;
            Some(tr.radius(tr.len() - 1))
        } else {
            None
        };
        let rel = got.map(|g| (g - want).abs() / want);
        let _ = writeln!(
            text,
            "{phi:<14.6} {want:<19.12e} {:<19} {}",
            got.map_or("-".into(), |g| format!("{g:.12e}")),
            rel.map_or("-".into(), |e| format!("{e:.3e}"))
        );
        table.push(json!({"phi": phi, "r_oracle": want, "r_integrated": got, "rel_error": rel}));
        rows.push(vec![phi, want, got.unwrap_or(f64::NAN), rel.unwrap_or(f64::NAN)]);
    }
    Ok(Output::new(
        "oracle",
        config,
        json!({"k": a.k, "s": a.s, "r0": a.r0, "table": table}),
    )
    .formula(Some(
        "r(phi) = [r0^-(s-2k) - (s-2k) int_0^phi R]^(-1/(s-2k))".into(),
    ))
    .system(&sys)
    .text(text)
    .file(
        "oracle.csv",
        csv(&["phi", "r_oracle", "r_integrated", "rel_error"], rows),
    ))
}
