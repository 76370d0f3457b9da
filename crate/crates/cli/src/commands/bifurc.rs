use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use focusdim::bifurc::{
    cyclicity_experiment_with, find_limit_cycles_with, hopf_exponent, hopf_sweep, return_map_table,
    CycleSearch, Perturbation,
};
use focusdim::flowint::Transversal;
use focusdim::polyfield::BivariatePoly;
use focusdim::systems::{Family, SignedPoly};

use crate::config::{GlobalArgs, RunConfig};
use crate::dsl::ExactPoly;
use crate::error::{params, CliError};
use crate::report::{csv, loglog_svg, Output};
use crate::system::{radial_form, read_spec, SystemArgs};

/// The search ray.
#[derive(Args, Debug, Clone)]
pub struct RayArgs {
    /// Angle of the ray, in radians.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub angle: f64,
    #[arg(long, default_value_t = 0.01)]
    pub r_min: f64,
    #[arg(long, default_value_t = 0.5)]
    pub r_max: f64,
    /// Integrator tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

impl RayArgs {
    fn ray(&self) -> Result<Transversal, CliError> {
        Transversal::new(self.angle, self.r_min, self.r_max).map_err(params)
    }

    fn config(&self, g: &GlobalArgs) -> Result<RunConfig, CliError> {
        RunConfig::new(g).with_tol(self.tol)?.with_angle(self.angle)
    }
}

#[derive(Args, Debug, Clone)]
pub struct PoincareArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub ray: RayArgs,
    /// Number of radii, evenly spaced inside (r-min, r-max).
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    /// Also locate fixed points (limit cycles) on a grid of this size.
    #[arg(long)]
    pub cycles: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct BifurcateArgs {
    /// Only deg_nn (with lambda) is swept.
    #[arg(long, default_value = "deg_nn")]
    pub family: String,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Values of lambda, comma separated.
    #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Vec<f64>,
    #[command(flatten)]
    pub ray: RayArgs,
    /// Radii sampled when bracketing cycles.
    #[arg(long, default_value_t = 32)]
    pub grid: usize,
}

#[derive(Args, Debug, Clone)]
pub struct CyclicityArgs {
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long)]
    pub s: u32,
    /// Coefficients of R_s (x^s first); default -(x²+y²)^{s/2}.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub r_coeffs: Option<Vec<f64>>,
    /// Values of epsilon, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
    pub eps: Vec<f64>,
    /// Radial perturbation (x h, y h) with h = sum of c_j (x²+y²)^j, given
    /// as "j:c,j:c". Repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub radial: Vec<String>,
    /// Perturbation (P̄, Q̄) read from a `.vf` file. Repeatable.
    #[arg(long)]
    pub perturb_file: Vec<PathBuf>,
    /// Number of seeded random perturbations.
    #[arg(long, default_value_t = 0)]
    pub random: usize,
    /// Coefficient range of random perturbations.
    #[arg(long, default_value_t = 1.0)]
    pub random_scale: f64,
    #[command(flatten)]
    pub ray: RayArgs,
    #[arg(long, default_value_t = 48)]
    pub grid: usize,
}

pub fn poincare(g: &GlobalArgs, a: &PoincareArgs) -> Result<Output, CliError> {
    let config = a.ray.config(g)?;
    if a.points < 1 {
        return Err(CliError::usage("need at least one point"));
    }
    let sys = a.system.build()?;
    let ray = a.ray.ray()?;
    let radii: Vec<f64> = (0..a.points)
        .map(|i| {
            let t = (i + 1) as f64 / (a.points + 1) as f64;
            a.ray.r_min + t * (a.ray.r_max - a.ray.r_min)
        })
        .collect();
    let table = return_map_table(&sys, &ray, &radii, a.ray.tol)?;
    let cycles = match a.cycles {
        Some(grid) => {
            let search = CycleSearch {
                tol: a.ray.tol,
                ..CycleSearch::default()
            };
            Some(find_limit_cycles_with(&sys, &ray, grid, &search)?)
        }
        None => None,
    };
    let rows: Vec<_> = table
        .iter()
        .map(|&(r, p)| json!({"r": r, "p": p, "displacement": p - r}))
        .collect();
    let mut text = String::from("r                   P(r)                P(r) - r\n");
    for &(r, p) in &table {
        let _ = writeln!(text, "{r:<19.12} {p:<19.12} {:+.6e}", p - r);
    }
    if let Some(c) = &cycles {
        for cy in &c.cycles {
            let _ = writeln!(text, "cycle at r = {:.8} ({:?})", cy.r, cy.stability);
        }
    }
    Ok(Output::new(
        "poincare",
        config,
        json!({"ray": ray, "table": rows, "cycles": cycles}),
    )
    .system(&sys)
    .text(text)
    .file(
        "return_map.csv",
        csv(&["r", "p"], table.iter().map(|&(r, p)| vec![r, p])),
    ))
}

pub fn bifurcate(g: &GlobalArgs, a: &BifurcateArgs) -> Result<Output, CliError> {
    let config = a.ray.config(g)?;
    match Family::from_name(&a.family) {
        Some(Family::DegNn | Family::DegNnLambda) => {}
        _ => {
            return Err(CliError::usage(format!(
                "bifurcate sweeps deg_nn only, not {}",
                a.family
            )))
        }
    }
    if a.grid < 16 {
        return Err(CliError::usage("grid needs at least 16 radii"));
    }
    let mut lambdas = a.lambda.clone();
    if lambdas.iter().any(|l| !l.is_finite()) {
        return Err(CliError::usage("lambda values must be finite"));
    }
    lambdas.sort_by(f64::total_cmp);
    lambdas.dedup();
    let ray = a.ray.ray()?;
    let search = CycleSearch {
        tol: a.ray.tol,
        ..CycleSearch::default()
    };
    let points = hopf_sweep(a.k, a.n, &lambdas, &ray, a.grid, &search).map_err(params)?;
    let fit = hopf_exponent(&points).ok();
    let predicted = (a.n == 1).then(|| 1.0 / (2 * a.k) as f64);
    let mut text = String::new();
    let mut pts = Vec::new();
    let mut rows = Vec::new();
    for p in &points {
        let _ = write!(text, "lambda = {:+.6}: ", p.lambda);
        match (&p.report, &p.error) {
            (Some(rep), _) => {
                if rep.cycles.is_empty() {
                    text.push_str("no cycle");
                }
                for (i, c) in rep.cycles.iter().enumerate() {
                    let sep = if i == 0 { "" } else { ", " };
                    let _ = write!(text, "{sep}cycle at r = {:.6} ({:?})", c.r, c.stability);
                }
                if let Some(r) = p.predicted_r {
                    let _ = write!(text, "; predicted {r:.6}");
                }
                if p.lambda < 0.0 && rep.cycles.len() == 1 {
                    pts.push((-p.lambda, rep.cycles[0].r));
                }
                let r = rep.cycles.first().map_or(f64::NAN, |c| c.r);
                rows.push(vec![
                    p.lambda,
                    p.predicted_r.unwrap_or(f64::NAN),
                    rep.cycles.len() as f64,
                    r,
                ]);
            }
            (None, e) => {
                let _ = write!(text, "failed: {}", e.as_deref().unwrap_or("unknown"));
            }
        }
        text.push('\n');
    }
    if let Some(f) = &fit {
        let _ = write!(text, "slope of log r* against log(-lambda) = {:.4}", f.slope);
        if let Some(w) = predicted {
            let _ = write!(text, " (expected {w:.4})");
        }
        text.push('\n');
    }
    let line = fit.map(|f| (f.intercept / std::f64::consts::LN_10, f.slope));
    let result = json!({
        "k": a.k,
        "n": a.n,
        "points": points,
        "exponent_fit": fit,
        "predicted_exponent": predicted,
    });
    Ok(Output::new("bifurcate", config, result)
        .formula(predicted.map(|_| "Hopf cycle r* = (-lambda)^{1/(2k)}".to_string()))
        .text(text)
        .file(
            "cycles.csv",
            csv(&["lambda", "predicted_r", "cycle_count", "r"], rows),
        )
        .file(
            "plot.svg",
            loglog_svg("Hopf cycle radius", "-lambda", "r*", &pts, line),
        ))
}

fn poly_text(p: &BivariatePoly) -> String {
    ExactPoly::from_signed(&SignedPoly::plain(p.clone())).print()
}

/// Parses `"j:c,j:c"`.
fn radial_terms(spec: &str) -> Result<Vec<(u32, f64)>, CliError> {
    spec.split(',')
        .map(|t| {
            let (j, c) = t
                .split_once(':')
                .ok_or_else(|| CliError::usage(format!("radial term {t:?} is not j:c")))?;
            let j = j
                .trim()
                .parse::<u32>()
                .map_err(|_| CliError::usage(format!("bad power in {t:?}")))?;
            let c = c
                .trim()
                .parse::<f64>()
                .map_err(|_| CliError::usage(format!("bad coefficient in {t:?}")))?;
            Ok((j, c))
        })
        .collect()
}

/// Uniform coefficients on every monomial of degree `s` and `s + 1`.
fn random_perturbation(rng: &mut ChaCha8Rng, id: String, s: u32, scale: f64) -> Perturbation {
    let mut poly = || {
        let mut p = BivariatePoly::zero();
        for d in s..=s + 1 {
            for i in 0..=d {
                p = &p + &BivariatePoly::monomial(rng.gen_range(-scale..=scale), i, d - i);
            }
        }
        p
    };
    let pbar = poly();
    let qbar = poly();
    Perturbation::new(id, pbar, qbar)
}

pub fn cyclicity(g: &GlobalArgs, a: &CyclicityArgs) -> Result<Output, CliError> {
    let config = a.ray.config(g)?;
    let r = radial_form(a.s, a.r_coeffs.as_deref())?;
    if a.eps.iter().any(|e| !e.is_finite()) {
        return Err(CliError::usage("eps values must be finite"));
    }
    let mut perts = Vec::new();
    for spec in &a.radial {
        perts.push(Perturbation::radial(
            format!("radial:{spec}"),
            &radial_terms(spec)?,
        ));
    }
    for path in &a.perturb_file {
        let spec = read_spec(path)?;
        let (p, q) = (spec.p.to_signed(), spec.q.to_signed());
        if !(p.is_plain() && q.is_plain()) {
            return Err(CliError::usage(format!(
                "{}: perturbations cannot use sx, sy",
                path.display()
            )));
        }
        perts.push(Perturbation::new(
            path.display().to_string(),
            p.collapsed(),
            q.collapsed(),
        ));
    }
    if a.random > 0 {
        if !(a.random_scale > 0.0 && a.random_scale.is_finite()) {
            return Err(CliError::usage("random-scale must be positive"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        for i in 0..a.random {
            perts.push(random_perturbation(
                &mut rng,
                format!("random:{}:{i}", g.seed),
                a.s,
                a.random_scale,
            ));
        }
    }
    if perts.is_empty() {
        return Err(CliError::usage("give --radial, --perturb-file or --random"));
    }
    if a.grid < 16 {
        return Err(CliError::usage("grid needs at least 16 radii"));
    }
    let ray = a.ray.ray()?;
    let search = CycleSearch {
        tol: a.ray.tol,
        ..CycleSearch::default()
    };
    let exp =
        cyclicity_experiment_with(a.k, a.s, &r, &perts, &a.eps, &ray, a.grid, &search).map_err(params)?;
    let mut text = String::new();
    for rep in &exp.reports {
        let _ = write!(
            text,
            "{} eps = {}: {} cycle(s)",
            rep.perturbation, rep.eps, rep.cycle_count
        );
        for c in &rep.cycles {
            let _ = write!(text, " r = {:.6} ({:?})", c.r, c.stability);
        }
        if let Some(e) = &rep.error {
            let _ = write!(text, " [failed: {e}]");
        }
        text.push('\n');
    }
    let _ = writeln!(
        text,
        "largest count {} (reference bound s/2 = {}; evidence only)",
        exp.max_count, exp.paper_bound
    );
    let index = |id: &str| perts.iter().position(|p| p.id == id).unwrap_or(0) as f64;
    let rows: Vec<Vec<f64>> = exp
        .reports
        .iter()
        .map(|r| vec![index(&r.perturbation), r.eps, r.cycle_count as f64])
        .collect();
    let ids: String = perts
        .iter()
        .enumerate()
        .map(|(i, p)| format!("{i} {}\n", p.id))
        .collect();
    let described: Vec<_> = perts
        .iter()
        .map(|p| json!({"id": p.id, "pbar": poly_text(&p.pbar), "qbar": poly_text(&p.qbar)}))
        .collect();
    Ok(Output::new(
        "cyclicity",
        config,
        json!({"perturbations": described, "experiment": exp}),
    )
    .formula(Some("Cycl > s/2 (reference only)".into()))
    .text(text)
    .file("counts.csv", csv(&["perturbation", "eps", "cycle_count"], rows))
    .file("perturbations.txt", ids))
}
