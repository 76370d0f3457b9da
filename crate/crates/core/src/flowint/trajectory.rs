use std::io::{self, Write};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::crossings::localize_angle;
use super::rk::{dp_step, hermite, CompiledField};
use super::TOL_RANGE;
use crate::error::{Error, Result};
use crate::systems::{Orientation, PlanarSystem};

const DIVERGENCE_RADIUS: f64 = 1e6;
const MIN_STEP: f64 = 1e-15;

/// When to stop integrating. Windings count full turns of the unwrapped
/// angle since the start, in either rotation sense.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopRule {
    RadiusBelow(f64),
    Windings(f64),
    Time(f64),
    /// Stop as soon as any sub-rule holds.
    Any(Vec<StopRule>),
    /// Stop once every sub-rule holds.
    All(Vec<StopRule>),
}

impl StopRule {
    /// `radius_below(1e-3)` and at least 40 windings, whichever is later.
    pub fn standard() -> Self {
        StopRule::All(vec![StopRule::RadiusBelow(1e-3), StopRule::Windings(40.0)])
    }

    /// [`StopRule::standard`], but never more than `max_windings` turns.
    /// Slow spirals (`r ~ Φ^{-1/8}`) cannot reach radius `1e-3`.
    pub fn standard_capped(max_windings: f64) -> Self {
        StopRule::Any(vec![Self::standard(), StopRule::Windings(max_windings)])
    }

    fn satisfied(&self, t: f64, r: f64, w: f64) -> bool {
        match self {
            StopRule::RadiusBelow(rm) => r <= *rm,
            StopRule::Windings(n) => w >= *n,
            StopRule::Time(tm) => t >= *tm,
            StopRule::Any(v) => v.iter().any(|s| s.satisfied(t, r, w)),
            StopRule::All(v) => v.iter().all(|s| s.satisfied(t, r, w)),
        }
    }

    fn collect(&self, wind: &mut Vec<f64>, time: &mut Vec<f64>) {
        match self {
            StopRule::Windings(n) => wind.push(*n),
            StopRule::Time(t) => time.push(*t),
            StopRule::RadiusBelow(_) => {}
            StopRule::Any(v) | StopRule::All(v) => v.iter().for_each(|s| s.collect(wind, time)),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::BadParameter(m));
        match self {
            StopRule::RadiusBelow(r) if !(*r > 0.0) => bad(format!("radius_below({r})")),
            StopRule::Windings(n) if !(*n > 0.0) => bad(format!("windings({n})")),
            StopRule::Time(t) if !(*t > 0.0) => bad(format!("time({t})")),
            StopRule::Any(v) | StopRule::All(v) if v.is_empty() => bad("empty stop rule".into()),
            StopRule::Any(v) | StopRule::All(v) => v.iter().try_for_each(|s| s.validate()),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegrateOptions {
    pub tol: f64,
    /// Integrate the unit-speed field `X/‖X‖` (time = arc length).
    pub rescaled: bool,
    /// Largest chord between consecutive points.
    pub max_step: f64,
    /// Largest chord relative to the current radius; keeps the angle
    /// increment per step unambiguous.
    pub chord_rel: f64,
    /// Bound on the deviation of a chord from the arc: chord ≤ √(8·δ·r),
    /// with the radius standing in for the radius of curvature, and
    /// chord × tangent turn / 8 ≤ δ for sharper bends.
    pub max_sagitta: Option<f64>,
    pub max_steps: usize,
    /// Abort with `EscapedWindow` outside this radius range.
    pub bounds: Option<(f64, f64)>,
    /// Override the time direction; by default repelling systems run
    /// backwards.
    pub reverse: Option<bool>,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            rescaled: false,
            max_step: 0.1,
            chord_rel: 0.25,
            max_sagitta: None,
            max_steps: 2_000_000,
            bounds: None,
            reverse: None,
        }
    }
}

impl IntegrateOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    fn chord_limit(&self, r: f64) -> f64 {
        let mut lim = self.max_step.min(self.chord_rel * r);
        if let Some(d) = self.max_sagitta {
            lim = lim.min((8.0 * d * r).sqrt());
        }
        lim
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryMeta {
    pub start: (f64, f64),
    pub options: IntegrateOptions,
    pub stop: StopRule,
    /// `-1` when integrated in reversed time.
    pub time_sign: f64,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

/// Accepted steps of one orbit. `t` is the integration parameter: time,
/// negated time for reversed runs, or arc length for rescaled runs.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Unwrapped polar angle.
    pub phi: Vec<f64>,
    /// Integrated field at each point, for Hermite interpolation.
    fx: Vec<f64>,
    fy: Vec<f64>,
    pub meta: TrajectoryMeta,
    system: Arc<PlanarSystem>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn system(&self) -> &PlanarSystem {
        &self.system
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.x[i].hypot(self.y[i])
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.radius(i)).collect()
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        self.x.iter().copied().zip(self.y.iter().copied()).collect()
    }

    pub fn last_point(&self) -> (f64, f64) {
        let i = self.len() - 1;
        (self.x[i], self.y[i])
    }

    /// Completed turns since the start.
    pub fn windings(&self) -> f64 {
        (self.phi[self.len() - 1] - self.phi[0]).abs() / std::f64::consts::TAU
    }

    pub(crate) fn field(&self) -> CompiledField {
        CompiledField::new(&self.system, self.meta.time_sign, self.meta.options.rescaled)
    }

    pub(crate) fn state(&self, i: usize) -> ([f64; 2], [f64; 2]) {
        ([self.x[i], self.y[i]], [self.fx[i], self.fy[i]])
    }

    /// Cubic Hermite dense output on step `i → i+1` at fraction `theta`.
    pub fn interpolate(&self, i: usize, theta: f64) -> (f64, f64) {
        let (y0, f0) = self.state(i);
        let (y1, f1) = self.state(i + 1);
        let p = hermite(y0, f0, y1, f1, self.t[i + 1] - self.t[i], theta);
        (p[0], p[1])
    }

    /// CSV with header `t,x,y,r,phi`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "t,x,y,r,phi")?;
        for i in 0..self.len() {
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                self.t[i],
                self.x[i],
                self.y[i],
                self.radius(i),
                self.phi[i]
            )?;
        }
        Ok(())
    }
}

/// Integrates the field as given (time parametrisation).
pub fn integrate(sys: &PlanarSystem, start: (f64, f64), stop: StopRule, tol: f64) -> Result<Trajectory> {
    integrate_with(sys, start, stop, &IntegrateOptions::with_tol(tol))
}

/// Integrates the unit-speed field `X/‖X‖`; same orbit, parametrised by
/// arc length, immune to the `‖X‖ ~ r^{2n-1}` slowdown.
pub fn integrate_rescaled(
    sys: &PlanarSystem,
    start: (f64, f64),
    stop: StopRule,
    tol: f64,
) -> Result<Trajectory> {
    let opts = IntegrateOptions {
        rescaled: true,
        ..IntegrateOptions::with_tol(tol)
    };
    integrate_with(sys, start, stop, &opts)
}

pub fn integrate_with(
    sys: &PlanarSystem,
    start: (f64, f64),
    stop: StopRule,
    opts: &IntegrateOptions,
) -> Result<Trajectory> {
    if !(opts.tol >= TOL_RANGE.0 && opts.tol <= TOL_RANGE.1) {
        return Err(Error::BadParameter(format!(
            "tol must lie in [{:e}, {:e}] (got {:e})",
            TOL_RANGE.0, TOL_RANGE.1, opts.tol
        )));
    }
    if start.0 == 0.0 && start.1 == 0.0 {
        return Err(Error::BadParameter("start point is the origin".into()));
    }
    if !(opts.chord_rel > 0.0 && opts.max_step > 0.0) {
        return Err(Error::BadParameter("step limits must be positive".into()));
    }
    stop.validate()?;
    let reverse = opts
        .reverse
        .unwrap_or(sys.params.orientation == Orientation::Repelling);
    let time_sign = if reverse { -1.0 } else { 1.0 };
    let field = CompiledField::new(sys, time_sign, opts.rescaled);

    let mut wind_targets = Vec::new();
    let mut time_limits = Vec::new();
    stop.collect(&mut wind_targets, &mut time_limits);
    wind_targets.sort_by(f64::total_cmp);
    let time_limit = time_limits.into_iter().reduce(f64::min);

    let singular = |p: [f64; 2]| Error::SingularField { x: p[0], y: p[1] };
    let mut y = [start.0, start.1];
    let mut f = field
        .eval(y[0], y[1])
        .map(|(a, b)| [a, b])
        .ok_or_else(|| singular(y))?;
    let phi_start = y[1].atan2(y[0]);
    let mut traj = Trajectory {
        t: vec![0.0],
        x: vec![y[0]],
        y: vec![y[1]],
        phi: vec![phi_start],
        fx: vec![f[0]],
        fy: vec![f[1]],
        meta: TrajectoryMeta {
            start,
            options: opts.clone(),
            stop: stop.clone(),
            time_sign,
            accepted_steps: 0,
            rejected_steps: 0,
        },
        system: Arc::new(sys.clone()),
    };

    let speed = f[0].hypot(f[1]);
    if !(speed > 0.0) {
        return Err(singular(y));
    }
    let r0 = y[0].hypot(y[1]);
    let mut h = 0.1 * opts.chord_limit(r0) / speed;
    let mut t = 0.0;
    let mut phi = phi_start;
    let mut prev_err: f64 = 1e-4;

    loop {
        let r = y[0].hypot(y[1]);
        let w = (phi - phi_start).abs() / std::f64::consts::TAU;
        if stop.satisfied(t, r, w) {
            break;
        }
        if traj.meta.accepted_steps >= opts.max_steps {
            return Err(Error::StepBudget(opts.max_steps));
        }
        if let Some(tm) = time_limit {
            if t < tm {
                h = h.min(tm - t);
            }
        }
        if !(h >= MIN_STEP) {
            return Err(Error::StiffnessAbort { t, step: h });
        }
        let step = dp_step(&field, y, f, h).ok_or_else(|| singular(y))?;
        let ynew = step.y;
        let rnew = ynew[0].hypot(ynew[1]);
        let errn = step.err[0].hypot(step.err[1]) / (opts.tol * (1.0 + rnew));
        let chord = (ynew[0] - y[0]).hypot(ynew[1] - y[1]);
        let limit = opts.chord_limit(r);
        if !errn.is_finite() || !rnew.is_finite() {
            h *= 0.2;
            traj.meta.rejected_steps += 1;
            continue;
        }
        if chord > limit {
            h *= (0.9 * limit / chord).max(0.1);
            traj.meta.rejected_steps += 1;
            continue;
        }
        if let Some(d) = opts.max_sagitta {
            // The radius is a poor stand-in for the radius of curvature
            // where the orbit turns sharply; check the tangent turn too.
            let (a, b) = (f, step.f);
            let turn = (a[0] * b[1] - a[1] * b[0]).atan2(a[0] * b[0] + a[1] * b[1]).abs();
            let sag = chord * turn / 8.0;
            if sag > d {
                h *= (0.9 * (d / sag).sqrt()).max(0.1);
                traj.meta.rejected_steps += 1;
                continue;
            }
        }
        if errn > 1.0 {
            h *= (0.9 * errn.powf(-0.2)).max(0.2);
            traj.meta.rejected_steps += 1;
            continue;
        }

        // Accepted.
        let dphi = (y[0] * ynew[1] - y[1] * ynew[0]).atan2(y[0] * ynew[0] + y[1] * ynew[1]);
        let (t_old, phi_old, y_old, f_old) = (t, phi, y, f);
        t += h;
        phi += dphi;
        y = ynew;
        f = step.f;
        traj.meta.accepted_steps += 1;

        let w_old = (phi_old - phi_start).abs() / std::f64::consts::TAU;
        let w_new = (phi - phi_start).abs() / std::f64::consts::TAU;
        let mut landed = false;
        if stop.satisfied(t, rnew, w_new) && !stop.satisfied(t_old, r, w_old) {
            // Land exactly on a winding target when that is what stopped us.
            if let Some(&n) = wind_targets
                .iter()
                .find(|&&n| n > w_old && n <= w_new && stop.satisfied(t, rnew, n))
            {
                let target = phi_start + (phi - phi_start).signum() * n * std::f64::consts::TAU;
                let (theta, p) = localize_angle(&field, y_old, f_old, h, phi_old, target)?;
                t = t_old + theta * h;
                phi = target;
                y = p;
                f = field
                    .eval(p[0], p[1])
                    .map(|(a, b)| [a, b])
                    .ok_or_else(|| singular(p))?;
                landed = true;
            }
        }
        traj.t.push(t);
        traj.x.push(y[0]);
        traj.y.push(y[1]);
        traj.phi.push(phi);
        traj.fx.push(f[0]);
        traj.fy.push(f[1]);

        let rnow = y[0].hypot(y[1]);
        if rnow > DIVERGENCE_RADIUS {
            return Err(Error::Diverged { radius: rnow });
        }
        if let Some((lo, hi)) = opts.bounds {
            if rnow < lo || rnow > hi {
                return Err(Error::EscapedWindow { radius: rnow });
            }
        }
        if landed {
            break;
        }
        let e = errn.max(1e-10);
        let fac = 0.9 * e.powf(-0.7 / 5.0) * prev_err.powf(0.4 / 5.0);
        h *= fac.clamp(0.2, 5.0);
        prev_err = e.max(1e-4);
    }
    Ok(traj)
}
