use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{find_limit_cycles_with, Cycle, CycleSearch, SMALL_CYCLE_RADIUS};
use crate::error::{Error, Result};
use crate::flowint::Transversal;
use crate::polyfield::{BivariatePoly, HomogeneousForm};
use crate::systems::{make_homogeneous, perturb};

/// `(P̄, Q̄)` added as `ε·(P̄, Q̄)` to the base field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    pub id: String,
    pub pbar: BivariatePoly,
    pub qbar: BivariatePoly,
}

impl Perturbation {
    pub fn new(id: impl Into<String>, pbar: BivariatePoly, qbar: BivariatePoly) -> Self {
        Self {
            id: id.into(),
            pbar,
            qbar,
        }
    }

    /// `(x·h, y·h)` with `h = Σ c_j (x² + y²)^j` for `(j, c_j)` in `terms`.
    /// It adds `ε·h(r²)` to the radial factor `R`, so with `R = −ρ^s`
    /// cycles sit where `ε·h(u) = u^{s/2}`, `u = r²`.
    pub fn radial(id: impl Into<String>, terms: &[(u32, f64)]) -> Self {
        let rho2 = &BivariatePoly::monomial(1.0, 2, 0) + &BivariatePoly::monomial(1.0, 0, 2);
        let h = terms
            .iter()
            .fold(BivariatePoly::zero(), |acc, &(j, c)| &acc + &rho2.pow(j).scale(c));
        Self::new(id, &BivariatePoly::x() * &h, &BivariatePoly::y() * &h)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclicityReport {
    pub s: u32,
    pub k: u32,
    pub eps: f64,
    pub perturbation: String,
    pub cycle_count: usize,
    pub cycles: Vec<Cycle>,
    /// `s/2`, stored for comparison only.
    pub paper_bound: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclicityExperiment {
    pub reports: Vec<CyclicityReport>,
    /// Largest count over all perturbations and `ε`.
    pub max_count: usize,
    pub paper_bound: f64,
}

/// Counts small cycles (radius below [`SMALL_CYCLE_RADIUS`]) of the base
/// `make_homogeneous(k, r)` plus `ε·perturbation`, for every perturbation and
/// every `ε`. Nothing is asserted about the counts.
pub fn cyclicity_experiment(
    k: u32,
    s: u32,
    r: &HomogeneousForm,
    perturbations: &[Perturbation],
    eps_grid: &[f64],
) -> Result<CyclicityExperiment> {
    let ray = Transversal::new(0.0, 0.01, SMALL_CYCLE_RADIUS)?;
    cyclicity_experiment_with(
        k,
        s,
        r,
        perturbations,
        eps_grid,
        &ray,
        48,
        &CycleSearch::default(),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn cyclicity_experiment_with(
    k: u32,
    s: u32,
    r: &HomogeneousForm,
    perturbations: &[Perturbation],
    eps_grid: &[f64],
    ray: &Transversal,
    grid: usize,
    search: &CycleSearch,
) -> Result<CyclicityExperiment> {
    if r.degree() != s {
        return Err(Error::BadParameter(format!(
            "R has degree {}, expected s = {s}",
            r.degree()
        )));
    }
    let base = make_homogeneous(k, r)?;
    // Reject bad perturbations before any integration.
    for p in perturbations {
        perturb(&base, &p.pbar, &p.qbar, 0.0)?;
    }
    let paper_bound = s as f64 / 2.0;
    let jobs: Vec<(&Perturbation, f64)> = perturbations
        .iter()
        .flat_map(|p| eps_grid.iter().map(move |&e| (p, e)))
        .collect();
    let reports: Vec<CyclicityReport> = jobs
        .par_iter()
        .map(|&(p, eps)| {
            let run = perturb(&base, &p.pbar, &p.qbar, eps)
                .and_then(|sys| find_limit_cycles_with(&sys, ray, grid, search));
            let (cycles, error) = match run {
                Ok(rep) => (rep.cycles, None),
                Err(e) => (Vec::new(), Some(e.to_string())),
            };
            CyclicityReport {
                s,
                k,
                eps,
                perturbation: p.id.clone(),
                cycle_count: cycles.len(),
                cycles,
                paper_bound,
                error,
            }
        })
        .collect();
    let max_count = reports.iter().map(|r| r.cycle_count).max().unwrap_or(0);
    Ok(CyclicityExperiment {
        reports,
        max_count,
        paper_bound,
    })
}
