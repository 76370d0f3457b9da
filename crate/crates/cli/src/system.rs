//! Selecting a vector field: a built-in family or a `.vf` file.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};

use focusdim::polyfield::HomogeneousForm;
use focusdim::systems::{
    make_annulus, make_deg_mn, make_deg_nn, make_homogeneous, make_weak_focus, Family, Orientation,
    PlanarSystem,
};

use crate::dsl::{parse_system, SystemSpec};
use crate::error::{params, CliError};

/// Sign of the `±` term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sign {
    Plus,
    Minus,
}

impl From<Sign> for Orientation {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Plus => Orientation::Repelling,
            Sign::Minus => Orientation::Attracting,
        }
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct SystemArgs {
    /// Built-in family: weak_focus, deg_nn, deg_nn_lambda, homogeneous, deg_mn, annulus.
    #[arg(long, value_name = "NAME", conflicts_with = "file")]
    pub family: Option<String>,
    /// System file in the `.vf` format.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long, value_enum)]
    pub sign: Option<Sign>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Coefficients of the form R_s (x^s first) for the homogeneous family;
    /// default -(x²+y²)^{s/2}.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub r_coeffs: Option<Vec<f64>>,
    /// Drop the quadrant sign factors (sx = sy = 1) of the built-in field.
    #[arg(long)]
    pub printed: bool,
}

fn need(v: Option<u32>, name: &str, family: &str) -> Result<u32, CliError> {
    v.ok_or_else(|| CliError::usage(format!("family {family} needs --{name}")))
}

/// `R_s` from explicit coefficients, or `-(x²+y²)^{s/2}`.
pub fn radial_form(s: u32, coeffs: Option<&[f64]>) -> Result<HomogeneousForm, CliError> {
    match coeffs {
        Some(c) => {
            if c.len() != s as usize + 1 {
                return Err(CliError::usage(format!(
                    "--r-coeffs needs s+1 = {} values, got {}",
                    s + 1,
                    c.len()
                )));
            }
            Ok(HomogeneousForm::new(s, c.to_vec()))
        }
        None => {
            if !s.is_multiple_of(2) {
                return Err(CliError::usage(format!("s must be even, got {s}")));
            }
            Ok(HomogeneousForm::scaled_rho_power(-1.0, s / 2))
        }
    }
}

pub fn read_spec(path: &Path) -> Result<SystemSpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_system(&text).map_err(|err| CliError::Parse {
        path: path.display().to_string(),
        err,
    })
}

impl SystemArgs {
    pub fn build(&self) -> Result<PlanarSystem, CliError> {
        let sys = self.build_signed()?;
        Ok(if self.printed { sys.printed() } else { sys })
    }

    fn build_signed(&self) -> Result<PlanarSystem, CliError> {
        if let Some(path) = &self.file {
            return Ok(read_spec(path)?.to_system());
        }
        let name = self
            .family
            .as_deref()
            .ok_or_else(|| CliError::usage("give --family or --file"))?;
        let family =
            Family::from_name(name).ok_or_else(|| CliError::usage(format!("unknown family {name}")))?;
        let orientation: Orientation = self.sign.unwrap_or(Sign::Minus).into();
        let lambda = self.lambda.unwrap_or(0.0);
        if lambda != 0.0 && !matches!(family, Family::DegNn | Family::DegNnLambda) {
            return Err(CliError::usage("--lambda applies to deg_nn only"));
        }
        let sys = match family {
            Family::WeakFocus => make_weak_focus(need(self.k, "k", name)?, orientation),
            Family::DegNn | Family::DegNnLambda => make_deg_nn(
                need(self.k, "k", name)?,
                need(self.n, "n", name)?,
                orientation,
                lambda,
            ),
            Family::Homogeneous => {
                let s = need(self.s, "s", name)?;
                make_homogeneous(self.k.unwrap_or(0), &radial_form(s, self.r_coeffs.as_deref())?)
            }
            Family::DegMn => make_deg_mn(
                need(self.k, "k", name)?,
                need(self.m, "m", name)?,
                need(self.n, "n", name)?,
                orientation,
            ),
            Family::Annulus => make_annulus(need(self.n, "n", name)?),
            Family::Custom => return Err(CliError::usage("custom systems come from --file")),
        };
        sys.map_err(params)
    }
}
