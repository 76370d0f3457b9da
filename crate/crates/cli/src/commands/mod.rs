mod bifurc;
mod measure;
mod tools;

use clap::{Parser, Subcommand};

use crate::config::GlobalArgs;
use crate::error::CliError;
use crate::report::Output;

pub use bifurc::{BifurcateArgs, CyclicityArgs, PoincareArgs};
pub use measure::{DimArgs, OrbitDimArgs};
pub use tools::{ChardirArgs, OracleArgs, TransformArgs};

/// Box dimension of spiral trajectories near degenerate planar foci.
#[derive(Parser, Debug)]
#[command(name = "focusdim", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Box dimension of one trajectory, compared with the closed form.
    Dim(DimArgs),
    /// Box dimension of the crossings of the start ray (expected d/2).
    Orbitdim(OrbitDimArgs),
    /// Table of the return map on a ray.
    Poincare(PoincareArgs),
    /// Limit cycles of deg_nn over a range of lambda.
    Bifurcate(BifurcateArgs),
    /// Small-cycle counts of perturbed homogeneous foci.
    Cyclicity(CyclicityArgs),
    /// Characteristic directions of the origin.
    Chardir(ChardirArgs),
    /// Image of a weak-focus trajectory under the quadrant map F_{m,n}.
    Transform(TransformArgs),
    /// Closed-form polar solution of the homogeneous family.
    Oracle(OracleArgs),
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Dim(a) => measure::dim(g, a),
        Command::Orbitdim(a) => measure::orbitdim(g, a),
        Command::Poincare(a) => bifurc::poincare(g, a),
        Command::Bifurcate(a) => bifurc::bifurcate(g, a),
        Command::Cyclicity(a) => bifurc::cyclicity(g, a),
        Command::Chardir(a) => tools::chardir(g, a),
        Command::Transform(a) => tools::transform(g, a),
        Command::Oracle(a) => tools::oracle(g, a),
    }
}
