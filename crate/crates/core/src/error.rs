use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("perturbation rejected: {0}")]
    BadPerturbation(String),
    #[error("step size collapsed to {step:e} at t = {t}")]
    StiffnessAbort { t: f64, step: f64 },
    #[error("trajectory diverged (radius {radius:e})")]
    Diverged { radius: f64 },
    #[error("vector field vanishes at ({x}, {y}) away from the origin")]
    SingularField { x: f64, y: f64 },
    #[error("step budget of {0} steps exhausted")]
    StepBudget(usize),
    #[error("trajectory does not cross the transversal")]
    NoCrossings,
    #[error("closed-form solution blows up before phi = {phi}")]
    BlowUp { phi: f64 },
    #[error("polyline too sparse for eps = {eps:e}: {needed} points required")]
    TooSparse { eps: f64, needed: usize },
    #[error("fit window invalid: {0}")]
    BadWindow(String),
    #[error("origin is not monodromic: {0}")]
    NotMonodromic(String),
    #[error("trajectory left the window at radius {radius:e}")]
    EscapedWindow { radius: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
