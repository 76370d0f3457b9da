//! Bivariate polynomial algebra for planar vector fields: evaluation,
//! homogeneous parts, characteristic directions and the focus integral.

mod chardir;
mod form;
mod poly;
pub mod sturm;
mod trig;

pub use chardir::{
    characteristic_directions, linear_factors, tangent_form, Direction, DirectionKind, DirectionSet,
};
pub use form::HomogeneousForm;
pub use poly::{BivariatePoly, Monomial};
pub use trig::{focus_integral, wallis, TrigPoly};

/// `Σ c_ij x^i y^j`, accumulated in graded-lex term order.
pub fn poly_eval(p: &BivariatePoly, x: f64, y: f64) -> f64 {
    p.eval(x, y)
}

pub fn lowest_degree_form(p: &BivariatePoly) -> crate::Result<HomogeneousForm> {
    p.lowest_degree_form()
}
