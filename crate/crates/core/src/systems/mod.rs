//! The vector-field families under study, the quadrant map `F_{m,n}`, the
//! annulus reference flow and perturbation assembly.
//!
//! For odd exponents the degenerate families are exactly the printed
//! polynomial systems. For an even exponent the printed polynomial is
//! reversible (`P` even and `Q` odd in that variable), which forces a
//! center; the field that `F_{m,n}` actually pushes the weak focus onto
//! carries an extra factor `sgn(x)^{m-1} sgn(y)^{n-1}` on the `±` term.
//! [`PlanarSystem::printed`] recovers the literal polynomial.

mod families;
mod field;
mod qmap;

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyfield::{characteristic_directions, BivariatePoly, Direction, DirectionKind, DirectionSet};

pub use families::{
    make_annulus, make_deg_mn, make_deg_nn, make_homogeneous, make_weak_focus, perturb, perturb_forced,
};
pub use field::{sgn, SignedPoly};
pub use qmap::{qmap_forward, qmap_inverse, QuadrantMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    WeakFocus,
    DegNn,
    DegNnLambda,
    Homogeneous,
    DegMn,
    Annulus,
    Custom,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::WeakFocus => "weak_focus",
            Family::DegNn => "deg_nn",
            Family::DegNnLambda => "deg_nn_lambda",
            Family::Homogeneous => "homogeneous",
            Family::DegMn => "deg_mn",
            Family::Annulus => "annulus",
            Family::Custom => "custom",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "weak_focus" => Family::WeakFocus,
            "deg_nn" => Family::DegNn,
            "deg_nn_lambda" => Family::DegNnLambda,
            "homogeneous" => Family::Homogeneous,
            "deg_mn" => Family::DegMn,
            "annulus" => Family::Annulus,
            "custom" => Family::Custom,
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sign of the `±` in the family equations. `Attracting` is the `-` branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Attracting,
    Repelling,
}

impl Orientation {
    pub fn sign(&self) -> f64 {
        match self {
            Orientation::Attracting => -1.0,
            Orientation::Repelling => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    pub lambda: f64,
    pub orientation: Orientation,
}

/// `ẋ = P(x, y)`, `ẏ = Q(x, y)` with family metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarSystem {
    pub p: SignedPoly,
    pub q: SignedPoly,
    pub family: Family,
    pub params: Params,
    /// First integral, for the conservative reference flow.
    pub conserved: Option<BivariatePoly>,
}

impl PlanarSystem {
    pub fn custom(p: BivariatePoly, q: BivariatePoly) -> Self {
        Self::custom_signed(SignedPoly::plain(p), SignedPoly::plain(q))
    }

    pub fn custom_signed(p: SignedPoly, q: SignedPoly) -> Self {
        Self {
            p,
            q,
            family: Family::Custom,
            params: Params::default(),
            conserved: None,
        }
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        (self.p.eval(x, y), self.q.eval(x, y))
    }

    /// True if no quadrant sign factors are present.
    pub fn is_polynomial(&self) -> bool {
        self.p.is_plain() && self.q.is_plain()
    }

    /// The literal polynomial system with every sign factor set to 1.
    pub fn printed(&self) -> PlanarSystem {
        PlanarSystem {
            p: SignedPoly::plain(self.p.collapsed()),
            q: SignedPoly::plain(self.q.collapsed()),
            family: Family::Custom,
            params: self.params.clone(),
            conserved: self.conserved.clone(),
        }
    }

    /// Angular velocity `(x Q - y P) / r²`.
    pub fn angular_velocity(&self, x: f64, y: f64) -> f64 {
        let (p, q) = self.eval(x, y);
        (x * q - y * p) / (x * x + y * y)
    }

    /// Characteristic directions of the origin. Sign-corrected systems are
    /// polynomial on each closed quadrant; a direction is kept when its line
    /// meets the quadrant whose polynomial produced it.
    pub fn characteristic_directions(&self) -> Result<DirectionSet> {
        if self.is_polynomial() {
            return characteristic_directions(self.p.part(0), self.q.part(0));
        }
        if self.p.is_zero() && self.q.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut found: Vec<Direction> = Vec::new();
        for (sx, sy) in [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)] {
            let p = self.p.in_quadrant(sx, sy);
            let q = self.q.in_quadrant(sx, sy);
            if p.is_zero() && q.is_zero() {
                continue;
            }
            let set = characteristic_directions(&p, &q)?;
            if set.kind == DirectionKind::All {
                return Ok(DirectionSet::all());
            }
            let odd_quadrant = sx * sy > 0.0;
            for d in set.directions {
                let on_axis = d.angle == 0.0 || (d.angle - FRAC_PI_2).abs() < 1e-12;
                let inside = if odd_quadrant {
                    d.angle <= FRAC_PI_2 + 1e-12
                } else {
                    d.angle >= FRAC_PI_2 - 1e-12
                };
                if inside || on_axis {
                    match found.iter_mut().find(|e| (e.angle - d.angle).abs() < 1e-8) {
                        Some(e) => e.multiplicity = e.multiplicity.max(d.multiplicity),
                        None => found.push(d),
                    }
                }
            }
        }
        Ok(DirectionSet::from_directions(found))
    }

    /// Lowest total degree of the field.
    pub fn lowest_degree(&self) -> Option<u32> {
        match (self.p.min_degree(), self.q.min_degree()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Exponent of the radial growth of `‖X‖` near the origin when the
    /// field is degenerate enough to stall a time-parametrised integrator.
    pub fn prefers_rescaled(&self) -> bool {
        self.lowest_degree().is_some_and(|d| d >= 3)
    }
}

#[cfg(test)]
mod tests;
