use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::form::HomogeneousForm;
use super::poly::BivariatePoly;
use super::sturm;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionKind {
    Empty,
    Finite,
    /// `y P_d - x Q_d` vanished identically.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    /// Angle of the line in `[0, π)`.
    pub angle: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionSet {
    pub kind: DirectionKind,
    pub directions: Vec<Direction>,
}

impl DirectionSet {
    pub fn empty() -> Self {
        Self {
            kind: DirectionKind::Empty,
            directions: Vec::new(),
        }
    }

    pub fn all() -> Self {
        Self {
            kind: DirectionKind::All,
            directions: Vec::new(),
        }
    }

    pub fn from_directions(mut directions: Vec<Direction>) -> Self {
        directions.sort_by(|a, b| a.angle.partial_cmp(&b.angle).unwrap());
        let mut merged: Vec<Direction> = Vec::new();
        for d in directions {
            match merged.last_mut() {
                Some(last) if (d.angle - last.angle).abs() < sturm::MERGE_DIST => {
                    last.multiplicity += d.multiplicity
                }
                _ => merged.push(d),
            }
        }
        // 0 and π - tiny are the same line.
        if merged.len() > 1 {
            let last = *merged.last().unwrap();
            if PI - last.angle + merged[0].angle < sturm::MERGE_DIST {
                merged[0].multiplicity += last.multiplicity;
                merged.pop();
            }
        }
        if merged.is_empty() {
            Self::empty()
        } else {
            Self {
                kind: DirectionKind::Finite,
                directions: merged,
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.kind == DirectionKind::Empty
    }
}

/// Lowest common degree `d` of `P` and `Q`, and the form `y P_d - x Q_d`.
pub fn tangent_form(p: &BivariatePoly, q: &BivariatePoly) -> Result<HomogeneousForm> {
    let d = match (p.min_degree(), q.min_degree()) {
        (None, None) => return Err(Error::ZeroPolynomial),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (Some(a), Some(b)) => a.min(b),
    };
    let pd = p.homogeneous_part(d);
    let qd = q.homogeneous_part(d);
    let mut f = vec![0.0; d as usize + 2];
    for (j, a) in pd.coefficients().iter().enumerate() {
        f[j + 1] += a;
    }
    for (j, b) in qd.coefficients().iter().enumerate() {
        f[j] -= b;
    }
    Ok(HomogeneousForm::new(d + 1, f))
}

/// Real linear factors of a binary form, as line angles with multiplicities.
pub fn linear_factors(f: &HomogeneousForm) -> DirectionSet {
    if f.is_zero() {
        return DirectionSet::all();
    }
    let coeffs = f.coefficients();
    // F(1, t) = Σ_j c_j t^j; its degree drop counts the factor x.
    let top = coeffs.iter().rposition(|c| *c != 0.0).unwrap();
    let x_mult = coeffs.len() - 1 - top;
    let mut dirs: Vec<Direction> = sturm::real_roots(&coeffs[..=top])
        .into_iter()
        .map(|(t, m)| {
            let mut angle = t.atan();
            if angle < 0.0 {
                angle += PI;
            }
            Direction {
                angle,
                multiplicity: m,
            }
        })
        .collect();
    if x_mult > 0 {
        dirs.push(Direction {
            angle: PI / 2.0,
            multiplicity: x_mult,
        });
    }
    DirectionSet::from_directions(dirs)
}

/// Characteristic directions of the singular point at the origin of
/// `ẋ = P, ẏ = Q`.
pub fn characteristic_directions(p: &BivariatePoly, q: &BivariatePoly) -> Result<DirectionSet> {
    Ok(linear_factors(&tangent_form(p, q)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(t: &[(u32, u32, f64)]) -> BivariatePoly {
        BivariatePoly::from_terms(t.iter().copied())
    }

    #[test]
    fn linear_center_has_none() {
        let d = characteristic_directions(&poly(&[(0, 1, -1.0)]), &poly(&[(1, 0, 1.0)])).unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn quartic_leading_part_has_none() {
        // P_3 = -y^3, Q_3 = x^3  =>  F = -y^4 - x^4
        let p = poly(&[(0, 3, -1.0), (2, 5, -1.0), (6, 1, -1.0)]);
        let q = poly(&[(3, 0, 1.0), (1, 6, -1.0), (5, 2, -1.0)]);
        let f = tangent_form(&p, &q).unwrap();
        assert_eq!(f.coefficients(), &[-1.0, 0.0, 0.0, 0.0, -1.0]);
        assert!(characteristic_directions(&p, &q).unwrap().is_empty());
    }

    #[test]
    fn quadratic_control() {
        // P = x^2, Q = y^2  =>  F = x^2 y - x y^2 = x y (x - y)
        let d = characteristic_directions(&poly(&[(2, 0, 1.0)]), &poly(&[(0, 2, 1.0)])).unwrap();
        assert_eq!(d.kind, DirectionKind::Finite);
        let angles: Vec<f64> = d.directions.iter().map(|d| d.angle).collect();
        let expected = [0.0, PI / 4.0, PI / 2.0];
        assert_eq!(angles.len(), 3);
        for (a, e) in angles.iter().zip(expected) {
            assert!((a - e).abs() < 1e-12, "{angles:?}");
        }
        assert!(d.directions.iter().all(|d| d.multiplicity == 1));
    }

    #[test]
    fn radial_field_is_all() {
        let d = characteristic_directions(&poly(&[(1, 0, 1.0)]), &poly(&[(0, 1, 1.0)])).unwrap();
        assert_eq!(d.kind, DirectionKind::All);
    }

    #[test]
    fn repeated_vertical_factor() {
        // F = x^2 y (x + y): P_2 = x^2 ... pick P = x^3 + x^2 y -> with Q = 0:
        // F = y P = x^3 y + x^2 y^2 = x^2 y (x + y)
        let d =
            characteristic_directions(&poly(&[(3, 0, 1.0), (2, 1, 1.0)]), &BivariatePoly::zero()).unwrap();
        let got: Vec<(f64, usize)> = d.directions.iter().map(|d| (d.angle, d.multiplicity)).collect();
        assert_eq!(got.len(), 3);
        assert!((got[0].0).abs() < 1e-12 && got[0].1 == 1);
        assert!((got[1].0 - PI / 2.0).abs() < 1e-12 && got[1].1 == 2);
        assert!((got[2].0 - 3.0 * PI / 4.0).abs() < 1e-12 && got[2].1 == 1);
    }

    #[test]
    fn both_zero_is_error() {
        assert!(matches!(
            characteristic_directions(&BivariatePoly::zero(), &BivariatePoly::zero()),
            Err(Error::ZeroPolynomial)
        ));
    }
}
