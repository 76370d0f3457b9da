use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `F_{m,n}(x, y) = (sgn x |x|^{1/m}, sgn y |y|^{1/n})`: a homeomorphism
/// of the plane preserving every quadrant, not differentiable on the axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrantMap {
    m: u32,
    n: u32,
}

impl QuadrantMap {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::BadParameter(format!(
                "quadrant map exponents must be >= 1 (got m={m}, n={n})"
            )));
        }
        if m == 1 && n == 1 {
            return Err(Error::BadParameter(
                "F_{1,1} is the identity; use QuadrantMap::identity()".into(),
            ));
        }
        Ok(Self { m, n })
    }

    pub fn identity() -> Self {
        Self { m: 1, n: 1 }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn forward(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (root(x, self.m), root(y, self.n))
    }

    pub fn inverse(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            x.signum() * x.abs().powi(self.m as i32),
            y.signum() * y.abs().powi(self.n as i32),
        )
    }
}

fn root(v: f64, e: u32) -> f64 {
    match e {
        1 => v,
        2 => v.signum() * v.abs().sqrt(),
        3 => v.cbrt(),
        _ => v.signum() * v.abs().powf(1.0 / e as f64),
    }
}

pub fn qmap_forward(f: &QuadrantMap, p: (f64, f64)) -> (f64, f64) {
    f.forward(p)
}

pub fn qmap_inverse(f: &QuadrantMap, p: (f64, f64)) -> (f64, f64) {
    f.inverse(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let f = QuadrantMap::new(2, 2).unwrap();
        assert_eq!(f.forward((4.0, -9.0)), (2.0, -3.0));
        let id = QuadrantMap::identity();
        assert_eq!(id.forward((0.3, -1.7)), (0.3, -1.7));
        let g = QuadrantMap::new(3, 2).unwrap();
        let back = g.inverse(g.forward((-0.7, 0.3)));
        assert!((back.0 + 0.7).abs() < 1e-14 && (back.1 - 0.3).abs() < 1e-14);
        assert!(QuadrantMap::new(1, 1).is_err());
        assert!(QuadrantMap::new(0, 2).is_err());
    }

    #[test]
    fn mutually_inverse_on_grid() {
        for (m, n) in [(2, 2), (3, 2), (2, 1), (3, 3), (1, 4)] {
            let f = QuadrantMap::new(m, n).unwrap();
            for a in 0..100 {
                for b in 0..100 {
                    let p = (-2.0 + 4.0 * a as f64 / 99.0, -2.0 + 4.0 * b as f64 / 99.0);
                    let r1 = f.inverse(f.forward(p));
                    let r2 = f.forward(f.inverse(p));
                    for (u, v) in [(r1, p), (r2, p)] {
                        assert!((u.0 - v.0).abs() < 1e-13 && (u.1 - v.1).abs() < 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn preserves_quadrants() {
        let f = QuadrantMap::new(3, 2).unwrap();
        for p in [(0.5, 0.5), (-0.5, 0.5), (-0.5, -0.5), (0.5, -0.5)] {
            let q = f.forward(p);
            assert_eq!(q.0.signum(), p.0.signum());
            assert_eq!(q.1.signum(), p.1.signum());
        }
    }
}
