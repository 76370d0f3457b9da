use serde::{Deserialize, Serialize};

use crate::polyfield::BivariatePoly;

/// Sign of `v` with `sgn(0) = 0`.
pub fn sgn(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Polynomial with quadrant-dependent sign factors:
/// `parts[0] + sgn(x)·parts[1] + sgn(y)·parts[2] + sgn(x)sgn(y)·parts[3]`.
///
/// Inside each open quadrant this is an ordinary polynomial. Only the
/// sign-corrected degenerate families use the twisted parts; every other
/// system lives entirely in `parts[0]`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SignedPoly {
    parts: [BivariatePoly; 4],
}

impl SignedPoly {
    pub fn plain(p: BivariatePoly) -> Self {
        let mut s = Self::default();
        s.parts[0] = p;
        s
    }

    /// `p·sgn(x)^{mask & 1}·sgn(y)^{mask >> 1}`.
    pub fn twisted(p: BivariatePoly, mask: usize) -> Self {
        let mut s = Self::default();
        s.parts[mask & 3] = p;
        s
    }

    pub fn from_parts(parts: [BivariatePoly; 4]) -> Self {
        Self { parts }
    }

    pub fn part(&self, mask: usize) -> &BivariatePoly {
        &self.parts[mask & 3]
    }

    pub fn parts(&self) -> &[BivariatePoly; 4] {
        &self.parts
    }

    pub fn is_plain(&self) -> bool {
        self.parts[1..].iter().all(|p| p.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mut acc = self.parts[0].eval(x, y);
        if !self.is_plain() {
            let (sx, sy) = (sgn(x), sgn(y));
            acc += sx * self.parts[1].eval(x, y)
                + sy * self.parts[2].eval(x, y)
                + sx * sy * self.parts[3].eval(x, y);
        }
        acc
    }

    /// The polynomial valid in the open quadrant with signs `(sx, sy)`.
    pub fn in_quadrant(&self, sx: f64, sy: f64) -> BivariatePoly {
        let mut acc = self.parts[0].clone();
        acc = &acc + &self.parts[1].scale(sx);
        acc = &acc + &self.parts[2].scale(sy);
        &acc + &self.parts[3].scale(sx * sy)
    }

    /// All sign factors replaced by 1.
    pub fn collapsed(&self) -> BivariatePoly {
        self.in_quadrant(1.0, 1.0)
    }

    pub fn add(&self, other: &SignedPoly) -> SignedPoly {
        let mut out = self.clone();
        for (a, b) in out.parts.iter_mut().zip(other.parts.iter()) {
            *a = &*a + b;
        }
        out
    }

    pub fn scale(&self, s: f64) -> SignedPoly {
        let mut out = self.clone();
        for p in out.parts.iter_mut() {
            *p = p.scale(s);
        }
        out
    }

    /// Lowest total degree over all parts.
    pub fn min_degree(&self) -> Option<u32> {
        self.parts.iter().filter_map(|p| p.min_degree()).min()
    }
}
