//! Integrals of homogeneous forms restricted to the unit circle.

use std::f64::consts::PI;

use super::form::HomogeneousForm;

/// `∫₀^{2π} cos^a φ sin^b φ dφ`; zero unless both exponents are even, else
/// `2π (a-1)!! (b-1)!! / (a+b)!!`.
pub fn wallis(a: u32, b: u32) -> f64 {
    if a % 2 == 1 || b % 2 == 1 {
        return 0.0;
    }
    // Build the ratio incrementally to stay well inside f64 range.
    let mut v = 2.0 * PI;
    let mut num = Vec::new();
    num.extend((1..a).step_by(2));
    num.extend((1..b).step_by(2));
    let den: Vec<u32> = (2..=a + b).step_by(2).collect();
    for (k, d) in den.iter().enumerate() {
        if let Some(n) = num.get(k) {
            v *= *n as f64;
        }
        v /= *d as f64;
    }
    v
}

/// `I = ∫₀^{2π} R(cos φ, sin φ) dφ`. The origin of the homogeneous family is
/// a focus iff this is nonzero.
pub fn focus_integral(r: &HomogeneousForm) -> f64 {
    let d = r.degree();
    r.coefficients()
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(j, c)| c * wallis(d - j as u32, j as u32))
        .sum()
}

/// Finite Fourier series `A₀ + Σ_{k≥1} (A_k cos kφ + B_k sin kφ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl TrigPoly {
    /// Expands `R(cos φ, sin φ)` through `cos = (e^{iφ}+e^{-iφ})/2`,
    /// `sin = (e^{iφ}-e^{-iφ})/(2i)`.
    pub fn from_form(r: &HomogeneousForm) -> Self {
        let d = r.degree() as usize;
        let n = 2 * d + 1; // frequencies -d..=d
        let mut re = vec![0.0; n];
        let mut im = vec![0.0; n];
        for (j, c) in r.coefficients().iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            let a = d - j;
            let b = j;
            // (z + 1/z)^a (z - 1/z)^b with z = e^{iφ}; coefficients by frequency
            let mut poly = vec![1.0f64];
            for _ in 0..a {
                poly = convolve(&poly, &[1.0, 0.0, 1.0]);
            }
            for _ in 0..b {
                poly = convolve(&poly, &[-1.0, 0.0, 1.0]);
            }
            // poly[m] multiplies z^{m - (a+b)}
            let scale = c / 2f64.powi((a + b) as i32);
            // divide by i^b: i^{-b} cycles 1, -i, -1, i
            let (sr, si) = match b % 4 {
                0 => (1.0, 0.0),
                1 => (0.0, -1.0),
                2 => (-1.0, 0.0),
                _ => (0.0, 1.0),
            };
            for (m, v) in poly.iter().enumerate() {
                let freq = m as i64 - d as i64;
                let idx = (freq + d as i64) as usize;
                re[idx] += scale * v * sr;
                im[idx] += scale * v * si;
            }
        }
        let mut cos = vec![0.0; d + 1];
        let mut sin = vec![0.0; d + 1];
        cos[0] = re[d];
        for k in 1..=d {
            cos[k] = 2.0 * re[d + k];
            sin[k] = -2.0 * im[d + k];
        }
        Self { cos, sin }
    }

    pub fn eval(&self, phi: f64) -> f64 {
        let mut acc = self.cos[0];
        for k in 1..self.cos.len() {
            let kp = k as f64 * phi;
            acc += self.cos[k] * kp.cos() + self.sin[k] * kp.sin();
        }
        acc
    }

    /// `∫₀^φ` of the series.
    pub fn integral_from_zero(&self, phi: f64) -> f64 {
        let mut acc = self.cos[0] * phi;
        for k in 1..self.cos.len() {
            let kf = k as f64;
            let kp = kf * phi;
            acc += self.cos[k] * kp.sin() / kf + self.sin[k] * (1.0 - kp.cos()) / kf;
        }
        acc
    }

    pub fn mean(&self) -> f64 {
        self.cos[0]
    }
}

fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
