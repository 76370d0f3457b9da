use serde::{Deserialize, Serialize};

use super::poly::BivariatePoly;

/// Homogeneous form of a fixed degree `d`; `coefficients[j]` multiplies
/// `x^(d-j) y^j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomogeneousForm {
    degree: u32,
    coefficients: Vec<f64>,
}

impl HomogeneousForm {
    /// Panics if `coefficients.len() != degree + 1`.
    pub fn new(degree: u32, coefficients: Vec<f64>) -> Self {
        assert_eq!(
            coefficients.len(),
            degree as usize + 1,
            "a degree-{degree} form needs {} coefficients",
            degree + 1
        );
        Self { degree, coefficients }
    }

    pub fn zero(degree: u32) -> Self {
        Self::new(degree, vec![0.0; degree as usize + 1])
    }

    /// `c * (x^2 + y^2)^p`, a form of degree `2p`.
    pub fn scaled_rho_power(c: f64, p: u32) -> Self {
        let mut coeffs = vec![0.0; 2 * p as usize + 1];
        let mut binom = 1.0;
        for t in 0..=p as usize {
            coeffs[2 * t] = c * binom;
            binom = binom * (p as usize - t) as f64 / (t + 1) as f64;
        }
        Self::new(2 * p, coeffs)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| *c == 0.0)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let d = self.degree as i32;
        self.coefficients
            .iter()
            .enumerate()
            .map(|(j, c)| c * x.powi(d - j as i32) * y.powi(j as i32))
            .sum()
    }

    pub fn to_poly(&self) -> BivariatePoly {
        BivariatePoly::from(self)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coefficients.iter().fold(0.0, |a, c| a.max(c.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rho_power_matches_expansion() {
        let f = HomogeneousForm::scaled_rho_power(-1.0, 2);
        assert_eq!(f.coefficients(), &[-1.0, 0.0, -2.0, 0.0, -1.0]);
        let (x, y) = (0.3_f64, -1.1_f64);
        let rho2: f64 = x * x + y * y;
        assert!((f.eval(x, y) + rho2.powi(2)).abs() < 1e-14);
    }

    #[test]
    fn homogeneity_under_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let d: u32 = rng.gen_range(0..9);
            let coeffs = (0..=d).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let h = HomogeneousForm::new(d, coeffs);
            for _ in 0..10 {
                let (x, y) = (rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
                let t: f64 = rng.gen_range(0.1..3.0);
                let lhs = h.eval(t * x, t * y);
                let rhs = t.powi(d as i32) * h.eval(x, y);
                let scale = lhs.abs().max(rhs.abs()).max(1e-300);
                // Cancellation can make the value itself tiny; compare against
                // the magnitude of the largest term.
                let term_mag: f64 = h
                    .coefficients()
                    .iter()
                    .enumerate()
                    .map(|(j, c)| (c * (t * x).powi((d as usize - j) as i32) * (t * y).powi(j as i32)).abs())
                    .sum();
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * scale.max(term_mag),
                    "degree {d}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn poly_round_trip() {
        let h = HomogeneousForm::new(3, vec![1.0, 0.0, -2.0, 0.5]);
        let p = h.to_poly();
        assert_eq!(p.lowest_degree_form().unwrap(), h);
    }
}
