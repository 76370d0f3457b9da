use serde::{Deserialize, Serialize};

/// Ordinary least squares `y = intercept + slope·x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope.
    pub stderr: f64,
    pub r_squared: f64,
}

pub fn linear_fit(x: &[f64], y: &[f64]) -> LinearFit {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    assert!(x.len() >= 2, "need at least two points");
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    let r_squared = if syy > 0.0 {
        (1.0 - sse / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    let stderr = if x.len() > 2 {
        (sse / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    LinearFit {
        slope,
        intercept,
        stderr,
        r_squared,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 - 0.5 * v).collect();
        let f = linear_fit(&x, &y);
        assert!((f.slope + 0.5).abs() < 1e-15);
        assert!((f.intercept - 2.0).abs() < 1e-15);
        assert!(f.stderr < 1e-15);
        assert_eq!(f.r_squared, 1.0);
    }

    #[test]
    fn noisy_line_matches_closed_form() {
        // Hand-computed: x = 0..4, y = [1, 3, 2, 5, 4]
        let f = linear_fit(&[0.0, 1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 5.0, 4.0]);
        assert!((f.slope - 0.8).abs() < 1e-14);
        assert!((f.intercept - 1.4).abs() < 1e-14);
        // SSE = 3.6, Syy = 10 → r² = 0.64; stderr = sqrt(3.6/3/10)
        assert!((f.r_squared - 0.64).abs() < 1e-14);
        assert!((f.stderr - (0.12f64).sqrt()).abs() < 1e-14);
    }
}
