//! Closed-form dimension values for the built-in families.

use crate::error::{Error, Result};

fn bad(msg: String) -> Error {
    Error::BadParameter(msg)
}

/// `dim_B Γ = 2 − 2/(1+2kn)` for the degenerate `deg_nn` focus.
pub fn formula_theorem1(k: u32, n: u32) -> Result<f64> {
    if k < 1 || n < 1 {
        return Err(bad(format!("need k, n >= 1 (got k={k}, n={n})")));
    }
    Ok(2.0 - 2.0 / (1.0 + 2.0 * (k * n) as f64))
}

/// `dim_B Γ = 2 − 2/(s−2k+1)` for the homogeneous family.
pub fn formula_prop(k: u32, s: u32) -> Result<f64> {
    if !s.is_multiple_of(2) || s <= 2 * k {
        return Err(bad(format!("need even s > 2k (got s={s}, k={k})")));
    }
    Ok(2.0 - 2.0 / ((s - 2 * k) as f64 + 1.0))
}

/// Lower bound `2 − (1 + n/m)/(1 + 2km)` for `deg_mn`, `m ≥ n`.
pub fn bound_theorem3(k: u32, m: u32, n: u32) -> Result<f64> {
    if k < 1 || m < 1 || n < 1 {
        return Err(bad(format!("need k, m, n >= 1 (got k={k}, m={m}, n={n})")));
    }
    if m < n {
        return Err(bad(format!("need m >= n (got m={m}, n={n})")));
    }
    Ok(2.0 - (1.0 + n as f64 / m as f64) / (1.0 + 2.0 * (k * m) as f64))
}

/// Spiral exponent `α = 1/(2kn)` of `deg_nn` (and of the weak focus, n = 1).
pub fn alpha_theorem1(k: u32, n: u32) -> Result<f64> {
    formula_theorem1(k, n)?;
    Ok(1.0 / (2 * k * n) as f64)
}

/// Spiral exponent `α = 1/(s−2k)` of the homogeneous family.
pub fn alpha_prop(k: u32, s: u32) -> Result<f64> {
    formula_prop(k, s)?;
    Ok(1.0 / (s - 2 * k) as f64)
}

/// Box dimension `2/(1+α)` of an `α`-power spiral.
pub fn spiral_dimension(alpha: f64) -> f64 {
    2.0 / (1.0 + alpha)
}

/// Box dimension `1/(1+β)` of `{j^{-β}}`.
pub fn sequence_dimension_formula(beta: f64) -> f64 {
    1.0 / (1.0 + beta)
}
