use crate::error::{Error, Result};
use crate::polyfield::{HomogeneousForm, TrigPoly};

/// Closed-form `r(φ)` for `ṙ = r^{s+1} R(cos φ, sin φ)`, `φ̇ = r^{2k}`:
/// `r(φ) = [r0^{-(s-2k)} - (s-2k) ∫₀^φ R]^{-1/(s-2k)}`.
pub fn polar_oracle_hom(k: u32, r: &HomogeneousForm, r0: f64, phi: f64) -> Result<f64> {
    let s = r.degree();
    if !s.is_multiple_of(2) || s <= 2 * k {
        return Err(Error::BadParameter(format!(
            "need even s > 2k (got s={s}, k={k})"
        )));
    }
    if !(r0 > 0.0) {
        return Err(Error::BadParameter(format!("r0 must be positive (got {r0})")));
    }
    let e = (s - 2 * k) as f64;
    let trig = TrigPoly::from_form(r);
    let c = r0.powf(-e);
    let bracket = |p: f64| c - e * trig.integral_from_zero(p);
    // The bracket must stay positive on the whole range, not only at φ.
    let samples = ((phi.abs() / std::f64::consts::TAU) * 64.0).ceil().max(1.0) as usize;
    for i in 1..=samples {
        let p = phi * i as f64 / samples as f64;
        if !(bracket(p) > 0.0) {
            return Err(Error::BlowUp { phi: p });
        }
    }
    Ok(bracket(phi).powf(-1.0 / e))
}
