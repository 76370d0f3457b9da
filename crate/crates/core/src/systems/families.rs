use super::field::SignedPoly;
use super::{Family, Orientation, Params, PlanarSystem};
use crate::error::{Error, Result};
use crate::polyfield::{BivariatePoly, HomogeneousForm};

fn x() -> BivariatePoly {
    BivariatePoly::x()
}

fn y() -> BivariatePoly {
    BivariatePoly::y()
}

fn rho2() -> BivariatePoly {
    &x().pow(2) + &y().pow(2)
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::BadParameter(msg()))
    }
}

/// Sign-twist mask `sgn(x)^{a-1} sgn(y)^{b-1}` for the `±` term of the
/// pushed-forward weak focus.
fn twist_mask(a: u32, b: u32) -> usize {
    let mut mask = 0;
    if a.is_multiple_of(2) {
        mask |= 1;
    }
    if b.is_multiple_of(2) {
        mask |= 2;
    }
    mask
}

/// `ẋ = -y ± x (x²+y²)^k`, `ẏ = x ± y (x²+y²)^k`.
pub fn make_weak_focus(k: u32, orientation: Orientation) -> Result<PlanarSystem> {
    require(k >= 1, || format!("weak focus needs k >= 1 (got {k})"))?;
    let sig = orientation.sign();
    let g = rho2().pow(k).scale(sig);
    let p = &-&y() + &(&x() * &g);
    let q = &x() + &(&y() * &g);
    Ok(PlanarSystem {
        p: SignedPoly::plain(p),
        q: SignedPoly::plain(q),
        family: Family::WeakFocus,
        params: Params {
            k: Some(k),
            orientation,
            ..Params::default()
        },
        conserved: None,
    })
}

/// `ẋ = -y^{2n-1} ± x^n y^{n-1}((x^{2n}+y^{2n})^k + λ)`,
/// `ẏ = x^{2n-1} ± x^{n-1} y^n((x^{2n}+y^{2n})^k + λ)`,
/// with the `±` term sign-corrected for even `n`.
pub fn make_deg_nn(k: u32, n: u32, orientation: Orientation, lambda: f64) -> Result<PlanarSystem> {
    require(k >= 1 && n >= 1, || {
        format!("deg_nn needs k, n >= 1 (got k={k}, n={n})")
    })?;
    let sig = orientation.sign();
    let h = &x().pow(2 * n) + &y().pow(2 * n);
    let g = &h.pow(k) + &BivariatePoly::constant(lambda);
    let tp = &(&x().pow(n) * &y().pow(n - 1)) * &g.scale(sig);
    let tq = &(&x().pow(n - 1) * &y().pow(n)) * &g.scale(sig);
    let mask = twist_mask(n, n);
    let p = SignedPoly::plain(-&y().pow(2 * n - 1)).add(&SignedPoly::twisted(tp, mask));
    let q = SignedPoly::plain(x().pow(2 * n - 1)).add(&SignedPoly::twisted(tq, mask));
    Ok(PlanarSystem {
        p,
        q,
        family: if lambda == 0.0 {
            Family::DegNn
        } else {
            Family::DegNnLambda
        },
        params: Params {
            k: Some(k),
            n: Some(n),
            lambda,
            orientation,
            ..Params::default()
        },
        conserved: None,
    })
}

/// `ẋ = -y (x²+y²)^k + x R_s`, `ẏ = x (x²+y²)^k + y R_s` with `R_s` a form
/// of even degree `s > 2k`. The orientation records the sign of the focus
/// integral of `R_s`.
pub fn make_homogeneous(k: u32, r: &HomogeneousForm) -> Result<PlanarSystem> {
    let s = r.degree();
    require(s.is_multiple_of(2), || {
        format!("R_s must have even degree (got s={s})")
    })?;
    require(s > 2 * k, || format!("need s > 2k (got s={s}, k={k})"))?;
    let rp = r.to_poly();
    let g = rho2().pow(k);
    let p = &-&(&y() * &g) + &(&x() * &rp);
    let q = &(&x() * &g) + &(&y() * &rp);
    let integral = crate::polyfield::focus_integral(r);
    Ok(PlanarSystem {
        p: SignedPoly::plain(p),
        q: SignedPoly::plain(q),
        family: Family::Homogeneous,
        params: Params {
            k: Some(k),
            s: Some(s),
            orientation: if integral > 0.0 {
                Orientation::Repelling
            } else {
                Orientation::Attracting
            },
            ..Params::default()
        },
        conserved: None,
    })
}

/// `ẋ = -n y^{2n-1} ± n x^m y^{n-1}(x^{2m}+y^{2n})^k`,
/// `ẏ = m x^{2m-1} ± m x^{m-1} y^n (x^{2m}+y^{2n})^k`, prefactors as
/// printed; the `±` term carries `sgn(x)^{m-1} sgn(y)^{n-1}`.
pub fn make_deg_mn(k: u32, m: u32, n: u32, orientation: Orientation) -> Result<PlanarSystem> {
    require(k >= 1 && m >= 1 && n >= 1, || {
        format!("deg_mn needs k, m, n >= 1 (got k={k}, m={m}, n={n})")
    })?;
    let sig = orientation.sign();
    let h = (&x().pow(2 * m) + &y().pow(2 * n)).pow(k);
    let tp = &(&x().pow(m) * &y().pow(n - 1)) * &h.scale(sig * n as f64);
    let tq = &(&x().pow(m - 1) * &y().pow(n)) * &h.scale(sig * m as f64);
    let mask = twist_mask(m, n);
    let p = SignedPoly::plain(y().pow(2 * n - 1).scale(-(n as f64))).add(&SignedPoly::twisted(tp, mask));
    let q = SignedPoly::plain(x().pow(2 * m - 1).scale(m as f64)).add(&SignedPoly::twisted(tq, mask));
    Ok(PlanarSystem {
        p,
        q,
        family: Family::DegMn,
        params: Params {
            k: Some(k),
            m: Some(m),
            n: Some(n),
            orientation,
            ..Params::default()
        },
        conserved: None,
    })
}

/// `ẋ = -y^{2n-1}`, `ẏ = x^{2n-1}`; orbits are the level sets of
/// `x^{2n} + y^{2n}`.
pub fn make_annulus(n: u32) -> Result<PlanarSystem> {
    require(n >= 1, || format!("annulus flow needs n >= 1 (got {n})"))?;
    Ok(PlanarSystem {
        p: SignedPoly::plain(-&y().pow(2 * n - 1)),
        q: SignedPoly::plain(x().pow(2 * n - 1)),
        family: Family::Annulus,
        params: Params {
            n: Some(n),
            ..Params::default()
        },
        conserved: Some(&x().pow(2 * n) + &y().pow(2 * n)),
    })
}

fn assemble(base: &PlanarSystem, pbar: &BivariatePoly, qbar: &BivariatePoly, eps: f64) -> PlanarSystem {
    PlanarSystem {
        p: base.p.add(&SignedPoly::plain(pbar.scale(eps))),
        q: base.q.add(&SignedPoly::plain(qbar.scale(eps))),
        family: Family::Custom,
        params: base.params.clone(),
        conserved: None,
    }
}

fn check_degree(pbar: &BivariatePoly, qbar: &BivariatePoly, s: u32) -> Result<()> {
    for (name, p) in [("Pbar", pbar), ("Qbar", qbar)] {
        if let Some(d) = p.min_degree() {
            if d < s {
                return Err(Error::BadPerturbation(format!(
                    "{name} has a term of degree {d} < s = {s}"
                )));
            }
        }
    }
    Ok(())
}

/// `(P + ε P̄, Q + ε Q̄)` for a homogeneous-family base; `P̄`, `Q̄` must be
/// `O(‖(x,y)‖^s)`.
pub fn perturb(
    base: &PlanarSystem,
    pbar: &BivariatePoly,
    qbar: &BivariatePoly,
    eps: f64,
) -> Result<PlanarSystem> {
    if base.family != Family::Homogeneous {
        return Err(Error::BadPerturbation(format!(
            "the degree condition is defined for the homogeneous family only (base is {})",
            base.family
        )));
    }
    let s = base.params.s.expect("homogeneous family records s");
    check_degree(pbar, qbar, s)?;
    Ok(assemble(base, pbar, qbar, eps))
}

/// As [`perturb`], for any base; the degree threshold is the family's `s`
/// when present, otherwise one more than the lowest degree of the base
/// field (`2n` for `deg_nn`).
pub fn perturb_forced(
    base: &PlanarSystem,
    pbar: &BivariatePoly,
    qbar: &BivariatePoly,
    eps: f64,
) -> Result<PlanarSystem> {
    let s = match base.params.s {
        Some(s) => s,
        None => base.lowest_degree().map(|d| d + 1).unwrap_or(0),
    };
    check_degree(pbar, qbar, s)?;
    Ok(assemble(base, pbar, qbar, eps))
}
