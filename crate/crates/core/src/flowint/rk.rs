//! Dormand–Prince 5(4) stepping over a flattened copy of the field.

use crate::systems::{sgn, PlanarSystem};

const MAX_TABLE: usize = 64;

#[derive(Debug, Clone)]
struct Term {
    i: usize,
    j: usize,
    c: f64,
}

/// The field with terms laid out flat for fast repeated evaluation,
/// optionally time-reversed and/or normalised to unit speed.
#[derive(Debug, Clone)]
pub(crate) struct CompiledField {
    // [component][sign part]
    terms: [[Vec<Term>; 4]; 2],
    plain: bool,
    max_pow: usize,
    time_sign: f64,
    rescaled: bool,
}

impl CompiledField {
    pub fn new(sys: &PlanarSystem, time_sign: f64, rescaled: bool) -> Self {
        let mut max_pow = 0;
        let mut flat = |sp: &crate::systems::SignedPoly| -> [Vec<Term>; 4] {
            let mut out: [Vec<Term>; 4] = Default::default();
            for (k, part) in sp.parts().iter().enumerate() {
                for (m, c) in part.terms() {
                    max_pow = max_pow.max(m.i as usize).max(m.j as usize);
                    out[k].push(Term {
                        i: m.i as usize,
                        j: m.j as usize,
                        c,
                    });
                }
            }
            out
        };
        let terms = [flat(&sys.p), flat(&sys.q)];
        Self {
            terms,
            plain: sys.is_polynomial(),
            max_pow,
            time_sign,
            rescaled,
        }
    }

    /// The raw (un-normalised, forward-time) field value.
    pub fn raw(&self, x: f64, y: f64) -> (f64, f64) {
        if self.max_pow >= MAX_TABLE {
            return self.raw_slow(x, y);
        }
        let mut xp = [1.0f64; MAX_TABLE];
        let mut yp = [1.0f64; MAX_TABLE];
        for e in 1..=self.max_pow {
            xp[e] = xp[e - 1] * x;
            yp[e] = yp[e - 1] * y;
        }
        let sum = |ts: &[Term]| ts.iter().fold(0.0, |acc, t| acc + t.c * xp[t.i] * yp[t.j]);
        let mut out = [0.0; 2];
        for (c, parts) in self.terms.iter().enumerate() {
            let mut v = sum(&parts[0]);
            if !self.plain {
                let (sx, sy) = (sgn(x), sgn(y));
                v += sx * sum(&parts[1]) + sy * sum(&parts[2]) + sx * sy * sum(&parts[3]);
            }
            out[c] = v;
        }
        (out[0], out[1])
    }

    fn raw_slow(&self, x: f64, y: f64) -> (f64, f64) {
        let sum = |ts: &[Term]| {
            ts.iter()
                .fold(0.0, |acc, t| acc + t.c * x.powi(t.i as i32) * y.powi(t.j as i32))
        };
        let (sx, sy) = (sgn(x), sgn(y));
        let comp = |parts: &[Vec<Term>; 4]| {
            sum(&parts[0]) + sx * sum(&parts[1]) + sy * sum(&parts[2]) + sx * sy * sum(&parts[3])
        };
        (comp(&self.terms[0]), comp(&self.terms[1]))
    }

    /// The field actually integrated. `None` when a unit-speed field is
    /// requested at a point where the raw field vanishes.
    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> Option<(f64, f64)> {
        let (p, q) = self.raw(x, y);
        let (p, q) = (p * self.time_sign, q * self.time_sign);
        if self.rescaled {
            let n = p.hypot(q);
            if !(n > 1e-300) {
                return None;
            }
            Some((p / n, q / n))
        } else {
            Some((p, q))
        }
    }
}

// Dormand–Prince tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b - b*, coefficients of the embedded error estimate
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Step {
    pub y: [f64; 2],
    /// Derivative at the new point (FSAL stage).
    pub f: [f64; 2],
    pub err: [f64; 2],
}

/// One Dormand–Prince step of size `h` from `y0` with derivative `f0`.
/// `None` if the field is singular at a stage point.
pub(crate) fn dp_step(field: &CompiledField, y0: [f64; 2], f0: [f64; 2], h: f64) -> Option<Step> {
    let ev = |y: [f64; 2]| field.eval(y[0], y[1]).map(|(a, b)| [a, b]);
    let k1 = f0;
    let mut s = [0.0; 2];
    for d in 0..2 {
        s[d] = y0[d] + h * A21 * k1[d];
    }
    let k2 = ev(s)?;
    for d in 0..2 {
        s[d] = y0[d] + h * (A31 * k1[d] + A32 * k2[d]);
    }
    let k3 = ev(s)?;
    for d in 0..2 {
        s[d] = y0[d] + h * (A41 * k1[d] + A42 * k2[d] + A43 * k3[d]);
    }
    let k4 = ev(s)?;
    for d in 0..2 {
        s[d] = y0[d] + h * (A51 * k1[d] + A52 * k2[d] + A53 * k3[d] + A54 * k4[d]);
    }
    let k5 = ev(s)?;
    for d in 0..2 {
        s[d] = y0[d] + h * (A61 * k1[d] + A62 * k2[d] + A63 * k3[d] + A64 * k4[d] + A65 * k5[d]);
    }
    let k6 = ev(s)?;
    let mut y = [0.0; 2];
    for d in 0..2 {
        y[d] = y0[d] + h * (B1 * k1[d] + B3 * k3[d] + B4 * k4[d] + B5 * k5[d] + B6 * k6[d]);
    }
    let k7 = ev(y)?;
    let mut err = [0.0; 2];
    for d in 0..2 {
        err[d] = h * (E1 * k1[d] + E3 * k3[d] + E4 * k4[d] + E5 * k5[d] + E6 * k6[d] + E7 * k7[d]);
    }
    Some(Step { y, f: k7, err })
}

/// Cubic Hermite interpolation on `[0, h]` at fraction `theta`.
pub(crate) fn hermite(
    y0: [f64; 2],
    f0: [f64; 2],
    y1: [f64; 2],
    f1: [f64; 2],
    h: f64,
    theta: f64,
) -> [f64; 2] {
    let t = theta;
    let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    let h10 = t * (1.0 - t) * (1.0 - t);
    let h01 = t * t * (3.0 - 2.0 * t);
    let h11 = t * t * (t - 1.0);
    let mut out = [0.0; 2];
    for d in 0..2 {
        out[d] = h00 * y0[d] + h10 * h * f0[d] + h01 * y1[d] + h11 * h * f1[d];
    }
    out
}
