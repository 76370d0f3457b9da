use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use focusdim::polyfield::BivariatePoly;
use focusdim::systems::SignedPoly;

/// `x^i y^j sx^a sy^b` with `a, b ∈ {0, 1}` (`sx² = sy² = 1`), packed as
/// `(i, j, a | b << 1)`.
pub type Key = (u32, u32, u8);

/// Polynomial in `x`, `y`, `sx`, `sy` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactPoly {
    terms: BTreeMap<Key, BigRational>,
}

impl ExactPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term((0, 0, 0), c)
    }

    pub fn term(key: Key, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(key, c);
        p
    }

    pub fn terms(&self) -> &BTreeMap<Key, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Key, c: BigRational) {
        let e = self.terms.entry(key).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term((a.0 + b.0, a.1 + b.1, a.2 ^ b.2), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(BigRational::one()), |acc, _| acc.mul(self))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0 + k.1).max().unwrap_or(0)
    }

    /// Coefficients rounded to `f64`, split by sign factor.
    pub fn to_signed(&self) -> SignedPoly {
        let mut parts: [BivariatePoly; 4] = Default::default();
        for (&(i, j, mask), c) in &self.terms {
            let v = c.to_f64().unwrap_or(f64::NAN);
            parts[mask as usize] = &parts[mask as usize] + &BivariatePoly::monomial(v, i, j);
        }
        SignedPoly::from_parts(parts)
    }

    /// Exact image of a `SignedPoly`; every finite `f64` is a dyadic
    /// rational.
    pub fn from_signed(p: &SignedPoly) -> Self {
        let mut out = Self::zero();
        for (mask, part) in p.parts().iter().enumerate() {
            for (m, c) in part.terms() {
                let c = BigRational::from_float(c).expect("finite coefficient");
                out.add_term((m.i, m.j, mask as u8), c);
            }
        }
        out
    }

    /// Canonical text: highest degree first, sign factors last.
    pub fn print(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Key> = self.terms.keys().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0, a.2).cmp(&(a.0 + a.1, a.0, b.2)));
        let mut s = String::new();
        for (n, k) in keys.into_iter().enumerate() {
            let c = &self.terms[k];
            if n == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (name, e) in [("x", k.0), ("y", k.1)] {
                match e {
                    0 => {}
                    1 => factors.push(name.into()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if k.2 & 1 == 1 {
                factors.push("sx".into());
            }
            if k.2 & 2 == 2 {
                factors.push("sy".into());
            }
            if !a.is_one() || factors.is_empty() {
                factors.insert(0, rational_text(&a));
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

fn rational_text(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}
