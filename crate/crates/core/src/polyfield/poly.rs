use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::form::HomogeneousForm;
use crate::error::{Error, Result};

/// Exponent pair of a monomial `x^i y^j`.
///
/// Ordered graded-lexicographically: total degree first, then higher
/// power of `x` first. Evaluation accumulates terms in this order, which
/// makes `BivariatePoly::eval` bit-reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { i: 0, j: 0 };

    pub fn new(i: u32, j: u32) -> Self {
        Self { i, j }
    }

    pub fn degree(&self) -> u32 {
        self.i + self.j
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.i.cmp(&self.i))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse real polynomial in `x` and `y`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BivariatePoly {
    terms: BTreeMap<Monomial, f64>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1.0, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1.0, 0, 1)
    }

    pub fn monomial(c: f64, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(i, j), c);
        p
    }

    /// Builds a polynomial from `(i, j, coefficient)` triples; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, f64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(Monomial::new(i, j), c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: f64) {
        if c == 0.0 {
            return;
        }
        let slot = self.terms.entry(m).or_insert(0.0);
        *slot += c;
        if *slot == 0.0 {
            self.terms.remove(&m);
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> f64 {
        self.terms.get(&Monomial::new(i, j)).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, f64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree() as i64).max().unwrap_or(-1)
    }

    /// Lowest total degree among stored terms; `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            acc += c * x.powi(m.i as i32) * y.powi(m.j as i32);
        }
        acc
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * s);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(1.0);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Homogeneous component of total degree `d` (possibly the zero form).
    pub fn homogeneous_part(&self, d: u32) -> HomogeneousForm {
        let mut coeffs = vec![0.0; d as usize + 1];
        for (m, c) in &self.terms {
            if m.degree() == d {
                coeffs[m.j as usize] = *c;
            }
        }
        HomogeneousForm::new(d, coeffs)
    }

    /// Nonzero homogeneous component of minimal total degree.
    pub fn lowest_degree_form(&self) -> Result<HomogeneousForm> {
        let d = self.min_degree().ok_or(Error::ZeroPolynomial)?;
        Ok(self.homogeneous_part(d))
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |a, c| a.max(c.abs()))
    }
}

impl From<&HomogeneousForm> for BivariatePoly {
    fn from(h: &HomogeneousForm) -> Self {
        let d = h.degree();
        let mut p = Self::zero();
        for (j, c) in h.coefficients().iter().enumerate() {
            p.add_term(Monomial::new(d - j as u32, j as u32), *c);
        }
        p
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, *c);
        }
        out
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(Monomial::new(a.i + b.i, a.j + b.j), ca * cb);
            }
        }
        out
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for BivariatePoly {
            type Output = BivariatePoly;
            fn $f(self, rhs: BivariatePoly) -> BivariatePoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if *c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if *c < 0.0 { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if mag != 1.0 || m.degree() == 0 {
                factors.push(format!("{mag}"));
            }
            for (var, e) in [("x", m.i), ("y", m.j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho2() -> BivariatePoly {
        &BivariatePoly::x().pow(2) + &BivariatePoly::y().pow(2)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(rho2().eval(3.0, 4.0), 25.0);
        assert_eq!(BivariatePoly::zero().eval(1.7, -2.3), 0.0);
        let p = BivariatePoly::monomial(-1.0, 0, 3);
        assert_eq!(p.eval(1.0, 2.0), -8.0);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = &BivariatePoly::x() - &BivariatePoly::x();
        assert!(p.is_zero());
        assert_eq!(p.degree(), -1);
        let q = BivariatePoly::from_terms([(1, 0, 0.0), (0, 2, 3.0)]);
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn degree_and_lowest_form() {
        // -y + x(x^2+y^2)
        let p = &-&BivariatePoly::y() + &(&BivariatePoly::x() * &rho2());
        assert_eq!(p.degree(), 3);
        let low = p.lowest_degree_form().unwrap();
        assert_eq!(low.degree(), 1);
        assert_eq!(low.coefficients(), &[0.0, -1.0]);

        let q = BivariatePoly::from_terms([(3, 0, 1.0), (5, 0, 1.0)]);
        let low = q.lowest_degree_form().unwrap();
        assert_eq!(low.degree(), 3);
        assert_eq!(low.coefficients(), &[1.0, 0.0, 0.0, 0.0]);

        // -y^3 + x^2 y (x^4 + y^4)
        let quart = BivariatePoly::from_terms([(4, 0, 1.0), (0, 4, 1.0)]);
        let r = &BivariatePoly::monomial(-1.0, 0, 3) + &(&BivariatePoly::monomial(1.0, 2, 1) * &quart);
        let low = r.lowest_degree_form().unwrap();
        assert_eq!(low.degree(), 3);
        assert_eq!(low.coefficients(), &[0.0, 0.0, 0.0, -1.0]);

        assert!(matches!(
            BivariatePoly::zero().lowest_degree_form(),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn binomial_expansion() {
        // x (x^2 + y^2)^2 = x^5 + 2 x^3 y^2 + x y^4
        let p = &BivariatePoly::x() * &rho2().pow(2);
        assert_eq!(p.coeff(5, 0), 1.0);
        assert_eq!(p.coeff(3, 2), 2.0);
        assert_eq!(p.coeff(1, 4), 1.0);
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn term_order_is_graded() {
        let p = BivariatePoly::from_terms([(0, 3, 1.0), (1, 0, 1.0), (2, 1, 1.0), (3, 0, 1.0)]);
        let order: Vec<_> = p.terms().map(|(m, _)| (m.i, m.j)).collect();
        assert_eq!(order, vec![(1, 0), (3, 0), (2, 1), (0, 3)]);
    }
}
