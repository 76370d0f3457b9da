//! Real roots of univariate polynomials with multiplicities.
//!
//! Coefficients arrive as `f64` but every finite double is a dyadic rational,
//! so the conversion to `BigRational` is exact. Square-free decomposition
//! (Yun) and Sturm sequences then run in exact arithmetic; only the final
//! isolating intervals are bisected down to the requested width.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Width to which isolating intervals are refined.
pub const ROOT_WIDTH: f64 = 1e-12;
/// Roots closer than this are merged and their multiplicities summed.
pub const MERGE_DIST: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
struct RatPoly(Vec<BigRational>);

impl RatPoly {
    fn from_f64(coeffs: &[f64]) -> Self {
        let v = coeffs
            .iter()
            .map(|c| BigRational::from_float(*c).expect("finite coefficient"))
            .collect();
        let mut p = RatPoly(v);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    fn derivative(&self) -> Self {
        let v: Vec<BigRational> = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect();
        let mut p = RatPoly(v);
        p.trim();
        p
    }

    fn monic(&self) -> Self {
        let l = self.lead().clone();
        RatPoly(self.0.iter().map(|c| c / &l).collect())
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.0.get(k).cloned().unwrap_or_else(BigRational::zero);
            let b = other.0.get(k).cloned().unwrap_or_else(BigRational::zero);
            v.push(a - b);
        }
        let mut p = RatPoly(v);
        p.trim();
        p
    }

    /// Quotient and remainder of `self / d`.
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.0.clone();
        let mut quot = vec![BigRational::zero(); self.0.len().saturating_sub(dd).max(1)];
        let lead = d.lead().clone();
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / &lead;
            for (k, c) in d.0.iter().enumerate() {
                rem[shift + k] -= &f * c;
            }
            quot[shift] = f;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        let mut q = RatPoly(quot);
        q.trim();
        let mut r = RatPoly(rem);
        r.trim();
        (q, r)
    }

    fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn sign_at(&self, x: &BigRational) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Cauchy bound: all real roots lie in `(-B, B)`.
    fn root_bound(&self) -> BigRational {
        let lead = self.lead().abs();
        let m = self
            .0
            .iter()
            .take(self.0.len() - 1)
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        m + BigRational::one()
    }
}

/// Yun's square-free decomposition: returns `(factor, multiplicity)` pairs
/// whose product (with multiplicities) is the monic input.
fn squarefree(p: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let c = p.gcd(&dp);
    let mut w = p.exact_div(&c);
    let mut y = dp.exact_div(&c);
    let mut z = y.sub(&w.derivative());
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let a = w.gcd(&z);
        w = w.exact_div(&a);
        y = z.exact_div(&a);
        z = y.sub(&w.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

struct Sturm(Vec<RatPoly>);

impl Sturm {
    fn new(p: &RatPoly) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(RatPoly(r.0.into_iter().map(|c| -c).collect()));
        }
        Sturm(seq)
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.0 {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct roots in `(a, b]`.
    fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

fn isolate(p: &RatPoly) -> Vec<f64> {
    let sturm = Sturm::new(p);
    let b = p.root_bound();
    let mut stack = vec![(-b.clone(), b)];
    let mut roots = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count(&lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            roots.push(refine(p, lo, hi));
            continue;
        }
        let mid = (&lo + &hi) * half();
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

/// Bisects a square-free `p` on `(lo, hi]` holding exactly one root.
fn refine(p: &RatPoly, mut lo: BigRational, mut hi: BigRational) -> f64 {
    if p.sign_at(&hi) == 0 {
        return hi.to_f64().unwrap();
    }
    let s_hi = p.sign_at(&hi);
    let width = BigRational::from_float(ROOT_WIDTH).unwrap();
    while &hi - &lo > width {
        let mid = (&lo + &hi) * half();
        let s = p.sign_at(&mid);
        if s == 0 {
            return mid.to_f64().unwrap();
        }
        if s == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    ((lo + hi) * half()).to_f64().unwrap()
}

/// Real roots of `Σ coeffs[k] t^k` with multiplicities, ascending.
///
/// Returns an empty list for constant (including zero) input.
pub fn real_roots(coeffs: &[f64]) -> Vec<(f64, usize)> {
    let p = RatPoly::from_f64(coeffs);
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut roots: Vec<(f64, usize)> = Vec::new();
    for (factor, mult) in squarefree(&p.monic()) {
        roots.extend(isolate(&factor).into_iter().map(|r| (r, mult)));
    }
    roots.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut merged: Vec<(f64, usize)> = Vec::new();
    for (r, m) in roots {
        match merged.last_mut() {
            Some(last) if (r - last.0).abs() < MERGE_DIST => last.1 += m,
            _ => merged.push((r, m)),
        }
    }
    merged
}
