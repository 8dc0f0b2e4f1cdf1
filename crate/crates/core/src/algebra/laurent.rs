//! Laurent polynomials in a single variable `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{rat, Rational};
use crate::error::AlgebraError;

/// Sparse map from a signed exponent of `t` to a nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `c0 + c1 t + c2 t^2 + ...` from a dense coefficient list.
    pub fn from_coeffs(coeffs: &[Rational]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, c)| (i as i64, c.clone())))
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when there are no negative exponents.
    pub fn is_polynomial(&self) -> bool {
        self.min_degree().is_none_or(|d| d >= 0)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(&e, c)| (e - 1, c * rat(e))),
        )
    }

    /// Evaluates at a rational point. Negative exponents at `t = 0` return `None`.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        if t.is_zero() && !self.is_polynomial() {
            return None;
        }
        let mut acc = Rational::zero();
        for (&e, c) in &self.terms {
            let pw = if e >= 0 {
                super::rational::pow(t, e as u32)
            } else {
                super::rational::pow(&t.recip(), (-e) as u32)
            };
            acc += c * pw;
        }
        Some(acc)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&e, c)| super::rational::to_f64(c) * t.powi(e as i32))
            .sum()
    }

    /// If `self` is a single term `c t^k`, returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(Rational, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms.iter().next().map(|(&e, c)| (c.clone(), e))
    }

    /// Divides by a nonzero monomial `c t^k`.
    pub fn div_monomial(&self, c: &Rational, k: i64) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        Some(Self {
            terms: self.terms.iter().map(|(&e, v)| (e - k, v / c)).collect(),
        })
    }

    /// Synthetic division by `(t - 1)`; `Err` carries the nonzero remainder.
    fn divide_by_t_minus_one(&self) -> Result<Self, Rational> {
        let (Some(lo), Some(hi)) = (self.min_degree(), self.max_degree()) else {
            return Ok(Self::zero());
        };
        // coefficients from highest exponent downward
        let mut carry = Rational::zero();
        let mut out = Self::zero();
        for e in (lo..=hi).rev() {
            carry += self.coeff(e);
            if e > lo {
                out.add_term(e - 1, carry.clone());
            }
        }
        if carry.is_zero() {
            Ok(out)
        } else {
            Err(carry)
        }
    }
}

/// Writes `p = (1 - t)^k q` and returns `q(1)`; each of the `k` synthetic
/// divisions at the root `t = 1` must be exact.
pub fn laurent_quotient_at_one(p: &LaurentPoly, k: u32) -> Result<Rational, AlgebraError> {
    let mut q = p.clone();
    for step in 0..k {
        q = q
            .divide_by_t_minus_one()
            .map_err(|remainder| AlgebraError::Divisibility {
                step: step + 1,
                multiplicity: k,
                remainder,
            })?;
    }
    // (1 - t)^k = (-1)^k (t - 1)^k
    let value = q.eval(&Rational::one()).expect("t = 1 is never a pole");
    Ok(if k.is_multiple_of(2) { value } else { -value })
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, ac) in &self.terms {
            for (&b, bc) in &rhs.terms {
                out.add_term(a + b, ac * bc);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent[{self}]")
    }
}
