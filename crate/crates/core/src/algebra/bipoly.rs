//! Sparse bivariate polynomials in `(u, t)` over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::rational::{rat, Rational};

/// Variable selector for partial derivatives and restrictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    U,
    T,
}

/// Exponent pair `(deg_u, deg_t)`.
pub type Exponent = (u32, u32);

/// Map from `(deg_u, deg_t)` to a nonzero coefficient. Iteration order is
/// `deg_u` major, `deg_t` minor, ascending.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct BiPoly {
    terms: BTreeMap<Exponent, Rational>,
}

impl BiPoly {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, deg_u: u32, deg_t: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_u, deg_t), c);
        }
        Self { terms }
    }

    pub fn u() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// `1 - u`, the shifted bump variable that appears throughout the determinant forms.
    pub fn one_minus_u() -> Self {
        Self::one() - Self::u()
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg_u: u32, deg_t: u32) -> Rational {
        self.terms
            .get(&(deg_u, deg_t))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    pub fn degree(&self, var: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(du, dt)| match var {
                Var::U => du,
                Var::T => dt,
            })
            .max()
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
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
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative, term by term.
    pub fn derivative(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for (&(du, dt), c) in &self.terms {
            match var {
                Var::U if du > 0 => out.add_term((du - 1, dt), c * rat(du as i64)),
                Var::T if dt > 0 => out.add_term((du, dt - 1), c * rat(dt as i64)),
                _ => {}
            }
        }
        out
    }

    pub fn eval(&self, u: &Rational, t: &Rational) -> Rational {
        let max_u = self.degree(Var::U).unwrap_or(0) as usize;
        let max_t = self.degree(Var::T).unwrap_or(0) as usize;
        let upow = powers(u, max_u);
        let tpow = powers(t, max_t);
        self.terms
            .iter()
            .map(|(&(du, dt), c)| c * &upow[du as usize] * &tpow[dt as usize])
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Fixes one variable at a rational value, leaving a polynomial in the other
    /// (returned with the surviving variable in its original slot).
    pub fn restrict(&self, var: Var, value: &Rational) -> Self {
        let max = self.degree(var).unwrap_or(0) as usize;
        let vp = powers(value, max);
        let mut out = Self::zero();
        for (&(du, dt), c) in &self.terms {
            match var {
                Var::U => out.add_term((0, dt), c * &vp[du as usize]),
                Var::T => out.add_term((du, 0), c * &vp[dt as usize]),
            }
        }
        out
    }

    /// The univariate polynomial in `t` obtained at `u = value`.
    pub fn at_u(&self, value: &Rational) -> LaurentPoly {
        let r = self.restrict(Var::U, value);
        LaurentPoly::from_terms(r.terms.into_iter().map(|((_, dt), c)| (dt as i64, c)))
    }

    /// Substitutes `u = 1 - 1/t`; a term `u^a t^b` expands to
    /// `sum_j C(a, j) (-1)^j t^(b - j)`.
    pub fn substitute_curve(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(du, dt), c) in &self.terms {
            let mut binom = Rational::one();
            for j in 0..=du {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                out.add_term(dt as i64 - j as i64, c * &binom * rat(sign));
                binom = binom * rat((du - j) as i64) / rat(j as i64 + 1);
            }
        }
        out
    }

    fn leading(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`
    /// (nonzero remainder) or `divisor` is zero.
    pub fn exact_div(&self, divisor: &BiPoly) -> Option<BiPoly> {
        let (&(lu, lt), lc) = divisor.leading()?;
        if divisor.terms.len() == 1 {
            let mut terms = BTreeMap::new();
            for (&(du, dt), c) in &self.terms {
                if du < lu || dt < lt {
                    return None;
                }
                terms.insert((du - lu, dt - lt), c / lc);
            }
            return Some(BiPoly { terms });
        }
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while let Some((&(ru, rt), rc)) = rem.leading() {
            if ru < lu || rt < lt {
                return None;
            }
            let e = (ru - lu, rt - lt);
            let c = rc / lc;
            for (&(du, dt), dc) in &divisor.terms {
                rem.add_term((du + e.0, dt + e.1), -(dc * &c));
            }
            quot.add_term(e, c);
        }
        Some(quot)
    }
}

fn powers(x: &Rational, max: usize) -> Vec<Rational> {
    let mut v = Vec::with_capacity(max + 1);
    v.push(Rational::one());
    for i in 0..max {
        let next = &v[i] * x;
        v.push(next);
    }
    v
}

impl Zero for BiPoly {
    fn zero() -> Self {
        BiPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        BiPoly::constant(Rational::one())
    }
}

impl From<Rational> for BiPoly {
    fn from(c: Rational) -> Self {
        BiPoly::constant(c)
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(au, at), ac) in &self.terms {
            for (&(bu, bt), bc) in &rhs.terms {
                out.add_term((au + bu, at + bt), ac * bc);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(du, dt), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match du {
                0 => {}
                1 => write!(f, "*u")?,
                _ => write!(f, "*u^{du}")?,
            }
            match dt {
                0 => {}
                1 => write!(f, "*t")?,
                _ => write!(f, "*t^{dt}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly[{self}]")
    }
}
