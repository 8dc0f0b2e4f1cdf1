//! Verdict records shared by every identity check, and the RHS perturbation
//! hook used for negative controls.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{BiPoly, ComplexApprox, LaurentPoly, Rational};

/// One identity check: name, verdict, and printable sides.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
    /// Difference polynomial or numeric gap on failure.
    pub detail: Option<String>,
}

impl Check {
    pub fn exact_laurent(name: &str, lhs: &LaurentPoly, rhs: &LaurentPoly) -> Self {
        let diff = lhs - rhs;
        Check {
            name: name.to_string(),
            pass: diff.is_zero(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            detail: (!diff.is_zero()).then(|| format!("lhs - rhs = {diff}")),
        }
    }

    pub fn exact_bipoly(name: &str, lhs: &BiPoly, rhs: &BiPoly) -> Self {
        let diff = lhs - rhs;
        Check {
            name: name.to_string(),
            pass: diff.is_zero(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            detail: (!diff.is_zero()).then(|| format!("lhs - rhs = {diff}")),
        }
    }

    pub fn exact_scalar(name: &str, lhs: &Rational, rhs: &Rational) -> Self {
        let diff = lhs - rhs;
        Check {
            name: name.to_string(),
            pass: diff.is_zero(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            detail: (!diff.is_zero()).then(|| format!("lhs - rhs = {diff}")),
        }
    }

    /// Numeric comparison at sampled points; `pairs` holds `(label, lhs, rhs)`.
    pub fn numeric(
        name: &str,
        pairs: &[(String, ComplexApprox, ComplexApprox)],
        tol: f64,
    ) -> Self {
        let mut worst: Option<(String, f64)> = None;
        let mut pass = true;
        for (label, a, b) in pairs {
            let ok = crate::algebra::complex::approx_eq(*a, *b, tol)
                && crate::algebra::complex::is_finite(*a)
                && crate::algebra::complex::is_finite(*b);
            if !ok {
                pass = false;
            }
            let gap = (a - b).norm() / 1f64.max(a.norm()).max(b.norm());
            if worst.as_ref().is_none_or(|(_, w)| gap > *w || gap.is_nan()) {
                worst = Some((label.clone(), gap));
            }
        }
        let fmt_list = |pick: fn(&(String, ComplexApprox, ComplexApprox)) -> ComplexApprox| {
            pairs
                .iter()
                .map(|p| format!("{}:{}", p.0, fmt_complex(pick(p))))
                .collect::<Vec<_>>()
                .join(", ")
        };
        Check {
            name: name.to_string(),
            pass,
            lhs: fmt_list(|p| p.1),
            rhs: fmt_list(|p| p.2),
            detail: (!pass).then(|| {
                let (label, gap) = worst.unwrap_or_default();
                format!("largest relative gap {gap:.3e} at {label} (tolerance {tol:e})")
            }),
        }
    }

    pub fn failed(name: &str, reason: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass: false,
            lhs: String::new(),
            rhs: String::new(),
            detail: Some(reason.into()),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.pass { "PASS" } else { "FAIL" }, self.name)?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

/// Doubles with 15 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.14e}")
}

pub fn fmt_complex(z: ComplexApprox) -> String {
    format!("{}{:+.14e}i", fmt_f64(z.re), z.im)
}

/// Adds `amount` to one coefficient of the right-hand side of the checks it
/// targets. Used to confirm that every check can fail.
#[derive(Clone, Debug, PartialEq)]
pub struct Perturbation {
    /// Check name prefix to target; `None` hits every check.
    pub target: Option<String>,
    /// Exponent of `t` whose coefficient is shifted (ignored for scalars).
    pub exponent: i64,
    pub amount: Rational,
}

impl Perturbation {
    pub fn constant(amount: Rational) -> Self {
        Perturbation { target: None, exponent: 0, amount }
    }

    pub fn applies(&self, name: &str) -> bool {
        !self.amount.is_zero() && self.target.as_deref().is_none_or(|t| name.starts_with(t))
    }
}

/// Applies an optional perturbation to right-hand sides of various kinds.
pub trait Perturb {
    fn laurent(&self, name: &str, rhs: LaurentPoly) -> LaurentPoly;
    fn bipoly(&self, name: &str, rhs: BiPoly) -> BiPoly;
    fn scalar(&self, name: &str, rhs: Rational) -> Rational;
    fn complex(&self, name: &str, rhs: ComplexApprox) -> ComplexApprox;
}

impl Perturb for Option<&Perturbation> {
    fn laurent(&self, name: &str, mut rhs: LaurentPoly) -> LaurentPoly {
        if let Some(p) = self.filter(|p| p.applies(name)) {
            rhs.add_term(p.exponent, p.amount.clone());
        }
        rhs
    }

    fn bipoly(&self, name: &str, mut rhs: BiPoly) -> BiPoly {
        if let Some(p) = self.filter(|p| p.applies(name)) {
            rhs.add_term((0, p.exponent.max(0) as u32), p.amount.clone());
        }
        rhs
    }

    fn scalar(&self, name: &str, rhs: Rational) -> Rational {
        match self.filter(|p| p.applies(name)) {
            Some(p) => rhs + &p.amount,
            None => rhs,
        }
    }

    fn complex(&self, name: &str, rhs: ComplexApprox) -> ComplexApprox {
        match self.filter(|p| p.applies(name)) {
            Some(p) => rhs + crate::algebra::complex::from_rational(&p.amount),
            None => rhs,
        }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}
