//! Exact scalar, polynomial and polynomial-matrix arithmetic.

pub mod bipoly;
pub mod complex;
pub mod laurent;
pub mod matrix;
pub mod rational;

pub use bipoly::{BiPoly, Var};
pub use complex::ComplexApprox;
pub use laurent::{laurent_quotient_at_one, LaurentPoly};
pub use matrix::{polymatrix_det, rational_det, Matrix};
pub use rational::{rat, ratio, Rational};

/// Partial derivative of a bivariate polynomial.
pub fn poly_derivative(p: &BiPoly, var: Var) -> BiPoly {
    p.derivative(var)
}

/// `p(1 - 1/t, t)` as a Laurent polynomial.
pub fn substitute_curve(p: &BiPoly) -> LaurentPoly {
    p.substitute_curve()
}
