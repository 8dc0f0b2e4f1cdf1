//! Floating-point complex values for representations that are not rational.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::Matrix;
use super::rational::{to_f64, Rational};

pub type ComplexApprox = Complex64;

/// Default absolute-or-relative tolerance for numeric comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

pub fn from_rational(r: &Rational) -> ComplexApprox {
    Complex64::new(to_f64(r), 0.0)
}

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn approx_eq(a: ComplexApprox, b: ComplexApprox, tol: f64) -> bool {
    let scale = 1f64.max(a.norm()).max(b.norm());
    (a - b).norm() <= tol * scale
}

pub fn is_finite(z: ComplexApprox) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn to_nalgebra(m: &Matrix<ComplexApprox>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

pub fn complex_det(m: &Matrix<ComplexApprox>) -> ComplexApprox {
    to_nalgebra(m).lu().determinant()
}

/// `d/dx log det M = tr(M^{-1} dM/dx)`; `None` when `M` is singular.
pub fn log_derivative(m: &Matrix<ComplexApprox>, dm: &Matrix<ComplexApprox>) -> Option<ComplexApprox> {
    let lu = to_nalgebra(m).lu();
    let solved = lu.solve(&to_nalgebra(dm))?;
    Some(solved.trace())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_is_relative_for_large_values() {
        assert!(approx_eq(Complex64::new(1e12, 0.0), Complex64::new(1e12 + 1.0, 0.0), 1e-9));
        assert!(!approx_eq(Complex64::new(1.0, 0.0), Complex64::new(1.0, 1e-6), 1e-9));
    }

    #[test]
    fn jacobi_formula_on_diagonal() {
        // M = diag(x, x^2) at x = 2: d/dx log det = 3/x
        let m = Matrix::from_rows(vec![
            vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(4.0, 0.0)],
        ]);
        let dm = Matrix::from_rows(vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(4.0, 0.0)],
        ]);
        let v = log_derivative(&m, &dm).unwrap();
        assert!(approx_eq(v, Complex64::new(1.5, 0.0), 1e-12));
        assert!(approx_eq(complex_det(&m), Complex64::new(8.0, 0.0), 1e-12));
    }
}
