//! Dense matrices and exact determinant engines.
//!
//! Three routes compute the same determinant:
//! * cofactor expansion, used for sides up to 3;
//! * fraction-free (Bareiss) elimination over any [`ExactDomain`];
//! * for large polynomial matrices, exact evaluation on an integer grid
//!   followed by tensor-product interpolation ([`det_interpolated`]).

use std::ops::{Add, Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::bipoly::{BiPoly, Var};
use super::rational::Rational;
use crate::error::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn into_rows(self) -> Vec<Vec<T>> {
        let cols = self.cols.max(1);
        let mut out = Vec::with_capacity(self.rows);
        let mut it = self.data.into_iter();
        for _ in 0..self.rows {
            out.push(it.by_ref().take(cols).collect());
        }
        out
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Deletes the listed rows and the same-numbered columns.
    pub fn principal_minor(&self, remove: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.rows).filter(|i| !remove.contains(i)).collect();
        Matrix::from_fn(keep.len(), keep.len(), |i, j| self[(keep[i], keep[j])].clone())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Kronecker product; entry `(i, j)` of `a` scales the block `(i, j)`.
pub fn kron<T>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T>
where
    T: Clone,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    Matrix::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
        &a[(i / b.rows, j / b.cols)] * &b[(i % b.rows, j % b.cols)]
    })
}

pub fn mat_add<T>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T>
where
    for<'x> &'x T: Add<&'x T, Output = T>,
{
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| x + y).collect(),
    }
}

pub fn mat_mul<T>(a: &Matrix<T>, b: &Matrix<T>, zero: T) -> Matrix<T>
where
    T: Clone,
    for<'x> &'x T: Add<&'x T, Output = T> + Mul<&'x T, Output = T>,
{
    assert_eq!(a.cols, b.rows);
    Matrix::from_fn(a.rows, b.cols, |i, j| {
        (0..a.cols).fold(zero.clone(), |acc, k| &acc + &(&a[(i, k)] * &b[(k, j)]))
    })
}

/// Integral domain operations needed by fraction-free elimination.
pub trait ExactDomain: Clone + Zero + One {
    fn mul_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `None` when `other` does not divide `self` exactly.
    fn exact_div(&self, other: &Self) -> Option<Self>;
    /// Size measure used to prefer cheap pivots.
    fn weight(&self) -> usize {
        1
    }
}

macro_rules! ref_ops {
    () => {
        fn mul_ref(&self, other: &Self) -> Self {
            self * other
        }
        fn sub_ref(&self, other: &Self) -> Self {
            self - other
        }
        fn add_ref(&self, other: &Self) -> Self {
            self + other
        }
        fn neg_ref(&self) -> Self {
            -self
        }
    };
}

impl ExactDomain for BiPoly {
    ref_ops!();
    fn exact_div(&self, other: &Self) -> Option<Self> {
        BiPoly::exact_div(self, other)
    }
    fn weight(&self) -> usize {
        self.len()
    }
}

impl ExactDomain for BigInt {
    ref_ops!();
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }
    fn weight(&self) -> usize {
        self.bits() as usize
    }
}

impl ExactDomain for Rational {
    ref_ops!();
    fn exact_div(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }
}

fn require_square<T>(m: &Matrix<T>) -> Result<usize, AlgebraError> {
    if m.is_square() {
        Ok(m.rows)
    } else {
        Err(AlgebraError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        })
    }
}

/// Laplace expansion along the first row. Exponential; intended for tiny sides
/// and as a test oracle.
pub fn cofactor_det<R: ExactDomain>(m: &Matrix<R>) -> Result<R, AlgebraError> {
    let n = require_square(m)?;
    let idx: Vec<usize> = (0..n).collect();
    Ok(cofactor_rec(m, 0, &idx))
}

fn cofactor_rec<R: ExactDomain>(m: &Matrix<R>, row: usize, cols: &[usize]) -> R {
    match cols.len() {
        0 => R::one(),
        1 => m[(row, cols[0])].clone(),
        2 => m[(row, cols[0])]
            .mul_ref(&m[(row + 1, cols[1])])
            .sub_ref(&m[(row, cols[1])].mul_ref(&m[(row + 1, cols[0])])),
        _ => {
            let mut acc = R::zero();
            for (k, &c) in cols.iter().enumerate() {
                let entry = &m[(row, c)];
                if entry.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = entry.mul_ref(&cofactor_rec(m, row + 1, &rest));
                acc = if k % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
            }
            acc
        }
    }
}

/// Fraction-free Gaussian elimination. Every division by the previous pivot
/// is exact in an integral domain; a remainder signals an arithmetic bug.
pub fn bareiss_det<R: ExactDomain>(m: &Matrix<R>) -> Result<R, AlgebraError> {
    let n = require_square(m)?;
    if n == 0 {
        return Ok(R::one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        let pivot_row = (k..n)
            .filter(|&i| !a[(i, k)].is_zero())
            .min_by_key(|&i| a[(i, k)].weight());
        let Some(p) = pivot_row else {
            return Ok(R::zero());
        };
        if p != k {
            for j in 0..n {
                a.data.swap(p * n + j, k * n + j);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[(k, k)].mul_ref(&a[(i, j)]);
                let rhs = a[(i, k)].mul_ref(&a[(k, j)]);
                let num = lhs.sub_ref(&rhs);
                a[(i, j)] = if num.is_zero() {
                    R::zero()
                } else {
                    num.exact_div(&prev).ok_or(AlgebraError::InexactDivision)?
                };
            }
            a[(i, k)] = R::zero();
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    Ok(if negate { det.neg_ref() } else { det })
}

/// Exact determinant of a rational matrix: rows are scaled to integers and
/// eliminated with Bareiss over `BigInt`.
pub fn rational_det(m: &Matrix<Rational>) -> Result<Rational, AlgebraError> {
    let n = require_square(m)?;
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let lcm = m
            .row(i)
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(
            m.row(i)
                .iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect::<Vec<_>>(),
        );
        scale *= lcm;
    }
    let det = bareiss_det(&Matrix::from_rows(rows))?;
    Ok(Rational::new(det, scale))
}

/// Polynomial-matrix determinant: cofactor expansion up to side 3, Bareiss
/// elimination up to [`BAREISS_MAX_SIDE`], grid interpolation beyond.
pub fn polymatrix_det(m: &Matrix<BiPoly>) -> Result<BiPoly, AlgebraError> {
    let n = require_square(m)?;
    if n <= 3 {
        cofactor_det(m)
    } else if n <= BAREISS_MAX_SIDE {
        bareiss_det(m)
    } else {
        det_interpolated(m)
    }
}

/// Largest side eliminated symbolically by [`polymatrix_det`].
pub const BAREISS_MAX_SIDE: usize = 10;

fn degree_bound(m: &Matrix<BiPoly>, var: Var) -> u32 {
    let n = m.rows;
    let row_sum: u32 = (0..n)
        .map(|i| (0..n).filter_map(|j| m[(i, j)].degree(var)).max().unwrap_or(0))
        .sum();
    let col_sum: u32 = (0..n)
        .map(|j| (0..n).filter_map(|i| m[(i, j)].degree(var)).max().unwrap_or(0))
        .sum();
    row_sum.min(col_sum)
}

/// `0, 1, -1, 2, -2, ...`: small nodes keep the evaluated integers short.
fn nodes(count: usize) -> Vec<Rational> {
    (0..count as i64)
        .map(|k| {
            let v = if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) };
            Rational::from_integer(BigInt::from(v))
        })
        .collect()
}

/// Monomial-basis coefficients of the unique polynomial of degree
/// `< xs.len()` through the points, via Newton divided differences.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton form
    let mut coeffs = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        // coeffs <- coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![Rational::zero(); n];
        for k in 0..n {
            if coeffs[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &coeffs[k];
            }
            next[k] -= &coeffs[k] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

/// Exact determinant by evaluation on a `(D_u + 1) x (D_t + 1)` integer grid
/// and tensor interpolation, where `D_u`, `D_t` bound the determinant's
/// degrees from the row and column degree sums.
pub fn det_interpolated(m: &Matrix<BiPoly>) -> Result<BiPoly, AlgebraError> {
    require_square(m)?;
    let du = degree_bound(m, Var::U) as usize;
    let dt = degree_bound(m, Var::T) as usize;
    let us = nodes(du + 1);
    let ts = nodes(dt + 1);
    // coefficient of t^b at each u node
    let mut by_u: Vec<Vec<Rational>> = Vec::with_capacity(us.len());
    for u in &us {
        let restricted = m.map(|p| p.at_u(u));
        let mut values = Vec::with_capacity(ts.len());
        for t in &ts {
            let point = restricted.map(|p| p.eval(t).expect("restricted entries are polynomials"));
            values.push(rational_det(&point)?);
        }
        by_u.push(interpolate(&ts, &values));
    }
    let mut out = BiPoly::zero();
    for b in 0..=dt {
        let column: Vec<Rational> = by_u.iter().map(|c| c[b].clone()).collect();
        for (a, c) in interpolate(&us, &column).into_iter().enumerate() {
            out.add_term((a as u32, b as u32), c);
        }
    }
    Ok(out)
}

pub fn abs_max(values: &[Rational]) -> Rational {
    values
        .iter()
        .map(|v| v.abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
}
