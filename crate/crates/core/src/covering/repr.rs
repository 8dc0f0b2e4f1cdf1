//! Matrix representations and complete sets of irreducible representations,
//! exact over the rationals or approximate over the complex numbers.

use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::group::{cyclic, elementary_abelian, symmetric3, FiniteGroup};
use crate::algebra::complex::{approx_eq, from_rational, DEFAULT_TOL};
use crate::algebra::matrix::mat_mul;
use crate::algebra::{rat, ComplexApprox, Matrix, Rational};
use crate::error::CoveringError;

#[derive(Clone, Debug, PartialEq)]
pub enum RepMatrices {
    Exact(Vec<Matrix<Rational>>),
    Numeric(Vec<Matrix<ComplexApprox>>),
}

/// One matrix per group element, indexed like the group.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    degree: usize,
    matrices: RepMatrices,
}

fn identity<T: Clone + Zero + One>(f: usize) -> Matrix<T> {
    Matrix::from_fn(f, f, |i, j| if i == j { T::one() } else { T::zero() })
}

fn invalid<T>(msg: String) -> Result<T, CoveringError> {
    Err(CoveringError::InvalidRepresentation(msg))
}

impl Representation {
    pub fn exact(matrices: Vec<Matrix<Rational>>) -> Result<Self, CoveringError> {
        let degree = Self::common_degree(matrices.iter().map(|m| (m.rows(), m.cols())))?;
        Ok(Representation { degree, matrices: RepMatrices::Exact(matrices) })
    }

    pub fn numeric(matrices: Vec<Matrix<ComplexApprox>>) -> Result<Self, CoveringError> {
        let degree = Self::common_degree(matrices.iter().map(|m| (m.rows(), m.cols())))?;
        Ok(Representation { degree, matrices: RepMatrices::Numeric(matrices) })
    }

    fn common_degree(mut shapes: impl Iterator<Item = (usize, usize)>) -> Result<usize, CoveringError> {
        let Some((f, c)) = shapes.next() else {
            return invalid("no matrices".into());
        };
        if f == 0 || f != c || shapes.any(|s| s != (f, f)) {
            return invalid("matrices must share one square shape".into());
        }
        Ok(f)
    }

    /// Degree-one representation from its values.
    pub fn exact_character(values: Vec<Rational>) -> Self {
        Representation {
            degree: 1,
            matrices: RepMatrices::Exact(values.into_iter().map(|v| Matrix::from_rows(vec![vec![v]])).collect()),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.matrices, RepMatrices::Exact(_))
    }

    pub fn matrices(&self) -> &RepMatrices {
        &self.matrices
    }

    pub fn exact_matrix(&self, g: usize) -> Option<&Matrix<Rational>> {
        match &self.matrices {
            RepMatrices::Exact(ms) => Some(&ms[g]),
            RepMatrices::Numeric(_) => None,
        }
    }

    pub fn numeric_matrix(&self, g: usize) -> Matrix<ComplexApprox> {
        match &self.matrices {
            RepMatrices::Exact(ms) => ms[g].map(from_rational),
            RepMatrices::Numeric(ms) => ms[g].clone(),
        }
    }

    pub fn to_numeric(&self) -> Self {
        let count = match &self.matrices {
            RepMatrices::Exact(ms) => ms.len(),
            RepMatrices::Numeric(ms) => ms.len(),
        };
        Representation {
            degree: self.degree,
            matrices: RepMatrices::Numeric((0..count).map(|g| self.numeric_matrix(g)).collect()),
        }
    }

    fn exact_trace(&self, g: usize) -> Option<Rational> {
        self.exact_matrix(g).map(|m| (0..self.degree).fold(Rational::zero(), |a, i| a + &m[(i, i)]))
    }

    pub fn character(&self, g: usize) -> ComplexApprox {
        let m = self.numeric_matrix(g);
        (0..self.degree).map(|i| m[(i, i)]).sum()
    }

    /// `rho(e) = I` and `rho(a) rho(b) = rho(ab)`.
    pub fn validate(&self, group: &FiniteGroup, tol: f64) -> Result<(), CoveringError> {
        let count = match &self.matrices {
            RepMatrices::Exact(ms) => ms.len(),
            RepMatrices::Numeric(ms) => ms.len(),
        };
        if count != group.order() {
            return invalid(format!("{count} matrices for a group of order {}", group.order()));
        }
        let f = self.degree;
        match &self.matrices {
            RepMatrices::Exact(ms) => {
                if ms[group.identity()] != identity(f) {
                    return invalid("identity is not mapped to I".into());
                }
                for a in group.elements() {
                    for b in group.elements() {
                        if mat_mul(&ms[a], &ms[b], Rational::zero()) != ms[group.mul(a, b)] {
                            return invalid(format!(
                                "not a homomorphism at ({}, {})",
                                group.token(a),
                                group.token(b)
                            ));
                        }
                    }
                }
            }
            RepMatrices::Numeric(ms) => {
                let close = |x: &Matrix<ComplexApprox>, y: &Matrix<ComplexApprox>| {
                    x.iter().zip(y.iter()).all(|(p, q)| approx_eq(*p, *q, tol))
                };
                if !close(&ms[group.identity()], &identity(f)) {
                    return invalid("identity is not mapped to I".into());
                }
                for a in group.elements() {
                    for b in group.elements() {
                        let prod = mat_mul(&ms[a], &ms[b], Complex64::zero());
                        if !close(&prod, &ms[group.mul(a, b)]) {
                            return invalid(format!(
                                "not a homomorphism at ({}, {})",
                                group.token(a),
                                group.token(b)
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A complete list of inequivalent irreducible representations, trivial first.
#[derive(Clone, Debug, PartialEq)]
pub struct IrrepSet {
    reps: Vec<Representation>,
}

impl IrrepSet {
    /// Validates each representation, `sum f_i^2 = |G|`, a trivial first
    /// entry, and orthonormality of characters.
    pub fn new(group: &FiniteGroup, reps: Vec<Representation>, tol: f64) -> Result<Self, CoveringError> {
        let r = group.order();
        for rep in &reps {
            rep.validate(group, tol)?;
        }
        let sum: usize = reps.iter().map(|p| p.degree * p.degree).sum();
        if sum != r {
            return invalid(format!("squared degrees sum to {sum}, group order is {r}"));
        }
        let trivial = reps.first().is_some_and(|p| {
            p.degree == 1
                && group.elements().all(|g| approx_eq(p.character(g), Complex64::one(), tol))
        });
        if !trivial {
            return invalid("the first representation must be trivial".into());
        }
        let exact = reps.iter().all(Representation::is_exact);
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                let ok = if exact {
                    let s = group.elements().fold(Rational::zero(), |acc, g| {
                        acc + a.exact_trace(g).unwrap() * b.exact_trace(group.inv(g)).unwrap()
                    });
                    s / rat(r as i64) == if i == j { Rational::one() } else { Rational::zero() }
                } else {
                    let s: Complex64 = group
                        .elements()
                        .map(|g| a.character(g) * b.character(g).conj())
                        .sum::<Complex64>()
                        / r as f64;
                    approx_eq(s, Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0), tol)
                };
                if !ok {
                    return invalid(format!("characters {} and {} are not orthonormal", i + 1, j + 1));
                }
            }
        }
        Ok(IrrepSet { reps })
    }

    pub fn reps(&self) -> &[Representation] {
        &self.reps
    }

    /// All nontrivial representations.
    pub fn nontrivial(&self) -> &[Representation] {
        &self.reps[1..]
    }

    pub fn is_exact(&self) -> bool {
        self.reps.iter().all(Representation::is_exact)
    }

    pub fn to_numeric(&self) -> Self {
        IrrepSet { reps: self.reps.iter().map(Representation::to_numeric).collect() }
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.reps.iter().map(Representation::degree).collect()
    }
}

/// Fills in a representation from the images of generators by walking the
/// Cayley graph; the result still has to pass validation.
fn generate_exact(
    group: &FiniteGroup,
    gens: &[(usize, Matrix<Rational>)],
) -> Result<Representation, CoveringError> {
    let f = gens[0].1.rows();
    let mut out: Vec<Option<Matrix<Rational>>> = vec![None; group.order()];
    out[group.identity()] = Some(identity(f));
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(g) = queue.pop_front() {
        for (s, ms) in gens {
            let h = group.mul(g, *s);
            if out[h].is_none() {
                out[h] = Some(mat_mul(out[g].as_ref().unwrap(), ms, Rational::zero()));
                queue.push_back(h);
            }
        }
    }
    match out.into_iter().collect::<Option<Vec<_>>>() {
        Some(ms) => Representation::exact(ms),
        None => invalid("generators do not generate the group".into()),
    }
}

fn int_matrix(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
}

/// Group and irreducible representations for `Zr`, `Z2^k` (k <= 3) or `S3`.
pub fn builtin_group(token: &str) -> Result<(FiniteGroup, IrrepSet), CoveringError> {
    let unsupported = || CoveringError::UnsupportedGroup(token.to_string());
    let tol = DEFAULT_TOL;
    if token == "S3" {
        let group = symmetric3();
        let sign = |g: usize| {
            let p = &super::group::S3_PERMS[g];
            let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            rat(if inversions % 2 == 0 { 1 } else { -1 })
        };
        let trivial = Representation::exact_character(vec![rat(1); 6]);
        let sign = Representation::exact_character(group.elements().map(sign).collect());
        let c = group.element("(123)").expect("S3 token");
        let s = group.element("(12)").expect("S3 token");
        let two = generate_exact(
            &group,
            &[(c, int_matrix(&[&[0, -1], &[1, -1]])), (s, int_matrix(&[&[0, 1], &[1, 0]]))],
        )?;
        let irreps = IrrepSet::new(&group, vec![trivial, sign, two], tol)?;
        return Ok((group, irreps));
    }
    if let Some(k) = token.strip_prefix("Z2^") {
        let k: u32 = k.parse().map_err(|_| unsupported())?;
        if !(1..=3).contains(&k) {
            return Err(unsupported());
        }
        let group = elementary_abelian(k);
        let reps = group
            .elements()
            .map(|x| {
                Representation::exact_character(
                    group.elements().map(|a| rat(if (a & x).count_ones() % 2 == 0 { 1 } else { -1 })).collect(),
                )
            })
            .collect();
        let irreps = IrrepSet::new(&group, reps, tol)?;
        return Ok((group, irreps));
    }
    if let Some(r) = token.strip_prefix('Z') {
        let r: usize = r.parse().map_err(|_| unsupported())?;
        if r < 2 {
            return Err(unsupported());
        }
        let group = cyclic(r);
        let reps = if r == 2 {
            vec![
                Representation::exact_character(vec![rat(1), rat(1)]),
                Representation::exact_character(vec![rat(1), rat(-1)]),
            ]
        } else {
            (0..r)
                .map(|j| {
                    let ms = (0..r)
                        .map(|a| {
                            let z = if j * a % r == 0 {
                                Complex64::one()
                            } else {
                                Complex64::from_polar(1.0, 2.0 * PI * ((j * a) % r) as f64 / r as f64)
                            };
                            Matrix::from_rows(vec![vec![z]])
                        })
                        .collect();
                    Representation::numeric(ms).expect("1x1 matrices")
                })
                .collect()
        };
        let irreps = IrrepSet::new(&group, reps, tol)?;
        return Ok((group, irreps));
    }
    Err(unsupported())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_characters() {
        let (g, irr) = builtin_group("Z2").unwrap();
        assert_eq!(g.order(), 2);
        assert!(irr.is_exact());
        assert_eq!(irr.degrees(), vec![1, 1]);
        let chi: Vec<_> = (0..2).map(|a| irr.reps()[1].character(a).re).collect();
        assert_eq!(chi, vec![1.0, -1.0]);
    }

    #[test]
    fn s3_irreps() {
        let (g, irr) = builtin_group("S3").unwrap();
        assert_eq!(irr.degrees(), vec![1, 1, 2]);
        assert!(irr.is_exact());
        let two = &irr.reps()[2];
        assert_eq!(two.exact_matrix(g.element("(123)").unwrap()).unwrap(), &int_matrix(&[&[0, -1], &[1, -1]]));
        assert_eq!(two.exact_matrix(g.element("(12)").unwrap()).unwrap(), &int_matrix(&[&[0, 1], &[1, 0]]));
        // character of the 2-dimensional irrep: 2, 0 on transpositions, -1 on 3-cycles
        let chi: Vec<i64> = g.elements().map(|a| two.character(a).re.round() as i64).collect();
        assert_eq!(chi, vec![2, 0, 0, 0, -1, -1]);
    }

    #[test]
    fn cyclic_numeric_orthogonality() {
        let (g, irr) = builtin_group("Z3").unwrap();
        assert!(!irr.is_exact());
        assert_eq!(irr.reps().len(), 3);
        for a in irr.reps() {
            for b in irr.reps() {
                let s: Complex64 = g.elements().map(|x| a.character(x) * b.character(x).conj()).sum();
                let expect = if a == b { 3.0 } else { 0.0 };
                assert!((s - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
        assert_eq!(builtin_group("Z4").unwrap().1.degrees(), vec![1; 4]);
    }

    #[test]
    fn xor_groups_and_unsupported() {
        let (_, irr) = builtin_group("Z2^3").unwrap();
        assert_eq!(irr.reps().len(), 8);
        for bad in ["Z2^4", "Z1", "A4", "Zx", "Z2^0"] {
            assert!(matches!(builtin_group(bad), Err(CoveringError::UnsupportedGroup(_))), "{bad}");
        }
    }

    #[test]
    fn validation_catches_incomplete_sets() {
        let g = cyclic(2);
        let only_trivial = vec![Representation::exact_character(vec![rat(1), rat(1)])];
        assert!(IrrepSet::new(&g, only_trivial, DEFAULT_TOL).is_err());
        let not_hom = Representation::exact_character(vec![rat(1), rat(2)]);
        assert!(not_hom.validate(&g, DEFAULT_TOL).is_err());
        let repeated = vec![
            Representation::exact_character(vec![rat(1), rat(1)]),
            Representation::exact_character(vec![rat(1), rat(1)]),
        ];
        assert!(IrrepSet::new(&g, repeated, DEFAULT_TOL).is_err());
    }
}
