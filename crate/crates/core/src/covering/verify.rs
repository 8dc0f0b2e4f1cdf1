//! Determinant factorization over a regular covering and the resulting
//! formulas for its weighted complexity and Kirchhoff index function.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::group::FiniteGroup;
use super::repr::{IrrepSet, Representation};
use super::voltage::{derived_graph, VoltageAssignment};
use crate::algebra::complex::{complex_det, from_rational, log_derivative, DEFAULT_TOL};
use crate::algebra::{polymatrix_det, rat, rational_det, BiPoly, ComplexApprox, LaurentPoly, Matrix, Rational, Var};
use crate::check::{fmt_complex, Check, Perturb, Perturbation};
use crate::error::{AlgebraError, CoveringError};
use crate::graph::{matrices, WeightedGraph};
use crate::spanning::{kirchhoff_report, weighted_complexity, KirchhoffReport};
use crate::zeta::{f_w_poly, vertex_form_matrix};

/// `sum_g rho(g) (x) W_g`, with the representation index selecting blocks.
pub fn twisted_matrix_exact(
    g: &WeightedGraph,
    group: &FiniteGroup,
    alpha: &VoltageAssignment,
    rep: &Representation,
) -> Option<Matrix<Rational>> {
    let (n, f) = (g.n(), rep.degree());
    let mut out = Matrix::from_fn(n * f, n * f, |_, _| Rational::zero());
    for (idx, arc) in g.arcs().iter().enumerate() {
        let rho = rep.exact_matrix(alpha.arc_voltage(group, idx))?;
        let w = g.arc_weight(idx);
        for a in 0..f {
            for b in 0..f {
                if !rho[(a, b)].is_zero() {
                    out[(a * n + arc.origin, b * n + arc.terminus)] += &rho[(a, b)] * w;
                }
            }
        }
    }
    Some(out)
}

pub fn twisted_matrix_numeric(
    g: &WeightedGraph,
    group: &FiniteGroup,
    alpha: &VoltageAssignment,
    rep: &Representation,
) -> Matrix<ComplexApprox> {
    let (n, f) = (g.n(), rep.degree());
    let mut out = Matrix::from_fn(n * f, n * f, |_, _| Complex64::zero());
    for (idx, arc) in g.arcs().iter().enumerate() {
        let rho = rep.numeric_matrix(alpha.arc_voltage(group, idx));
        let w = from_rational(g.arc_weight(idx));
        for a in 0..f {
            for b in 0..f {
                out[(a * n + arc.origin, b * n + arc.terminus)] += rho[(a, b)] * w;
            }
        }
    }
    out
}

/// Diagonal of `I_f (x) D_w`.
fn block_degrees(g: &WeightedGraph, f: usize) -> Vec<Rational> {
    let d = g.weighted_degrees();
    (0..f).flat_map(|_| d.iter().cloned()).collect()
}

/// `det(I_f (x) D_w - X)`, the value of `K_i` at `(u, t) = (0, 1)`.
fn reduced_matrix<T: Clone>(x: &Matrix<T>, diag: &[T], sub: impl Fn(&T, &T) -> T, neg: impl Fn(&T) -> T) -> Matrix<T> {
    Matrix::from_fn(x.rows(), x.cols(), |i, j| if i == j { sub(&diag[i], &x[(i, i)]) } else { neg(&x[(i, j)]) })
}

/// Per-irrep data for one nontrivial representation.
#[derive(Clone, Debug)]
enum Block {
    Exact { f: usize, x: Matrix<Rational>, diag: Vec<Rational>, k: BiPoly },
    Numeric { f: usize, x: Matrix<ComplexApprox>, diag: Vec<f64> },
}

/// `M = I - tX + s t^2 (Delta - s I)` with `s = 1 - u`, and its partials.
fn numeric_system(
    x: &Matrix<ComplexApprox>,
    diag: &[f64],
    u: f64,
    t: f64,
) -> [Matrix<ComplexApprox>; 3] {
    let s = 1.0 - u;
    let size = x.rows();
    let c = |v: f64| Complex64::new(v, 0.0);
    let m = Matrix::from_fn(size, size, |i, j| {
        let mut e = -x[(i, j)] * t;
        if i == j {
            e += c(1.0 + s * t * t * (diag[i] - s));
        }
        e
    });
    let dt = Matrix::from_fn(size, size, |i, j| {
        let mut e = -x[(i, j)];
        if i == j {
            e += c(2.0 * s * t * (diag[i] - s));
        }
        e
    });
    let du = Matrix::from_fn(size, size, |i, j| if i == j { c(t * t * (2.0 * s - diag[i])) } else { c(0.0) });
    [m, dt, du]
}

/// Which arithmetic to use for the irreducible blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathMode {
    Exact,
    Numeric,
}

#[derive(Clone, Debug)]
pub struct CoverOptions {
    /// `None` picks exact arithmetic whenever every irrep is rational.
    pub mode: Option<PathMode>,
    pub tol: f64,
    pub seed: u64,
    pub points: usize,
    pub perturb: Option<Perturbation>,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions { mode: None, tol: DEFAULT_TOL, seed: 0, points: 7, perturb: None }
    }
}

/// A base graph with a voltage assignment, its derived graph, and the
/// per-irrep determinant data.
pub struct CoverContext<'a> {
    pub base: &'a WeightedGraph,
    pub group: &'a FiniteGroup,
    pub irreps: &'a IrrepSet,
    pub alpha: &'a VoltageAssignment,
    pub derived: WeightedGraph,
    mode: PathMode,
    blocks: Vec<Block>,
}

impl<'a> CoverContext<'a> {
    pub fn new(
        base: &'a WeightedGraph,
        group: &'a FiniteGroup,
        irreps: &'a IrrepSet,
        alpha: &'a VoltageAssignment,
        mode: Option<PathMode>,
    ) -> Result<Self, CoveringError> {
        let derived = derived_graph(base, group, alpha)?;
        let mode = match mode {
            Some(PathMode::Exact) if !irreps.is_exact() => {
                return Err(CoveringError::InvalidRepresentation(
                    "exact arithmetic requested for non-rational representations".into(),
                ))
            }
            Some(m) => m,
            None if irreps.is_exact() => PathMode::Exact,
            None => PathMode::Numeric,
        };
        let mut blocks = Vec::new();
        for rep in irreps.nontrivial() {
            let f = rep.degree();
            let diag = block_degrees(base, f);
            blocks.push(match mode {
                PathMode::Exact => {
                    let x = twisted_matrix_exact(base, group, alpha, rep).expect("exact representation");
                    let k = polymatrix_det(&vertex_form_matrix(&x, &diag))?;
                    Block::Exact { f, x, diag, k }
                }
                PathMode::Numeric => Block::Numeric {
                    f,
                    x: twisted_matrix_numeric(base, group, alpha, rep),
                    diag: diag.iter().map(crate::algebra::rational::to_f64).collect(),
                },
            });
        }
        Ok(CoverContext { base, group, irreps, alpha, derived, mode, blocks })
    }

    pub fn mode(&self) -> PathMode {
        self.mode
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `K_i(u, t)` for each nontrivial irrep (exact path only).
    pub fn k_polys(&self) -> Vec<&BiPoly> {
        self.blocks
            .iter()
            .filter_map(|b| match b {
                Block::Exact { k, .. } => Some(k),
                Block::Numeric { .. } => None,
            })
            .collect()
    }

    fn sample_points(&self, seed: u64, count: usize, curve: bool) -> Vec<(Rational, Rational)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        let mut attempts = 0;
        while out.len() < count && attempts < 1000 {
            attempts += 1;
            let q: i64 = rng.gen_range(5..=60);
            let (u, t) = if curve {
                let t = Rational::new(rng.gen_range(1..q).into(), q.into());
                (Rational::one() - t.recip(), t)
            } else {
                let t = Rational::new(rng.gen_range(-q / 2..=q / 2).into(), q.into());
                let u = Rational::new(rng.gen_range(-q..=q).into(), q.into());
                (u, t)
            };
            let (uf, tf) = (crate::algebra::rational::to_f64(&u), crate::algebra::rational::to_f64(&t));
            let clear = self.blocks.iter().all(|b| match b {
                Block::Numeric { x, diag, .. } => {
                    let [m, _, _] = numeric_system(x, diag, uf, tf);
                    complex_det(&m).norm() > 1e-6
                }
                Block::Exact { .. } => true,
            });
            if clear && !out.contains(&(u.clone(), t.clone())) {
                out.push((u, t));
            }
        }
        out
    }

    /// `f_w~(G^alpha) = f_w(G) * prod_i K_i^{f_i}`.
    pub fn verify_factorization(&self, opts: &CoverOptions) -> Result<Vec<Check>, CoveringError> {
        let perturb = opts.perturb.as_ref();
        let base = f_w_poly(self.base)?;
        match self.mode {
            PathMode::Exact => {
                let lhs = f_w_poly(&self.derived)?;
                let mut rhs = base.clone();
                for b in &self.blocks {
                    if let Block::Exact { f, k, .. } = b {
                        rhs = &rhs * &k.pow(*f as u32);
                    }
                }
                let rhs = perturb.bipoly("t14", rhs);
                let divides = lhs.exact_div(&base).is_some();
                let mut div = Check::exact_scalar("t14.divides", &rat(divides as i64), &rat(1));
                div.lhs = format!("f_w(G) divides f_w(G^alpha): {divides}");
                div.rhs = "true".into();
                Ok(vec![Check::exact_bipoly("t14", &lhs, &rhs), div])
            }
            PathMode::Numeric => {
                let bundle = matrices(&self.derived);
                let cover_diag = bundle.degrees();
                let cover_matrix = vertex_form_matrix(&bundle.w, &cover_diag);
                let mut pairs = Vec::new();
                for (u, t) in self.sample_points(opts.seed, opts.points, false) {
                    let at = cover_matrix.map(|p| p.eval(&u, &t));
                    let lhs = from_rational(&rational_det(&at)?);
                    let mut rhs = from_rational(&base.eval(&u, &t));
                    let (uf, tf) = (crate::algebra::rational::to_f64(&u), crate::algebra::rational::to_f64(&t));
                    for b in &self.blocks {
                        if let Block::Numeric { f, x, diag } = b {
                            let [m, _, _] = numeric_system(x, diag, uf, tf);
                            rhs *= complex_det(&m).powi(*f as i32);
                        }
                    }
                    pairs.push((format!("(u={u},t={t})"), lhs, perturb.complex("t14", rhs)));
                }
                Ok(vec![Check::numeric("t14", &pairs, opts.tol)])
            }
        }
    }

    /// Twisted determinants `det(I_f (x) D_w - X_i)` in irrep order.
    fn reduced_determinants(&self) -> Result<Vec<(usize, ComplexApprox, Option<Rational>)>, AlgebraError> {
        self.blocks
            .iter()
            .map(|b| match b {
                Block::Exact { f, x, diag, .. } => {
                    let r = rational_det(&reduced_matrix(x, diag, |a, b| a - b, |a| -a.clone()))?;
                    Ok((*f, from_rational(&r), Some(r)))
                }
                Block::Numeric { f, x, diag } => {
                    let d: Vec<ComplexApprox> = diag.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                    Ok((*f, complex_det(&reduced_matrix(x, &d, |a, b| a - b, |a| -a)), None))
                }
            })
            .collect()
    }

    /// Formula for `kappa_w~(G^alpha)` against the Matrix-Tree value of the cover.
    pub fn verify_complexity(&self, opts: &CoverOptions) -> Result<ComplexityValues, CoveringError> {
        let perturb = opts.perturb.as_ref();
        let kappa = weighted_complexity(self.base);
        let direct = weighted_complexity(&self.derived);
        let r = rat(self.order() as i64);
        let dets = self.reduced_determinants()?;
        let (formula, check) = match self.mode {
            PathMode::Exact => {
                let mut v = &kappa / &r;
                for (f, _, d) in &dets {
                    v *= crate::algebra::rational::pow(d.as_ref().unwrap(), *f as u32);
                }
                let v = perturb.scalar("t15", v);
                let c = Check::exact_scalar("t15", &direct, &v);
                (FormulaValue::Exact(v), c)
            }
            PathMode::Numeric => {
                let mut v = from_rational(&(&kappa / &r));
                for (f, d, _) in &dets {
                    v *= d.powi(*f as i32);
                }
                let v = perturb.complex("t15", v);
                let c = Check::numeric("t15", &[("kappa".into(), from_rational(&direct), v)], opts.tol);
                (FormulaValue::Numeric(v), c)
            }
        };
        Ok(ComplexityValues { formula, direct, check })
    }

    fn reports(&self) -> Result<(KirchhoffReport, KirchhoffReport), CoveringError> {
        Ok((kirchhoff_report(self.base)?, kirchhoff_report(&self.derived)?))
    }

    /// Exact `sum_i f_i d/dt log K_i` and `sum_i f_i d/du log K_i` on the curve.
    fn exact_log_derivatives(&self) -> Result<(LaurentPoly, LaurentPoly), CoveringError> {
        let mut s_t = LaurentPoly::zero();
        let mut s_u = LaurentPoly::zero();
        for (i, b) in self.blocks.iter().enumerate() {
            let Block::Exact { f, k, .. } = b else { continue };
            let on_curve = k.substitute_curve();
            let Some((c, e)) = on_curve.as_monomial() else {
                return Err(if on_curve.is_zero() {
                    CoveringError::Singular { irrep: i + 2 }
                } else {
                    AlgebraError::InexactDivision.into()
                });
            };
            let fi = rat(*f as i64);
            let dt = k.derivative(Var::T).substitute_curve().div_monomial(&c, e).expect("nonzero monomial");
            let du = k.derivative(Var::U).substitute_curve().div_monomial(&c, e).expect("nonzero monomial");
            s_t = &s_t + &dt.scale(&fi);
            s_u = &s_u + &du.scale(&fi);
        }
        Ok((s_t, s_u))
    }

    fn numeric_log_derivatives(&self, u: f64, t: f64) -> Result<(ComplexApprox, ComplexApprox), CoveringError> {
        let mut s_t = Complex64::zero();
        let mut s_u = Complex64::zero();
        for (i, b) in self.blocks.iter().enumerate() {
            let Block::Numeric { f, x, diag } = b else { continue };
            let [m, dt, du] = numeric_system(x, diag, u, t);
            let singular = CoveringError::Singular { irrep: i + 2 };
            s_t += log_derivative(&m, &dt).ok_or(singular.clone())? * *f as f64;
            s_u += log_derivative(&m, &du).ok_or(singular)? * *f as f64;
        }
        Ok((s_t, s_u))
    }

    /// Three expressions for `Kf^z_w~(G^alpha, t)`.
    pub fn verify_cover_kirchhoff(&self, opts: &CoverOptions) -> Result<Vec<Check>, CoveringError> {
        let perturb = opts.perturb.as_ref();
        let (base, cover) = self.reports()?;
        let n = self.base.n() as i64;
        let r = self.order() as i64;
        let w = self.base.total_weight();
        match self.mode {
            PathMode::Exact => {
                let (s_t, s_u) = self.exact_log_derivatives()?;
                let rr = rat(r);
                let r_kf = base.kf_z_poly.scale(&rr);
                let wt_n = LaurentPoly::from_coeffs(&[rat(-n), w.clone()]);
                // (r - 1) n t - t^2 S_t
                let a = &LaurentPoly::monomial(rat((r - 1) * n), 1) - &s_t.shift(2);
                let v1 = &r_kf - &(&wt_n * &a).scale(&(&rr * rat(2)));
                let v2 = &r_kf - &(&wt_n * &(&a + &s_u)).scale(&rr);
                let v3 = &r_kf - &(&wt_n * &s_u).scale(&(&rr * rat(2)));
                let lhs = &cover.kf_z_poly;
                Ok([("t16.v1", v1), ("t16.v2", v2), ("t16.v3", v3)]
                    .into_iter()
                    .map(|(name, v)| Check::exact_laurent(name, lhs, &perturb.laurent(name, v)))
                    .collect())
            }
            PathMode::Numeric => {
                let mut cols: [Vec<(String, ComplexApprox, ComplexApprox)>; 3] = Default::default();
                for (u, t) in self.sample_points(opts.seed ^ 0x16, opts.points, true) {
                    let tf = crate::algebra::rational::to_f64(&t);
                    let (s_t, s_u) =
                        self.numeric_log_derivatives(crate::algebra::rational::to_f64(&u), tf)?;
                    let c = |x: &Rational| from_rational(x);
                    let lhs = c(&cover.kf_z_poly.eval(&t).expect("t is nonzero"));
                    let r_kf = c(&base.kf_z_poly.eval(&t).expect("t is nonzero")) * r as f64;
                    let wt_n = c(&(&w * &t - rat(n)));
                    let a = Complex64::new(((r - 1) * n) as f64 * tf, 0.0) - s_t * tf * tf;
                    let rf = r as f64;
                    let vals = [
                        r_kf - wt_n * a * (2.0 * rf),
                        r_kf - wt_n * (a + s_u) * rf,
                        r_kf - wt_n * s_u * (2.0 * rf),
                    ];
                    for (k, v) in vals.into_iter().enumerate() {
                        let name = format!("t16.v{}", k + 1);
                        cols[k].push((format!("t={t}"), lhs, perturb.complex(&name, v)));
                    }
                }
                Ok(cols
                    .iter()
                    .enumerate()
                    .map(|(k, pairs)| Check::numeric(&format!("t16.v{}", k + 1), pairs, opts.tol))
                    .collect())
            }
        }
    }

    /// `sum_i f_i d/dt log K_i(0, t)` at `t = 1`.
    fn log_derivative_at_one(&self) -> Result<ComplexApprox, CoveringError> {
        match self.mode {
            PathMode::Exact => Ok(from_rational(&self.exact_log_derivative_at_one()?)),
            PathMode::Numeric => Ok(self.numeric_log_derivatives(0.0, 1.0)?.0),
        }
    }

    fn exact_log_derivative_at_one(&self) -> Result<Rational, CoveringError> {
        let mut s = Rational::zero();
        for (i, b) in self.blocks.iter().enumerate() {
            let Block::Exact { f, k, .. } = b else { continue };
            let at_zero = k.at_u(&Rational::zero());
            let one = Rational::one();
            let value = at_zero.eval(&one).expect("polynomial");
            if value.is_zero() {
                return Err(CoveringError::Singular { irrep: i + 2 });
            }
            s += at_zero.derivative().eval(&one).expect("polynomial") / value * rat(*f as i64);
        }
        Ok(s)
    }

    /// `Kf^z_w~(G^alpha)` at `t = 1` from the logarithmic derivatives at
    /// `(u, t) = (0, 1)`, plus agreement with the first formula at `t = 1`.
    pub fn verify_cover_kirchhoff_at_one(&self, name: &str, opts: &CoverOptions) -> Result<Vec<Check>, CoveringError> {
        let perturb = opts.perturb.as_ref();
        let (base, cover) = self.reports()?;
        let n = rat(self.base.n() as i64);
        let r = rat(self.order() as i64);
        let w = self.base.total_weight();
        let correction = rat(2) * &n * (&w - &n) * (&r * &r - &r);
        let scale = rat(2) * &r * (&w - &n);
        let closed = &r * &base.kf_z - &correction;
        let variant1 = |s: ComplexApprox| {
            // first formula at t = 1 with u = 1 - 1/t = 0
            from_rational(&(&r * &base.kf_z))
                - from_rational(&(rat(2) * &r * (&w - &n)))
                    * (from_rational(&((&r - rat(1)) * &n)) - s)
        };
        let agree = format!("{name}.v1");
        match self.mode {
            PathMode::Exact => {
                let s = self.exact_log_derivative_at_one()?;
                let value = perturb.scalar(name, &closed + &scale * &s);
                let v1 = &r * &base.kf_z - rat(2) * &r * (&w - &n) * ((&r - rat(1)) * &n - &s);
                Ok(vec![
                    Check::exact_scalar(name, &cover.kf_z, &value),
                    Check::exact_scalar(&agree, &v1, &perturb.scalar(&agree, value.clone())),
                ])
            }
            PathMode::Numeric => {
                let s = self.log_derivative_at_one()?;
                let value = from_rational(&closed) + from_rational(&scale) * s;
                let lhs = from_rational(&cover.kf_z);
                Ok(vec![
                    Check::numeric(name, &[("t=1".into(), lhs, perturb.complex(name, value))], opts.tol),
                    Check::numeric(
                        &agree,
                        &[("t=1".into(), variant1(s), perturb.complex(&agree, value))],
                        opts.tol,
                    ),
                ])
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FormulaValue {
    Exact(Rational),
    Numeric(ComplexApprox),
}

impl std::fmt::Display for FormulaValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormulaValue::Exact(r) => write!(f, "{r}"),
            FormulaValue::Numeric(z) => write!(f, "{}", fmt_complex(*z)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexityValues {
    pub formula: FormulaValue,
    pub direct: Rational,
    pub check: Check,
}

/// Everything the covering verification produced; `errors` holds checks
/// that could not be evaluated.
#[derive(Clone, Debug)]
pub struct CoverReport {
    pub derived: WeightedGraph,
    pub mode: PathMode,
    pub kappa: ComplexityValues,
    pub checks: Vec<Check>,
    pub errors: Vec<(String, CoveringError)>,
}

/// Runs every covering identity whose preconditions hold. Construction
/// failures (disconnected or non-simple lifts) are returned as errors.
pub fn verify_cover(
    g: &WeightedGraph,
    group: &FiniteGroup,
    irreps: &IrrepSet,
    alpha: &VoltageAssignment,
    opts: &CoverOptions,
) -> Result<CoverReport, CoveringError> {
    let ctx = CoverContext::new(g, group, irreps, alpha, opts.mode)?;
    let mut checks = ctx.verify_factorization(opts)?;
    let kappa = ctx.verify_complexity(opts)?;
    checks.push(kappa.check.clone());
    let mut errors = Vec::new();
    let mut run = |name: &str, r: Result<Vec<Check>, CoveringError>| match r {
        Ok(c) => checks.extend(c),
        Err(e) => errors.push((name.to_string(), e)),
    };
    run("t16", ctx.verify_cover_kirchhoff(opts));
    run("c2", ctx.verify_cover_kirchhoff_at_one("c2", opts));
    let unit = g.with_unit_weights();
    let unit_ctx = CoverContext::new(&unit, group, irreps, alpha, opts.mode)?;
    run("c3", unit_ctx.verify_cover_kirchhoff_at_one("c3", opts));
    Ok(CoverReport { derived: ctx.derived, mode: ctx.mode, kappa, checks, errors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::repr::builtin_group;
    use crate::covering::voltage::VoltageAssignment;
    use crate::graph::parse_graph;
    use crate::spanning::brute_force_complexity;

    fn k3() -> WeightedGraph {
        parse_graph("3 3\n1 2 1\n2 3 1\n1 3 1").unwrap()
    }
    fn k4() -> WeightedGraph {
        parse_graph("4 6\n1 2 1\n1 3 1\n1 4 1\n2 3 1\n2 4 1\n3 4 1").unwrap()
    }

    fn setup(g: &WeightedGraph, group: &str, tokens: &[&str]) -> (FiniteGroup, IrrepSet, VoltageAssignment) {
        let (grp, irr) = builtin_group(group).unwrap();
        let v = tokens.iter().map(|t| grp.element(t).unwrap()).collect();
        let a = VoltageAssignment::new(g, &grp, v).unwrap();
        (grp, irr, a)
    }

    fn int_rows(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn twisted_matrices() {
        let g = k3();
        // edge order: {1,2}, {2,3}, {1,3}; nontrivial on {1,3}
        let (grp, irr, a) = setup(&g, "Z2", &["0", "0", "1"]);
        let x = twisted_matrix_exact(&g, &grp, &a, &irr.reps()[1]).unwrap();
        assert_eq!(x, int_rows(&[&[0, 1, -1], &[1, 0, 1], &[-1, 1, 0]]));
        let w = twisted_matrix_exact(&g, &grp, &a, &irr.reps()[0]).unwrap();
        assert_eq!(w, matrices(&g).w);
    }

    #[test]
    fn k_polys_for_k3_z2() {
        let g = k3();
        let (grp, irr, a) = setup(&g, "Z2", &["0", "0", "1"]);
        let ctx = CoverContext::new(&g, &grp, &irr, &a, None).unwrap();
        let k = ctx.k_polys()[0];
        assert_eq!(k.substitute_curve(), LaurentPoly::monomial(rat(4), 3));
        assert_eq!(k.eval(&rat(0), &rat(0)), rat(1));
        // the trivial representation gives back f_w
        let x = twisted_matrix_exact(&g, &grp, &a, &irr.reps()[0]).unwrap();
        let k1 = polymatrix_det(&vertex_form_matrix(&x, &block_degrees(&g, 1))).unwrap();
        assert_eq!(k1, f_w_poly(&g).unwrap());
    }

    fn assert_all(report: &CoverReport) {
        assert!(report.errors.is_empty(), "{:?}", report.errors);
        for c in &report.checks {
            assert!(c.pass, "{c}");
        }
    }

    #[test]
    fn k3_z2_six_cycle() {
        let g = k3();
        let (grp, irr, a) = setup(&g, "Z2", &["0", "0", "1"]);
        let rep = verify_cover(&g, &grp, &irr, &a, &CoverOptions::default()).unwrap();
        assert_all(&rep);
        assert_eq!(rep.kappa.formula, FormulaValue::Exact(rat(6)));
        assert_eq!(rep.kappa.direct, rat(6));
        let names: Vec<&str> = rep.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(
            names,
            ["t14", "t14.divides", "t15", "t16.v1", "t16.v2", "t16.v3", "c2", "c2.v1", "c3", "c3.v1"]
        );
    }

    #[test]
    fn k4_z2_matches_brute_force() {
        let g = k4();
        let (grp, irr, a) = setup(&g, "Z2", &["1", "0", "0", "0", "0", "0"]);
        let rep = verify_cover(&g, &grp, &irr, &a, &CoverOptions::default()).unwrap();
        assert_all(&rep);
        assert_eq!(rep.kappa.direct, brute_force_complexity(&rep.derived).unwrap());
        assert_eq!(rep.derived.n(), 8);
    }

    #[test]
    fn exact_and_numeric_paths_agree_on_z2() {
        let g = parse_graph("4 5\n1 2 2\n2 3 1/2\n3 4 3\n1 4 1\n1 3 5").unwrap();
        let (grp, irr, a) = setup(&g, "Z2", &["1", "0", "0", "0", "0"]);
        let exact = verify_cover(&g, &grp, &irr, &a, &CoverOptions::default()).unwrap();
        let numeric_irr = irr.to_numeric();
        let opts = CoverOptions { mode: Some(PathMode::Numeric), ..CoverOptions::default() };
        let numeric = verify_cover(&g, &grp, &numeric_irr, &a, &opts).unwrap();
        assert_all(&exact);
        assert_all(&numeric);
        let (FormulaValue::Exact(x), FormulaValue::Numeric(z)) = (&exact.kappa.formula, &numeric.kappa.formula) else {
            panic!("unexpected paths");
        };
        assert!(crate::algebra::complex::approx_eq(from_rational(x), *z, 1e-9));
    }

    #[test]
    fn k4_s3_exact() {
        let g = k4();
        let (grp, irr, a) = setup(&g, "S3", &["e", "e", "e", "(12)", "(123)", "e"]);
        let rep = verify_cover(&g, &grp, &irr, &a, &CoverOptions::default()).unwrap();
        assert_eq!(rep.mode, PathMode::Exact);
        assert_eq!(rep.derived.n(), 24);
        assert_all(&rep);
    }

    #[test]
    fn cyclic_numeric_paths() {
        let g = k3();
        let (grp, irr, a) = setup(&g, "Z3", &["1", "0", "0"]);
        let rep = verify_cover(&g, &grp, &irr, &a, &CoverOptions::default()).unwrap();
        assert_eq!(rep.mode, PathMode::Numeric);
        assert_all(&rep);
        assert!(rep.checks.iter().any(|c| c.name == "t16.v3"));
    }

    #[test]
    fn perturbation_breaks_every_check() {
        let g = k3();
        let (grp, irr, a) = setup(&g, "Z2", &["0", "0", "1"]);
        let opts = CoverOptions { perturb: Some(Perturbation::constant(rat(1))), ..CoverOptions::default() };
        let rep = verify_cover(&g, &grp, &irr, &a, &opts).unwrap();
        for c in rep.checks.iter().filter(|c| c.name != "t14.divides") {
            assert!(!c.pass, "{}", c.name);
        }
    }

    #[test]
    fn lift_through_a_proper_subgroup_is_disconnected() {
        let g = k3();
        let (grp, irr, a) = setup(&g, "Z2^2", &["01", "00", "00"]);
        assert!(matches!(
            CoverContext::new(&g, &grp, &irr, &a, None),
            Err(CoveringError::DisconnectedCover)
        ));
    }
}
