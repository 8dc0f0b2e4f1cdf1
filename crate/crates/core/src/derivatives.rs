//! Partial derivatives of `f_w` on the curve `u = 1 - 1/t` and the identities
//! tying them to the weighted complexity and Kirchhoff index function, plus
//! their unweighted and `t = 1` specializations.

use num_traits::{One, Zero};

use crate::algebra::{laurent_quotient_at_one, rat, BiPoly, LaurentPoly, Rational, Var};
use crate::check::{Check, Perturb, Perturbation};
use crate::error::{SpanningError, VerifyError};
use crate::graph::WeightedGraph;
use crate::spanning::{kirchhoff_report, weighted_complexity, KirchhoffReport};
use crate::zeta::f_w_poly;

/// Derivative on the curve next to its closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePair {
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveReport {
    pub d_t: CurvePair,
    pub d_u: CurvePair,
    pub d_tt: CurvePair,
    pub d_tu: CurvePair,
    pub d_uu: CurvePair,
    pub kappa_w: Rational,
    pub total_weight: Rational,
    pub kf_z_poly: LaurentPoly,
}

impl CurveReport {
    /// Labelled pairs in a fixed order.
    pub fn pairs(&self) -> [(&'static str, &CurvePair); 5] {
        [
            ("dt", &self.d_t),
            ("du", &self.d_u),
            ("dtt", &self.d_tt),
            ("dtu", &self.d_tu),
            ("duu", &self.d_uu),
        ]
    }

    /// First partials under `first`, second partials under `second`.
    pub fn checks(&self, first: &str, second: &str, perturb: Option<&Perturbation>) -> Vec<Check> {
        self.pairs()
            .iter()
            .enumerate()
            .map(|(k, (label, pair))| {
                let name = format!("{}.{label}", if k < 2 { first } else { second });
                let rhs = perturb.laurent(&name, pair.rhs.clone());
                Check::exact_laurent(&name, &pair.lhs, &rhs)
            })
            .collect()
    }
}

fn lp(coeffs: &[Rational]) -> LaurentPoly {
    LaurentPoly::from_coeffs(coeffs)
}

fn mono(c: Rational, exp: i64) -> LaurentPoly {
    LaurentPoly::monomial(c, exp)
}

/// Closed forms for the five partials given `n`, `w(G)`, `kappa_w` and `Kf^z_w(t)`.
pub fn curve_rhs(
    n: usize,
    w: &Rational,
    kappa: &Rational,
    kfz: &LaurentPoly,
) -> [LaurentPoly; 5] {
    let nn = rat(n as i64);
    let ni = n as i64;
    let two_k = kappa * rat(2);
    let wt_minus_n = lp(&[-nn.clone(), w.clone()]);
    let d_t = &mono(two_k.clone(), ni - 2) * &wt_minus_n;
    let d_u = &mono(-two_k.clone(), ni) * &wt_minus_n;
    // n t (2 w t - 2n + 1)
    let tt_extra = lp(&[Rational::zero(), &nn * (rat(1) - &nn * rat(2)), &nn * w * rat(2)]);
    let d_tt = &mono(two_k.clone(), ni - 4) * &(kfz + &tt_extra);
    // (n - w t)(n + 1) t
    let n1 = &nn + rat(1);
    let tu_extra = lp(&[Rational::zero(), &nn * &n1, -(w * &n1)]);
    let d_tu = &mono(two_k.clone(), ni - 2) * &(&tu_extra - kfz);
    let d_uu = &mono(two_k, ni) * &(kfz - &mono(nn, 1));
    [d_t, d_u, d_tt, d_tu, d_uu]
}

/// Curve derivatives of `f_w` from an already expanded polynomial.
pub fn curve_lhs(f: &BiPoly) -> [LaurentPoly; 5] {
    let ft = f.derivative(Var::T);
    let fu = f.derivative(Var::U);
    [
        ft.substitute_curve(),
        fu.substitute_curve(),
        ft.derivative(Var::T).substitute_curve(),
        ft.derivative(Var::U).substitute_curve(),
        fu.derivative(Var::U).substitute_curve(),
    ]
}

pub fn curve_report(g: &WeightedGraph) -> Result<CurveReport, VerifyError> {
    let kr = kirchhoff_report(g)?;
    let f = f_w_poly(g)?;
    Ok(curve_report_from(g, &f, &kr))
}

fn curve_report_from(g: &WeightedGraph, f: &BiPoly, kr: &KirchhoffReport) -> CurveReport {
    let w = g.total_weight();
    let [a, b, c, d, e] = curve_lhs(f);
    let [ra, rb, rc, rd, re] = curve_rhs(g.n(), &w, &kr.kappa_w, &kr.kf_z_poly);
    let pair = |lhs, rhs| CurvePair { lhs, rhs };
    CurveReport {
        d_t: pair(a, ra),
        d_u: pair(b, rb),
        d_tt: pair(c, rc),
        d_tu: pair(d, rd),
        d_uu: pair(e, re),
        kappa_w: kr.kappa_w.clone(),
        total_weight: w,
        kf_z_poly: kr.kf_z_poly.clone(),
    }
}

/// All five curve identities, exact in `t`.
pub fn verify_curve_derivatives(
    g: &WeightedGraph,
    perturb: Option<&Perturbation>,
) -> Result<Vec<Check>, VerifyError> {
    Ok(curve_report(g)?.checks("t11", "t12", perturb))
}

fn eval_at_one(p: &LaurentPoly) -> Rational {
    p.eval(&Rational::one()).expect("t = 1 is not a pole")
}

/// Values at `t = 1` and unit-weight versions of the curve identities:
/// `t5`/`t6` for the weights as given, `t3`, `t4`, `t8.*`, `t9.*` for the
/// unweighted graph. `t4` needs minimum degree two and is omitted otherwise.
pub fn verify_specializations(
    g: &WeightedGraph,
    perturb: Option<&Perturbation>,
) -> Result<Vec<Check>, VerifyError> {
    let mut out = Vec::new();
    let n = rat(g.n() as i64);
    let two = rat(2);

    let kr = kirchhoff_report(g)?;
    let f = f_w_poly(g)?;
    let w = g.total_weight();
    let f0 = f.at_u(&Rational::zero());
    let f0_t = f0.derivative();
    let first = eval_at_one(&f0_t);
    let second = eval_at_one(&f0_t.derivative());
    let rhs5 = (&w - &n) * &kr.kappa_w * &two;
    out.push(Check::exact_scalar("t5", &first, &perturb.scalar("t5", rhs5)));
    let rhs6 = two.clone()
        * (&kr.kf_z + &w * &n * &two - &n * &n * &two + &n)
        * &kr.kappa_w;
    out.push(Check::exact_scalar("t6", &second, &perturb.scalar("t6", rhs6)));

    let unit = g.with_unit_weights();
    let ukr = kirchhoff_report(&unit)?;
    let uf = f_w_poly(&unit)?;
    let m = rat(g.m() as i64);
    let kappa = &ukr.kappa_w;
    let u0 = uf.at_u(&Rational::zero()).derivative();
    let rhs3 = (&m - &n) * kappa * &two;
    out.push(Check::exact_scalar("t3", &eval_at_one(&u0), &perturb.scalar("t3", rhs3)));
    if g.degrees().iter().all(|&d| d >= 2) {
        let rhs4 = two.clone() * (&ukr.kf_z + &m * &n * &two - &n * &n * &two + &n) * kappa;
        out.push(Check::exact_scalar(
            "t4",
            &eval_at_one(&u0.derivative()),
            &perturb.scalar("t4", rhs4),
        ));
    }
    let lhs = curve_lhs(&uf);
    let rhs = curve_rhs(g.n(), &m, kappa, &ukr.kf_z_poly);
    for (k, label) in ["t8.dt", "t8.du", "t9.dtt", "t9.dtu", "t9.duu"].iter().enumerate() {
        let r = perturb.laurent(label, rhs[k].clone());
        out.push(Check::exact_laurent(label, &lhs[k], &r));
    }
    Ok(out)
}

fn unit_view_complexity(g: &WeightedGraph) -> (WeightedGraph, Rational) {
    let unit = g.with_unit_weights();
    let kappa = weighted_complexity(&unit);
    (unit, kappa)
}

/// `dF/dt (0,1) = -dF/du (0,1) = 2(m - n) kappa` on the unweighted graph.
pub fn verify_unweighted_derivatives(
    g: &WeightedGraph,
    perturb: Option<&Perturbation>,
) -> Result<Vec<Check>, VerifyError> {
    let (unit, kappa) = unit_view_complexity(g);
    let f = f_w_poly(&unit)?;
    let (zero, one) = (Rational::zero(), Rational::one());
    let d_t = f.derivative(Var::T).eval(&zero, &one);
    let neg_d_u = -f.derivative(Var::U).eval(&zero, &one);
    let value = rat(2) * rat(g.m() as i64 - g.n() as i64) * kappa;
    Ok(vec![
        Check::exact_scalar("c1.dt", &d_t, &perturb.scalar("c1.dt", value.clone())),
        Check::exact_scalar("c1.du", &neg_d_u, &perturb.scalar("c1.du", value)),
    ])
}

/// Both sides of the weighted Kirchhoff limit at `t = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct KirchhoffLimitValues {
    pub lhs: Rational,
    pub rhs: Rational,
    pub check: Check,
}

/// Reduces the nested limit to `N(t) / (1 - t)^2` at `t = 1` with
/// `N(t) = (1 + t)^{m-n} f_w(0, t) + 2^{m-n+1} (w(G) - n) kappa_w (1 - t)`.
pub fn verify_kirchhoff_limit(
    g: &WeightedGraph,
    perturb: Option<&Perturbation>,
) -> Result<KirchhoffLimitValues, VerifyError> {
    let (n, m) = (g.n(), g.m());
    if m < n {
        return Err(VerifyError::Precondition(format!(
            "requires m >= n (cycle rank at least one), got m = {m}, n = {n}"
        )));
    }
    let kr = kirchhoff_report(g)?;
    let e = (m - n) as u32;
    let w = g.total_weight();
    let nn = rat(n as i64);
    let mn = rat((m + n) as i64);
    let kappa = &kr.kappa_w;
    let f0 = f_w_poly(g)?.at_u(&Rational::zero());
    let one_plus_t = lp(&[rat(1), rat(1)]);
    let pow2 = crate::algebra::rational::pow(&rat(2), e);
    let linear = lp(&[rat(1), rat(-1)]).scale(&(&pow2 * rat(2) * (&w - &nn) * kappa));
    let numerator = &(&one_plus_t.pow(e) * &f0) + &linear;
    let lhs = laurent_quotient_at_one(&numerator, 2)?;
    let rhs = &pow2 * (&kr.kf_z + &mn * &w - &mn * &nn + &nn) * kappa;
    let rhs = perturb.scalar("t13", rhs);
    let check = Check::exact_scalar("t13", &lhs, &rhs);
    Ok(KirchhoffLimitValues { lhs, rhs, check })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleRankLimitValues {
    pub value: Rational,
    pub expected: Rational,
    pub check: Check,
}

/// `(1 + t)^{m-n} f(t) / (1 - t)` at `t = 1` against `2^r (1 - r) kappa`,
/// with `r = m - n + 1 > 1`, on the unweighted graph.
pub fn verify_cycle_rank_limit(
    g: &WeightedGraph,
    perturb: Option<&Perturbation>,
) -> Result<CycleRankLimitValues, VerifyError> {
    let (n, m) = (g.n() as i64, g.m() as i64);
    let r = m - n + 1;
    if r <= 1 {
        return Err(VerifyError::Precondition(format!(
            "requires cycle rank r > 1, got r = {r}"
        )));
    }
    let (unit, kappa) = unit_view_complexity(g);
    if kappa.is_zero() {
        return Err(SpanningError::Singular.into());
    }
    let f = f_w_poly(&unit)?.at_u(&Rational::zero());
    let p = &lp(&[rat(1), rat(1)]).pow((m - n) as u32) * &f;
    let value = laurent_quotient_at_one(&p, 1)?;
    let expected = crate::algebra::rational::pow(&rat(2), r as u32) * rat(1 - r) * kappa;
    let expected = perturb.scalar("hn", expected);
    let check = Check::exact_scalar("hn", &value, &expected);
    Ok(CycleRankLimitValues { value, expected, check })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::graph::parse_graph;
    use crate::spanning::brute_force_complexity;

    fn p3() -> WeightedGraph {
        parse_graph("3 2\n1 2 2\n2 3 3").unwrap()
    }
    fn k3() -> WeightedGraph {
        parse_graph("3 3\n1 2 1\n2 3 1\n1 3 1").unwrap()
    }
    fn k4() -> WeightedGraph {
        parse_graph("4 6\n1 2 1\n1 3 1\n1 4 1\n2 3 1\n2 4 1\n3 4 1").unwrap()
    }

    fn all_pass(c: &[Check]) -> bool {
        c.iter().all(|c| c.pass)
    }

    #[test]
    fn curve_values_at_one() {
        let r = curve_report(&p3()).unwrap();
        assert_eq!(eval_at_one(&r.d_t.lhs), rat(24));
        let r = curve_report(&k3()).unwrap();
        assert_eq!(eval_at_one(&r.d_tt.lhs), rat(18));
        assert_eq!(eval_at_one(&r.d_uu.lhs), rat(-18));
        let r = curve_report(&k4()).unwrap();
        assert_eq!(eval_at_one(&r.d_tt.lhs), rat(736));
    }

    #[test]
    fn curve_identities_hold() {
        for g in [p3(), k3(), k4()] {
            let c = verify_curve_derivatives(&g, None).unwrap();
            assert_eq!(c.len(), 5);
            assert!(all_pass(&c), "{c:?}");
        }
        let g = parse_graph("4 5\n1 2 1/2\n2 3 -1\n3 4 2\n1 4 3\n1 3 5").unwrap();
        assert!(all_pass(&verify_curve_derivatives(&g, None).unwrap()));
    }

    #[test]
    fn perturbing_one_rhs_fails_only_that_check() {
        let p = Perturbation {
            target: Some("t11.dt".into()),
            exponent: 0,
            amount: rat(1),
        };
        let c = verify_curve_derivatives(&k4(), Some(&p)).unwrap();
        assert!(!c[0].pass);
        assert!(c[0].detail.as_ref().unwrap().contains("lhs - rhs"));
        assert!(c[1..].iter().all(|c| c.pass));
    }

    #[test]
    fn singular_weights_refused() {
        let g = parse_graph("3 3\n1 2 1\n2 3 1\n1 3 -1/2").unwrap();
        assert_eq!(
            verify_curve_derivatives(&g, None),
            Err(VerifyError::Spanning(SpanningError::Singular))
        );
    }

    #[test]
    fn specializations() {
        for g in [p3(), k3(), k4()] {
            let c = verify_specializations(&g, None).unwrap();
            assert!(all_pass(&c), "{c:?}");
        }
        // t4 present only when every degree is at least two
        assert!(verify_specializations(&k4(), None).unwrap().iter().any(|c| c.name == "t4"));
        assert!(!verify_specializations(&p3(), None).unwrap().iter().any(|c| c.name == "t4"));
    }

    #[test]
    fn unweighted_derivative_values() {
        let c = verify_unweighted_derivatives(&k4(), None).unwrap();
        assert!(all_pass(&c));
        assert_eq!(c[0].lhs, "64");
        assert_eq!(verify_unweighted_derivatives(&k3(), None).unwrap()[1].rhs, "0");
        let c = verify_unweighted_derivatives(&p3(), None).unwrap();
        assert!(all_pass(&c));
        assert_eq!(c[0].rhs, "-2");
    }

    #[test]
    fn kirchhoff_limit_values() {
        let v = verify_kirchhoff_limit(&k3(), None).unwrap();
        assert_eq!((v.lhs, v.rhs), (rat(9), rat(9)));
        let v = verify_kirchhoff_limit(&k4(), None).unwrap();
        assert_eq!((v.lhs, v.rhs), (rat(1728), rat(1728)));
        assert!(matches!(verify_kirchhoff_limit(&p3(), None), Err(VerifyError::Precondition(_))));
        let g = parse_graph("4 5\n1 2 1/2\n2 3 2\n3 4 3\n1 4 1/3\n1 3 5").unwrap();
        assert!(verify_kirchhoff_limit(&g, None).unwrap().check.pass);
    }

    #[test]
    fn cycle_rank_limit_values() {
        let v = verify_cycle_rank_limit(&k4(), None).unwrap();
        assert_eq!(v.value, rat(-256));
        assert!(v.check.pass);
        assert!(matches!(
            verify_cycle_rank_limit(&k3(), None),
            Err(VerifyError::Precondition(_))
        ));
        let k23 = parse_graph("5 6\n1 3 1\n1 4 1\n1 5 1\n2 3 1\n2 4 1\n2 5 1").unwrap();
        let kappa = brute_force_complexity(&k23).unwrap();
        let v = verify_cycle_rank_limit(&k23, None).unwrap();
        assert_eq!(v.value, rat(-4) * kappa);
        assert!(v.check.pass);
    }

    #[test]
    fn scalar_perturbation_flips() {
        let p = Perturbation::constant(ratio(1, 3));
        assert!(!verify_kirchhoff_limit(&k4(), Some(&p)).unwrap().check.pass);
        assert!(!verify_cycle_rank_limit(&k4(), Some(&p)).unwrap().check.pass);
        assert!(verify_unweighted_derivatives(&k4(), Some(&p)).unwrap().iter().all(|c| !c.pass));
    }
}
