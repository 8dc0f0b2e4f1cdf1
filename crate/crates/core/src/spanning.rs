//! Weighted complexity (Matrix-Tree), resistance distances from Laplacian
//! minors, and the weighted Kirchhoff indices.

use nalgebra::DMatrix;
use num_traits::{One, Zero};

use crate::algebra::rational::to_f64;
use crate::algebra::{rat, rational_det, LaurentPoly, Matrix, Rational};
use crate::error::SpanningError;
use crate::graph::{matrices, WeightedGraph};

/// Largest vertex count accepted by [`brute_force_complexity`].
pub const BRUTE_FORCE_MAX_N: usize = 10;

fn minor_det(l: &Matrix<Rational>, remove: &[usize]) -> Rational {
    rational_det(&l.principal_minor(remove)).expect("principal minors are square")
}

/// `kappa_w(G) = det L^{(k)}`, computed with the first vertex removed.
pub fn weighted_complexity(g: &WeightedGraph) -> Rational {
    complexity_via_vertex(g, 0)
}

/// `det L^{(k)}` for an explicit deleted vertex `k`.
pub fn complexity_via_vertex(g: &WeightedGraph, k: usize) -> Rational {
    minor_det(&matrices(g).l, &[k])
}

/// Sum of `w(T)` over all spanning trees, by exhaustive enumeration of
/// `(n - 1)`-edge subsets.
pub fn brute_force_complexity(g: &WeightedGraph) -> Result<Rational, SpanningError> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(SpanningError::Size { n, max: BRUTE_FORCE_MAX_N });
    }
    let edges = g.edges();
    let k = n - 1;
    let m = edges.len();
    let mut total = Rational::zero();
    if m < k {
        return Ok(total);
    }
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        if is_forest(n, pick.iter().map(|&e| (edges[e].i, edges[e].j))) {
            total += pick
                .iter()
                .fold(Rational::one(), |acc, &e| acc * &edges[e].weight);
        }
        // next k-combination in lexicographic order
        let Some(pos) = (0..k).rev().find(|&p| pick[p] != p + m - k) else {
            break;
        };
        pick[pos] += 1;
        for q in pos + 1..k {
            pick[q] = pick[q - 1] + 1;
        }
    }
    Ok(total)
}

fn is_forest(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    let find = |p: &mut Vec<usize>, mut x: usize| {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    };
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// `r_pq = det L^{(pq)} / kappa_w`, with `r_pp = 0`.
pub fn resistance_distance(
    g: &WeightedGraph,
    p: usize,
    q: usize,
) -> Result<Rational, SpanningError> {
    if p == q {
        return Ok(Rational::zero());
    }
    let kappa = weighted_complexity(g);
    if kappa.is_zero() {
        return Err(SpanningError::Singular);
    }
    let l = matrices(g).l;
    Ok(minor_det(&l, &[p, q]) / kappa)
}

/// Complexity, all pairwise resistances and the four weighted Kirchhoff indices.
#[derive(Clone, Debug, PartialEq)]
pub struct KirchhoffReport {
    pub kappa_w: Rational,
    /// Full symmetric table with zero diagonal.
    pub resistances: Vec<Vec<Rational>>,
    pub kf: Rational,
    pub kf_star: Rational,
    pub kf_plus: Rational,
    pub kf_z: Rational,
    /// `Kf*_w t^2 - 2 Kf+_w t + 4 Kf_w`.
    pub kf_z_poly: LaurentPoly,
    pub degrees: Vec<Rational>,
}

impl KirchhoffReport {
    pub fn resistance(&self, p: usize, q: usize) -> &Rational {
        &self.resistances[p][q]
    }

    /// `Kf^z_w(t)` rebuilt directly from `sum_{p<q} (d_p t - 2)(d_q t - 2) r_pq`.
    pub fn kf_z_poly_from_pairs(&self) -> LaurentPoly {
        let n = self.resistances.len();
        let mut acc = LaurentPoly::zero();
        for p in 0..n {
            for q in p + 1..n {
                let a = LaurentPoly::from_coeffs(&[rat(-2), self.degrees[p].clone()]);
                let b = LaurentPoly::from_coeffs(&[rat(-2), self.degrees[q].clone()]);
                acc = &acc + &(&a * &b).scale(&self.resistances[p][q]);
            }
        }
        acc
    }
}

pub fn kirchhoff_report(g: &WeightedGraph) -> Result<KirchhoffReport, SpanningError> {
    let n = g.n();
    let bundle = matrices(g);
    let kappa = minor_det(&bundle.l, &[0]);
    if kappa.is_zero() {
        return Err(SpanningError::Singular);
    }
    let d = bundle.degrees();
    let mut r = vec![vec![Rational::zero(); n]; n];
    let (mut kf, mut kf_star, mut kf_plus, mut kf_z) =
        (Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero());
    let two = rat(2);
    for p in 0..n {
        for q in p + 1..n {
            let rpq = minor_det(&bundle.l, &[p, q]) / &kappa;
            kf += &rpq;
            kf_star += &d[p] * &d[q] * &rpq;
            kf_plus += (&d[p] + &d[q]) * &rpq;
            kf_z += (&d[p] - &two) * (&d[q] - &two) * &rpq;
            r[p][q] = rpq.clone();
            r[q][p] = rpq;
        }
    }
    let kf_z_poly = LaurentPoly::from_coeffs(&[
        &kf * rat(4),
        &kf_plus * rat(-2),
        kf_star.clone(),
    ]);
    Ok(KirchhoffReport {
        kappa_w: kappa,
        resistances: r,
        kf,
        kf_star,
        kf_plus,
        kf_z,
        kf_z_poly,
        degrees: d,
    })
}

/// Exact `Kf_w` next to `n * sum_{i >= 2} 1/mu_i` from double-precision
/// Laplacian eigenvalues.
pub fn spectral_kf_check(g: &WeightedGraph) -> Result<(Rational, f64), SpanningError> {
    if !g.all_weights_positive() {
        return Err(SpanningError::Positivity);
    }
    let report = kirchhoff_report(g)?;
    let l = matrices(g).l;
    let n = g.n();
    let dense = DMatrix::from_fn(n, n, |i, j| to_f64(&l[(i, j)]));
    let mut mu: Vec<f64> = dense.symmetric_eigen().eigenvalues.iter().copied().collect();
    mu.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    let numeric = n as f64 * mu[1..].iter().map(|x| 1.0 / x).sum::<f64>();
    Ok((report.kf, numeric))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::graph::parse_graph;

    fn p3() -> WeightedGraph {
        parse_graph("3 2\n1 2 2\n2 3 3").unwrap()
    }
    fn k3() -> WeightedGraph {
        parse_graph("3 3\n1 2 1\n2 3 1\n1 3 1").unwrap()
    }
    fn k4() -> WeightedGraph {
        parse_graph("4 6\n1 2 1\n1 3 1\n1 4 1\n2 3 1\n2 4 1\n3 4 1").unwrap()
    }

    #[test]
    fn complexity_fixtures() {
        assert_eq!(weighted_complexity(&p3()), rat(6));
        assert_eq!(weighted_complexity(&k3()), rat(3));
        assert_eq!(weighted_complexity(&k4()), rat(16));
        assert_eq!(complexity_via_vertex(&k4(), 3), rat(16));
        assert_eq!(brute_force_complexity(&p3()).unwrap(), rat(6));
        assert_eq!(brute_force_complexity(&k3()).unwrap(), rat(3));
        assert_eq!(brute_force_complexity(&k4()).unwrap(), rat(16));
        let k3w = parse_graph("3 3\n1 2 2\n2 3 3\n1 3 5").unwrap();
        assert_eq!(brute_force_complexity(&k3w).unwrap(), rat(31));
        assert_eq!(weighted_complexity(&k3w), rat(31));
    }

    #[test]
    fn brute_force_size_guard() {
        let edges = (0..10).map(|i| (i, i + 1, rat(1))).collect();
        let path11 = WeightedGraph::new(11, edges).unwrap();
        assert_eq!(
            brute_force_complexity(&path11),
            Err(SpanningError::Size { n: 11, max: 10 })
        );
    }

    #[test]
    fn resistances() {
        let g = p3();
        assert_eq!(resistance_distance(&g, 0, 1).unwrap(), ratio(1, 2));
        assert_eq!(resistance_distance(&g, 0, 2).unwrap(), ratio(5, 6));
        assert_eq!(resistance_distance(&g, 1, 2).unwrap(), ratio(1, 3));
        assert_eq!(resistance_distance(&g, 2, 2).unwrap(), rat(0));
        assert_eq!(resistance_distance(&k4(), 0, 1).unwrap(), ratio(1, 2));
    }

    #[test]
    fn singular_weights_are_refused() {
        // triangle with weights 1, 1, -1/2: kappa = 1 - 1/2 - 1/2 = 0
        let g = parse_graph("3 3\n1 2 1\n2 3 1\n1 3 -1/2").unwrap();
        assert_eq!(weighted_complexity(&g), rat(0));
        assert_eq!(resistance_distance(&g, 0, 1), Err(SpanningError::Singular));
        assert_eq!(kirchhoff_report(&g), Err(SpanningError::Singular));
    }

    #[test]
    fn weighted_path_report() {
        let r = kirchhoff_report(&p3()).unwrap();
        assert_eq!(r.kappa_w, rat(6));
        assert_eq!(r.kf, ratio(5, 3));
        assert_eq!(r.kf_star, rat(15));
        assert_eq!(r.kf_plus, ratio(31, 3));
        assert_eq!(r.kf_z, rat(1));
        assert_eq!(
            r.kf_z_poly,
            LaurentPoly::from_coeffs(&[ratio(20, 3), ratio(-62, 3), rat(15)])
        );
        assert_eq!(r.kf_z_poly.eval(&rat(1)), Some(r.kf_z.clone()));
        assert_eq!(r.kf_z_poly_from_pairs(), r.kf_z_poly);
    }

    #[test]
    fn complete_graph_reports() {
        let r = kirchhoff_report(&k3()).unwrap();
        assert_eq!(r.kf_z, rat(0));
        let r = kirchhoff_report(&k4()).unwrap();
        assert_eq!((r.kf.clone(), r.kf_star.clone()), (rat(3), rat(27)));
        assert_eq!((r.kf_plus.clone(), r.kf_z.clone()), (rat(18), rat(3)));
        assert_eq!(r.kf_z, &r.kf_star - &(&r.kf_plus * rat(2)) + &r.kf * rat(4));
    }

    #[test]
    fn spectral_cross_check() {
        for (g, exact) in [(k3(), 2.0), (k4(), 3.0)] {
            let (kf, numeric) = spectral_kf_check(&g).unwrap();
            assert_eq!(to_f64(&kf), exact);
            assert!((numeric - exact).abs() < 1e-9);
        }
        let p3u = p3().with_unit_weights();
        let (kf, numeric) = spectral_kf_check(&p3u).unwrap();
        assert_eq!(kf, rat(4));
        assert!((numeric - 4.0).abs() < 1e-9);
        let neg = parse_graph("3 2\n1 2 -1\n2 3 1").unwrap();
        assert_eq!(spectral_kf_check(&neg), Err(SpanningError::Positivity));
    }
}
