//! Weighted simple graphs, their oriented arcs, and the vertex matrices
//! `W`, `D_w` and `L = D_w - W`.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::algebra::rational::parse_rational;
use crate::algebra::{rat, Matrix, Rational};
use crate::error::GraphError;

/// An undirected edge with `i < j` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub weight: Rational,
}

/// An oriented arc. Arc `2k` runs `i -> j` along edge `k`, arc `2k + 1` runs back.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub origin: usize,
    pub terminus: usize,
    pub edge: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    arcs: Vec<Arc>,
}

impl WeightedGraph {
    /// Builds and validates a graph: simple, connected, `n >= 2`, nonzero weights.
    /// Endpoints may be given in either order.
    pub fn new(n: usize, edges: Vec<(usize, usize, Rational)>) -> Result<Self, GraphError> {
        Self::build(n, edges.into_iter().map(|e| (e, None)).collect())
    }

    fn build(
        n: usize,
        raw: Vec<((usize, usize, Rational), Option<usize>)>,
    ) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::invalid(None, format!("need at least 2 vertices, got {n}")));
        }
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(raw.len());
        for ((a, b, w), line) in raw {
            if a >= n || b >= n {
                return Err(GraphError::invalid(
                    line,
                    format!("vertex out of range (n = {n})"),
                ));
            }
            if a == b {
                return Err(GraphError::invalid(line, format!("loop at vertex {}", a + 1)));
            }
            if w.is_zero() {
                return Err(GraphError::invalid(line, "zero edge weight"));
            }
            let (i, j) = (a.min(b), a.max(b));
            if !seen.insert((i, j)) {
                return Err(GraphError::invalid(
                    line,
                    format!("duplicate edge {} {}", i + 1, j + 1),
                ));
            }
            edges.push(Edge { i, j, weight: w });
        }
        let arcs = edges
            .iter()
            .enumerate()
            .flat_map(|(k, e)| {
                [
                    Arc { origin: e.i, terminus: e.j, edge: k },
                    Arc { origin: e.j, terminus: e.i, edge: k },
                ]
            })
            .collect();
        let g = Self { n, edges, arcs };
        if !g.is_connected() {
            return Err(GraphError::invalid(None, "graph is disconnected"));
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// `e -> e^{-1}`.
    pub fn inverse_arc(&self, e: usize) -> usize {
        e ^ 1
    }

    pub fn arc_weight(&self, e: usize) -> &Rational {
        &self.edges[self.arcs[e].edge].weight
    }

    /// Weight of edge `{a, b}`, if present.
    pub fn weight(&self, a: usize, b: usize) -> Option<&Rational> {
        let (i, j) = (a.min(b), a.max(b));
        self.edges
            .iter()
            .find(|e| e.i == i && e.j == j)
            .map(|e| &e.weight)
    }

    /// `w(G)`, the sum of edge weights.
    pub fn total_weight(&self) -> Rational {
        self.edges
            .iter()
            .fold(Rational::zero(), |acc, e| acc + &e.weight)
    }

    /// `d^w_i`, the weighted degree of each vertex.
    pub fn weighted_degrees(&self) -> Vec<Rational> {
        let mut d = vec![Rational::zero(); self.n];
        for e in &self.edges {
            d[e.i] += &e.weight;
            d[e.j] += &e.weight;
        }
        d
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.i] += 1;
            d[e.j] += 1;
        }
        d
    }

    pub fn all_weights_positive(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_positive())
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_one())
    }

    /// Same graph with every weight set to 1.
    pub fn with_unit_weights(&self) -> Self {
        self.with_weights(|_| Rational::one())
    }

    pub fn with_weights(&self, mut f: impl FnMut(usize) -> Rational) -> Self {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(k, e)| Edge { i: e.i, j: e.j, weight: f(k) })
            .collect();
        Self { n: self.n, edges, arcs: self.arcs.clone() }
    }

    pub fn is_connected(&self) -> bool {
        connected(self.n, self.edges.iter().map(|e| (e.i, e.j)))
    }

    /// Serializes to the `.wgr` text format.
    pub fn to_wgr(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.i + 1, e.j + 1, e.weight);
        }
        out
    }
}

pub(crate) fn connected(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    let mut components = n;
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components <= 1
}

/// Parses the `.wgr` format: `#` comment lines, a header `n m`, then exactly
/// `m` lines `i j w` with `1 <= i < j <= n` and `w` written `p` or `p/q`.
pub fn parse_graph(text: &str) -> Result<WeightedGraph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| GraphError::parse(1, "missing header line `n m`"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(GraphError::parse(hline, "header must be `n m`"));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| GraphError::parse(hline, format!("bad vertex count `{}`", fields[0])))?;
    let m: usize = fields[1]
        .parse()
        .map_err(|_| GraphError::parse(hline, format!("bad edge count `{}`", fields[1])))?;
    let mut raw = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, body) = lines.next().ok_or_else(|| {
            GraphError::parse(hline, format!("expected {m} edge lines, found {}", raw.len()))
        })?;
        let f: Vec<&str> = body.split_whitespace().collect();
        if f.len() != 3 {
            return Err(GraphError::parse(line, "edge line must be `i j w`"));
        }
        let idx = |s: &str| -> Result<usize, GraphError> {
            s.parse::<usize>()
                .map_err(|_| GraphError::parse(line, format!("bad vertex index `{s}`")))
        };
        let (i, j) = (idx(f[0])?, idx(f[1])?);
        let w = parse_rational(f[2])
            .ok_or_else(|| GraphError::parse(line, format!("bad weight `{}`", f[2])))?;
        if i == 0 || j == 0 || i > n || j > n {
            return Err(GraphError::invalid(
                Some(line),
                format!("vertex index out of range 1..={n}"),
            ));
        }
        if i == j {
            return Err(GraphError::invalid(Some(line), format!("loop at vertex {i}")));
        }
        if i > j {
            return Err(GraphError::invalid(Some(line), "edge endpoints must satisfy i < j"));
        }
        raw.push(((i - 1, j - 1, w), Some(line)));
    }
    if let Some((line, _)) = lines.next() {
        return Err(GraphError::parse(line, format!("unexpected content after {m} edges")));
    }
    WeightedGraph::build(n, raw)
}

/// `W`, `D_w`, `L = D_w - W` and `w(G)`. For the unweighted view these are
/// `A`, `D`, `D - A` and `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixBundle {
    pub w: Matrix<Rational>,
    pub d_w: Matrix<Rational>,
    pub l: Matrix<Rational>,
    pub total_weight: Rational,
}

impl MatrixBundle {
    /// `Q_w = D_w - I`.
    pub fn q(&self) -> Matrix<Rational> {
        let n = self.d_w.rows();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                &self.d_w[(i, i)] - Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn degrees(&self) -> Vec<Rational> {
        (0..self.d_w.rows()).map(|i| self.d_w[(i, i)].clone()).collect()
    }
}

pub fn matrices(g: &WeightedGraph) -> MatrixBundle {
    let n = g.n();
    let mut w = Matrix::from_fn(n, n, |_, _| Rational::zero());
    for e in g.edges() {
        w[(e.i, e.j)] = e.weight.clone();
        w[(e.j, e.i)] = e.weight.clone();
    }
    let d = g.weighted_degrees();
    let d_w = Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { Rational::zero() });
    let l = Matrix::from_fn(n, n, |i, j| &d_w[(i, j)] - &w[(i, j)]);
    MatrixBundle { w, d_w, l, total_weight: g.total_weight() }
}

/// Adjacency `A`, degree matrix `D` and `L = D - A`, ignoring weights.
pub fn unweighted_view(g: &WeightedGraph) -> MatrixBundle {
    let mut b = matrices(&g.with_unit_weights());
    b.total_weight = rat(g.m() as i64);
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    fn p3() -> WeightedGraph {
        parse_graph("3 2\n1 2 2\n2 3 3").unwrap()
    }

    #[test]
    fn parses_k3() {
        let g = parse_graph("3 3\n1 2 1\n2 3 1\n1 3 1").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert!(g.is_unweighted());
        assert_eq!(g.arcs().len(), 6);
    }

    #[test]
    fn comments_and_fractions() {
        let g = parse_graph("# weighted path\n3 2\n# edges\n1 2 1/2\n2 3 -3/4\n").unwrap();
        assert_eq!(g.edges()[0].weight, ratio(1, 2));
        assert_eq!(g.edges()[1].weight, ratio(-3, 4));
    }

    #[test]
    fn rejects_bad_input() {
        let loop_err = parse_graph("2 1\n1 1 1").unwrap_err();
        assert!(matches!(loop_err, GraphError::Validation { line: Some(2), .. }));
        assert!(matches!(
            parse_graph("3 2\n1 2 1\n1 2 4").unwrap_err(),
            GraphError::Validation { line: Some(3), .. }
        ));
        assert!(matches!(
            parse_graph("3 2\n1 2 0\n2 3 1").unwrap_err(),
            GraphError::Validation { .. }
        ));
        assert!(matches!(
            parse_graph("4 2\n1 2 1\n3 4 1").unwrap_err(),
            GraphError::Validation { line: None, .. }
        ));
        assert!(matches!(parse_graph("1 0").unwrap_err(), GraphError::Validation { .. }));
        assert!(matches!(
            parse_graph("3 2\n1 2 x\n2 3 1").unwrap_err(),
            GraphError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse_graph("3 2\n1 2 1").unwrap_err(),
            GraphError::Parse { .. }
        ));
        assert!(matches!(
            parse_graph("3 1\n1 2 1\n2 3 1").unwrap_err(),
            GraphError::Parse { line: 3, .. }
        ));
    }

    #[test]
    fn weighted_path_matrices() {
        let b = matrices(&p3());
        assert_eq!(b.degrees(), vec![rat(2), rat(5), rat(3)]);
        let expected = [[2, -2, 0], [-2, 5, -3], [0, -3, 3]];
        for (i, row) in expected.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(b.l[(i, j)], rat(x));
            }
        }
        assert_eq!(b.total_weight, rat(5));
    }

    #[test]
    fn complete_graphs() {
        let k3 = parse_graph("3 3\n1 2 1\n2 3 1\n1 3 1").unwrap();
        let b = matrices(&k3);
        assert_eq!(b.degrees(), vec![rat(2); 3]);
        for i in 0..3 {
            let s = (0..3).fold(Rational::zero(), |a, j| a + &b.l[(i, j)]);
            assert!(s.is_zero());
        }
        let k4 = parse_graph("4 6\n1 2 1\n1 3 1\n1 4 1\n2 3 1\n2 4 1\n3 4 1").unwrap();
        let b = matrices(&k4);
        assert_eq!(b.total_weight, rat(6));
        assert_eq!(b.degrees(), vec![rat(3); 4]);
    }

    #[test]
    fn unweighted_views() {
        let k3 = parse_graph("3 3\n1 2 1\n2 3 1\n1 3 1").unwrap();
        let v = unweighted_view(&k3);
        let q = v.q();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(v.w[(i, j)], rat((i != j) as i64));
                assert_eq!(q[(i, j)], rat((i == j) as i64));
            }
        }
        let v = unweighted_view(&p3());
        assert_eq!(v.degrees(), vec![rat(1), rat(2), rat(1)]);
        assert_eq!(v.q()[(1, 1)], rat(1));
        assert_eq!(v.q()[(0, 0)], rat(0));
        assert_eq!(v.total_weight, rat(2));
    }

    #[test]
    fn arc_involution() {
        let g = p3();
        for (e, a) in g.arcs().iter().enumerate() {
            let inv = g.arcs()[g.inverse_arc(e)];
            assert_eq!(inv.origin, a.terminus);
            assert_eq!(inv.terminus, a.origin);
            assert_eq!(g.inverse_arc(g.inverse_arc(e)), e);
            assert_ne!(g.inverse_arc(e), e);
        }
    }

    #[test]
    fn wgr_round_trip() {
        let g = parse_graph("3 2\n1 2 2/3\n2 3 -3").unwrap();
        assert_eq!(parse_graph(&g.to_wgr()).unwrap(), g);
    }
}
