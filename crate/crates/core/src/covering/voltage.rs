//! Ordinary voltage assignments, the `.vlt` format and derived graphs.

use std::collections::HashSet;
use std::fmt::Write as _;

use super::group::FiniteGroup;
use crate::error::CoveringError;
use crate::graph::{connected, WeightedGraph};

/// One group element per base edge, read on the arc from the smaller to the
/// larger vertex; the reverse arc carries the inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageAssignment {
    forward: Vec<usize>,
}

impl VoltageAssignment {
    pub fn new(g: &WeightedGraph, group: &FiniteGroup, forward: Vec<usize>) -> Result<Self, CoveringError> {
        if forward.len() != g.m() {
            return Err(CoveringError::Voltage {
                line: 0,
                message: format!("expected {} voltages, got {}", g.m(), forward.len()),
            });
        }
        if let Some(&bad) = forward.iter().find(|&&a| a >= group.order()) {
            return Err(CoveringError::Voltage {
                line: 0,
                message: format!("element index {bad} out of range"),
            });
        }
        Ok(VoltageAssignment { forward })
    }

    pub fn edge_voltage(&self, k: usize) -> usize {
        self.forward[k]
    }

    /// Voltage of arc `2k` (forward) or `2k + 1` (reverse).
    pub fn arc_voltage(&self, group: &FiniteGroup, arc: usize) -> usize {
        let a = self.forward[arc / 2];
        if arc.is_multiple_of(2) {
            a
        } else {
            group.inv(a)
        }
    }

    pub fn to_vlt(&self, group: &FiniteGroup) -> String {
        let mut out = format!("{}\n", group.name());
        for &a in &self.forward {
            let _ = writeln!(out, "{}", group.token(a));
        }
        out
    }
}

/// A parsed `.vlt` file: group token and one element token per edge, with
/// 1-based line numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageFile {
    pub group: String,
    pub tokens: Vec<(usize, String)>,
}

pub fn parse_voltage_file(text: &str) -> Result<VoltageFile, CoveringError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let Some((_, group)) = lines.next() else {
        return Err(CoveringError::Voltage { line: 1, message: "missing group line".into() });
    };
    let mut tokens = Vec::new();
    for (line, l) in lines {
        let mut parts = l.split_whitespace();
        let tok = parts.next().expect("line is non-empty");
        if parts.next().is_some() {
            return Err(CoveringError::Voltage { line, message: "expected one element per line".into() });
        }
        tokens.push((line, tok.to_string()));
    }
    Ok(VoltageFile { group: group.to_string(), tokens })
}

/// Resolves a parsed file against the base graph and group.
pub fn resolve_voltages(
    file: &VoltageFile,
    g: &WeightedGraph,
    group: &FiniteGroup,
) -> Result<VoltageAssignment, CoveringError> {
    if file.tokens.len() != g.m() {
        let line = file.tokens.last().map_or(1, |(l, _)| *l);
        return Err(CoveringError::Voltage {
            line,
            message: format!("expected {} voltages (one per edge), found {}", g.m(), file.tokens.len()),
        });
    }
    let forward = file
        .tokens
        .iter()
        .map(|(line, tok)| {
            group.element(tok).ok_or_else(|| CoveringError::Voltage {
                line: *line,
                message: format!("`{tok}` is not an element of {}", group.name()),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    VoltageAssignment::new(g, group, forward)
}

/// Vertex `(v, h)` of the derived graph has index `h * n + v`.
pub fn lifted_vertex(n: usize, v: usize, h: usize) -> usize {
    h * n + v
}

/// The derived graph `G^alpha`: edge `(u, h) - (v, h alpha(u, v))` of weight
/// `w(u, v)` for each base edge and each group element.
pub fn derived_graph(
    g: &WeightedGraph,
    group: &FiniteGroup,
    alpha: &VoltageAssignment,
) -> Result<WeightedGraph, CoveringError> {
    let n = g.n();
    let size = n * group.order();
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(g.m() * group.order());
    for (k, e) in g.edges().iter().enumerate() {
        let a = alpha.edge_voltage(k);
        for h in group.elements() {
            let x = lifted_vertex(n, e.i, h);
            let y = lifted_vertex(n, e.j, group.mul(h, a));
            if !seen.insert((x.min(y), x.max(y))) {
                return Err(CoveringError::Simplicity(format!(
                    "two lifted edges join ({}, {}) and ({}, {})",
                    e.i + 1,
                    group.token(h),
                    e.j + 1,
                    group.token(group.mul(h, a))
                )));
            }
            edges.push((x, y, e.weight.clone()));
        }
    }
    if !connected(size, edges.iter().map(|(x, y, _)| (*x, *y))) {
        return Err(CoveringError::DisconnectedCover);
    }
    WeightedGraph::new(size, edges).map_err(|e| CoveringError::Simplicity(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::group::{cyclic, symmetric3};
    use crate::graph::parse_graph;

    fn k3() -> WeightedGraph {
        parse_graph("3 3\n1 2 1\n2 3 1\n1 3 1").unwrap()
    }

    fn assign(g: &WeightedGraph, group: &FiniteGroup, v: &[usize]) -> VoltageAssignment {
        VoltageAssignment::new(g, group, v.to_vec()).unwrap()
    }

    #[test]
    fn k3_lift_is_six_cycle() {
        let z2 = cyclic(2);
        let c6 = derived_graph(&k3(), &z2, &assign(&k3(), &z2, &[0, 0, 1])).unwrap();
        assert_eq!((c6.n(), c6.m()), (6, 6));
        assert!(c6.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn disconnected_lifts() {
        let z2 = cyclic(2);
        assert_eq!(
            derived_graph(&k3(), &z2, &assign(&k3(), &z2, &[0, 0, 0])),
            Err(CoveringError::DisconnectedCover)
        );
        let p3 = parse_graph("3 2\n1 2 2\n2 3 3").unwrap();
        assert_eq!(
            derived_graph(&p3, &z2, &assign(&p3, &z2, &[1, 1])),
            Err(CoveringError::DisconnectedCover)
        );
    }

    #[test]
    fn lift_preserves_degrees_and_weights() {
        let g = parse_graph("4 5\n1 2 2\n2 3 1/2\n3 4 3\n1 4 -1\n1 3 5").unwrap();
        let s3 = symmetric3();
        let e = |t: &str| s3.element(t).unwrap();
        let a = assign(&g, &s3, &[e("(12)"), e("e"), e("(123)"), e("e"), e("(23)")]);
        let d = derived_graph(&g, &s3, &a).unwrap();
        assert_eq!((d.n(), d.m()), (24, 30));
        let base = g.weighted_degrees();
        let lifted = d.weighted_degrees();
        for h in 0..6 {
            for v in 0..4 {
                assert_eq!(lifted[lifted_vertex(4, v, h)], base[v]);
            }
        }
        assert_eq!(d.total_weight(), g.total_weight() * crate::algebra::rat(6));
    }

    #[test]
    fn reverse_arcs_carry_inverses() {
        let z3 = cyclic(3);
        let a = assign(&k3(), &z3, &[1, 0, 2]);
        assert_eq!(a.arc_voltage(&z3, 0), 1);
        assert_eq!(a.arc_voltage(&z3, 1), 2);
        assert_eq!(a.arc_voltage(&z3, 5), 1);
    }

    #[test]
    fn voltage_files() {
        let f = parse_voltage_file("# lift\nZ2\n0\n\n0\n1\n").unwrap();
        assert_eq!(f.group, "Z2");
        assert_eq!(f.tokens, vec![(3, "0".into()), (5, "0".into()), (6, "1".into())]);
        let z2 = cyclic(2);
        assert_eq!(resolve_voltages(&f, &k3(), &z2).unwrap().to_vlt(&z2), "Z2\n0\n0\n1\n");
        let bad = parse_voltage_file("Z2\n0\n2\n1").unwrap();
        assert!(matches!(resolve_voltages(&bad, &k3(), &z2), Err(CoveringError::Voltage { line: 3, .. })));
        let short = parse_voltage_file("Z2\n0\n1").unwrap();
        assert!(matches!(resolve_voltages(&short, &k3(), &z2), Err(CoveringError::Voltage { .. })));
        assert!(matches!(parse_voltage_file("Z2\n0 1\n"), Err(CoveringError::Voltage { line: 2, .. })));
    }
}
