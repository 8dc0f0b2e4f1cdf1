//! Named groups of identity checks, run on one graph or on seeded random graphs.

use std::fmt;
use std::str::FromStr;

use crate::check::{Check, Perturb, Perturbation};
use crate::derivatives::{
    verify_unweighted_derivatives, verify_cycle_rank_limit, verify_specializations, verify_kirchhoff_limit,
    verify_curve_derivatives,
};
use crate::error::{AlgebraError, VerifyError};
use crate::graph::WeightedGraph;
use crate::random;
use crate::spanning::{brute_force_complexity, weighted_complexity};
use crate::zeta::edge_vertex_check_with;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    T10,
    T11T12,
    T13,
    Hn,
    C1,
    Random,
    All,
}

impl Suite {
    /// Suites that run against a single input graph, in report order.
    pub const GRAPH_SUITES: [Suite; 5] = [Suite::T10, Suite::T11T12, Suite::T13, Suite::Hn, Suite::C1];

    pub fn name(self) -> &'static str {
        match self {
            Suite::T10 => "t10",
            Suite::T11T12 => "t11t12",
            Suite::T13 => "t13",
            Suite::Hn => "hn",
            Suite::C1 => "c1",
            Suite::Random => "random",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Suite::T10, Suite::T11T12, Suite::T13, Suite::Hn, Suite::C1, Suite::Random, Suite::All]
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}` (expected t10, t11t12, t13, hn, c1, random or all)"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Checks(Vec<Check>),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub label: String,
    pub outcome: Outcome,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        match &self.outcome {
            Outcome::Checks(c) => c.iter().all(|c| c.pass),
            Outcome::Skipped(_) => true,
        }
    }
}

/// A failed divisibility step is a broken identity, not a usage error.
fn divisibility_as_failure(name: &str, r: Result<Check, VerifyError>) -> Result<Vec<Check>, VerifyError> {
    match r {
        Ok(c) => Ok(vec![c]),
        Err(VerifyError::Algebra(e @ AlgebraError::Divisibility { .. })) => Ok(vec![Check::failed(name, e.to_string())]),
        Err(e) => Err(e),
    }
}

/// One named suite on one graph.
pub fn run_on_graph(
    g: &WeightedGraph,
    suite: Suite,
    perturb: Option<&Perturbation>,
) -> Result<Vec<Check>, VerifyError> {
    match suite {
        Suite::T10 => Ok(vec![edge_vertex_check_with(g, perturb)?]),
        Suite::T11T12 => {
            let mut c = verify_curve_derivatives(g, perturb)?;
            c.extend(verify_specializations(g, perturb)?);
            Ok(c)
        }
        Suite::T13 => divisibility_as_failure("t13", verify_kirchhoff_limit(g, perturb).map(|v| v.check)),
        Suite::Hn => divisibility_as_failure("hn", verify_cycle_rank_limit(g, perturb).map(|v| v.check)),
        Suite::C1 => verify_unweighted_derivatives(g, perturb),
        Suite::Random | Suite::All => unreachable!("not a single-graph suite"),
    }
}

/// Every single-graph suite; unmet preconditions become skips.
pub fn run_all(g: &WeightedGraph, perturb: Option<&Perturbation>) -> Result<Vec<SuiteResult>, VerifyError> {
    Suite::GRAPH_SUITES
        .iter()
        .map(|&s| {
            let outcome = match run_on_graph(g, s, perturb) {
                Ok(c) => Outcome::Checks(c),
                Err(VerifyError::Algebra(e)) => return Err(VerifyError::Algebra(e)),
                Err(e) => Outcome::Skipped(e.to_string()),
            };
            Ok(SuiteResult { label: s.name().to_string(), outcome })
        })
        .collect()
}

/// Matrix-Tree determinant against exhaustive enumeration.
pub fn matrix_tree_check(g: &WeightedGraph, perturb: Option<&Perturbation>) -> Result<Check, VerifyError> {
    let det = weighted_complexity(g);
    let brute = perturb.scalar("mt", brute_force_complexity(g)?);
    Ok(Check::exact_scalar("mt", &det, &brute))
}

/// Case `i` uses seed `seed + i`; each case draws one graph per family.
pub fn random_case(seed: u64, perturb: Option<&Perturbation>) -> Result<Vec<Check>, VerifyError> {
    let mut out = Vec::new();
    let tag = |mut c: Check, g: &WeightedGraph| {
        c.name = format!("{} [n={} m={}]", c.name, g.n(), g.m());
        c
    };
    let g = random::edge_vertex_case(seed);
    out.push(tag(edge_vertex_check_with(&g, perturb)?, &g));
    let g = random::curve_case(seed);
    out.extend(verify_curve_derivatives(&g, perturb)?.into_iter().map(|c| tag(c, &g)));
    let g = random::cyclic_case(seed);
    out.extend(divisibility_as_failure("t13", verify_kirchhoff_limit(&g, perturb).map(|v| v.check))?
        .into_iter()
        .map(|c| tag(c, &g)));
    let g = random::spanning_case(seed);
    out.push(tag(matrix_tree_check(&g, perturb)?, &g));
    Ok(out)
}

pub fn run_random(seed: u64, cases: usize, perturb: Option<&Perturbation>) -> Result<Vec<SuiteResult>, VerifyError> {
    (0..cases)
        .map(|i| {
            let s = seed.wrapping_add(i as u64);
            Ok(SuiteResult {
                label: format!("case {i} (seed {s})"),
                outcome: Outcome::Checks(random_case(s, perturb)?),
            })
        })
        .collect()
}
