//! One pass/fail line per acceptance criterion; exits non-zero if any fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use zetakirch::algebra::{rat, ratio, LaurentPoly, Rational};
use zetakirch::check::Check;
use zetakirch::covering::{
    builtin_group, parse_voltage_file, resolve_voltages, verify_cover, CoverOptions, FormulaValue, PathMode,
};
use zetakirch::derivatives::{
    curve_report, verify_unweighted_derivatives, verify_cycle_rank_limit, verify_kirchhoff_limit, verify_curve_derivatives,
};
use zetakirch::graph::{parse_graph, WeightedGraph};
use zetakirch::random;
use zetakirch::spanning::{brute_force_complexity, kirchhoff_report, spectral_kf_check, weighted_complexity};
use zetakirch::zeta::edge_vertex_check;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn graph(name: &str) -> WeightedGraph {
    parse_graph(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

fn at_one(p: &LaurentPoly) -> Rational {
    p.eval(&rat(1)).expect("defined at t = 1")
}

/// Collects mismatches for one criterion.
#[derive(Default)]
struct Tally {
    failures: Vec<String>,
    count: usize,
}

impl Tally {
    fn eq(&mut self, what: &str, got: &Rational, want: &Rational) {
        self.count += 1;
        if got != want {
            self.failures.push(format!("{what}: got {got}, expected {want}"));
        }
    }

    fn check(&mut self, c: &Check) {
        self.count += 1;
        if !c.pass {
            self.failures.push(c.to_string());
        }
    }

    fn checks(&mut self, cs: &[Check]) {
        cs.iter().for_each(|c| self.check(c));
    }

    fn fail(&mut self, what: impl Into<String>) {
        self.count += 1;
        self.failures.push(what.into());
    }

    fn within(&mut self, elapsed: Duration, budget: Duration) {
        if elapsed > budget {
            self.failures.push(format!("took {elapsed:?}, budget {budget:?}"));
        }
    }
}

fn golden_fixtures(t: &mut Tally) {
    let start = Instant::now();
    let k3 = graph("k3.wgr");
    let r = kirchhoff_report(&k3).unwrap();
    t.eq("K3 kappa", &r.kappa_w, &rat(3));
    t.eq("K3 Kf^z", &r.kf_z, &rat(0));
    t.eq("K3 f''(1)", &at_one(&curve_report(&k3).unwrap().d_tt.lhs), &rat(18));
    t.eq("K3 Kirchhoff limit", &verify_kirchhoff_limit(&k3, None).unwrap().lhs, &rat(9));

    let k4 = graph("k4.wgr");
    let r = kirchhoff_report(&k4).unwrap();
    t.eq("K4 kappa", &r.kappa_w, &rat(16));
    t.eq("K4 Kf", &r.kf, &rat(3));
    t.eq("K4 Kf*", &r.kf_star, &rat(27));
    t.eq("K4 Kf+", &r.kf_plus, &rat(18));
    t.eq("K4 Kf^z", &r.kf_z, &rat(3));
    t.eq("K4 f''(1)", &at_one(&curve_report(&k4).unwrap().d_tt.lhs), &rat(736));
    let c1 = verify_unweighted_derivatives(&k4, None).unwrap();
    t.checks(&c1);
    if c1[0].lhs != "64" {
        t.fail(format!("K4 unweighted derivative value: got {}, expected 64", c1[0].lhs));
    }
    t.eq("K4 cycle-rank limit", &verify_cycle_rank_limit(&k4, None).unwrap().value, &rat(-256));
    // 2^2 (3 + 10*6 - 10*4 + 4) * 16 with m + n = 10
    let v = verify_kirchhoff_limit(&k4, None).unwrap();
    t.eq("K4 Kirchhoff limit lhs", &v.lhs, &rat(1728));
    t.eq("K4 Kirchhoff limit rhs", &v.rhs, &rat(1728));

    let p3 = graph("p3.wgr");
    let r = kirchhoff_report(&p3).unwrap();
    t.eq("P3 kappa_w", &r.kappa_w, &rat(6));
    t.eq("P3 r(1,2)", r.resistance(0, 1), &ratio(1, 2));
    t.eq("P3 r(1,3)", r.resistance(0, 2), &ratio(5, 6));
    t.eq("P3 r(2,3)", r.resistance(1, 2), &ratio(1, 3));
    t.eq("P3 Kf_w", &r.kf, &ratio(5, 3));
    t.eq("P3 Kf^z_w", &r.kf_z, &rat(1));
    t.eq("P3 df/dt(0,1)", &at_one(&curve_report(&p3).unwrap().d_t.lhs), &rat(24));
    t.within(start.elapsed(), Duration::from_secs(1));
}

fn edge_vertex_random(t: &mut Tally) {
    let start = Instant::now();
    for seed in 0..50 {
        let g = random::edge_vertex_case(seed);
        if g.n() > 6 || g.m() > 10 {
            t.fail(format!("seed {seed}: case exceeds n <= 6, m <= 10"));
        }
        t.check(&edge_vertex_check(&g).unwrap());
    }
    t.within(start.elapsed(), Duration::from_secs(120));
}

fn curve_random(t: &mut Tally) {
    let start = Instant::now();
    for seed in 0..50 {
        let g = random::curve_case(seed);
        if g.n() > 7 {
            t.fail(format!("seed {seed}: n = {} exceeds 7", g.n()));
        }
        match verify_curve_derivatives(&g, None) {
            Ok(c) if c.len() == 5 => t.checks(&c),
            Ok(c) => t.fail(format!("seed {seed}: {} identities instead of 5", c.len())),
            Err(e) => t.fail(format!("seed {seed}: {e}")),
        }
    }
    t.within(start.elapsed(), Duration::from_secs(120));
}

fn kirchhoff_limit_random(t: &mut Tally) {
    for seed in 0..25 {
        let g = random::cyclic_case(seed);
        if g.m() < g.n() || !g.all_weights_positive() {
            t.fail(format!("seed {seed}: case violates m >= n with positive weights"));
        }
        match verify_kirchhoff_limit(&g, None) {
            Ok(v) => t.check(&v.check),
            Err(e) => t.fail(format!("seed {seed}: {e}")),
        }
    }
}

fn matrix_tree_random(t: &mut Tally) {
    for seed in 0..100 {
        let g = random::spanning_case(seed);
        if g.n() > 7 {
            t.fail(format!("seed {seed}: n = {} exceeds 7", g.n()));
        }
        t.eq(&format!("seed {seed}"), &weighted_complexity(&g), &brute_force_complexity(&g).unwrap());
    }
}

fn run_cover(t: &mut Tally, g: &str, vlt: &str, mode: PathMode) -> Option<zetakirch::covering::CoverReport> {
    let base = graph(g);
    let file = parse_voltage_file(&std::fs::read_to_string(data(vlt)).unwrap()).unwrap();
    let (group, irreps) = builtin_group(&file.group).unwrap();
    let alpha = resolve_voltages(&file, &base, &group).unwrap();
    let report = match verify_cover(&base, &group, &irreps, &alpha, &CoverOptions::default()) {
        Ok(r) => r,
        Err(e) => {
            t.fail(format!("{g} + {vlt}: {e}"));
            return None;
        }
    };
    if report.mode != mode {
        t.fail(format!("{g} + {vlt}: ran on the {:?} path", report.mode));
    }
    for (name, e) in &report.errors {
        t.fail(format!("{g} + {vlt}: {name} not evaluated: {e}"));
    }
    let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    let expected = ["t14", "t15", "t16.v1", "t16.v2", "t16.v3", "c2", "c3"];
    for want in expected {
        if !names.contains(&want) {
            t.fail(format!("{g} + {vlt}: missing {want}"));
        }
    }
    for c in &report.checks {
        t.count += 1;
        if !c.pass {
            t.failures.push(format!("{g} + {vlt}: {c}"));
        }
    }
    Some(report)
}

fn covering_exact(t: &mut Tally) {
    if let Some(r) = run_cover(t, "k3.wgr", "k3_z2.vlt", PathMode::Exact) {
        let c6 = parse_graph("6 6\n1 2 1\n2 3 1\n3 4 1\n4 5 1\n5 6 1\n1 6 1").unwrap();
        if r.derived.degrees() != c6.degrees() || r.derived.m() != 6 {
            t.fail("K3 + Z2 lift is not a 6-cycle");
        }
        match &r.kappa.formula {
            FormulaValue::Exact(v) => t.eq("C6 kappa formula", v, &rat(6)),
            other => t.fail(format!("C6 kappa formula not exact: {other}")),
        }
        t.eq("C6 kappa direct", &r.kappa.direct, &rat(6));
    }
    run_cover(t, "k4.wgr", "k4_z2.vlt", PathMode::Exact);
    run_cover(t, "k4.wgr", "k4_s3.vlt", PathMode::Exact);
}

fn covering_numeric(t: &mut Tally) {
    run_cover(t, "k3.wgr", "k3_z3.vlt", PathMode::Numeric);
    run_cover(t, "k4.wgr", "k4_z4.vlt", PathMode::Numeric);
}

fn spectral(t: &mut Tally) {
    for name in ["p3.wgr", "k3.wgr", "k4.wgr"] {
        let (exact, numeric) = spectral_kf_check(&graph(name)).unwrap();
        let e = zetakirch::algebra::rational::to_f64(&exact);
        t.count += 1;
        if (e - numeric).abs() > 1e-9 * e.abs().max(1.0) {
            t.failures.push(format!("{name}: exact {exact} vs spectral {numeric:e}"));
        }
    }
}

fn cli(args: &[&str]) -> i32 {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["zetakirch"];
    full.extend_from_slice(args);
    zetakirch::cli::run(full, &mut out, &mut err)
}

fn negative_controls(t: &mut Tally) {
    let k4 = data("k4.wgr");
    let k4 = k4.to_str().unwrap();
    for suite in ["t10", "t11t12", "t13", "hn", "c1", "all"] {
        let base = ["verify", "--graph", k4, "--suite", suite];
        let clean = cli(&base);
        if clean != 0 {
            t.fail(format!("suite {suite} unperturbed exited {clean}"));
        }
        let mut args = base.to_vec();
        args.extend(["--perturb-rhs", "1"]);
        let code = cli(&args);
        t.count += 1;
        if code != 1 {
            t.failures.push(format!("suite {suite} perturbed exited {code}"));
        }
    }
    // one check at a time, one coefficient each
    let single = [
        "t10", "t11.dt", "t11.du", "t12.dtt", "t12.dtu", "t12.duu", "t5", "t6", "t3", "t4", "t8.dt", "t8.du",
        "t9.dtt", "t9.dtu", "t9.duu", "t13", "hn", "c1.dt", "c1.du",
    ];
    for name in single {
        let code = cli(&["verify", "--graph", k4, "--perturb-rhs", "1", "--perturb-target", name]);
        t.count += 1;
        if code != 1 {
            t.failures.push(format!("perturbing {name} exited {code}"));
        }
    }
    let code = cli(&["verify", "--suite", "random", "--cases", "3", "--seed", "7", "--perturb-rhs", "1"]);
    t.count += 1;
    if code != 1 {
        t.failures.push(format!("random suite perturbed exited {code}"));
    }
    for (g, v, names) in [
        ("k3.wgr", "k3_z2.vlt", &["t14", "t15", "t16.v1", "t16.v2", "t16.v3", "c2", "c3"][..]),
        ("k3.wgr", "k3_z3.vlt", &["t14", "t15", "t16.v1", "t16.v2", "t16.v3", "c2", "c3"][..]),
    ] {
        let (g, v) = (data(g), data(v));
        let base = ["cover", "--graph", g.to_str().unwrap(), "--voltage", v.to_str().unwrap()];
        if cli(&base) != 0 {
            t.fail(format!("cover {} unperturbed failed", v.display()));
        }
        for name in names {
            let mut args = base.to_vec();
            args.extend(["--perturb-rhs", "1", "--perturb-target", name]);
            let code = cli(&args);
            t.count += 1;
            if code != 1 {
                t.failures.push(format!("cover {} perturbing {name} exited {code}", v.display()));
            }
        }
    }
}

type Criterion = (&'static str, fn(&mut Tally));

fn main() {
    let criteria: [Criterion; 9] = [
        ("golden fixtures", golden_fixtures),
        ("edge form equals vertex form on 50 random graphs", edge_vertex_random),
        ("curve derivative identities on 50 random graphs", curve_random),
        ("weighted Kirchhoff limit on 25 random graphs", kirchhoff_limit_random),
        ("matrix-tree against enumeration on 100 random graphs", matrix_tree_random),
        ("covering identities, exact path", covering_exact),
        ("covering identities, numeric path", covering_numeric),
        ("spectral Kirchhoff cross-check", spectral),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (k, (label, run)) in criteria.iter().enumerate() {
        let mut t = Tally::default();
        let start = Instant::now();
        run(&mut t);
        let secs = start.elapsed().as_secs_f64();
        if t.failures.is_empty() {
            println!("criterion {}: PASS {label} ({} checks, {secs:.2}s)", k + 1, t.count);
        } else {
            failed += 1;
            println!("criterion {}: FAIL {label} ({} of {} checks, {secs:.2}s)", k + 1, t.failures.len(), t.count);
            for f in &t.failures {
                println!("    {f}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
