//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::rational::parse_rational;
use crate::algebra::{BiPoly, LaurentPoly, Rational};
use crate::check::{Check, Perturbation};
use crate::covering::{
    builtin_group, parse_voltage_file, resolve_voltages, verify_cover, CoverOptions, CoverReport,
};
use crate::error::Error;
use crate::graph::{parse_graph, WeightedGraph};
use crate::spanning::kirchhoff_report;
use crate::suites::{run_all, run_on_graph, run_random, Outcome, Suite, SuiteResult};
use crate::zeta::{f_w_poly, zeta_edge_reciprocal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Info,
    Kirchhoff,
    Zeta,
    Verify,
    Cover,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Edge,
    Vertex,
}

/// Exact zeta determinants, Kirchhoff indices and covering identities for weighted graphs.
#[derive(Debug, Parser)]
#[command(name = "zetakirch", version)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Graph file (.wgr)
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Voltage file (.vlt)
    #[arg(long)]
    pub voltage: Option<PathBuf>,
    /// Group token; must match the voltage file when both are given
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long, value_enum, default_value = "vertex")]
    pub form: Form,
    /// t10, t11t12, t13, hn, c1, random or all
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    pub cases: u64,
    #[arg(long)]
    pub json: bool,
    /// Where `cover` writes the derived graph
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Tolerance for floating-point covering checks
    #[arg(long, default_value_t = crate::algebra::complex::DEFAULT_TOL)]
    pub tol: f64,
    /// Adds this rational to one right-hand-side coefficient of every targeted check
    #[arg(long, hide = true)]
    pub perturb_rhs: Option<String>,
    #[arg(long, hide = true)]
    pub perturb_target: Option<String>,
    #[arg(long, hide = true, default_value_t = 0, allow_negative_numbers = true)]
    pub perturb_exponent: i64,
}

impl RunConfig {
    fn perturbation(&self) -> Result<Option<Perturbation>, Error> {
        let Some(text) = &self.perturb_rhs else { return Ok(None) };
        let amount = parse_rational(text).ok_or_else(|| Error::Usage(format!("invalid rational `{text}`")))?;
        Ok(Some(Perturbation {
            target: self.perturb_target.clone(),
            exponent: self.perturb_exponent,
            amount,
        }))
    }

    fn graph(&self) -> Result<WeightedGraph, Error> {
        let path = self.graph.as_ref().ok_or_else(|| Error::Usage("--graph is required".into()))?;
        let text = read(path)?;
        parse_graph(&text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn bipoly_json(p: &BiPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(&(du, dt), c)| json!({"du": du, "dt": dt, "coeff": c.to_string()}))
            .collect(),
    )
}

pub fn laurent_json(p: &LaurentPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(&dt, c)| json!({"du": 0, "dt": dt, "coeff": c.to_string()}))
            .collect(),
    )
}

pub fn check_json(c: &Check) -> Value {
    json!({"name": c.name, "pass": c.pass, "lhs": c.lhs, "rhs": c.rhs, "detail": c.detail})
}

fn bipoly_lines(p: &BiPoly) -> String {
    p.terms().map(|(&(du, dt), c)| format!("{du} {dt} {c}\n")).collect()
}

fn cmd_info(cfg: &RunConfig) -> Result<(i32, String, Value), Error> {
    let g = cfg.graph()?;
    let d = g.degrees();
    let dw = g.weighted_degrees();
    let mut text = format!(
        "n={} m={} w(G)={} connected={}\n",
        g.n(),
        g.m(),
        g.total_weight(),
        if g.is_connected() { "yes" } else { "no" }
    );
    text.push_str("vertex degree weighted_degree\n");
    for v in 0..g.n() {
        text.push_str(&format!("{} {} {}\n", v + 1, d[v], dw[v]));
    }
    text.push_str("edge i j weight\n");
    for (k, e) in g.edges().iter().enumerate() {
        text.push_str(&format!("{} {} {} {}\n", k + 1, e.i + 1, e.j + 1, e.weight));
    }
    let json = json!({
        "n": g.n(),
        "m": g.m(),
        "total_weight": rational_json(&g.total_weight()),
        "connected": g.is_connected(),
        "vertices": (0..g.n()).map(|v| json!({"vertex": v + 1, "degree": d[v], "weighted_degree": rational_json(&dw[v])})).collect::<Vec<_>>(),
        "edges": g.edges().iter().map(|e| json!({"i": e.i + 1, "j": e.j + 1, "weight": rational_json(&e.weight)})).collect::<Vec<_>>(),
    });
    Ok((0, text, json))
}

fn cmd_kirchhoff(cfg: &RunConfig) -> Result<(i32, String, Value), Error> {
    let g = cfg.graph()?;
    let r = kirchhoff_report(&g)?;
    let n = g.n();
    let mut text = format!("kappa_w={}\nresistance p q r_pq\n", r.kappa_w);
    let mut pairs = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            text.push_str(&format!("{} {} {}\n", p + 1, q + 1, r.resistance(p, q)));
            pairs.push(json!({"p": p + 1, "q": q + 1, "r": rational_json(r.resistance(p, q))}));
        }
    }
    text.push_str(&format!(
        "Kf_w={}\nKf*_w={}\nKf+_w={}\nKf^z_w={}\n",
        r.kf, r.kf_star, r.kf_plus, r.kf_z
    ));
    let coeffs: Vec<String> = (0..3).map(|e| r.kf_z_poly.coeff(e).to_string()).collect();
    text.push_str(&format!("Kf^z_w(t) coefficients t^0 t^1 t^2: {}\n", coeffs.join(" ")));
    let json = json!({
        "kappa_w": rational_json(&r.kappa_w),
        "resistances": pairs,
        "kf": rational_json(&r.kf),
        "kf_star": rational_json(&r.kf_star),
        "kf_plus": rational_json(&r.kf_plus),
        "kf_z": rational_json(&r.kf_z),
        "kf_z_poly": laurent_json(&r.kf_z_poly),
    });
    Ok((0, text, json))
}

fn cmd_zeta(cfg: &RunConfig) -> Result<(i32, String, Value), Error> {
    let g = cfg.graph()?;
    let (form, exponent, core) = match cfg.form {
        Form::Vertex => ("vertex", g.m() as i64 - g.n() as i64, f_w_poly(&g)?),
        Form::Edge => ("edge", 0, zeta_edge_reciprocal(&g)?),
    };
    let text = format!(
        "form={form} prefactor_exponent={exponent}\nreciprocal = (1 - (1-u)^2 t^2)^{exponent} * core\ncore terms (du dt coeff):\n{}",
        bipoly_lines(&core)
    );
    let json = json!({"form": form, "prefactor_exponent": exponent, "core": bipoly_json(&core)});
    Ok((0, text, json))
}

fn results_text(results: &[SuiteResult]) -> String {
    let mut text = String::new();
    for r in results {
        match &r.outcome {
            Outcome::Checks(checks) => {
                text.push_str(&format!("[{}] {}\n", r.label, if r.passed() { "PASS" } else { "FAIL" }));
                for c in checks {
                    text.push_str(&format!("  {c}\n"));
                }
            }
            Outcome::Skipped(why) => text.push_str(&format!("[{}] SKIP ({why})\n", r.label)),
        }
    }
    text
}

pub fn results_json(results: &[SuiteResult]) -> Value {
    Value::Array(
        results
            .iter()
            .map(|r| match &r.outcome {
                Outcome::Checks(c) => json!({"label": r.label, "pass": r.passed(), "checks": c.iter().map(check_json).collect::<Vec<_>>()}),
                Outcome::Skipped(why) => json!({"label": r.label, "skipped": why}),
            })
            .collect(),
    )
}

fn cmd_verify(cfg: &RunConfig) -> Result<(i32, String, Value), Error> {
    let suite: Suite = cfg.suite.parse().map_err(Error::Usage)?;
    let perturb = cfg.perturbation()?;
    let p = perturb.as_ref();
    let results = match suite {
        Suite::Random => run_random(cfg.seed, cfg.cases as usize, p)?,
        Suite::All => run_all(&cfg.graph()?, p)?,
        s => {
            let g = cfg.graph()?;
            vec![SuiteResult { label: s.name().into(), outcome: Outcome::Checks(run_on_graph(&g, s, p)?) }]
        }
    };
    let failed = results.iter().filter(|r| !r.passed()).count();
    let skipped = results.iter().filter(|r| matches!(r.outcome, Outcome::Skipped(_))).count();
    let mut text = results_text(&results);
    text.push_str(&format!(
        "summary: {} passed, {failed} failed, {skipped} skipped\n",
        results.len() - failed - skipped
    ));
    let json = json!({"suite": suite.name(), "results": results_json(&results), "failed": failed, "skipped": skipped});
    Ok((if failed > 0 { 1 } else { 0 }, text, json))
}

fn cmd_cover(cfg: &RunConfig) -> Result<(i32, String, Value), Error> {
    let g = cfg.graph()?;
    let path = cfg.voltage.as_ref().ok_or_else(|| Error::Usage("--voltage is required".into()))?;
    let file = parse_voltage_file(&read(path)?)?;
    if let Some(tok) = &cfg.group {
        if tok != &file.group {
            return Err(Error::Usage(format!(
                "--group {tok} does not match the voltage file's group {}",
                file.group
            )));
        }
    }
    let (group, irreps) = builtin_group(&file.group)?;
    let alpha = resolve_voltages(&file, &g, &group)?;
    let opts = CoverOptions {
        tol: cfg.tol,
        seed: cfg.seed,
        perturb: cfg.perturbation()?,
        ..CoverOptions::default()
    };
    let report = verify_cover(&g, &group, &irreps, &alpha, &opts)?;
    let wgr = report.derived.to_wgr();
    if let Some(out) = &cfg.out {
        fs::write(out, &wgr).map_err(|e| Error::Usage(format!("{}: {e}", out.display())))?;
    }
    Ok(cover_output(cfg, &group, &report, wgr))
}

fn cover_output(
    cfg: &RunConfig,
    group: &crate::covering::FiniteGroup,
    report: &CoverReport,
    wgr: String,
) -> (i32, String, Value) {
    let path = match report.mode {
        crate::covering::PathMode::Exact => "exact",
        crate::covering::PathMode::Numeric => "numeric",
    };
    let mut text = format!(
        "group={} order={} path={path}\nderived n={} m={}\n",
        group.name(),
        group.order(),
        report.derived.n(),
        report.derived.m()
    );
    match &cfg.out {
        Some(p) => text.push_str(&format!("derived graph written to {}\n", p.display())),
        None => text.push_str(&wgr),
    }
    text.push_str(&format!(
        "kappa formula={} direct={}\n",
        report.kappa.formula, report.kappa.direct
    ));
    for c in &report.checks {
        text.push_str(&format!("{c}\n"));
    }
    for (name, e) in &report.errors {
        text.push_str(&format!("ERROR {name} ({e})\n"));
    }
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    let code = if failed > 0 {
        1
    } else if let Some((_, e)) = report.errors.first() {
        Error::Covering(e.clone()).exit_code()
    } else {
        0
    };
    let json = json!({
        "group": group.name(),
        "order": group.order(),
        "path": path,
        "derived_wgr": wgr,
        "kappa_formula": report.kappa.formula.to_string(),
        "kappa_direct": rational_json(&report.kappa.direct),
        "checks": report.checks.iter().map(check_json).collect::<Vec<_>>(),
        "errors": report.errors.iter().map(|(n, e)| json!({"name": n, "error": e.to_string()})).collect::<Vec<_>>(),
    });
    (code, text, json)
}

/// Parses arguments, runs the command and writes the report; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(stdout, "{e}");
            } else {
                let _ = write!(stderr, "{e}");
            }
            return code;
        }
    };
    if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
        let _ = writeln!(stderr, "error: --tol must be a positive number");
        return 2;
    }
    let result = match cfg.command {
        Command::Info => cmd_info(&cfg),
        Command::Kirchhoff => cmd_kirchhoff(&cfg),
        Command::Zeta => cmd_zeta(&cfg),
        Command::Verify => cmd_verify(&cfg),
        Command::Cover => cmd_cover(&cfg),
    };
    match result {
        Ok((code, text, json)) => {
            let body = if cfg.json {
                serde_json::to_string_pretty(&json).expect("serializable") + "\n"
            } else {
                text
            };
            let _ = stdout.write_all(body.as_bytes());
            code
        }
        Err(e) => {
            let code = e.exit_code();
            if cfg.json {
                let v = json!({"error": e.to_string(), "exit_code": code});
                let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            let _ = writeln!(stderr, "error: {e}");
            code
        }
    }
}
