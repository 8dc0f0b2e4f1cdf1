//! C ABI over the zetakirch library.
//!
//! Graphs live behind an opaque `ZkGraph` handle. Every call returns a
//! `ZkStatus`; on failure `zk_last_error` describes the problem. Strings
//! handed out by this library must be released with `zk_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::{json, Value};
use zetakirch::cli::{check_json, laurent_json, rational_json, results_json};
use zetakirch::covering::{builtin_group, parse_voltage_file, resolve_voltages, verify_cover, CoverOptions};
use zetakirch::error::Error;
use zetakirch::graph::{parse_graph, WeightedGraph};
use zetakirch::spanning::kirchhoff_report;
use zetakirch::suites::{run_all, run_on_graph, Outcome, Suite, SuiteResult};

/// Result of every call. Values 1 to 5 match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZkStatus {
    Ok = 0,
    IdentityFailure = 1,
    Invalid = 2,
    Singular = 3,
    Precondition = 4,
    Covering = 5,
    NullArgument = 6,
    Internal = 7,
}

/// Opaque weighted graph.
pub struct ZkGraph {
    inner: WeightedGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> ZkStatus {
    match e.exit_code() {
        1 => ZkStatus::IdentityFailure,
        3 => ZkStatus::Singular,
        4 => ZkStatus::Precondition,
        5 => ZkStatus::Covering,
        _ => ZkStatus::Invalid,
    }
}

fn fail(e: impl Into<Error>) -> ZkStatus {
    let e = e.into();
    set_error(e.to_string());
    status_of(&e)
}

/// Runs `body`, converting panics into `Internal`.
fn guard(body: impl FnOnce() -> ZkStatus) -> ZkStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| {
        set_error("internal panic");
        ZkStatus::Internal
    })
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, ZkStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(ZkStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        ZkStatus::Invalid
    })
}

unsafe fn graph_ref<'a>(g: *const ZkGraph) -> Result<&'a WeightedGraph, ZkStatus> {
    if g.is_null() {
        set_error("graph handle is null");
        return Err(ZkStatus::NullArgument);
    }
    Ok(&(*g).inner)
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> ZkStatus {
    match CString::new(text) {
        Ok(s) => {
            *out = s.into_raw();
            ZkStatus::Ok
        }
        Err(_) => {
            set_error("output contains a nul byte");
            ZkStatus::Internal
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn zk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn zk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `.wgr` text into a new graph handle.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn zk_graph_parse(text: *const c_char, out: *mut *mut ZkGraph) -> ZkStatus {
    guard(|| {
        if out.is_null() {
            set_error("output pointer is null");
            return ZkStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let text = try_ffi!(read_str(text, "graph text"));
        match parse_graph(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(ZkGraph { inner: g }));
                ZkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a graph handle. NULL is ignored.
///
/// # Safety
/// `g` must come from `zk_graph_parse` and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn zk_graph_free(g: *mut ZkGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Writes the vertex and edge counts.
///
/// # Safety
/// `g` must be a live handle; `n` and `m` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zk_graph_size(g: *const ZkGraph, n: *mut usize, m: *mut usize) -> ZkStatus {
    let g = try_ffi!(graph_ref(g));
    if n.is_null() || m.is_null() {
        set_error("output pointer is null");
        return ZkStatus::NullArgument;
    }
    *n = g.n();
    *m = g.m();
    ZkStatus::Ok
}

/// Weighted complexity, resistance distances and the four Kirchhoff indices
/// as a JSON object with rationals written as strings.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn zk_kirchhoff_json(g: *const ZkGraph, out: *mut *mut c_char) -> ZkStatus {
    guard(|| {
        let g = try_ffi!(graph_ref(g));
        if out.is_null() {
            set_error("output pointer is null");
            return ZkStatus::NullArgument;
        }
        let r = match kirchhoff_report(g) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        let mut pairs = Vec::new();
        for p in 0..g.n() {
            for q in p + 1..g.n() {
                pairs.push(json!({"p": p + 1, "q": q + 1, "r": rational_json(r.resistance(p, q))}));
            }
        }
        let v = json!({
            "kappa_w": rational_json(&r.kappa_w),
            "resistances": pairs,
            "kf": rational_json(&r.kf),
            "kf_star": rational_json(&r.kf_star),
            "kf_plus": rational_json(&r.kf_plus),
            "kf_z": rational_json(&r.kf_z),
            "kf_z_poly": laurent_json(&r.kf_z_poly),
        });
        write_string(out, pretty(&v))
    })
}

/// Runs a verification suite (`t10`, `t11t12`, `t13`, `hn`, `c1` or `all`)
/// and writes a JSON report. Returns `IdentityFailure` when any check fails;
/// the report is written in that case too.
///
/// # Safety
/// `g` must be a live handle, `suite` a nul-terminated string and `out`
/// a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn zk_verify_json(
    g: *const ZkGraph,
    suite: *const c_char,
    out: *mut *mut c_char,
) -> ZkStatus {
    guard(|| {
        let g = try_ffi!(graph_ref(g));
        let name = try_ffi!(read_str(suite, "suite name"));
        if out.is_null() {
            set_error("output pointer is null");
            return ZkStatus::NullArgument;
        }
        let suite: Suite = match name.parse() {
            Ok(Suite::Random) => return fail(Error::Usage("the random suite does not take a graph".into())),
            Ok(s) => s,
            Err(e) => return fail(Error::Usage(e)),
        };
        let results = match suite {
            Suite::All => run_all(g, None),
            s => run_on_graph(g, s, None).map(|c| {
                vec![SuiteResult { label: s.name().into(), outcome: Outcome::Checks(c) }]
            }),
        };
        let results = match results {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        let failed = results.iter().filter(|r| !r.passed()).count();
        let v = json!({"suite": suite.name(), "results": results_json(&results), "failed": failed});
        let status = write_string(out, pretty(&v));
        if status == ZkStatus::Ok && failed > 0 {
            set_error(format!("{failed} suite(s) failed"));
            return ZkStatus::IdentityFailure;
        }
        status
    })
}

/// Builds the regular cover described by `.vlt` text, runs the covering
/// identities and writes a JSON report including the derived `.wgr` text.
///
/// # Safety
/// `g` must be a live handle, `voltage` a nul-terminated string and `out`
/// a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn zk_cover_json(
    g: *const ZkGraph,
    voltage: *const c_char,
    out: *mut *mut c_char,
) -> ZkStatus {
    guard(|| {
        let g = try_ffi!(graph_ref(g));
        let text = try_ffi!(read_str(voltage, "voltage text"));
        if out.is_null() {
            set_error("output pointer is null");
            return ZkStatus::NullArgument;
        }
        let report = (|| {
            let file = parse_voltage_file(text)?;
            let (group, irreps) = builtin_group(&file.group)?;
            let alpha = resolve_voltages(&file, g, &group)?;
            verify_cover(g, &group, &irreps, &alpha, &CoverOptions::default())
        })();
        let report = match report {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        let v = json!({
            "derived_wgr": report.derived.to_wgr(),
            "kappa_formula": report.kappa.formula.to_string(),
            "kappa_direct": rational_json(&report.kappa.direct),
            "checks": report.checks.iter().map(check_json).collect::<Vec<_>>(),
            "errors": report.errors.iter().map(|(n, e)| json!({"name": n, "error": e.to_string()})).collect::<Vec<_>>(),
        });
        let status = write_string(out, pretty(&v));
        if status != ZkStatus::Ok {
            return status;
        }
        if let Some(c) = report.checks.iter().find(|c| !c.pass) {
            set_error(c.to_string());
            return ZkStatus::IdentityFailure;
        }
        match report.errors.into_iter().next() {
            Some((_, e)) => fail(e),
            None => ZkStatus::Ok,
        }
    })
}
