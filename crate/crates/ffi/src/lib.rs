//! C ABI for `girthlab`.
//!
//! Digraphs are opaque `GlDigraph` handles owned by the caller and released
//! with `gl_digraph_free`. Every fallible call returns a `GlStatus`; on a
//! non-OK status `gl_last_error` describes the failure for the calling
//! thread. Strings returned through out-parameters are released with
//! `gl_string_free`. No function unwinds across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use girthlab::constants::{self, ConstantsError};
use girthlab::cycles::{find_short_cycle_constructive, shortest_cycle, CycleWitness, FinderError};
use girthlab::fas::{beta_exact, FasError};
use girthlab::graph::{self, Digraph, GraphError};
use girthlab::stats::compute_edge_stats;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    GraphError = 4,
    NotFound = 5,
    Precondition = 6,
    TooLarge = 7,
    BufferTooSmall = 8,
    Numeric = 9,
    Panic = 10,
}

/// Opaque digraph handle.
pub struct GlDigraph {
    inner: Digraph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let mut msg = msg.into();
    msg.retain(|ch| ch != '\0');
    let c = CString::new(msg).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: GlStatus, msg: impl Into<String>) -> GlStatus {
    set_error(msg);
    status
}

fn graph_status(e: &GraphError) -> GlStatus {
    match e {
        GraphError::Parse { .. } => GlStatus::ParseError,
        _ => GlStatus::GraphError,
    }
}

fn constants_status(e: &ConstantsError) -> GlStatus {
    match e {
        ConstantsError::OutOfRange { .. }
        | ConstantsError::InvalidAlpha(_)
        | ConstantsError::LambertDomain(_) => GlStatus::InvalidArgument,
        ConstantsError::DegenerateDenominator | ConstantsError::GridTooCoarse { .. } => {
            GlStatus::Numeric
        }
    }
}

/// Runs `f`, turning a panic into `GlStatus::Panic`.
fn guard(f: impl FnOnce() -> GlStatus) -> GlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == GlStatus::Ok {
                set_error("");
            }
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(GlStatus::Panic, msg)
        }
    }
}

unsafe fn graph_ref<'a>(d: *const GlDigraph) -> Option<&'a Digraph> {
    d.as_ref().map(|h| &h.inner)
}

unsafe fn emit_graph(result: Result<Digraph, GraphError>, out: *mut *mut GlDigraph) -> GlStatus {
    match result {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(GlDigraph { inner }));
            GlStatus::Ok
        }
        Err(e) => fail(graph_status(&e), e.to_string()),
    }
}

unsafe fn emit_string(s: String, out: *mut *mut c_char) -> GlStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            GlStatus::Ok
        }
        Err(_) => fail(GlStatus::Numeric, "string contains NUL"),
    }
}

unsafe fn emit_cycle(
    w: &CycleWitness,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> GlStatus {
    *out_len = w.len();
    if cap < w.len() {
        return fail(
            GlStatus::BufferTooSmall,
            format!("cycle needs {} slots", w.len()),
        );
    }
    if !w.is_empty() && buf.is_null() {
        return fail(GlStatus::NullPointer, "null cycle buffer");
    }
    ptr::copy_nonoverlapping(w.vertices.as_ptr(), buf, w.len());
    GlStatus::Ok
}

/// Message for the last non-OK status on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn gl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a digraph from `edge_count` pairs stored flat in `edges`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (or be null when
/// `edge_count == 0`); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_digraph_from_edges(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut GlDigraph,
) -> GlStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && edge_count > 0) {
            return fail(GlStatus::NullPointer, "null argument");
        }
        let flat = if edge_count == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let pairs = flat.chunks_exact(2).map(|p| (p[0], p[1]));
        emit_graph(Digraph::from_edge_list(n, pairs), out)
    })
}

/// Parses the edge-list text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_digraph_parse(
    text: *const c_char,
    out: *mut *mut GlDigraph,
) -> GlStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(GlStatus::NullPointer, "null argument");
        }
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return fail(GlStatus::ParseError, "input is not UTF-8");
        };
        emit_graph(graph::parse_edge_list(s), out)
    })
}

/// # Safety
/// `offsets` must point to `count` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_digraph_circulant(
    n: usize,
    offsets: *const usize,
    count: usize,
    out: *mut *mut GlDigraph,
) -> GlStatus {
    guard(|| {
        if out.is_null() || (offsets.is_null() && count > 0) {
            return fail(GlStatus::NullPointer, "null argument");
        }
        let offs = if count == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(offsets, count)
        };
        emit_graph(graph::circulant(n, offs), out)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_digraph_random_outregular(
    n: usize,
    r: usize,
    seed: u64,
    out: *mut *mut GlDigraph,
) -> GlStatus {
    guard(|| {
        if out.is_null() {
            return fail(GlStatus::NullPointer, "null argument");
        }
        emit_graph(graph::random_outregular(n, r, seed), out)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_digraph_random_mfree(
    n: usize,
    m: usize,
    density: f64,
    seed: u64,
    out: *mut *mut GlDigraph,
) -> GlStatus {
    guard(|| {
        if out.is_null() {
            return fail(GlStatus::NullPointer, "null argument");
        }
        if !(0.0..=1.0).contains(&density) {
            return fail(GlStatus::InvalidArgument, "density must lie in [0, 1]");
        }
        emit_graph(Ok(graph::random_mfree(n, m, density, seed)), out)
    })
}

/// # Safety
/// `d` must be null or a handle from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn gl_digraph_free(d: *mut GlDigraph) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gl_digraph_n(d: *const GlDigraph) -> usize {
    graph_ref(d).map_or(0, Digraph::n)
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gl_digraph_edge_count(d: *const GlDigraph) -> usize {
    graph_ref(d).map_or(0, Digraph::edge_count)
}

/// Missing edges, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gl_gamma(d: *const GlDigraph) -> usize {
    graph_ref(d).map_or(0, Digraph::gamma)
}

/// Canonical edge-list text.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_digraph_to_text(
    d: *const GlDigraph,
    out: *mut *mut c_char,
) -> GlStatus {
    guard(|| match graph_ref(d) {
        Some(g) if !out.is_null() => emit_string(graph::to_edge_list(g), out),
        _ => fail(GlStatus::NullPointer, "null argument"),
    })
}

/// `NotFound` when the digraph is acyclic.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_girth(d: *const GlDigraph, out: *mut usize) -> GlStatus {
    guard(|| {
        let (Some(g), false) = (graph_ref(d), out.is_null()) else {
            return fail(GlStatus::NullPointer, "null argument");
        };
        match girthlab::girth(g) {
            Some(k) => {
                *out = k;
                GlStatus::Ok
            }
            None => fail(GlStatus::NotFound, "digraph is acyclic"),
        }
    })
}

/// Writes a shortest cycle into `buf`; `out_len` receives its length even
/// when `cap` is too small.
///
/// # Safety
/// `d` must be a live handle, `buf` writable for `cap` values, `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_shortest_cycle(
    d: *const GlDigraph,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> GlStatus {
    guard(|| {
        let (Some(g), false) = (graph_ref(d), out_len.is_null()) else {
            return fail(GlStatus::NullPointer, "null argument");
        };
        match shortest_cycle(g) {
            Some(w) => emit_cycle(&w, buf, cap, out_len),
            None => {
                *out_len = 0;
                fail(GlStatus::NotFound, "digraph is acyclic")
            }
        }
    })
}

/// Constructive search for a cycle of length at most `m` under minimum
/// outdegree `ceil(alpha n)`.
///
/// # Safety
/// As for `gl_shortest_cycle`.
#[no_mangle]
pub unsafe extern "C" fn gl_find_short_cycle(
    d: *const GlDigraph,
    m: usize,
    alpha: f64,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> GlStatus {
    guard(|| {
        let (Some(g), false) = (graph_ref(d), out_len.is_null()) else {
            return fail(GlStatus::NullPointer, "null argument");
        };
        if m < 3 || !(alpha > 0.0 && alpha < 1.0) {
            return fail(GlStatus::InvalidArgument, "need m >= 3 and 0 < alpha < 1");
        }
        match find_short_cycle_constructive(g, m, alpha) {
            Ok(res) => emit_cycle(&res.witness, buf, cap, out_len),
            Err(e @ FinderError::HypothesisViolated { .. }) => {
                fail(GlStatus::Precondition, e.to_string())
            }
            Err(e) => fail(GlStatus::Numeric, e.to_string()),
        }
    })
}

/// Exact minimum feedback arc set size (`n <= 20`).
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_beta(d: *const GlDigraph, out: *mut usize) -> GlStatus {
    guard(|| {
        let (Some(g), false) = (graph_ref(d), out.is_null()) else {
            return fail(GlStatus::NullPointer, "null argument");
        };
        match beta_exact(g) {
            Ok(r) => {
                *out = r.beta;
                GlStatus::Ok
            }
            Err(e @ FasError::TooLarge { .. }) => fail(GlStatus::TooLarge, e.to_string()),
            Err(e) => fail(GlStatus::Precondition, e.to_string()),
        }
    })
}

/// JSON object with `edges`, `vertices` and `global` statistics.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_edge_stats_json(
    d: *const GlDigraph,
    out: *mut *mut c_char,
) -> GlStatus {
    guard(|| {
        let (Some(g), false) = (graph_ref(d), out.is_null()) else {
            return fail(GlStatus::NullPointer, "null argument");
        };
        let (stats, global) = compute_edge_stats(g);
        let value = serde_json::json!({
            "edges": stats.edges,
            "vertices": stats.vertices,
            "global": global,
        });
        emit_string(value.to_string(), out)
    })
}

fn write_f64(out: *mut f64, v: Result<f64, ConstantsError>) -> GlStatus {
    if out.is_null() {
        return fail(GlStatus::NullPointer, "null argument");
    }
    match v {
        Ok(x) => {
            // SAFETY: checked non-null; callers promise writability.
            unsafe { *out = x };
            GlStatus::Ok
        }
        Err(e) => fail(constants_status(&e), e.to_string()),
    }
}

fn require_m(m: usize) -> Result<(), ConstantsError> {
    if m < 3 {
        Err(ConstantsError::OutOfRange { m, min: 3 })
    } else {
        Ok(())
    }
}

/// Root of `(1-x)^(m-2) = 3x/(2-x)` in `(0, 1)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_alpha(m: usize, out: *mut f64) -> GlStatus {
    guard(|| write_f64(out, require_m(m).map(|_| constants::alpha(m))))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_c(m: usize, out: *mut f64) -> GlStatus {
    guard(|| write_f64(out, require_m(m).map(|_| constants::c(m))))
}

/// # Safety
/// `out_a` and `out_b` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_ab(m: usize, alpha: f64, out_a: *mut f64, out_b: *mut f64) -> GlStatus {
    guard(|| {
        if out_a.is_null() || out_b.is_null() {
            return fail(GlStatus::NullPointer, "null argument");
        }
        if let Err(e) = require_m(m) {
            return fail(constants_status(&e), e.to_string());
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return fail(GlStatus::InvalidArgument, "alpha must lie in (0, 1)");
        }
        let (a, b) = constants::ab(m, alpha);
        *out_a = a;
        *out_b = b;
        GlStatus::Ok
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_tau_star(m: usize, alpha: f64, out: *mut f64) -> GlStatus {
    guard(|| write_f64(out, constants::tau_star(m, alpha)))
}

/// `W0(2(m - 2.5)/3) / (m - 2.5)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_lambert_bound(m: usize, out: *mut f64) -> GlStatus {
    guard(|| write_f64(out, require_m(m).map(|_| constants::lambert_bound(m))))
}

/// Principal branch of the Lambert W function.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_lambert_w0(x: f64, out: *mut f64) -> GlStatus {
    guard(|| write_f64(out, constants::lambert_w0(x).map(|r| r.w)))
}

/// `*out_certified` is set on `Ok`; `grid` of 0 selects the default.
///
/// # Safety
/// `out_certified` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_certify_theorem2(
    m: usize,
    alpha: f64,
    grid: usize,
    out_certified: *mut bool,
) -> GlStatus {
    guard(|| {
        if out_certified.is_null() {
            return fail(GlStatus::NullPointer, "null argument");
        }
        let grid = if grid == 0 {
            constants::DEFAULT_GRID
        } else {
            grid
        };
        match constants::certify_theorem2_with(m, alpha, grid) {
            Ok(cert) => {
                *out_certified = cert.is_certified();
                GlStatus::Ok
            }
            Err(e) => fail(constants_status(&e), e.to_string()),
        }
    })
}

/// JSON array of per-`m` constant rows for `m_from..=m_to`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_bound_table_json(
    m_from: usize,
    m_to: usize,
    out: *mut *mut c_char,
) -> GlStatus {
    guard(|| {
        if out.is_null() {
            return fail(GlStatus::NullPointer, "null argument");
        }
        match constants::bound_table(m_from, m_to) {
            Ok(rows) => emit_string(serde_json::to_string(&rows).expect("rows serialize"), out),
            Err(e) => fail(constants_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn gl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
