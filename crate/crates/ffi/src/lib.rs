//! C ABI over `coxeter-core`.
//!
//! Graphs are opaque [`CxGraph`] handles made by [`cx_graph_parse`] or
//! [`cx_graph_figure`] and released with [`cx_graph_free`]. Every fallible
//! call returns a [`CxStatus`]; on failure the message is available from
//! [`cx_last_error_message`] on the same thread. Strings handed out by the
//! library are freed with [`cx_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use coxeter_core::cli::{parse_graph_text, report, serialize_graph};
use coxeter_core::{
    canonical_form, classify, decompose_higher_rank, find_separated_hyperbolic_pair, paper_figure, CoxeterClass,
    CoxeterGraph, Error, Figure, Tolerance,
};

/// Status codes. Values 1, 2, 3 and 5 match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CxStatus {
    Ok = 0,
    /// Malformed graph text or an invalid graph.
    ParseError = 1,
    /// Unknown name, bad tolerance, or an input the operation does not accept.
    Precondition = 2,
    /// A search bound was exceeded.
    Resource = 3,
    /// Numerical failure or internal invariant breach.
    Internal = 5,
    /// Null pointer or non-UTF-8 string.
    InvalidArgument = 6,
    /// A panic was caught at the boundary.
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CxClass {
    Spherical = 0,
    Affine = 1,
    StronglyHyperbolic = 2,
    WeaklyHyperbolic = 3,
    HigherRank = 4,
}

impl From<CoxeterClass> for CxClass {
    fn from(c: CoxeterClass) -> Self {
        match c {
            CoxeterClass::Spherical => CxClass::Spherical,
            CoxeterClass::Affine => CxClass::Affine,
            CoxeterClass::StronglyHyperbolic => CxClass::StronglyHyperbolic,
            CoxeterClass::WeaklyHyperbolic => CxClass::WeaklyHyperbolic,
            CoxeterClass::HigherRank => CxClass::HigherRank,
        }
    }
}

/// Result of [`cx_classify`]. `lambda2` is NaN when the graph has one vertex.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CxClassification {
    pub class: CxClass,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub lambda1: f64,
    pub lambda2: f64,
    pub tolerance: f64,
    pub exact: bool,
    pub approximate: bool,
}

/// Opaque graph handle.
pub struct CxGraph {
    graph: CoxeterGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CxStatus {
    match e {
        Error::Construction(_) | Error::Parse { .. } => CxStatus::ParseError,
        Error::Domain(_) | Error::Precondition(_) => CxStatus::Precondition,
        Error::Resource(_) => CxStatus::Resource,
        Error::Computation(_) | Error::InvariantBreach(_) => CxStatus::Internal,
    }
}

enum Failure {
    Core(Error),
    Argument(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CxStatus::Ok
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Argument(msg))) => {
            set_error(msg);
            CxStatus::InvalidArgument
        }
        Err(_) => {
            set_error("panic inside coxeter-core");
            CxStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::Argument(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure::Argument("string is not valid UTF-8"))
}

unsafe fn handle<'a>(g: *const CxGraph) -> Result<&'a CoxeterGraph, Failure> {
    g.as_ref().map(|h| &h.graph).ok_or(Failure::Argument("graph handle is null"))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::Argument("output contains NUL"))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put_graph(out: *mut *mut CxGraph, graph: CoxeterGraph) {
    *out = Box::into_raw(Box::new(CxGraph { graph }));
}

/// Parses the graph text format. On success `*out` owns a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cx_graph_parse(text_ptr: *const c_char, out: *mut *mut CxGraph) -> CxStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Argument("out pointer is null"));
        }
        let t = text(text_ptr, "graph text is null")?;
        put_graph(out, parse_graph_text(t)?.graph);
        Ok(())
    })
}

/// Builds a fixture graph: `fig1`, `fig2` or `fig3_example`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cx_graph_figure(name: *const c_char, out: *mut *mut CxGraph) -> CxStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Argument("out pointer is null"));
        }
        let figure: Figure = text(name, "figure name is null")?.parse()?;
        put_graph(out, paper_figure(figure));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `graph` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cx_graph_free(graph: *mut CxGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_graph_vertex_count(graph: *const CxGraph) -> usize {
    graph.as_ref().map_or(0, |h| h.graph.len())
}

/// Serializes the graph in the text format.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cx_graph_serialize(graph: *const CxGraph, out: *mut *mut c_char) -> CxStatus {
    guard(|| {
        let g = handle(graph)?;
        if out.is_null() {
            return Err(Failure::Argument("out pointer is null"));
        }
        put_string(out, serialize_graph(g))
    })
}

/// Canonical form as lowercase hex.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cx_canonical_form_hex(graph: *const CxGraph, out: *mut *mut c_char) -> CxStatus {
    guard(|| {
        let g = handle(graph)?;
        if out.is_null() {
            return Err(Failure::Argument("out pointer is null"));
        }
        put_string(out, canonical_form(g).to_hex())
    })
}

/// Classifies the graph. `tolerance <= 0` selects the default `1e-8 * n`;
/// a positive value is an absolute band around 2.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cx_classify(graph: *const CxGraph, tolerance: f64, out: *mut CxClassification) -> CxStatus {
    guard(|| {
        let g = handle(graph)?;
        if out.is_null() {
            return Err(Failure::Argument("out pointer is null"));
        }
        let tol = if tolerance.is_nan() {
            return Err(Failure::Argument("tolerance is NaN"));
        } else if tolerance <= 0.0 {
            Tolerance::default()
        } else {
            Tolerance::Absolute(tolerance)
        };
        let c = classify(g, tol)?;
        *out = CxClassification {
            class: c.class.into(),
            p: c.signature.p,
            q: c.signature.q,
            r: c.signature.r,
            lambda1: c.lambda1,
            lambda2: c.lambda2.unwrap_or(f64::NAN),
            tolerance: c.tolerance,
            exact: c.exact,
            approximate: c.approximate,
        };
        Ok(())
    })
}

/// Decomposes a connected higher-rank graph and writes the JSON report
/// (same document as `coxeter decompose --json`).
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cx_decompose_json(graph: *const CxGraph, out: *mut *mut c_char) -> CxStatus {
    guard(|| {
        let g = handle(graph)?;
        if out.is_null() {
            return Err(Failure::Argument("out pointer is null"));
        }
        let c = classify(g, Tolerance::default())?;
        let cert = decompose_higher_rank(g)?;
        let payload = report::Certificate::Decomposition(report::decomposition_report(g, &cert));
        put_string(out, report::to_json(&report::report("decompose", g, &c, Some(payload))))
    })
}

/// Searches for a separated hyperbolic pair on graphs with at most `max_n`
/// vertices and writes the JSON report. `certificate` is null when none
/// exists.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cx_search_separated_json(graph: *const CxGraph, max_n: usize, out: *mut *mut c_char) -> CxStatus {
    guard(|| {
        let g = handle(graph)?;
        if out.is_null() {
            return Err(Failure::Argument("out pointer is null"));
        }
        let c = classify(g, Tolerance::default())?;
        let found = find_separated_hyperbolic_pair(g, max_n)?;
        let payload = found.map(|cert| report::Certificate::Separation(report::separation_report(g, &cert)));
        put_string(out, report::to_json(&report::report("search-separated", g, &c, payload)))
    })
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn cx_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
