//! C ABI for `dbwalk`.
//!
//! Sequences and graphs cross the boundary as opaque handles that the
//! caller releases with the matching `*_free` function. Every fallible
//! call returns a [`DbwStatus`]; on failure `dbw_last_error_message`
//! describes the problem. Strings returned through `out` parameters are
//! owned by the caller and released with `dbw_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dbwalk::analysis::{self, Reason, Verdict};
use dbwalk::watchman;
use dbwalk::{
    build_de_bruijn_graph, generated_subdigraph, parse_sequence, CyclicSequence, Digraph, Error,
    Generator, Limits,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DbwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Bad input or violated precondition.
    Domain = 3,
    /// A configured size cap would be exceeded.
    Resource = 4,
    /// The graph has no closed dominating walk.
    Infeasible = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DbwGenerator {
    Fkm = 0,
    Greedy = 1,
    Eulerian = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DbwVerdict {
    ProvablyNotWatchman = 0,
    ProvablyWatchman = 1,
    Undetermined = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DbwReason {
    ConstantRun = 0,
    DoubledSequence = 1,
    DistinctWindows = 2,
    None = 3,
}

/// Summary of an exact solve; the witness is available as JSON.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DbwSolveSummary {
    pub optimum: usize,
    pub explored_states: u64,
}

/// Opaque cyclic sequence.
pub struct DbwSequence(CyclicSequence);

/// Opaque digraph.
pub struct DbwGraph(Digraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

struct Failure {
    status: DbwStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Infeasible => DbwStatus::Infeasible,
            ref e if e.is_resource() => DbwStatus::Resource,
            _ => DbwStatus::Domain,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn null(what: &str) -> Failure {
    Failure {
        status: DbwStatus::NullPointer,
        message: format!("{what} is null"),
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> DbwStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => DbwStatus::Ok,
        Ok(Err(f)) => {
            set_last_error(f.message);
            f.status
        }
        Err(_) => {
            set_last_error("internal panic".to_string());
            DbwStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure {
        status: DbwStatus::InvalidUtf8,
        message: format!("{what} is not valid UTF-8"),
    })
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let c = CString::new(text).map_err(|_| Failure {
        status: DbwStatus::Domain,
        message: "output contains a nul byte".into(),
    })?;
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(c.into_raw());
    Ok(())
}

fn limits() -> Result<Limits, Failure> {
    Ok(Limits::from_env()?)
}

/// Message for the most recent failure on this thread, or null. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dbw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn dbw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `text` must be a valid nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbw_sequence_parse(
    text: *const c_char,
    alphabet: u32,
    out: *mut *mut DbwSequence,
) -> DbwStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let seq = parse_sequence(text, alphabet as usize)?;
        write_out(out, Box::into_raw(Box::new(DbwSequence(seq))))
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbw_sequence_generate(
    alphabet: u32,
    order: u32,
    generator: DbwGenerator,
    out: *mut *mut DbwSequence,
) -> DbwStatus {
    guard(|| {
        let generator = match generator {
            DbwGenerator::Fkm => Generator::Fkm,
            DbwGenerator::Greedy => Generator::Greedy,
            DbwGenerator::Eulerian => Generator::Eulerian,
        };
        let seq = generator.generate(alphabet as usize, order as usize, &limits()?)?;
        write_out(out, Box::into_raw(Box::new(DbwSequence(seq))))
    })
}

/// # Safety
/// `seq` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dbw_sequence_free(seq: *mut DbwSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Symbol count; 0 for a null handle.
///
/// # Safety
/// `seq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dbw_sequence_len(seq: *const DbwSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbw_sequence_to_string(
    seq: *const DbwSequence,
    out: *mut *mut c_char,
) -> DbwStatus {
    guard(|| {
        let seq = borrow(seq, "seq")?;
        write_string(out, seq.0.to_string())
    })
}

/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbw_sequence_is_de_bruijn(
    seq: *const DbwSequence,
    order: u32,
    out: *mut bool,
) -> DbwStatus {
    guard(|| {
        let seq = borrow(seq, "seq")?;
        write_out(out, seq.0.is_de_bruijn_sequence(order as usize))
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbw_graph_de_bruijn(
    alphabet: u32,
    order: u32,
    out: *mut *mut DbwGraph,
) -> DbwStatus {
    guard(|| {
        let g = build_de_bruijn_graph(alphabet as usize, order as usize, &limits()?)?;
        write_out(out, Box::into_raw(Box::new(DbwGraph(g))))
    })
}

/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbw_graph_generated(
    seq: *const DbwSequence,
    order: u32,
    out: *mut *mut DbwGraph,
) -> DbwStatus {
    guard(|| {
        let seq = borrow(seq, "seq")?;
        let g = generated_subdigraph(&seq.0, order as usize)?;
        write_out(out, Box::into_raw(Box::new(DbwGraph(g))))
    })
}

/// Parses the graph JSON format.
///
/// # Safety
/// `json` must be a valid nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbw_graph_from_json(
    json: *const c_char,
    out: *mut *mut DbwGraph,
) -> DbwStatus {
    guard(|| {
        let json = read_str(json, "json")?;
        let g = Digraph::from_json(json)?;
        write_out(out, Box::into_raw(Box::new(DbwGraph(g))))
    })
}

/// # Safety
/// `graph` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dbw_graph_free(graph: *mut DbwGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dbw_graph_vertex_count(graph: *const DbwGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dbw_graph_arc_count(graph: *const DbwGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.arc_count())
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbw_graph_to_json(
    graph: *const DbwGraph,
    out: *mut *mut c_char,
) -> DbwStatus {
    guard(|| {
        let g = borrow(graph, "graph")?;
        write_string(out, g.0.to_json())
    })
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbw_graph_to_dot(
    graph: *const DbwGraph,
    out: *mut *mut c_char,
) -> DbwStatus {
    guard(|| {
        let g = borrow(graph, "graph")?;
        write_string(out, g.0.to_dot(None)?)
    })
}

/// `a^(k-1)`, for `k >= 2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbw_watchman_number(
    alphabet: u32,
    order: u32,
    out: *mut u64,
) -> DbwStatus {
    guard(|| {
        let w = watchman::watchman_number_formula(alphabet as usize, order as usize)?;
        write_out(out, w)
    })
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbw_solve(graph: *const DbwGraph, out: *mut DbwSolveSummary) -> DbwStatus {
    guard(|| {
        let g = borrow(graph, "graph")?;
        let r = watchman::solve_min_walk(&g.0, &limits()?)?;
        write_out(
            out,
            DbwSolveSummary {
                optimum: r.optimum_length,
                explored_states: r.explored_states,
            },
        )
    })
}

/// Solve result as JSON (`optimum`, `witness`, `explored_states`).
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbw_solve_json(
    graph: *const DbwGraph,
    out: *mut *mut c_char,
) -> DbwStatus {
    guard(|| {
        let g = borrow(graph, "graph")?;
        let r = watchman::solve_min_walk(&g.0, &limits()?)?;
        write_string(out, to_json(&r.to_json_value(&g.0))?)
    })
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string(value).map_err(|e| Failure::from(Error::from(e)))
}

/// Number of minimum closed dominating walks, one per rotation class.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbw_count_min_walks(graph: *const DbwGraph, out: *mut usize) -> DbwStatus {
    guard(|| {
        let g = borrow(graph, "graph")?;
        let limits = limits()?;
        let r = watchman::solve_min_walk(&g.0, &limits)?;
        let walks = watchman::enumerate_min_walks(&g.0, r.optimum_length, &limits)?;
        write_out(out, walks.len())
    })
}

/// # Safety
/// `seq` must be a live handle; `verdict` and `reason` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbw_classify(
    seq: *const DbwSequence,
    order: u32,
    verdict: *mut DbwVerdict,
    reason: *mut DbwReason,
) -> DbwStatus {
    guard(|| {
        let seq = borrow(seq, "seq")?;
        if reason.is_null() {
            return Err(null("reason"));
        }
        let c = analysis::classify(&seq.0, order as usize)?;
        write_out(
            verdict,
            match c.verdict {
                Verdict::ProvablyNotWatchman => DbwVerdict::ProvablyNotWatchman,
                Verdict::ProvablyWatchman => DbwVerdict::ProvablyWatchman,
                Verdict::Undetermined => DbwVerdict::Undetermined,
            },
        )?;
        write_out(
            reason,
            match c.reason {
                Reason::ConstantRun => DbwReason::ConstantRun,
                Reason::DoubledSequence => DbwReason::DoubledSequence,
                Reason::DistinctWindows => DbwReason::DistinctWindows,
                Reason::None => DbwReason::None,
            },
        )
    })
}

/// Verification record as JSON.
///
/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbw_verify_json(
    seq: *const DbwSequence,
    order: u32,
    out: *mut *mut c_char,
) -> DbwStatus {
    guard(|| {
        let seq = borrow(seq, "seq")?;
        let record = analysis::verify(&seq.0, order as usize, &limits()?)?;
        write_string(out, to_json(&record)?)
    })
}
