//! C ABI for the expander-matching library.
//!
//! Graphs and matchings cross the boundary as opaque handles that own their
//! data; every fallible call returns an [`EmStatus`] and writes its result
//! through an out-pointer only on `EM_OK`. The most recent failure message is
//! kept per thread and is readable via [`em_last_error_message`]. Panics are
//! caught at the boundary and surface as `EM_PANIC` rather than unwinding
//! into foreign frames.
//!
//! Ownership is strict: handles returned through out-pointers belong to the
//! caller and must be released with the matching `*_free` function; strings
//! returned as `char*` must be released with [`em_string_free`]. Nothing is
//! freed implicitly.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use expander_matching::chain::{self, ChainBudget};
use expander_matching::error::Error;
use expander_matching::graph::Graph;
use expander_matching::matching::Matching;
use expander_matching::spectral;

/// Result of every fallible call. Non-zero means the out-parameters are
/// untouched and a message is available from `em_last_error_message`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmStatus {
    /// The call succeeded.
    EmOk = 0,
    /// A required pointer argument was null.
    EmNullArgument = 1,
    /// Arguments were structurally invalid (bad sizes, parse failures,
    /// parameters outside their domain).
    EmInvalidArgument = 2,
    /// A file could not be read or written.
    EmIo = 3,
    /// A numeric routine failed to converge or sizes disagreed.
    EmNumeric = 4,
    /// The problem exceeds an exact-computation cap.
    EmTooLarge = 5,
    /// A randomized routine exhausted its step, retry, or sample budget.
    EmBudgetExhausted = 6,
    /// A panic was caught at the boundary; the library state is unharmed
    /// but the call did nothing.
    EmPanic = 7,
}

/// Opaque graph handle.
pub struct EmGraph(Graph);

/// Opaque matching handle.
pub struct EmMatching(Matching);

/// Aggregate result of a counting run.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct EmCountResult {
    /// Estimated number of perfect matchings.
    pub estimate: f64,
    /// Natural log of the estimate (`-inf` when the estimate is zero).
    pub log_estimate: f64,
    /// Total chain steps spent across all levels.
    pub steps_total: u64,
    /// True when the top level never reached a perfect matching, which is
    /// the expected outcome on graphs without one; `estimate` is then zero.
    pub degenerate_top: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("interior NUL removed");
    });
}

fn status_for(e: &Error) -> EmStatus {
    match e {
        Error::Io(_) => EmStatus::EmIo,
        Error::NoConvergence { .. } | Error::DimensionMismatch(..) => EmStatus::EmNumeric,
        Error::TooLarge { .. } => EmStatus::EmTooLarge,
        Error::Timeout { .. }
        | Error::RetriesExhausted { .. }
        | Error::DegenerateEstimate { .. } => EmStatus::EmBudgetExhausted,
        _ => EmStatus::EmInvalidArgument,
    }
}

fn fail(e: &Error) -> EmStatus {
    set_error(&e.to_string());
    status_for(e)
}

/// Runs `f` with panics contained to this call.
fn guarded(f: impl FnOnce() -> EmStatus) -> EmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic with non-string payload".into());
            set_error(&format!("internal panic: {msg}"));
            EmStatus::EmPanic
        }
    }
}

/// # Safety
/// `ptr` must be a valid NUL-terminated string for the duration of the call.
unsafe fn utf8_arg<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, EmStatus> {
    if ptr.is_null() {
        set_error(&format!("{what} is null"));
        return Err(EmStatus::EmNullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        EmStatus::EmInvalidArgument
    })
}

fn write_graph(out: *mut *mut EmGraph, built: Result<Graph, Error>) -> EmStatus {
    match built {
        Ok(g) => {
            unsafe { *out = Box::into_raw(Box::new(EmGraph(g))) };
            EmStatus::EmOk
        }
        Err(e) => fail(&e),
    }
}

macro_rules! require_nonnull {
    ($ptr:expr, $what:literal) => {
        if $ptr.is_null() {
            set_error(concat!($what, " is null"));
            return EmStatus::EmNullArgument;
        }
    };
}

/// Returns the library version as a static NUL-terminated string.
/// The pointer is valid for the lifetime of the process; do not free it.
#[no_mangle]
pub extern "C" fn em_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Returns the most recent error message on this thread as a NUL-terminated
/// string, or an empty string when no call has failed yet. The pointer stays
/// valid until the next failing `em_` call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn em_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Frees a string previously returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from an `em_` function documented
/// to transfer string ownership, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn em_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the complete graph on `2 * n` vertices.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one graph handle pointer.
#[no_mangle]
pub unsafe extern "C" fn em_graph_complete(n: usize, out: *mut *mut EmGraph) -> EmStatus {
    guarded(|| {
        require_nonnull!(out, "out");
        write_graph(out, Graph::complete(n))
    })
}

/// Builds the cocktail-party graph on `2 * n` vertices (the complete graph
/// minus a perfect matching).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one graph handle pointer.
#[no_mangle]
pub unsafe extern "C" fn em_graph_cocktail(n: usize, out: *mut *mut EmGraph) -> EmStatus {
    guarded(|| {
        require_nonnull!(out, "out");
        write_graph(out, Graph::cocktail_party(n))
    })
}

/// Builds the Petersen graph.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one graph handle pointer.
#[no_mangle]
pub unsafe extern "C" fn em_graph_petersen(out: *mut *mut EmGraph) -> EmStatus {
    guarded(|| {
        require_nonnull!(out, "out");
        write_graph(out, Ok(Graph::petersen()))
    })
}

/// Samples a random `d`-regular simple graph on `2 * n` vertices,
/// deterministically in `seed`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one graph handle pointer.
#[no_mangle]
pub unsafe extern "C" fn em_graph_random_regular(
    n: usize,
    d: usize,
    seed: u64,
    out: *mut *mut EmGraph,
) -> EmStatus {
    guarded(|| {
        require_nonnull!(out, "out");
        write_graph(out, Graph::random_regular(n, d, seed))
    })
}

/// Parses a graph from its text form (`"<num_vertices> <num_edges>"` header
/// followed by one `u v` pair per line).
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to writable storage for one graph handle pointer.
#[no_mangle]
pub unsafe extern "C" fn em_graph_from_text(
    text: *const c_char,
    out: *mut *mut EmGraph,
) -> EmStatus {
    guarded(|| {
        require_nonnull!(out, "out");
        let text = match utf8_arg(text, "text") {
            Ok(t) => t,
            Err(status) => return status,
        };
        write_graph(out, Graph::from_text(text))
    })
}

/// Loads a graph from a text file.
///
/// # Safety
/// `path` must be a valid NUL-terminated UTF-8 path; `out` must be a valid
/// pointer to writable storage for one graph handle pointer.
#[no_mangle]
pub unsafe extern "C" fn em_graph_load(path: *const c_char, out: *mut *mut EmGraph) -> EmStatus {
    guarded(|| {
        require_nonnull!(out, "out");
        let path = match utf8_arg(path, "path") {
            Ok(p) => p,
            Err(status) => return status,
        };
        write_graph(out, Graph::load(Path::new(path)))
    })
}

/// Writes a graph to a text file, creating or truncating it.
///
/// # Safety
/// `g` must be a live graph handle; `path` must be a valid NUL-terminated
/// UTF-8 path.
#[no_mangle]
pub unsafe extern "C" fn em_graph_save(g: *const EmGraph, path: *const c_char) -> EmStatus {
    guarded(|| {
        require_nonnull!(g, "graph");
        let path = match utf8_arg(path, "path") {
            Ok(p) => p,
            Err(status) => return status,
        };
        match (*g).0.save(Path::new(path)) {
            Ok(()) => EmStatus::EmOk,
            Err(e) => fail(&e),
        }
    })
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `g` must be null or a pointer returned by a graph constructor, and must
/// not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn em_graph_free(g: *mut EmGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn em_graph_num_vertices(g: *const EmGraph) -> usize {
    if g.is_null() {
        0
    } else {
        (*g).0.num_vertices()
    }
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn em_graph_num_edges(g: *const EmGraph) -> usize {
    if g.is_null() {
        0
    } else {
        (*g).0.num_edges()
    }
}

/// Renders the graph in its text form. On success `*out` receives a
/// NUL-terminated string owned by the caller; free it with `em_string_free`.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be a valid pointer to
/// writable storage for one `char*`.
#[no_mangle]
pub unsafe extern "C" fn em_graph_to_text(g: *const EmGraph, out: *mut *mut c_char) -> EmStatus {
    guarded(|| {
        require_nonnull!(g, "graph");
        require_nonnull!(out, "out");
        let text = CString::new((*g).0.to_text()).expect("text form has no NUL bytes");
        *out = text.into_raw();
        EmStatus::EmOk
    })
}

/// Writes the graph's content hash (16 lowercase hex characters) to `*out`.
/// The string is owned by the caller; free it with `em_string_free`.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be a valid pointer to
/// writable storage for one `char*`.
#[no_mangle]
pub unsafe extern "C" fn em_graph_content_hash(
    g: *const EmGraph,
    out: *mut *mut c_char,
) -> EmStatus {
    guarded(|| {
        require_nonnull!(g, "graph");
        require_nonnull!(out, "out");
        let hash = CString::new((*g).0.content_hash()).expect("hash is hex");
        *out = hash.into_raw();
        EmStatus::EmOk
    })
}

/// Computes `sigma2`, the largest non-trivial eigenvalue magnitude of the
/// degree-normalized adjacency matrix.
///
/// # Safety
/// `g` must be a live graph handle; `out_sigma2` must be a valid pointer to
/// writable storage for one `double`.
#[no_mangle]
pub unsafe extern "C" fn em_graph_sigma2(g: *const EmGraph, out_sigma2: *mut f64) -> EmStatus {
    guarded(|| {
        require_nonnull!(g, "graph");
        require_nonnull!(out_sigma2, "out_sigma2");
        match spectral::spectrum(&(*g).0) {
            Ok(summary) => {
                *out_sigma2 = summary.sigma2;
                EmStatus::EmOk
            }
            Err(e) => fail(&e),
        }
    })
}

/// Sets `*out_is` to whether the graph is an `eps`-expander, i.e. whether
/// `sigma2 <= eps` up to a small fixed tolerance.
///
/// # Safety
/// `g` must be a live graph handle; `out_is` must be a valid pointer to
/// writable storage for one `bool`.
#[no_mangle]
pub unsafe extern "C" fn em_graph_is_expander(
    g: *const EmGraph,
    eps: f64,
    out_is: *mut bool,
) -> EmStatus {
    guarded(|| {
        require_nonnull!(g, "graph");
        require_nonnull!(out_is, "out_is");
        match spectral::is_eps_expander(&(*g).0, eps) {
            Ok(answer) => {
                *out_is = answer;
                EmStatus::EmOk
            }
            Err(e) => fail(&e),
        }
    })
}

/// Draws an approximately uniform perfect matching, deterministically in
/// `seed`. `steps_override` of 0 uses the schedule derived from `eps` and
/// `delta`; a positive value forces that many chain steps per checkpoint.
/// Fails with `EM_BUDGET_EXHAUSTED` when no perfect matching is reached,
/// which on a graph without one is the expected outcome.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be a valid pointer to
/// writable storage for one matching handle pointer.
#[no_mangle]
pub unsafe extern "C" fn em_sample_perfect_matching(
    g: *const EmGraph,
    eps: f64,
    delta: f64,
    seed: u64,
    steps_override: u64,
    out: *mut *mut EmMatching,
) -> EmStatus {
    guarded(|| {
        require_nonnull!(g, "graph");
        require_nonnull!(out, "out");
        let budget = ChainBudget {
            steps_override: (steps_override > 0).then_some(steps_override),
            ..ChainBudget::default()
        };
        match chain::sample_perfect_matching(&(*g).0, eps, delta, seed, &budget) {
            Ok(outcome) => {
                *out = Box::into_raw(Box::new(EmMatching(outcome.matching)));
                EmStatus::EmOk
            }
            Err(e) => fail(&e),
        }
    })
}

/// Estimates the number of perfect matchings, deterministically in `seed`.
/// A graph without any perfect matching yields `EM_OK` with
/// `degenerate_top = true` and `estimate = 0`.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be a valid pointer to
/// writable storage for one count-result struct.
#[no_mangle]
pub unsafe extern "C" fn em_count_perfect_matchings(
    g: *const EmGraph,
    eps: f64,
    delta: f64,
    seed: u64,
    out: *mut EmCountResult,
) -> EmStatus {
    guarded(|| {
        require_nonnull!(g, "graph");
        require_nonnull!(out, "out");
        let budget = ChainBudget::default();
        match chain::count_perfect_matchings(&(*g).0, eps, delta, seed, &budget, None) {
            Ok(estimate) => {
                *out = EmCountResult {
                    estimate: estimate.estimate,
                    log_estimate: estimate.log_estimate,
                    steps_total: estimate.steps_total,
                    degenerate_top: estimate.degenerate_top,
                };
                EmStatus::EmOk
            }
            Err(e) => fail(&e),
        }
    })
}

/// Number of matched pairs, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live matching handle.
#[no_mangle]
pub unsafe extern "C" fn em_matching_size(m: *const EmMatching) -> usize {
    if m.is_null() {
        0
    } else {
        (*m).0.size()
    }
}

/// Partner of vertex `v`, or -1 when `v` is unmatched or out of range.
///
/// # Safety
/// `m` must be a live matching handle.
#[no_mangle]
pub unsafe extern "C" fn em_matching_partner(m: *const EmMatching, v: usize) -> i64 {
    if m.is_null() || v >= (*m).0.num_vertices() {
        return -1;
    }
    (*m).0.partner(v).map_or(-1, |w| w as i64)
}

/// Copies the matched pairs into `buf` as `2 * em_matching_size(m)`
/// interleaved vertex ids `u0 v0 u1 v1 ...`, ordered by smaller endpoint.
/// `cap` is the capacity of `buf` in elements; the call fails with
/// `EM_INVALID_ARGUMENT` when it is too small.
///
/// # Safety
/// `m` must be a live matching handle; `buf` must point to writable storage
/// for at least `cap` elements of type `size_t`.
#[no_mangle]
pub unsafe extern "C" fn em_matching_copy_pairs(
    m: *const EmMatching,
    buf: *mut usize,
    cap: usize,
) -> EmStatus {
    guarded(|| {
        require_nonnull!(m, "matching");
        require_nonnull!(buf, "buf");
        let pairs = (*m).0.pairs();
        if cap < 2 * pairs.len() {
            set_error(&format!(
                "buffer holds {cap} elements but {} are required",
                2 * pairs.len()
            ));
            return EmStatus::EmInvalidArgument;
        }
        for (i, (u, v)) in pairs.iter().enumerate() {
            *buf.add(2 * i) = *u;
            *buf.add(2 * i + 1) = *v;
        }
        EmStatus::EmOk
    })
}

/// Releases a matching handle. Null is ignored.
///
/// # Safety
/// `m` must be null or a pointer returned by a sampling function, and must
/// not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn em_matching_free(m: *mut EmMatching) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}
