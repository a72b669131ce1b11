//! C interface to the `stardiag` library.
//!
//! Graphs are opaque handles created by `sd_graph_new` and released with
//! `sd_graph_free`. Every fallible call returns an [`SdStatus`]; on failure
//! `sd_last_error` describes the most recent error on the calling thread.
//! Strings returned through `char **` are owned by the caller and must be
//! released with `sd_string_free`. Vertex sets are passed as comma-separated
//! label lists such as `"12,13,14"`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stardiag::diagnosability::{applicable_witnesses, tg_bruteforce, tg_formula};
use stardiag::fault::{
    distinguishable, is_g_good_neighbor, rg_connectivity_bruteforce, rg_connectivity_formula, Connectivity,
};
use stardiag::report::{to_json, WitnessRecord};
use stardiag::topology::Descriptor;
use stardiag::{Budgets, Error, Graph, Model, VertexSet};

/// PMC model selector.
pub const SD_MODEL_PMC: u32 = 0;
/// MM* model selector.
pub const SD_MODEL_MM: u32 = 1;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Parameters outside the range where the quantity is defined or known.
    NotApplicable = 3,
    /// The graph is larger than the exhaustive search accepts.
    BudgetExceeded = 4,
    VerificationFailed = 5,
    Internal = 6,
    Panic = 7,
}

/// Opaque graph handle.
pub struct SdGraph(Graph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> SdStatus {
    match e {
        Error::NotApplicable(_) => SdStatus::NotApplicable,
        Error::BudgetExceeded { .. } => SdStatus::BudgetExceeded,
        Error::Verification(_) => SdStatus::VerificationFailed,
        Error::Consistency(_) | Error::Io(_) => SdStatus::Internal,
        Error::Domain(_) | Error::UnknownVertex(_) | Error::Parse { .. } => SdStatus::InvalidArgument,
    }
}

/// Runs `f`, recording any error or panic for `sd_last_error`.
fn guard(f: impl FnOnce() -> Result<(), (SdStatus, String)>) -> SdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SdStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside stardiag");
            SdStatus::Panic
        }
    }
}

trait IntoFfi<T> {
    fn ffi(self) -> Result<T, (SdStatus, String)>;
}

impl<T> IntoFfi<T> for stardiag::Result<T> {
    fn ffi(self) -> Result<T, (SdStatus, String)> {
        self.map_err(|e| (status_of(&e), e.to_string()))
    }
}

fn null(what: &str) -> (SdStatus, String) {
    (SdStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> (SdStatus, String) {
    (SdStatus::InvalidArgument, msg.into())
}

fn model(m: u32) -> Result<Model, (SdStatus, String)> {
    match m {
        SD_MODEL_PMC => Ok(Model::Pmc),
        SD_MODEL_MM => Ok(Model::MmStar),
        _ => Err(invalid(format!("unknown model selector {m}"))),
    }
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, (SdStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not UTF-8")))
}

/// # Safety
/// `g` must be null or a live handle from `sd_graph_new`.
unsafe fn graph<'a>(g: *const SdGraph) -> Result<&'a Graph, (SdStatus, String)> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

fn label_set(graph: &Graph, labels: &str) -> Result<VertexSet, (SdStatus, String)> {
    let labels: Vec<&str> = labels.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    graph.set_from_labels(&labels).ffi()
}

fn write<T>(out: *mut T, value: T) -> Result<(), (SdStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    // SAFETY: checked non-null; the caller guarantees it is writable.
    unsafe { out.write(value) };
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn sd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a graph from a descriptor such as `"nkstar:4,2"`.
///
/// # Safety
/// `descriptor` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sd_graph_new(descriptor: *const c_char, out: *mut *mut SdGraph) -> SdStatus {
    guard(|| {
        let desc: Descriptor = text(descriptor, "descriptor")?.parse().ffi()?;
        let g = desc.build(&Default::default()).ffi()?;
        write(out, Box::into_raw(Box::new(SdGraph(g))))
    })
}

/// # Safety
/// `graph` must be null or a handle from `sd_graph_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sd_graph_free(graph: *mut SdGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle; null yields 0.
#[no_mangle]
pub unsafe extern "C" fn sd_graph_vertex_count(graph: *const SdGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `graph` must be a live handle; null yields 0.
#[no_mangle]
pub unsafe extern "C" fn sd_graph_edge_count(graph: *const SdGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Closed-form t_g of S_{n,k}.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sd_tg_formula(n: usize, k: usize, g: usize, model_sel: u32, out: *mut u64) -> SdStatus {
    guard(|| write(out, tg_formula(n, k, g, model(model_sel)?).ffi()?.value))
}

/// t_g by exhaustive search under the default budgets.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sd_tg_bruteforce(
    graph_h: *const SdGraph,
    g: usize,
    model_sel: u32,
    out: *mut u64,
) -> SdStatus {
    guard(|| {
        let r = tg_bruteforce(graph(graph_h)?, g, model(model_sel)?).ffi()?;
        write(out, r.value)
    })
}

/// Closed-form R_g-connectivity of S_{n,k}.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sd_kappa_formula(n: usize, k: usize, g: usize, out: *mut u64) -> SdStatus {
    guard(|| {
        let v = rg_connectivity_formula(n, k, g).ffi()?;
        let v = u64::try_from(v).map_err(|_| (SdStatus::NotApplicable, format!("{v} does not fit in 64 bits")))?;
        write(out, v)
    })
}

/// R_g-connectivity by subset scan. `SD_STATUS_NOT_APPLICABLE` when no
/// g-good-neighbor cut exists.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sd_kappa_bruteforce(graph_h: *const SdGraph, g: usize, out: *mut u64) -> SdStatus {
    guard(
        || match rg_connectivity_bruteforce(graph(graph_h)?, g, Budgets::default().subset_scan).ffi()? {
            Connectivity::Cut { size, .. } => write(out, size as u64),
            Connectivity::NoCut => Err((SdStatus::NotApplicable, format!("no {g}-good-neighbor cut exists"))),
        },
    )
}

/// Whether the labelled set is a g-good-neighbor faulty set.
///
/// # Safety
/// `graph` must be a live handle, `labels` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sd_is_g_good_neighbor(
    graph_h: *const SdGraph,
    labels: *const c_char,
    g: usize,
    out: *mut bool,
) -> SdStatus {
    guard(|| {
        let graph = graph(graph_h)?;
        let set = label_set(graph, text(labels, "labels")?)?;
        write(out, is_g_good_neighbor(graph, &set, g).ffi()?)
    })
}

/// Whether two labelled faulty sets are distinguishable under the model.
///
/// # Safety
/// `graph` must be a live handle, both label lists NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sd_distinguishable(
    graph_h: *const SdGraph,
    model_sel: u32,
    f1: *const c_char,
    f2: *const c_char,
    out: *mut bool,
) -> SdStatus {
    guard(|| {
        let graph = graph(graph_h)?;
        let f1 = label_set(graph, text(f1, "f1")?)?;
        let f2 = label_set(graph, text(f2, "f2")?)?;
        write(out, distinguishable(graph, model(model_sel)?, &f1, &f2).ffi()?)
    })
}

/// JSON array of the verified witness pairs covering `(n, k, g)`; `[]` when
/// none applies. Free the result with `sd_string_free`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sd_witness_json(n: usize, k: usize, g: usize, out: *mut *mut c_char) -> SdStatus {
    guard(|| {
        let records = applicable_witnesses(n, k, g)
            .into_iter()
            .map(|w| w.map(|w| WitnessRecord::new(&w)))
            .collect::<stardiag::Result<Vec<_>>>()
            .ffi()?;
        let json = CString::new(to_json(&records)).map_err(|_| (SdStatus::Internal, "NUL in JSON".to_string()))?;
        write(out, json.into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
