//! C ABI for the recognizer.
//!
//! Handles are opaque and owned by the caller once returned; free them with
//! the matching `_free` function. Every fallible call returns a
//! [`B0vpgStatus`]; on failure [`b0vpg_last_error`] describes the most recent
//! error on the calling thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use b0vpg::grid::Orientation;
use b0vpg::io::{parse_graph, write_representation, CertificateFile};
use b0vpg::recognize::{recognize_with, Recognition, RecognizeOptions};
use b0vpg::{Error, Graph};
use libc::c_char;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum B0vpgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    WrongVerdict = 4,
    BufferTooSmall = 5,
    Internal = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum B0vpgVerdict {
    Accept = 0,
    Reject = 1,
    NotBlockGraph = 2,
}

/// One grid path. `horizontal` is 1 for a horizontal path and 0 for a
/// vertical one; `line` is its row or column, `lo..=hi` its span.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct B0vpgPath {
    pub vertex: usize,
    pub horizontal: u8,
    pub line: i64,
    pub lo: i64,
    pub hi: i64,
}

/// Opaque graph handle.
pub struct B0vpgGraph(Graph);

/// Opaque recognition result handle.
pub struct B0vpgResult(Recognition);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    let c = CString::new(msg).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> B0vpgStatus {
    match e {
        Error::Parse { .. } => B0vpgStatus::Parse,
        Error::Internal(_) => B0vpgStatus::Internal,
        _ => B0vpgStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (B0vpgStatus, String)>) -> B0vpgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => B0vpgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            B0vpgStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (B0vpgStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (B0vpgStatus, String) {
    (B0vpgStatus::NullPointer, format!("{what} is null"))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn b0vpg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// New graph with `n` isolated vertices.
#[no_mangle]
pub extern "C" fn b0vpg_graph_new(n: usize) -> *mut B0vpgGraph {
    Box::into_raw(Box::new(B0vpgGraph(Graph::new(n))))
}

/// Adds the edge `u v` (0-based). Adding an existing edge is not an error.
///
/// # Safety
/// `graph` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn b0vpg_graph_add_edge(
    graph: *mut B0vpgGraph,
    u: usize,
    v: usize,
) -> B0vpgStatus {
    guard(|| {
        // SAFETY: caller passes null or a live, exclusively used handle.
        let g = unsafe { graph.as_mut() }.ok_or_else(|| null("graph"))?;
        g.0.add_edge(u, v).map(|_| ()).map_err(lib_err)
    })
}

/// Parses a graph file (`p n m` header, `e u v` lines, 1-based ids).
///
/// # Safety
/// `text` must be null or a nul-terminated string; `out` must be null or
/// valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn b0vpg_graph_parse(
    text: *const c_char,
    out: *mut *mut B0vpgGraph,
) -> B0vpgStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        // SAFETY: checked non-null; caller guarantees nul termination.
        let text = unsafe { CStr::from_ptr(text) }
            .to_str()
            .map_err(|e| (B0vpgStatus::Parse, format!("input is not UTF-8: {e}")))?;
        let g = parse_graph(text).map_err(lib_err)?;
        // SAFETY: checked non-null.
        unsafe { *out = Box::into_raw(Box::new(B0vpgGraph(g))) };
        Ok(())
    })
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn b0vpg_graph_vertex_count(graph: *const B0vpgGraph) -> usize {
    // SAFETY: caller passes null or a live handle.
    unsafe { graph.as_ref() }.map_or(0, |g| g.0.n())
}

/// # Safety
/// `graph` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn b0vpg_graph_free(graph: *mut B0vpgGraph) {
    if !graph.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(graph) });
    }
}

/// Recognizes `graph`. `seed` is used only when `use_seed` is nonzero; a
/// negative `start_block` keeps the default start.
///
/// # Safety
/// `graph` must be null or a live handle; `out` must be null or valid for a
/// pointer write.
#[no_mangle]
pub unsafe extern "C" fn b0vpg_recognize(
    graph: *const B0vpgGraph,
    use_seed: u8,
    seed: u64,
    start_block: i64,
    out: *mut *mut B0vpgResult,
) -> B0vpgStatus {
    guard(|| {
        // SAFETY: caller passes null or a live handle.
        let g = unsafe { graph.as_ref() }.ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let opts = RecognizeOptions {
            start_block: usize::try_from(start_block).ok(),
            seed: (use_seed != 0).then_some(seed),
        };
        let r = recognize_with(&g.0, &opts).map_err(lib_err)?;
        // SAFETY: checked non-null.
        unsafe { *out = Box::into_raw(Box::new(B0vpgResult(r))) };
        Ok(())
    })
}

/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn b0vpg_result_verdict(result: *const B0vpgResult) -> B0vpgVerdict {
    // SAFETY: caller passes a live handle.
    match unsafe { &(*result).0 } {
        Recognition::Accept(_) => B0vpgVerdict::Accept,
        Recognition::Reject(_) => B0vpgVerdict::Reject,
        Recognition::NotBlockGraph(_) => B0vpgVerdict::NotBlockGraph,
    }
}

/// Number of paths of an accepted result, 0 otherwise.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn b0vpg_result_path_count(result: *const B0vpgResult) -> usize {
    // SAFETY: caller passes null or a live handle.
    match unsafe { result.as_ref() } {
        Some(B0vpgResult(Recognition::Accept(rep))) => rep.len(),
        _ => 0,
    }
}

/// Copies the path of vertex `index` of an accepted result.
///
/// # Safety
/// `result` must be null or a live handle; `out` must be null or valid for
/// a write.
#[no_mangle]
pub unsafe extern "C" fn b0vpg_result_path(
    result: *const B0vpgResult,
    index: usize,
    out: *mut B0vpgPath,
) -> B0vpgStatus {
    guard(|| {
        // SAFETY: caller passes null or a live handle.
        let r = unsafe { result.as_ref() }.ok_or_else(|| null("result"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let Recognition::Accept(rep) = &r.0 else {
            return Err((B0vpgStatus::WrongVerdict, "result is not an accept".into()));
        };
        let p = rep.paths.get(index).ok_or_else(|| {
            (
                B0vpgStatus::InvalidArgument,
                format!("path {index} out of range 0..{}", rep.len()),
            )
        })?;
        let path = B0vpgPath {
            vertex: p.vertex,
            horizontal: u8::from(p.orientation == Orientation::Horizontal),
            line: p.line,
            lo: p.lo,
            hi: p.hi,
        };
        // SAFETY: checked non-null.
        unsafe { *out = path };
        Ok(())
    })
}

/// Copies the certificate of a rejected result: `k` and the 0-based vertex
/// ids. `*len` always receives the number of vertices; when it exceeds
/// `capacity` nothing is copied and the call fails with `BufferTooSmall`.
///
/// # Safety
/// `result` must be null or a live handle; `k` and `len` must be null or
/// valid for writes; `vertices` must be valid for `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn b0vpg_result_certificate(
    result: *const B0vpgResult,
    k: *mut usize,
    vertices: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> B0vpgStatus {
    guard(|| {
        // SAFETY: caller passes null or a live handle.
        let r = unsafe { result.as_ref() }.ok_or_else(|| null("result"))?;
        if k.is_null() || len.is_null() {
            return Err(null("k or len"));
        }
        let Recognition::Reject(cert) = &r.0 else {
            return Err((B0vpgStatus::WrongVerdict, "result is not a reject".into()));
        };
        let ids = cert.vertices.as_slice();
        // SAFETY: checked non-null.
        unsafe {
            *len = ids.len();
            *k = cert.k;
        }
        if ids.len() > capacity {
            return Err((
                B0vpgStatus::BufferTooSmall,
                format!("{} vertices, capacity {capacity}", ids.len()),
            ));
        }
        if vertices.is_null() && !ids.is_empty() {
            return Err(null("vertices"));
        }
        // SAFETY: the caller guarantees `capacity` writable slots.
        unsafe { ptr::copy_nonoverlapping(ids.as_ptr(), vertices, ids.len()) };
        Ok(())
    })
}

/// JSON for the result: the representation file on accept, the
/// certificate file otherwise. Free with [`b0vpg_string_free`]. Null on a
/// null handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn b0vpg_result_to_json(result: *const B0vpgResult) -> *mut c_char {
    // SAFETY: caller passes null or a live handle.
    let Some(r) = (unsafe { result.as_ref() }) else {
        set_error("result is null");
        return ptr::null_mut();
    };
    let json = match &r.0 {
        Recognition::Accept(rep) => write_representation(rep),
        other => CertificateFile::from_recognition(other).to_json(),
    };
    CString::new(json).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn b0vpg_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: `s` came from CString::into_raw and is freed once.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// # Safety
/// `result` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn b0vpg_result_free(result: *mut B0vpgResult) {
    if !result.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(result) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panics_become_a_status() {
        let prev = std::panic::take_hook();
        std::panic::set_hook(Box::new(|_| {}));
        let status = guard(|| panic!("boom"));
        std::panic::set_hook(prev);
        assert_eq!(status, B0vpgStatus::Panic);
        let msg = unsafe { CStr::from_ptr(b0vpg_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "panic: boom");
    }
}
