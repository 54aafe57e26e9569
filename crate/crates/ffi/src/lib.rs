//! C ABI for `pcube`.
//!
//! Graphs and certificates are opaque handles owned by the caller and
//! released with their `_free` function. Every fallible call returns a
//! [`PcubeStatus`]; on failure, [`pcube_last_error`] describes the problem
//! for the calling thread. Strings returned through out-parameters are
//! released with [`pcube_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pcube::cli::certs::{
    decomposition_to_json, refutation_certificate, validate, Certificate, CertificateFile, Validation,
};
use pcube::cli::format::{parse_graph, print_graph};
use pcube::decomposer::{certify_planar_partial_cube, is_minimal_obstruction};
use pcube::generators::GeneratorSpec;
use pcube::graph::Graph;
use pcube::partial_cube::recognize;
use pcube::planarity::is_planar;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcubeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    NotPartialCube = 5,
    Panic = 6,
}

/// A named graph.
pub struct PcubeGraph {
    name: String,
    graph: Graph,
}

/// A certificate of any kind.
pub struct PcubeCertificate {
    file: CertificateFile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: PcubeStatus, msg: impl Into<String>) -> PcubeStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> PcubeStatus) -> PcubeStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(PcubeStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PcubeStatus> {
    if s.is_null() {
        return Err(fail(PcubeStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(PcubeStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn put<T>(out: *mut T, value: T) -> PcubeStatus {
    if out.is_null() {
        return fail(PcubeStatus::NullPointer, "null output pointer");
    }
    *out = value;
    PcubeStatus::Ok
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> PcubeStatus {
    match CString::new(s) {
        Ok(c) => put(out, c.into_raw()),
        Err(_) => fail(PcubeStatus::InvalidArgument, "string contains a nul byte"),
    }
}

unsafe fn graph_ref<'a>(g: *const PcubeGraph) -> Result<&'a PcubeGraph, PcubeStatus> {
    g.as_ref().ok_or_else(|| fail(PcubeStatus::NullPointer, "null graph"))
}

unsafe fn cert_ref<'a>(c: *const PcubeCertificate) -> Result<&'a PcubeCertificate, PcubeStatus> {
    c.as_ref().ok_or_else(|| fail(PcubeStatus::NullPointer, "null certificate"))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn pcube_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pcube_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the text graph format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcube_graph_parse(text: *const c_char, out: *mut *mut PcubeGraph) -> PcubeStatus {
    guard(|| {
        let text = tri!(read_str(text));
        match parse_graph(text) {
            Ok(f) => put(out, Box::into_raw(Box::new(PcubeGraph { name: f.name, graph: f.graph }))),
            Err(e) => fail(PcubeStatus::Parse, e.to_string()),
        }
    })
}

/// Builds a generator family member, e.g. `("hypercube", [3], 1)`.
///
/// # Safety
/// `family` must be a nul-terminated string, `params` must point to `len`
/// values (or be null when `len` is 0), and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcube_graph_generate(
    family: *const c_char,
    params: *const u64,
    len: usize,
    out: *mut *mut PcubeGraph,
) -> PcubeStatus {
    guard(|| {
        let family = tri!(read_str(family));
        let params: &[u64] = match (params.is_null(), len) {
            (_, 0) => &[],
            (true, _) => return fail(PcubeStatus::NullPointer, "null parameter array"),
            (false, n) => std::slice::from_raw_parts(params, n),
        };
        let spec = match GeneratorSpec::parse(family, params) {
            Ok(s) => s,
            Err(e) => return fail(PcubeStatus::InvalidArgument, e.to_string()),
        };
        match spec.build() {
            Ok(graph) => put(out, Box::into_raw(Box::new(PcubeGraph { name: spec.to_string(), graph }))),
            Err(e) => fail(PcubeStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `g` must be null or a graph from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pcube_graph_free(g: *mut PcubeGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn pcube_graph_vertex_count(g: *const PcubeGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.vertex_count())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn pcube_graph_edge_count(g: *const PcubeGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// The graph in text format.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcube_graph_to_text(g: *const PcubeGraph, out: *mut *mut c_char) -> PcubeStatus {
    guard(|| {
        let g = tri!(graph_ref(g));
        put_string(out, print_graph(&g.name, &g.graph))
    })
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcube_is_partial_cube(g: *const PcubeGraph, out: *mut bool) -> PcubeStatus {
    guard(|| {
        let g = tri!(graph_ref(g));
        put(out, recognize(&g.graph).is_ok())
    })
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcube_is_planar(g: *const PcubeGraph, out: *mut bool) -> PcubeStatus {
    guard(|| {
        let g = tri!(graph_ref(g));
        put(out, is_planar(&g.graph))
    })
}

/// Number of Θ-classes of a partial cube.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcube_theta_class_count(g: *const PcubeGraph, out: *mut usize) -> PcubeStatus {
    guard(|| {
        let g = tri!(graph_ref(g));
        match recognize(&g.graph) {
            Ok(pc) => put(out, pc.partition.len()),
            Err(r) => fail(PcubeStatus::NotPartialCube, r.to_string()),
        }
    })
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcube_is_minimal_obstruction(g: *const PcubeGraph, out: *mut bool) -> PcubeStatus {
    guard(|| {
        let g = tri!(graph_ref(g));
        match is_minimal_obstruction(&g.graph) {
            Ok(b) => put(out, b),
            Err(e) => fail(PcubeStatus::NotPartialCube, e.to_string()),
        }
    })
}

/// Decomposition certificate for a planar partial cube (`*holds` true), or
/// a refutation certificate (`*holds` false).
///
/// # Safety
/// `g` must be a live graph handle; `out` and `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcube_certify(
    g: *const PcubeGraph,
    out: *mut *mut PcubeCertificate,
    holds: *mut bool,
) -> PcubeStatus {
    guard(|| {
        let g = tri!(graph_ref(g));
        if holds.is_null() {
            return fail(PcubeStatus::NullPointer, "null output pointer");
        }
        let (file, ok) = match certify_planar_partial_cube(&g.graph) {
            Ok(c) => (CertificateFile::new(Certificate::Decomposition(decomposition_to_json(&c))), true),
            Err(r) => (refutation_certificate(&g.graph, &r), false),
        };
        let status = put(out, Box::into_raw(Box::new(PcubeCertificate { file })));
        if status == PcubeStatus::Ok {
            *holds = ok;
        }
        status
    })
}

/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcube_certificate_from_json(
    text: *const c_char,
    out: *mut *mut PcubeCertificate,
) -> PcubeStatus {
    guard(|| {
        let text = tri!(read_str(text));
        match CertificateFile::from_json(text) {
            Ok(file) => put(out, Box::into_raw(Box::new(PcubeCertificate { file }))),
            Err(e) => fail(PcubeStatus::Parse, e.to_string()),
        }
    })
}

/// # Safety
/// `c` must be a live certificate handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcube_certificate_to_json(c: *const PcubeCertificate, out: *mut *mut c_char) -> PcubeStatus {
    guard(|| {
        let c = tri!(cert_ref(c));
        put_string(out, c.file.to_json())
    })
}

/// The certificate kind: `decomposition`, `kuratowski`, `pc-refutation` or
/// `flaw-witness`.
///
/// # Safety
/// `c` must be a live certificate handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcube_certificate_kind(c: *const PcubeCertificate, out: *mut *mut c_char) -> PcubeStatus {
    guard(|| {
        let c = tri!(cert_ref(c));
        put_string(out, c.file.kind().to_string())
    })
}

/// Checks the certificate; on rejection the reason is available from
/// [`pcube_last_error`] while the call still returns `Ok`.
///
/// # Safety
/// `c` must be a live certificate handle; `valid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcube_certificate_verify(c: *const PcubeCertificate, valid: *mut bool) -> PcubeStatus {
    guard(|| {
        let c = tri!(cert_ref(c));
        match validate(&c.file) {
            Validation::Valid(_) => put(valid, true),
            Validation::Invalid(reason) => {
                let status = put(valid, false);
                set_error(reason);
                status
            }
        }
    })
}

/// # Safety
/// `c` must be null or a certificate from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pcube_certificate_free(c: *mut PcubeCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
