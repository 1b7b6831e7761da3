//! C ABI over `glink`. Diagrams are opaque handles; strings returned to the
//! caller are owned by it and released with `glink_string_free`. Every entry
//! point returns a `GlinkStatus`; the message for the last failure on the
//! calling thread is available from `glink_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use glink::diagram::{braid_closure, parse_braid, parse_pd, LinkDiagram};
use glink::homology::{colored_splitting, homology, Deformation, DeformationSpec};
use glink::web::{rt_invariant, GaugeConfig};
use glink::Error;

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GlinkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Unsupported = 5,
    VerifyFailed = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GlinkGauge {
    Gl = 0,
    Sl = 1,
}

/// Opaque link diagram.
pub struct GlinkDiagram {
    inner: LinkDiagram,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GlinkStatus {
    match e {
        Error::Parse(_) => GlinkStatus::Parse,
        Error::Unsliceable(_) | Error::Unsupported(_) => GlinkStatus::Unsupported,
        Error::Internal(_) => GlinkStatus::Internal,
        _ => GlinkStatus::InvalidInput,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (GlinkStatus, String)>) -> GlinkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GlinkStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside glink".into());
            GlinkStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (GlinkStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (GlinkStatus, String)> {
    if s.is_null() {
        return Err((GlinkStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (GlinkStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn diagram<'a>(d: *const GlinkDiagram) -> Result<&'a LinkDiagram, (GlinkStatus, String)> {
    d.as_ref().map(|d| &d.inner).ok_or((GlinkStatus::NullPointer, "null diagram".into()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (GlinkStatus, String)> {
    if out.is_null() {
        return Err((GlinkStatus::NullPointer, "null output pointer".into()));
    }
    let c = CString::new(s).map_err(|_| (GlinkStatus::Internal, "output contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_diagram(out: *mut *mut GlinkDiagram, d: LinkDiagram) -> Result<(), (GlinkStatus, String)> {
    if out.is_null() {
        return Err((GlinkStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(GlinkDiagram { inner: d }));
    Ok(())
}

/// Parses a braid word such as `strands=2; s1 s1 s1` and takes its closure.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn glink_diagram_from_braid(text: *const c_char, out: *mut *mut GlinkDiagram) -> GlinkStatus {
    guard(|| {
        let b = parse_braid(read_str(text)?).map_err(lib_err)?;
        write_diagram(out, braid_closure(&b))
    })
}

/// Parses PD JSON.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn glink_diagram_from_pd(text: *const c_char, out: *mut *mut GlinkDiagram) -> GlinkStatus {
    guard(|| {
        let d = parse_pd(read_str(text)?).map_err(lib_err)?;
        write_diagram(out, d)
    })
}

/// # Safety
/// `d` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn glink_diagram_free(d: *mut GlinkDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live diagram handle.
#[no_mangle]
pub unsafe extern "C" fn glink_diagram_num_crossings(d: *const GlinkDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.inner.num_crossings())
}

/// # Safety
/// `d` must be a live diagram handle.
#[no_mangle]
pub unsafe extern "C" fn glink_diagram_num_components(d: *const GlinkDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.inner.num_components())
}

/// Canonical PD JSON of the diagram.
///
/// # Safety
/// `d` must be a live diagram handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn glink_diagram_to_pd(d: *const GlinkDiagram, out: *mut *mut c_char) -> GlinkStatus {
    guard(|| write_string(out, diagram(d)?.to_pd_json()))
}

/// The invariant as canonical text, e.g. `q^2 + 1 + q^-2`.
///
/// # Safety
/// `d` must be a live diagram handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn glink_invariant(d: *const GlinkDiagram, rank: u32, gauge: GlinkGauge, out: *mut *mut c_char) -> GlinkStatus {
    guard(|| {
        let d = diagram(d)?;
        if rank == 0 {
            return Err((GlinkStatus::InvalidInput, "rank must be positive".into()));
        }
        let cfg = match gauge {
            GlinkGauge::Gl => GaugeConfig::gl(rank),
            GlinkGauge::Sl => GaugeConfig::sl(rank),
        };
        let p = rt_invariant(d, &cfg).map_err(lib_err)?;
        write_string(out, p.to_string())
    })
}

/// Homology table as JSON. `sigma` (e.g. `1,-1`) may be null for `P = X^2`.
///
/// # Safety
/// `d` must be a live diagram handle, `sigma` null or a C string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn glink_homology_json(d: *const GlinkDiagram, sigma: *const c_char, out: *mut *mut c_char) -> GlinkStatus {
    guard(|| {
        let d = diagram(d)?;
        let def = if sigma.is_null() { Deformation::Undeformed } else { Deformation::Roots(read_str(sigma)?.parse().map_err(lib_err)?) };
        let t = homology(d, &def).map_err(lib_err)?;
        write_string(out, t.to_json().to_string())
    })
}

/// Total deformed dimension per coloring, as JSON keyed by root values.
///
/// # Safety
/// `d` must be a live diagram handle, `sigma` a C string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn glink_split_json(d: *const GlinkDiagram, sigma: *const c_char, out: *mut *mut c_char) -> GlinkStatus {
    guard(|| {
        let d = diagram(d)?;
        let spec: DeformationSpec = read_str(sigma)?.parse().map_err(lib_err)?;
        let split = colored_splitting(d, &spec).map_err(lib_err)?;
        let parts: Vec<String> = split
            .iter()
            .map(|(k, t)| {
                let key: Vec<String> = k.iter().map(|&i| spec.roots[i].0.to_string()).collect();
                format!("\"{}\":{}", key.join(","), t.total())
            })
            .collect();
        write_string(out, format!("{{{}}}", parts.join(",")))
    })
}

/// Runs a named relation suite. Returns `GLINK_STATUS_VERIFY_FAILED` when
/// the suite ran and found a failure.
///
/// # Safety
/// `suite` must be a C string.
#[no_mangle]
pub unsafe extern "C" fn glink_verify(suite: *const c_char, rank: u32) -> GlinkStatus {
    guard(|| {
        let r = glink::verify::run_suite(read_str(suite)?, rank, 4).map_err(lib_err)?;
        if r.ok() {
            Ok(())
        } else {
            Err((GlinkStatus::VerifyFailed, r.to_string()))
        }
    })
}

/// Message for the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn glink_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn glink_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn glink_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
