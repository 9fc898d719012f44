//! C interface.
//!
//! Every fallible call returns an [`EssalgStatus`]; on failure the message is
//! kept per thread and read back with [`essalg_last_error_message`]. Strings
//! handed out by this library are released with [`essalg_string_free`],
//! handles with their own `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use essalg::io::PresentationFile;
use essalg::report::{run, verify_report, Invocation, Report};
use essalg::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EssalgStatus {
    Ok = 0,
    /// Malformed JSON or polynomial text.
    Parse = 1,
    /// Well-formed but unusable input.
    Input = 2,
    /// A computation budget was exhausted.
    Resource = 3,
    /// A required pointer was null or a string was not UTF-8.
    NullArgument = 4,
    /// Internal failure; the library caught a panic.
    Internal = 5,
}

/// A parsed input file.
pub struct EssalgPresentation {
    file: PresentationFile,
}

/// The result of one command.
pub struct EssalgReport {
    report: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> EssalgStatus {
    match e {
        Error::Parse(_) => EssalgStatus::Parse,
        Error::Resource { .. } => EssalgStatus::Resource,
        _ => EssalgStatus::Input,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (EssalgStatus, String)>) -> EssalgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EssalgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            EssalgStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (EssalgStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (EssalgStatus, String)> {
    if s.is_null() {
        return Err((EssalgStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (EssalgStatus::NullArgument, format!("{what} is not UTF-8")))
}

fn check_out<T>(out: *mut T) -> Result<(), (EssalgStatus, String)> {
    if out.is_null() {
        Err((EssalgStatus::NullArgument, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread, or null. Owned by the
/// library and valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn essalg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn essalg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses an input file given as JSON text.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn essalg_presentation_from_json(
    json: *const c_char,
    out: *mut *mut EssalgPresentation,
) -> EssalgStatus {
    guard(|| {
        check_out(out)?;
        let src = read_str(json, "json")?;
        let file = PresentationFile::from_json(src).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(EssalgPresentation { file }));
        Ok(())
    })
}

/// The `kind` field of the input file, as a string to free with
/// [`essalg_string_free`]. Null if `p` is null.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn essalg_presentation_kind(p: *const EssalgPresentation) -> *mut c_char {
    match p.as_ref() {
        Some(p) => to_c(p.file.kind().to_string()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn essalg_presentation_free(p: *mut EssalgPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

fn finish(inv: Invocation, out: *mut *mut EssalgReport) -> Result<(), (EssalgStatus, String)> {
    let report = run(inv).map_err(lib_err)?;
    unsafe { *out = Box::into_raw(Box::new(EssalgReport { report })) };
    Ok(())
}

/// Runs a command described as JSON, e.g. `{"command":"krull","input":{...}}`.
/// This is the same shape as the invocation part of a report.
///
/// # Safety
/// `invocation` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn essalg_run(invocation: *const c_char, out: *mut *mut EssalgReport) -> EssalgStatus {
    guard(|| {
        check_out(out)?;
        let src = read_str(invocation, "invocation")?;
        let inv: Invocation =
            serde_json::from_str(src).map_err(|e| (EssalgStatus::Parse, format!("parse error: invocation: {e}")))?;
        finish(inv, out)
    })
}

/// Krull dimension of a commutative input (or of the standardization of a
/// noncommutative one).
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn essalg_krull(p: *const EssalgPresentation, out: *mut *mut EssalgReport) -> EssalgStatus {
    guard(|| {
        check_out(out)?;
        let p = p.as_ref().ok_or((EssalgStatus::NullArgument, "presentation is null".into()))?;
        finish(Invocation::Krull { input: p.file.clone() }, out)
    })
}

/// Runs the degeneracy test. `sequence` may be null, otherwise it is a
/// comma-separated candidate regular sequence.
///
/// # Safety
/// `p` must be a live handle, `sequence` null or a valid C string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn essalg_degeneracy(
    p: *const EssalgPresentation,
    sequence: *const c_char,
    out: *mut *mut EssalgReport,
) -> EssalgStatus {
    guard(|| {
        check_out(out)?;
        let p = p.as_ref().ok_or((EssalgStatus::NullArgument, "presentation is null".into()))?;
        let sequence = if sequence.is_null() { None } else { Some(read_str(sequence, "sequence")?.to_string()) };
        finish(Invocation::Degeneracy { input: p.file.clone(), sequence }, out)
    })
}

/// Verdict of a report, or null for commands without one. Free with
/// [`essalg_string_free`].
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn essalg_report_verdict(r: *const EssalgReport) -> *mut c_char {
    match r.as_ref().and_then(|r| r.report.verdict.clone()) {
        Some(v) => to_c(v),
        None => ptr::null_mut(),
    }
}

/// The full report as pretty JSON. Free with [`essalg_string_free`].
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn essalg_report_json(r: *const EssalgReport) -> *mut c_char {
    match r.as_ref() {
        Some(r) => to_c(r.report.to_json()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `r` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn essalg_report_free(r: *mut EssalgReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Replays a stored report and writes the replay summary as JSON to `out`.
/// A report whose witness fails to replay still returns `Ok`; the summary
/// carries verdict `Failed`.
///
/// # Safety
/// `report_json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn essalg_verify_report(report_json: *const c_char, out: *mut *mut c_char) -> EssalgStatus {
    guard(|| {
        check_out(out)?;
        let src = read_str(report_json, "report")?;
        let replay = verify_report(src).map_err(lib_err)?;
        *out = to_c(serde_json::to_string_pretty(&replay).expect("replay serializes"));
        Ok(())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn essalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
