//! C ABI for the mapverba compiler and evaluator.
//!
//! Maps live behind an opaque [`MvMap`] handle. Every entry point returns
//! an [`MvStatus`]; on anything but `MV_STATUS_OK` a message describing the
//! failure is available from [`mv_last_error`] on the same thread. Strings
//! handed out through `char **` parameters are owned by the caller and must
//! be released with [`mv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mapverba::eval::{evaluate, render_report, EvalError, ReportFormat};
use mapverba::model::{parse_map, validate, MapDocument};
use mapverba::repr::{
    compile, export_bundle, BuildError, ReprOptions, RepresentationKind, RepresentationManifest, UnknownKind,
};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MvStatus {
    Ok = 0,
    /// A required pointer argument was null.
    Null = 1,
    /// A string argument was not valid UTF-8.
    Utf8 = 2,
    /// Input text could not be parsed, or an argument names nothing known.
    Parse = 3,
    /// The map breaks a document invariant.
    Validation = 4,
    /// A manifest refers to features, pairs or routes the map lacks.
    UnknownId = 5,
    /// The map is valid but cannot produce the requested output.
    Precondition = 6,
    /// A bug inside the library; the message says what went wrong.
    Internal = 7,
}

/// A parsed map document.
pub struct MvMap {
    doc: MapDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(MvStatus, String);

fn fail<T>(status: MvStatus, message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, message.into()))
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `body`, recording failures and panics for `mv_last_error`.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> MvStatus {
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|panic| {
        let what = panic
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| panic.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        fail(MvStatus::Internal, format!("internal error: {what}"))
    });
    match outcome {
        Ok(()) => {
            set_last_error("");
            MvStatus::Ok
        }
        Err(Failure(status, message)) => {
            set_last_error(&message);
            status
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return fail(MvStatus::Null, format!("{what} is null"));
    }
    CStr::from_ptr(p)
        .to_str()
        .or_else(|_| fail(MvStatus::Utf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a>(p: *const MvMap) -> Result<&'a MapDocument, Failure> {
    p.as_ref()
        .map(|m| &m.doc)
        .ok_or_else(|| Failure(MvStatus::Null, "map is null".into()))
}

fn check_out<T>(out: *mut T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        fail(MvStatus::Null, format!("{what} is null"))
    } else {
        Ok(())
    }
}

fn to_c(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .or_else(|_| fail(MvStatus::Internal, "output contains a NUL byte"))
}

fn build_failure(e: BuildError) -> Failure {
    let status = match e {
        BuildError::Invalid(_) => MvStatus::Validation,
        BuildError::Empty | BuildError::NoRoutes | BuildError::NotLegacy(_) => MvStatus::Precondition,
    };
    Failure(status, e.to_string())
}

/// Parses a GeoJSON map. On success `*out` receives a handle to release
/// with `mv_map_free`. Parsing does not validate; see
/// `mv_map_validate_json`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mv_map_parse(json: *const c_char, out: *mut *mut MvMap) -> MvStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = ptr::null_mut();
        let doc = parse_map(text(json, "json")?.as_bytes()).map_err(|e| Failure(MvStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(MvMap { doc }));
        Ok(())
    })
}

/// Releases a map handle. Null is ignored.
///
/// # Safety
/// `map` must be null or a handle from `mv_map_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mv_map_free(map: *mut MvMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Number of features in the map.
///
/// # Safety
/// `map` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mv_map_feature_count(map: *const MvMap, out: *mut usize) -> MvStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = handle(map)?.features.len();
        Ok(())
    })
}

/// Writes the map's invariant violations as a JSON array of
/// `{code, path, message}` objects; `[]` means the map is valid.
///
/// # Safety
/// `map` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mv_map_validate_json(map: *const MvMap, out: *mut *mut c_char) -> MvStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = ptr::null_mut();
        let violations = validate(handle(map)?);
        let json = serde_json::to_string(&violations).or_else(|e| fail(MvStatus::Internal, e.to_string()))?;
        *out = to_c(json)?;
        Ok(())
    })
}

/// Compiles the map into the representation named by `kind` (for example
/// `"audio-description"`, `"mud-map"` or `"alt-grid"`) with default
/// options. `*text_out` receives the rendered text and `*manifest_out` its
/// manifest JSON.
///
/// # Safety
/// `map` must be a live handle, `kind` a NUL-terminated string and both
/// out parameters writable pointers.
#[no_mangle]
pub unsafe extern "C" fn mv_compile(
    map: *const MvMap,
    kind: *const c_char,
    text_out: *mut *mut c_char,
    manifest_out: *mut *mut c_char,
) -> MvStatus {
    guard(|| {
        check_out(text_out, "text_out")?;
        check_out(manifest_out, "manifest_out")?;
        *text_out = ptr::null_mut();
        *manifest_out = ptr::null_mut();
        let doc = handle(map)?;
        let kind: RepresentationKind = text(kind, "kind")?
            .parse()
            .map_err(|e: UnknownKind| Failure(MvStatus::Parse, e.to_string()))?;
        let compiled = compile(doc, kind, &ReprOptions::default()).map_err(build_failure)?;
        let text = to_c(compiled.text)?;
        match to_c(compiled.manifest.to_json()) {
            Ok(m) => {
                *text_out = text;
                *manifest_out = m;
                Ok(())
            }
            Err(e) => {
                drop(CString::from_raw(text));
                Err(e)
            }
        }
    })
}

/// Scores a manifest against the map and renders the report in `format`
/// (`"md"`, `"json-like"` or `"csv"`). `*all_pass` is set to 1 when no
/// applicable criterion fails and 0 otherwise; it may be null.
///
/// # Safety
/// `map` must be a live handle, `manifest_json` and `format`
/// NUL-terminated strings, `report_out` writable and `all_pass` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mv_evaluate(
    map: *const MvMap,
    manifest_json: *const c_char,
    format: *const c_char,
    report_out: *mut *mut c_char,
    all_pass: *mut i32,
) -> MvStatus {
    guard(|| {
        check_out(report_out, "report_out")?;
        *report_out = ptr::null_mut();
        let doc = handle(map)?;
        let manifest = RepresentationManifest::from_json(text(manifest_json, "manifest_json")?)
            .map_err(|e| Failure(MvStatus::Parse, e.to_string()))?;
        let format: ReportFormat = text(format, "format")?
            .parse()
            .map_err(|e: String| Failure(MvStatus::Parse, e))?;
        let report = evaluate(doc, &manifest).map_err(|e| {
            let status = match e {
                EvalError::UnknownIds(_) => MvStatus::UnknownId,
                EvalError::InvalidBaseline(_) => MvStatus::Validation,
                EvalError::Incomplete(_) | EvalError::EmptyBatch => MvStatus::Internal,
            };
            Failure(status, e.to_string())
        })?;
        *report_out = to_c(render_report(&report, format))?;
        if !all_pass.is_null() {
            *all_pass = report.all_pass() as i32;
        }
        Ok(())
    })
}

/// Writes the navigator bundle JSON for the map.
///
/// # Safety
/// `map` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mv_export_bundle(map: *const MvMap, out: *mut *mut c_char) -> MvStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = ptr::null_mut();
        let bundle = export_bundle(handle(map)?, &ReprOptions::default()).map_err(build_failure)?;
        *out = to_c(bundle)?;
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failed call on this thread, or the empty
/// string after a successful one. The pointer stays valid until the next
/// call into the library on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn mv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn mv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
