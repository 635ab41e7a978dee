//! C interface to `hermlie`.
//!
//! Groups are opaque handles created by `hermlie_group_from_preset` or
//! `hermlie_group_from_json` and released with `hermlie_group_free`. Every
//! fallible call returns a status code; on failure a message is available
//! from `hermlie_last_error` until the next call on the same thread.
//! Strings returned through `char **` are owned by the caller and must be
//! released with `hermlie_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hermlie::cli::presets::ResolvedGroup;
use hermlie::cli::spec::GroupSpec;
use hermlie::cli::{report_json, EXIT_INPUT};
use hermlie::dolbeault;

/// Every check passed.
pub const HERMLIE_OK: i32 = 0;
/// At least one identity failed.
pub const HERMLIE_IDENTITY_FAILURE: i32 = 1;
/// The input was rejected.
pub const HERMLIE_INVALID_INPUT: i32 = 2;
/// A spectral-gap warning left the result inconclusive.
pub const HERMLIE_INCONCLUSIVE: i32 = 3;
/// A required pointer argument was null.
pub const HERMLIE_NULL_POINTER: i32 = -1;
/// The caller's buffer is too short; the required length was written.
pub const HERMLIE_BUFFER_TOO_SMALL: i32 = -2;
/// A string argument was not valid UTF-8.
pub const HERMLIE_INVALID_UTF8: i32 = -3;
/// Internal panic caught at the boundary.
pub const HERMLIE_PANIC: i32 = -4;

/// A resolved Hermitian Lie algebra with its Samelson frame.
pub struct HermlieGroup {
    spec: GroupSpec,
    group: ResolvedGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> i32) -> i32 {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            HERMLIE_PANIC
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, i32> {
    if p.is_null() {
        set_error("null string argument");
        return Err(HERMLIE_NULL_POINTER);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        HERMLIE_INVALID_UTF8
    })
}

unsafe fn create(spec: GroupSpec, out: *mut *mut HermlieGroup) -> i32 {
    match spec.resolve() {
        Ok(group) => {
            *out = Box::into_raw(Box::new(HermlieGroup { spec, group }));
            HERMLIE_OK
        }
        Err(e) => {
            set_error(e.to_string());
            HERMLIE_INVALID_INPUT
        }
    }
}

unsafe fn give_string(s: String, out: *mut *mut c_char) {
    *out = CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw();
}

/// Resolves a built-in group such as `"su2xu1"`.
///
/// # Safety
/// `id` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hermlie_group_from_preset(
    id: *const c_char,
    out: *mut *mut HermlieGroup,
) -> i32 {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return HERMLIE_NULL_POINTER;
        }
        *out = ptr::null_mut();
        match read_str(id) {
            Ok(id) => create(GroupSpec::from_preset(id), out),
            Err(code) => code,
        }
    })
}

/// Resolves a group-spec JSON document.
///
/// # Safety
/// `json` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hermlie_group_from_json(
    json: *const c_char,
    out: *mut *mut HermlieGroup,
) -> i32 {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return HERMLIE_NULL_POINTER;
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(code) => return code,
        };
        match GroupSpec::from_json(text) {
            Ok(spec) => create(spec, out),
            Err(e) => {
                set_error(e.to_string());
                HERMLIE_INVALID_INPUT
            }
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `group` must come from a constructor above and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hermlie_group_free(group: *mut HermlieGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Real and complex dimension.
///
/// # Safety
/// `group` must be a live handle; the output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn hermlie_group_dimension(
    group: *const HermlieGroup,
    real_dim: *mut usize,
    complex_dim: *mut usize,
) -> i32 {
    guard(|| {
        if group.is_null() || real_dim.is_null() || complex_dim.is_null() {
            set_error("null pointer argument");
            return HERMLIE_NULL_POINTER;
        }
        let g = &(*group).group;
        *real_dim = g.real_dim();
        *complex_dim = g.n();
        HERMLIE_OK
    })
}

/// Writes `h^{0,0}, …, h^{0,n}` into `buf`. `*written` receives `n + 1`
/// even when `len` is too small, in which case nothing else is written and
/// `HERMLIE_BUFFER_TOO_SMALL` is returned. Returns `HERMLIE_IDENTITY_FAILURE`
/// if the numbers disagree with `C(r, p)` and `HERMLIE_INCONCLUSIVE` on a
/// spectral-gap warning; the numbers are written in both cases.
///
/// # Safety
/// `group` must be a live handle, `buf` valid for `len` elements, `written` writable.
#[no_mangle]
pub unsafe extern "C" fn hermlie_hodge_numbers(
    group: *const HermlieGroup,
    buf: *mut usize,
    len: usize,
    written: *mut usize,
) -> i32 {
    guard(|| {
        if group.is_null() || written.is_null() {
            set_error("null pointer argument");
            return HERMLIE_NULL_POINTER;
        }
        let g = &(*group).group;
        let h = match dolbeault::hodge_numbers(&g.alg, &g.frame) {
            Ok(h) => h,
            Err(e) => {
                set_error(e.to_string());
                return HERMLIE_INVALID_INPUT;
            }
        };
        *written = h.numbers.len();
        if len < h.numbers.len() {
            set_error(format!("buffer holds {len}, need {}", h.numbers.len()));
            return HERMLIE_BUFFER_TOO_SMALL;
        }
        if buf.is_null() {
            set_error("null buffer");
            return HERMLIE_NULL_POINTER;
        }
        for (i, &v) in h.numbers.iter().enumerate() {
            *buf.add(i) = v;
        }
        if !h.matches_prediction() {
            HERMLIE_IDENTITY_FAILURE
        } else if !h.conclusive() {
            HERMLIE_INCONCLUSIVE
        } else {
            HERMLIE_OK
        }
    })
}

/// Runs verification suites (`"all"` or a comma-separated list) and returns
/// the JSON report through `out_json`. The return value is the report's exit
/// code.
///
/// # Safety
/// `group` must be a live handle, `suites` a valid C string, `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn hermlie_verify_json(
    group: *const HermlieGroup,
    suites: *const c_char,
    seed: u64,
    tol: f64,
    out_json: *mut *mut c_char,
) -> i32 {
    guard(|| {
        if group.is_null() || out_json.is_null() {
            set_error("null pointer argument");
            return HERMLIE_NULL_POINTER;
        }
        *out_json = ptr::null_mut();
        let suites = match read_str(suites) {
            Ok(s) => s,
            Err(code) => return code,
        };
        if !(tol > 0.0) {
            set_error("tolerance must be positive");
            return HERMLIE_INVALID_INPUT;
        }
        let (text, code) = report_json("verify", &(*group).spec, suites, seed, tol);
        if code == EXIT_INPUT {
            set_error("verification rejected its input; see the report's error field");
        }
        give_string(text, out_json);
        code
    })
}

/// Validates a group-spec JSON document (algebra axioms and Samelson frame)
/// without creating a handle. The JSON report is returned through `out_json`
/// whenever the document parses.
///
/// # Safety
/// `json` must be a valid C string; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hermlie_validate_json(
    json: *const c_char,
    out_json: *mut *mut c_char,
) -> i32 {
    guard(|| {
        if out_json.is_null() {
            set_error("null output pointer");
            return HERMLIE_NULL_POINTER;
        }
        *out_json = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(code) => return code,
        };
        let spec = match GroupSpec::from_json(text) {
            Ok(s) => s,
            Err(e) => {
                set_error(e.to_string());
                return HERMLIE_INVALID_INPUT;
            }
        };
        let (report, code) =
            report_json("validate", &spec, "all", 0, hermlie::hermitian::DEFAULT_TOL);
        if code != HERMLIE_OK {
            set_error("validation failed; see the report");
        }
        give_string(report, out_json);
        code
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hermlie_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failing call on this thread, or null. The pointer is
/// valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn hermlie_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
