//! C interface to the atlas builder.
//!
//! Cases and atlases are opaque handles owned by the caller and released with
//! the matching `_free` function. Every fallible call returns a [`BsStatus`];
//! the message of the most recent failure on the calling thread is available
//! from [`bs_last_error_message`]. Strings returned by the library must be
//! released with [`bs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bruhat_strata::io::{emit_dot, parse_case, preset, AtlasDocument};
use bruhat_strata::oracle::verify_atlas;
use bruhat_strata::{build_atlas, Atlas, Error, PelCase};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsStatus {
    Ok = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
    BoundExceeded = 3,
    NullPointer = 4,
    Internal = 5,
}

/// A validated input case.
pub struct BsCase {
    inner: PelCase,
}

/// A computed stratification atlas.
pub struct BsAtlas {
    inner: Atlas,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(error: &Error) -> BsStatus {
    match error {
        Error::BoundExceeded { .. } => BsStatus::BoundExceeded,
        Error::Internal(_) | Error::Io(_) => BsStatus::Internal,
        _ => BsStatus::InvalidInput,
    }
}

fn fail(error: Error) -> BsStatus {
    let status = status_of(&error);
    set_error(error.to_string());
    status
}

fn guarded<F: FnOnce() -> BsStatus>(body: F) -> BsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("panic inside the library");
            BsStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, BsStatus> {
    if text.is_null() {
        set_error("null string argument");
        return Err(BsStatus::NullPointer);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        BsStatus::InvalidInput
    })
}

unsafe fn read_atlas<'a>(atlas: *const BsAtlas) -> Result<&'a Atlas, BsStatus> {
    atlas.as_ref().map(|a| &a.inner).ok_or_else(|| {
        set_error("null atlas handle");
        BsStatus::NullPointer
    })
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text).map_or(ptr::null_mut(), CString::into_raw)
}

fn emit_case(result: Result<PelCase, Error>, out: *mut *mut BsCase) -> BsStatus {
    match result {
        Ok(case) => {
            // SAFETY: checked non-null by the callers.
            unsafe { *out = Box::into_raw(Box::new(BsCase { inner: case })) };
            BsStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Parses a JSON case document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bs_case_from_json(json: *const c_char, out: *mut *mut BsCase) -> BsStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return BsStatus::NullPointer;
        }
        match read_str(json) {
            Ok(text) => emit_case(parse_case(text), out),
            Err(status) => status,
        }
    })
}

/// Expands a named preset such as `siegel:3` or `gu:2,1:inert`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bs_case_from_preset(name: *const c_char, out: *mut *mut BsCase) -> BsStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return BsStatus::NullPointer;
        }
        match read_str(name) {
            Ok(text) => emit_case(preset(text), out),
            Err(status) => status,
        }
    })
}

/// # Safety
/// `case` must be null or a handle from `bs_case_from_*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bs_case_free(case: *mut BsCase) {
    if !case.is_null() {
        drop(Box::from_raw(case));
    }
}

/// Builds the atlas of a case.
///
/// # Safety
/// `case` must be a live case handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bs_atlas_build(case: *const BsCase, out: *mut *mut BsAtlas) -> BsStatus {
    guarded(|| {
        let Some(case) = case.as_ref() else {
            set_error("null case handle");
            return BsStatus::NullPointer;
        };
        if out.is_null() {
            set_error("null output pointer");
            return BsStatus::NullPointer;
        }
        match build_atlas(&case.inner) {
            Ok(atlas) => {
                *out = Box::into_raw(Box::new(BsAtlas { inner: atlas }));
                BsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `atlas` must be null or a handle from `bs_atlas_build` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bs_atlas_free(atlas: *mut BsAtlas) {
    if !atlas.is_null() {
        drop(Box::from_raw(atlas));
    }
}

/// Number of strata, or 0 for a null handle.
///
/// # Safety
/// `atlas` must be null or a live atlas handle.
#[no_mangle]
pub unsafe extern "C" fn bs_atlas_stratum_count(atlas: *const BsAtlas) -> usize {
    atlas.as_ref().map_or(0, |a| a.inner.strata.len())
}

unsafe fn stratum_field(
    atlas: *const BsAtlas,
    id: usize,
    out: *mut usize,
    field: impl Fn(&bruhat_strata::StratumRecord) -> usize,
) -> BsStatus {
    guarded(|| {
        let atlas = match read_atlas(atlas) {
            Ok(a) => a,
            Err(status) => return status,
        };
        if out.is_null() {
            set_error("null output pointer");
            return BsStatus::NullPointer;
        }
        match atlas.strata.get(id) {
            Some(s) => {
                *out = field(s);
                BsStatus::Ok
            }
            None => fail(Error::UnknownStratum { id, count: atlas.strata.len() }),
        }
    })
}

/// Dimension of stratum `id`.
///
/// # Safety
/// `atlas` must be a live atlas handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bs_atlas_stratum_dim(atlas: *const BsAtlas, id: usize, out: *mut usize) -> BsStatus {
    stratum_field(atlas, id, out, |s| s.dim)
}

/// Number of Ekedahl-Oort strata contained in stratum `id`.
///
/// # Safety
/// `atlas` must be a live atlas handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bs_atlas_stratum_eo_count(atlas: *const BsAtlas, id: usize, out: *mut usize) -> BsStatus {
    stratum_field(atlas, id, out, |s| s.eo_fiber.len())
}

/// Dimension of the whole special fiber.
///
/// # Safety
/// `atlas` must be a live atlas handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bs_atlas_moduli_dim(atlas: *const BsAtlas, out: *mut usize) -> BsStatus {
    guarded(|| match read_atlas(atlas) {
        Ok(_) if out.is_null() => {
            set_error("null output pointer");
            BsStatus::NullPointer
        }
        Ok(a) => {
            *out = a.moduli_dim;
            BsStatus::Ok
        }
        Err(status) => status,
    })
}

/// Whether the ordinary locus is non-empty.
///
/// # Safety
/// `atlas` must be a live atlas handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bs_atlas_mu_ordinary(atlas: *const BsAtlas, out: *mut bool) -> BsStatus {
    guarded(|| match read_atlas(atlas) {
        Ok(_) if out.is_null() => {
            set_error("null output pointer");
            BsStatus::NullPointer
        }
        Ok(a) => {
            *out = a.mu_ordinary.verdict();
            BsStatus::Ok
        }
        Err(status) => status,
    })
}

/// The atlas as a JSON document, or null on failure.
///
/// # Safety
/// `atlas` must be a live atlas handle.
#[no_mangle]
pub unsafe extern "C" fn bs_atlas_to_json(atlas: *const BsAtlas) -> *mut c_char {
    match read_atlas(atlas) {
        Ok(a) => catch_unwind(AssertUnwindSafe(|| into_c_string(AtlasDocument::from_atlas(a).to_json())))
            .unwrap_or(ptr::null_mut()),
        Err(_) => ptr::null_mut(),
    }
}

/// The Hasse diagram in Graphviz syntax, or null on failure.
///
/// # Safety
/// `atlas` must be a live atlas handle.
#[no_mangle]
pub unsafe extern "C" fn bs_atlas_to_dot(atlas: *const BsAtlas) -> *mut c_char {
    match read_atlas(atlas) {
        Ok(a) => catch_unwind(AssertUnwindSafe(|| into_c_string(emit_dot(a)))).unwrap_or(ptr::null_mut()),
        Err(_) => ptr::null_mut(),
    }
}

/// Re-derives the atlas by brute force. Returns `BS_STATUS_VERIFICATION_FAILED`
/// with the first failing check in the error message if anything disagrees.
///
/// # Safety
/// `atlas` must be a live atlas handle.
#[no_mangle]
pub unsafe extern "C" fn bs_atlas_verify(atlas: *const BsAtlas) -> BsStatus {
    guarded(|| {
        let atlas = match read_atlas(atlas) {
            Ok(a) => a,
            Err(status) => return status,
        };
        match verify_atlas(atlas) {
            Ok(report) => match report.failures().next() {
                None => BsStatus::Ok,
                Some(check) => {
                    set_error(format!(
                        "{} failed: {}",
                        check.name,
                        check.counterexample.as_deref().unwrap_or("no counterexample")
                    ));
                    BsStatus::VerificationFailed
                }
            },
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `text` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bs_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
