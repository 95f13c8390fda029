//! C ABI for the `evenwilf` library.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible function
//! returns an [`EwStatus`]; on failure a description is available from
//! [`ew_last_error_message`] on the same thread. Strings returned by the
//! library are released with [`ew_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use evenwilf::bwx;
use evenwilf::verification::{self, CheckParams};
use evenwilf::{CountOptions, Error, FerrersShape, Permutation, Transversal};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EwStatus {
    Ok = 0,
    /// Text could not be parsed as a permutation or shape.
    ParseError = 1,
    /// An argument was out of range or inconsistent.
    InvalidArgument = 2,
    /// A resource budget (length, box size) was exceeded.
    BudgetExceeded = 3,
    /// The permutation is not a transversal of the shape.
    NotTransversal = 4,
    /// A required pointer argument was null.
    NullPointer = 5,
    /// No check with the given name exists.
    UnknownCheck = 6,
    /// Internal failure, including caught panics.
    Internal = 7,
}

/// Avoider counts split by sign.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EwCounts {
    pub total: u64,
    pub even: u64,
    pub odd: u64,
}

/// Opaque permutation handle.
pub struct EwPermutation(Permutation);

/// Opaque transversal handle.
pub struct EwTransversal(Transversal);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> EwStatus {
    match err {
        Error::Parse { .. } | Error::InvalidPermutation(_) | Error::InvalidShape(_) => {
            EwStatus::ParseError
        }
        Error::NotTransversal { .. } => EwStatus::NotTransversal,
        Error::LengthMismatch { .. } | Error::InvalidArgument(_) => EwStatus::InvalidArgument,
        Error::Budget { .. } => EwStatus::BudgetExceeded,
        Error::UnknownCheck { .. } => EwStatus::UnknownCheck,
        _ => EwStatus::Internal,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (EwStatus, String)>) -> EwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EwStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            EwStatus::Internal
        }
    }
}

fn lib<T>(r: evenwilf::Result<T>) -> Result<T, (EwStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (EwStatus, String) {
    (EwStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (EwStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (EwStatus::ParseError, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (EwStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn ew_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ew_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ew_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses one-line notation (`"2413"`, `"10 2 1 ..."`) into a new handle.
///
/// # Safety
/// `text_in` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ew_permutation_parse(
    text_in: *const c_char,
    out: *mut *mut EwPermutation,
) -> EwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p: Permutation = lib(text(text_in, "text")?.parse())?;
        *out = Box::into_raw(Box::new(EwPermutation(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn ew_permutation_free(p: *mut EwPermutation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Length of the permutation, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn ew_permutation_len(p: *const EwPermutation) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// 1 if even, 0 if odd, -1 for a null handle.
///
/// # Safety
/// `p` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn ew_permutation_is_even(p: *const EwPermutation) -> c_int {
    p.as_ref().map_or(-1, |p| c_int::from(p.0.sign().is_even()))
}

/// One-line notation as a new string (release with `ew_string_free`), or
/// null for a null handle.
///
/// # Safety
/// `p` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn ew_permutation_to_string(p: *const EwPermutation) -> *mut c_char {
    p.as_ref().map_or(ptr::null_mut(), |p| to_c_string(p.0.to_string()))
}

/// Views `perm` as a transversal of `shape` (row lengths, bottom row first,
/// e.g. `"5,5,3,2,2"`), or of the square when `shape` is null.
///
/// # Safety
/// `shape` must be null or NUL-terminated; `perm` a valid handle; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ew_transversal_new(
    shape: *const c_char,
    perm: *const EwPermutation,
    out: *mut *mut EwTransversal,
) -> EwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let perm = handle(perm, "perm")?.0.clone();
        let tr = if shape.is_null() {
            Transversal::square(perm)
        } else {
            let shape: FerrersShape = lib(text(shape, "shape")?.parse())?;
            lib(Transversal::new(shape, perm))?
        };
        *out = Box::into_raw(Box::new(EwTransversal(tr)));
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn ew_transversal_free(t: *mut EwTransversal) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Copies the underlying permutation into a new handle.
///
/// # Safety
/// `t` must be a valid handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ew_transversal_permutation(
    t: *const EwTransversal,
    out: *mut *mut EwPermutation,
) -> EwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let perm = handle(t, "transversal")?.0.perm().clone();
        *out = Box::into_raw(Box::new(EwPermutation(perm)));
        Ok(())
    })
}

/// Counts permutations of length `n` avoiding `pattern`.
///
/// # Safety
/// `pattern` must be a valid handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ew_count_avoiders(
    pattern: *const EwPermutation,
    n: usize,
    out: *mut EwCounts,
) -> EwStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let c = lib(evenwilf::count_avoiders(n, &handle(pattern, "pattern")?.0))?;
        *out = EwCounts {
            total: c.total,
            even: c.even,
            odd: c.odd,
        };
        Ok(())
    })
}

/// Counts transversals of `shape` avoiding `pattern`.
///
/// # Safety
/// `shape` must be NUL-terminated; `pattern` a valid handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ew_count_avoiders_shape(
    shape: *const c_char,
    pattern: *const EwPermutation,
    out: *mut EwCounts,
) -> EwStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let shape: FerrersShape = lib(text(shape, "shape")?.parse())?;
        let c = lib(evenwilf::count_avoiders_shape(&shape, &handle(pattern, "pattern")?.0))?;
        *out = EwCounts {
            total: c.total,
            even: c.even,
            odd: c.odd,
        };
        Ok(())
    })
}

/// Applies the starred map with copy size `t`: forward (`backward == 0`)
/// removes `J_t` copies, backward removes `F_t` copies. The number of single
/// steps is written to `steps` when it is not null.
///
/// # Safety
/// `input` must be a valid handle; `out` writable; `steps` null or writable.
#[no_mangle]
pub unsafe extern "C" fn ew_map(
    input: *const EwTransversal,
    t: usize,
    backward: c_int,
    out: *mut *mut EwTransversal,
    steps: *mut usize,
) -> EwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let tr = &handle(input, "input")?.0;
        let (image, trace) = if backward == 0 {
            lib(bwx::phi_star(tr, t))?
        } else {
            lib(bwx::psi_star(tr, t))?
        };
        if let Some(s) = steps.as_mut() {
            *s = trace.applications;
        }
        *out = Box::into_raw(Box::new(EwTransversal(image)));
        Ok(())
    })
}

/// Runs a named check. Zero for `t`, `box_size`, `max_n` or `k` selects the
/// check's default. The JSON report is written to `report_json` (release
/// with `ew_string_free`); a refutation is reported there, not as an error.
///
/// # Safety
/// `name` must be NUL-terminated; `report_json` writable.
#[no_mangle]
pub unsafe extern "C" fn ew_verify(
    name: *const c_char,
    t: usize,
    box_size: usize,
    max_n: usize,
    k: usize,
    report_json: *mut *mut c_char,
) -> EwStatus {
    guard(|| {
        if report_json.is_null() {
            return Err(null("report_json"));
        }
        let some = |v: usize| (v != 0).then_some(v);
        let params = CheckParams {
            t: some(t),
            box_size: some(box_size),
            max_n: some(max_n),
            k: some(k),
        };
        let report = lib(verification::run_check(
            text(name, "name")?,
            &params,
            &CountOptions::default(),
        ))?;
        let json = serde_json::to_string(&report).map_err(|e| (EwStatus::Internal, e.to_string()))?;
        *report_json = to_c_string(json);
        Ok(())
    })
}
