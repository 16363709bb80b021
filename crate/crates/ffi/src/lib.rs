//! C ABI for `wavinv`.
//!
//! Step functions live behind an opaque [`WavinvFunction`] handle. Every
//! call returns a [`WavinvStatus`]; on failure a message is kept per thread
//! and can be read with [`wavinv_last_error`]. Strings handed out by the
//! library must be released with [`wavinv_string_free`], handles with
//! [`wavinv_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use wavinv::construct::{gamma_n, psi_n, random_sn_wavelet, shannon, w_n, Family};
use wavinv::verify::{check_sn_characterization, classify, hit_table, verify_wavelet};
use wavinv::{Error, StepFunction};

/// Opaque handle to an exact step function on the frequency side.
pub struct WavinvFunction {
    inner: StepFunction,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WavinvStatus {
    Ok = 0,
    /// The check ran and failed; any report was still written.
    NotVerified = 1,
    Domain = 2,
    Parse = 3,
    NullPointer = 4,
    SupportTouchesOrigin = 5,
    UnsupportedPhase = 6,
    InvalidInput = 7,
    Internal = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> WavinvStatus {
    match e {
        Error::Domain(_) | Error::Profile(_) | Error::AmplitudeField(_) => WavinvStatus::Domain,
        Error::SupportTouchesOrigin { .. } => WavinvStatus::SupportTouchesOrigin,
        Error::UnsupportedPhase { .. } => WavinvStatus::UnsupportedPhase,
        Error::NotVerified => WavinvStatus::NotVerified,
        Error::EmptyInterval { .. } | Error::OverlappingPieces { .. } | Error::ValueField(_) => {
            WavinvStatus::InvalidInput
        }
    }
}

fn fail(e: Error) -> WavinvStatus {
    set_error(e.to_string());
    status_of(&e)
}

/// Runs `body`, turning panics into `Internal` and clearing stale messages
/// on success.
fn guard(body: impl FnOnce() -> WavinvStatus) -> WavinvStatus {
    match panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => {
            if status == WavinvStatus::Ok {
                LAST_ERROR.with(|e| *e.borrow_mut() = None);
            }
            status
        }
        Err(_) => {
            set_error("internal panic");
            WavinvStatus::Internal
        }
    }
}

unsafe fn handle<'a>(f: *const WavinvFunction) -> Option<&'a StepFunction> {
    f.as_ref().map(|h| &h.inner)
}

unsafe fn c_str<'a>(s: *const c_char) -> Result<&'a str, WavinvStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(WavinvStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        WavinvStatus::Parse
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("JSON has no interior NUL")
        .into_raw()
}

unsafe fn put_json<T: serde::Serialize>(value: &T, out: *mut *mut c_char) {
    if !out.is_null() {
        let v = serde_json::to_value(value).expect("serializable");
        *out = into_c_string(v.to_string());
    }
}

unsafe fn put_handle(f: StepFunction, out: *mut *mut WavinvFunction) -> WavinvStatus {
    *out = Box::into_raw(Box::new(WavinvFunction { inner: f }));
    WavinvStatus::Ok
}

/// Builds a named family (`gamma`, `psi`, `w`, `shannon`). `n` is ignored
/// for `shannon`.
///
/// # Safety
/// `family` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wavinv_construct(
    family: *const c_char,
    n: u32,
    out: *mut *mut WavinvFunction,
) -> WavinvStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return WavinvStatus::NullPointer;
        }
        let name = match c_str(family) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let built = name.parse::<Family>().and_then(|fam| match fam {
            Family::Gamma => gamma_n(n),
            Family::Psi => psi_n(n),
            Family::W => w_n(n),
            Family::Shannon => Ok(shannon()),
            Family::Random => Err(Error::Domain("use wavinv_construct_random".into())),
        });
        match built {
            Ok(f) => put_handle(f, out),
            Err(e) => fail(e),
        }
    })
}

/// Seeded random wavelet supported in `S_n` with `cells` profile cells.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wavinv_construct_random(
    n: u32,
    cells: usize,
    seed: u64,
    out: *mut *mut WavinvFunction,
) -> WavinvStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return WavinvStatus::NullPointer;
        }
        match random_sn_wavelet(n, cells, seed) {
            Ok(f) => put_handle(f, out),
            Err(e) => fail(e),
        }
    })
}

/// Parses the StepFunction JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wavinv_from_json(
    json: *const c_char,
    out: *mut *mut WavinvFunction,
) -> WavinvStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return WavinvStatus::NullPointer;
        }
        let text = match c_str(json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match serde_json::from_str::<StepFunction>(text) {
            Ok(f) => put_handle(f, out),
            Err(e) => {
                set_error(e.to_string());
                WavinvStatus::Parse
            }
        }
    })
}

/// Canonical JSON for the function.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wavinv_to_json(
    f: *const WavinvFunction,
    out: *mut *mut c_char,
) -> WavinvStatus {
    guard(|| match handle(f) {
        Some(f) if !out.is_null() => {
            put_json(f, out);
            WavinvStatus::Ok
        }
        _ => {
            set_error("null argument");
            WavinvStatus::NullPointer
        }
    })
}

/// Exact wavelet verification. Writes the overall verdict to `overall` and,
/// when `report` is non-null, the report JSON. Returns `NotVerified` when
/// the function is not a wavelet.
///
/// # Safety
/// `f` must be a live handle; `overall` and `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn wavinv_verify(
    f: *const WavinvFunction,
    overall: *mut bool,
    report: *mut *mut c_char,
) -> WavinvStatus {
    guard(|| {
        let Some(f) = handle(f) else {
            set_error("null handle");
            return WavinvStatus::NullPointer;
        };
        match verify_wavelet(f) {
            Ok(r) => {
                if !overall.is_null() {
                    *overall = r.overall;
                }
                put_json(&r, report);
                if r.overall {
                    WavinvStatus::Ok
                } else {
                    set_error("not an orthonormal wavelet");
                    WavinvStatus::NotVerified
                }
            }
            Err(e) => fail(e),
        }
    })
}

/// Class label JSON of a verified wavelet.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wavinv_classify(
    f: *const WavinvFunction,
    out: *mut *mut c_char,
) -> WavinvStatus {
    guard(|| {
        let Some(f) = handle(f) else {
            set_error("null handle");
            return WavinvStatus::NullPointer;
        };
        if out.is_null() {
            set_error("null output pointer");
            return WavinvStatus::NullPointer;
        }
        match classify(f) {
            Ok(label) => {
                put_json(&label, out);
                WavinvStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Hit table JSON.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wavinv_hit_table(
    f: *const WavinvFunction,
    out: *mut *mut c_char,
) -> WavinvStatus {
    guard(|| {
        let Some(f) = handle(f) else {
            set_error("null handle");
            return WavinvStatus::NullPointer;
        };
        if out.is_null() {
            set_error("null output pointer");
            return WavinvStatus::NullPointer;
        }
        match hit_table(f) {
            Ok(t) => {
                put_json(&t, out);
                WavinvStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Support-in-`S_n` characterization. Same reporting contract as
/// [`wavinv_verify`].
///
/// # Safety
/// `f` must be a live handle; `all_hold` and `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn wavinv_sncheck(
    f: *const WavinvFunction,
    n: u32,
    all_hold: *mut bool,
    report: *mut *mut c_char,
) -> WavinvStatus {
    guard(|| {
        let Some(f) = handle(f) else {
            set_error("null handle");
            return WavinvStatus::NullPointer;
        };
        match check_sn_characterization(f, n) {
            Ok(r) => {
                if !all_hold.is_null() {
                    *all_hold = r.all_hold;
                }
                put_json(&r, report);
                if r.all_hold {
                    WavinvStatus::Ok
                } else {
                    set_error("characterization fails");
                    WavinvStatus::NotVerified
                }
            }
            Err(e) => fail(e),
        }
    })
}

/// Message for the last failing call on this thread, or null. The pointer
/// stays valid until the next call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn wavinv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `f` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wavinv_free(f: *mut WavinvFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wavinv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
