//! C ABI for `halfint`.
//!
//! Series cross the boundary as opaque `HalfintSeries` handles owned by the
//! caller and released with `halfint_series_free`. Every fallible call
//! returns a `HalfintStatus`; on failure the message is available from
//! `halfint_last_error` until the next failing call on the same thread.
//! Strings returned through out-parameters are released with
//! `halfint_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use halfint::cuspgeom::{base_change_holds, counterexample_scan, genus_gamma1};
use halfint::heckeops::{t_l2_closed, u_p2, HeckeContext};
use halfint::thetaforms::{theta_series, theta_unit, AdjustedExpansion, ThetaUnitVariant};
use halfint::{Error, QSeries};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfintStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DivisionByZero = 3,
    NotInvertible = 4,
    BeyondPrecision = 5,
    FractionalSupport = 6,
    InvalidLevel = 7,
    InvalidWeight = 8,
    Parse = 9,
    Panic = 10,
}

/// Kinds of modular unit accepted by `halfint_theta_unit`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfintUnitKind {
    /// `a = m`, `b = t`.
    GenericM = 0,
    /// `a = l`; `b` ignored.
    SubgroupZeta = 1,
    /// `a = l`, `b = j`.
    SubgroupZetaQ = 2,
    /// `a = l`, `b = t`.
    PrimeLevel = 3,
}

/// Opaque q-series handle.
pub struct HalfintSeries {
    inner: QSeries,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HalfintStatus {
    match e {
        Error::DivisionByZero => HalfintStatus::DivisionByZero,
        Error::NotInvertible => HalfintStatus::NotInvertible,
        Error::BeyondPrecision { .. } => HalfintStatus::BeyondPrecision,
        Error::FractionalSupport => HalfintStatus::FractionalSupport,
        Error::InvalidLevel(_) => HalfintStatus::InvalidLevel,
        Error::InvalidWeight(_) | Error::WeightMismatch { .. } => HalfintStatus::InvalidWeight,
        Error::Parse(_) => HalfintStatus::Parse,
        _ => HalfintStatus::InvalidArgument,
    }
}

fn fail(status: HalfintStatus, msg: &str) -> HalfintStatus {
    set_error(msg);
    status
}

fn guard<F: FnOnce() -> Result<(), HalfintStatus>>(f: F) -> HalfintStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HalfintStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(HalfintStatus::Panic, "internal panic"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, HalfintStatus>;
}

impl<T> OrStatus<T> for halfint::Result<T> {
    fn or_status(self) -> Result<T, HalfintStatus> {
        self.map_err(|e| fail(status_of(&e), &e.to_string()))
    }
}

unsafe fn series_ref<'a>(p: *const HalfintSeries) -> Result<&'a QSeries, HalfintStatus> {
    p.as_ref()
        .map(|s| &s.inner)
        .ok_or_else(|| fail(HalfintStatus::NullPointer, "null series handle"))
}

unsafe fn emit_series(out: *mut *mut HalfintSeries, s: QSeries) -> Result<(), HalfintStatus> {
    if out.is_null() {
        return Err(fail(HalfintStatus::NullPointer, "null output pointer"));
    }
    *out = Box::into_raw(Box::new(HalfintSeries { inner: s }));
    Ok(())
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), HalfintStatus> {
    if out.is_null() {
        return Err(fail(HalfintStatus::NullPointer, "null output pointer"));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

unsafe fn emit<T>(out: *mut T, v: T) -> Result<(), HalfintStatus> {
    if out.is_null() {
        return Err(fail(HalfintStatus::NullPointer, "null output pointer"));
    }
    *out = v;
    Ok(())
}

/// Message of the most recent failure on this thread; empty if none.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn halfint_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn halfint_status_str(status: HalfintStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        HalfintStatus::Ok => b"ok\0",
        HalfintStatus::NullPointer => b"null pointer\0",
        HalfintStatus::InvalidArgument => b"invalid argument\0",
        HalfintStatus::DivisionByZero => b"division by zero\0",
        HalfintStatus::NotInvertible => b"series not invertible\0",
        HalfintStatus::BeyondPrecision => b"beyond known precision\0",
        HalfintStatus::FractionalSupport => b"fractional exponents present\0",
        HalfintStatus::InvalidLevel => b"invalid level\0",
        HalfintStatus::InvalidWeight => b"invalid weight\0",
        HalfintStatus::Parse => b"parse error\0",
        HalfintStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}

/// `Σ q^{n²}` known below `q^prec`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn halfint_theta_series(prec: i64, out: *mut *mut HalfintSeries) -> HalfintStatus {
    guard(|| emit_series(out, theta_series(prec)))
}

/// Expansion of a modular unit; see `HalfintUnitKind` for `a` and `b`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn halfint_theta_unit(
    kind: HalfintUnitKind,
    a: u64,
    b: i64,
    prec: i64,
    out: *mut *mut HalfintSeries,
) -> HalfintStatus {
    guard(|| {
        let v = match kind {
            HalfintUnitKind::GenericM => ThetaUnitVariant::GenericM { m: a, t: b },
            HalfintUnitKind::SubgroupZeta => ThetaUnitVariant::SubgroupZeta { l: a },
            HalfintUnitKind::SubgroupZetaQ => ThetaUnitVariant::SubgroupZetaQ { l: a, j: b },
            HalfintUnitKind::PrimeLevel => ThetaUnitVariant::PrimeLevel { l: a, t: b },
        };
        emit_series(out, theta_unit(v, prec).or_status()?)
    })
}

/// Parse a series from its JSON form.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn halfint_series_from_json(
    json: *const c_char,
    out: *mut *mut HalfintSeries,
) -> HalfintStatus {
    guard(|| {
        if json.is_null() {
            return Err(fail(HalfintStatus::NullPointer, "null string"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| fail(HalfintStatus::Parse, &e.to_string()))?;
        let s: QSeries =
            serde_json::from_str(text).map_err(|e| fail(HalfintStatus::Parse, &e.to_string()))?;
        emit_series(out, s)
    })
}

/// JSON form of a series; release with `halfint_string_free`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn halfint_series_to_json(
    s: *const HalfintSeries,
    out: *mut *mut c_char,
) -> HalfintStatus {
    guard(|| {
        let s = series_ref(s)?;
        let text = serde_json::to_string(s).map_err(|e| fail(HalfintStatus::Parse, &e.to_string()))?;
        emit_string(out, text)
    })
}

/// Human-readable form such as `1+2q+2q^4+O(q^5)`; release with `halfint_string_free`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn halfint_series_to_string(
    s: *const HalfintSeries,
    out: *mut *mut c_char,
) -> HalfintStatus {
    guard(|| emit_string(out, series_ref(s)?.to_string()))
}

/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn halfint_series_add(
    a: *const HalfintSeries,
    b: *const HalfintSeries,
    out: *mut *mut HalfintSeries,
) -> HalfintStatus {
    guard(|| emit_series(out, series_ref(a)?.add(series_ref(b)?)))
}

/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn halfint_series_mul(
    a: *const HalfintSeries,
    b: *const HalfintSeries,
    out: *mut *mut HalfintSeries,
) -> HalfintStatus {
    guard(|| emit_series(out, series_ref(a)?.mul(series_ref(b)?)))
}

/// Inverse known below `min(target_prec, P − 2v)` on the series' grid.
///
/// # Safety
/// `a` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn halfint_series_inv(
    a: *const HalfintSeries,
    target_prec: i64,
    out: *mut *mut HalfintSeries,
) -> HalfintStatus {
    guard(|| emit_series(out, series_ref(a)?.inv(target_prec).or_status()?))
}

/// Precision numerator `P` and grid `D`: coefficients below `q^{P/D}` are known.
///
/// # Safety
/// `s` must be live; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn halfint_series_precision(
    s: *const HalfintSeries,
    prec: *mut i64,
    denom: *mut u64,
) -> HalfintStatus {
    guard(|| {
        let s = series_ref(s)?;
        emit(prec, s.prec())?;
        emit(denom, s.denom())
    })
}

/// `T_{l²}` with trivial character at level `4N`, weight `k/2`.
///
/// # Safety
/// `a` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn halfint_hecke_t2(
    a: *const HalfintSeries,
    level: u64,
    k: i64,
    l: u64,
    out: *mut *mut HalfintSeries,
) -> HalfintStatus {
    guard(|| {
        let ctx = HeckeContext::trivial(level, k).or_status()?;
        let adj = AdjustedExpansion::new(series_ref(a)?.clone(), k).or_status()?;
        emit_series(out, t_l2_closed(&adj, &ctx, l).or_status()?.series)
    })
}

/// `Σ a_n qⁿ ↦ Σ a_{p²n} qⁿ`.
///
/// # Safety
/// `a` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn halfint_hecke_up2(
    a: *const HalfintSeries,
    p: u64,
    out: *mut *mut HalfintSeries,
) -> HalfintStatus {
    guard(|| {
        let adj = AdjustedExpansion::new(series_ref(a)?.clone(), 1).or_status()?;
        emit_series(out, u_p2(&adj, p).or_status()?.series)
    })
}

/// Writes the least failing level `≤ max_level`, or 0 when none fails.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn halfint_counterexample_scan(
    k: i64,
    max_level: u64,
    out: *mut u64,
) -> HalfintStatus {
    guard(|| emit(out, counterexample_scan(k, max_level).or_status()?.unwrap_or(0)))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn halfint_base_change_holds(
    four_n: u64,
    k: i64,
    out: *mut bool,
) -> HalfintStatus {
    guard(|| emit(out, base_change_holds(four_n, k).or_status()?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn halfint_genus_gamma1(m: u64, out: *mut i64) -> HalfintStatus {
    guard(|| emit(out, genus_gamma1(m).or_status()?))
}

/// Release a series handle; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn halfint_series_free(s: *mut HalfintSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Release a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn halfint_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
