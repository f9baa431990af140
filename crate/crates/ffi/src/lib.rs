//! C ABI over `fixdisc`.
//!
//! Maps are opaque `FdMap` handles created by `fd_map_from_json`,
//! `fd_map_from_file`, `fd_map_power` or `fd_activation_build` and released
//! with `fd_map_free`. Every fallible call returns an `FdStatus`; on failure
//! `fd_last_error_message` describes the most recent error on the calling
//! thread. Strings returned by the library are released with `fd_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fixdisc::activations::{self, FixedSet, MexicanHatParams, Tails};
use fixdisc::contraction::{compute, ContractionKind, KindName};
use fixdisc::discontinuity::{classify_at, ContinuityStatus};
use fixdisc::format;
use fixdisc::metric::usual_metric;
use fixdisc::numerics::SelfMap;
use fixdisc::picard::{iterate, IterateOptions};
use fixdisc::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    InvalidFunction = 5,
    Spec = 6,
    Param = 7,
    NotFixedPoint = 8,
    NotFixedCircle = 9,
    Io = 10,
    BufferTooSmall = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdKind {
    M1 = 0,
    M2 = 1,
    Pant = 2,
    BpM = 3,
    BpN = 4,
    Rhoades = 5,
    Dist = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdContinuity {
    Continuous = 0,
    DiscontinuousLimit = 1,
    DiscontinuousNoLimit = 2,
}

/// Opaque self-map handle.
pub struct FdMap {
    inner: SelfMap,
}

/// A component of the fixed-point set. Isolated points have `lo == hi`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdFixedSet {
    pub lo: f64,
    pub hi: f64,
    pub lo_inc: bool,
    pub hi_inc: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdOrbitSummary {
    pub converged: bool,
    /// Last iterate; the limit when `converged`.
    pub last: f64,
    pub iterations: usize,
    /// Last step `d(x_{n-1}, x_n)`.
    pub last_step: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdVerdict {
    pub status: FdContinuity,
    pub has_left: bool,
    pub left: f64,
    pub has_right: bool,
    pub right: f64,
}

/// Mexican-hat parameters. With `discontinuous` false both tails are the
/// constant `m`; otherwise the left tail is `u` and the right tail `v`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdMexicanHat {
    pub p: f64,
    pub r: f64,
    pub q: f64,
    pub l1: f64,
    pub c1: f64,
    pub l2: f64,
    pub c2: f64,
    pub discontinuous: bool,
    pub m: f64,
    pub u: f64,
    pub v: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> FdStatus {
    match err {
        Error::Domain(_) => FdStatus::Domain,
        Error::InvalidFunction(_) => FdStatus::InvalidFunction,
        Error::Spec(_) => FdStatus::Spec,
        Error::Param(_) => FdStatus::Param,
        Error::NotFixedPoint { .. } => FdStatus::NotFixedPoint,
        Error::NotFixedCircle { .. } => FdStatus::NotFixedCircle,
        Error::Parse(_) => FdStatus::Parse,
        Error::Io(_) => FdStatus::Io,
    }
}

struct Fail(FdStatus, String);

impl From<Error> for Fail {
    fn from(err: Error) -> Self {
        Fail(status_of(&err), err.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(FdStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> FdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FdStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FdStatus::Panic
        }
    }
}

unsafe fn map_ref<'a>(map: *const FdMap) -> Result<&'a SelfMap, Fail> {
    map.as_ref().map(|m| &m.inner).ok_or_else(|| null("map"))
}

unsafe fn out_ref<'a, T>(out: *mut T) -> Result<&'a mut T, Fail> {
    out.as_mut().ok_or_else(|| null("output pointer"))
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null("string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fail(FdStatus::InvalidUtf8, e.to_string()))
}

fn boxed(map: SelfMap) -> *mut FdMap {
    Box::into_raw(Box::new(FdMap { inner: map }))
}

fn kind_of(kind: FdKind, power: u32, alpha: f64) -> Result<ContractionKind, Error> {
    let name = match kind {
        FdKind::M1 => KindName::M1,
        FdKind::M2 => KindName::M2,
        FdKind::Pant => KindName::Pant,
        FdKind::BpM => KindName::BpM,
        FdKind::BpN => KindName::BpN,
        FdKind::Rhoades => KindName::Rhoades,
        FdKind::Dist => KindName::Dist,
    };
    let alpha = (kind == FdKind::BpN).then_some(alpha);
    ContractionKind::new(name, power, alpha)
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a map definition from a NUL-terminated JSON string.
///
/// # Safety
/// `json` must be null or a valid C string; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fd_map_from_json(json: *const c_char, out: *mut *mut FdMap) -> FdStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = boxed(format::parse_map(str_arg(json)?)?);
        Ok(())
    })
}

/// Reads a map definition file.
///
/// # Safety
/// `path` must be null or a valid C string; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fd_map_from_file(path: *const c_char, out: *mut *mut FdMap) -> FdStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = boxed(format::read_map(str_arg(path)?)?);
        Ok(())
    })
}

/// Releases a map handle. Null is ignored.
///
/// # Safety
/// `map` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_map_free(map: *mut FdMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Serializes a map in the canonical file format. Free with `fd_string_free`.
///
/// # Safety
/// `map` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fd_map_to_json(map: *const FdMap, out: *mut *mut c_char) -> FdStatus {
    guard(|| {
        let t = map_ref(map)?;
        let out = out_ref(out)?;
        let text = CString::new(format::map_to_string(t)).map_err(|e| Fail(FdStatus::Parse, e.to_string()))?;
        *out = text.into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Evaluates `T(x)`.
///
/// # Safety
/// `map` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fd_map_eval(map: *const FdMap, x: f64, out: *mut f64) -> FdStatus {
    guard(|| {
        let t = map_ref(map)?;
        *out_ref(out)? = t.apply(x)?;
        Ok(())
    })
}

/// Builds `T^m` as a new handle (`m >= 1`).
///
/// # Safety
/// `map` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fd_map_power(map: *const FdMap, m: u32, out: *mut *mut FdMap) -> FdStatus {
    guard(|| {
        let t = map_ref(map)?;
        let out = out_ref(out)?;
        *out = boxed(t.power(m)?);
        Ok(())
    })
}

/// Contraction number `M(x, y)` under the usual metric. `alpha` is read only
/// for `FD_KIND_BP_N`; `power` applies to m1 and m2 and must be 1 otherwise.
///
/// # Safety
/// `map` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fd_contraction_number(
    map: *const FdMap,
    kind: FdKind,
    power: u32,
    alpha: f64,
    x: f64,
    y: f64,
    out: *mut f64,
) -> FdStatus {
    guard(|| {
        let t = map_ref(map)?;
        let out = out_ref(out)?;
        *out = compute(kind_of(kind, power, alpha)?, t, &usual_metric(), x, y)?;
        Ok(())
    })
}

/// Picard iteration from `x0` under the usual metric.
///
/// # Safety
/// `map` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fd_iterate(
    map: *const FdMap,
    x0: f64,
    max_iters: usize,
    fix_tol: f64,
    out: *mut FdOrbitSummary,
) -> FdStatus {
    guard(|| {
        let t = map_ref(map)?;
        let out = out_ref(out)?;
        let r = iterate(t, &usual_metric(), x0, &IterateOptions { max_iters, fix_tol })?;
        *out = FdOrbitSummary {
            converged: r.converged,
            last: *r.orbit.last().unwrap_or(&x0),
            iterations: r.iterations,
            last_step: r.u_seq.last().copied().unwrap_or(0.0),
        };
        Ok(())
    })
}

/// Writes the fixed-point components into `buf` (capacity `cap`) and their
/// number into `count`. Returns `FD_STATUS_BUFFER_TOO_SMALL` with `count`
/// set when `cap` is insufficient; `buf` may be null when `cap` is 0.
///
/// # Safety
/// `buf` must be valid for `cap` writes; `map` a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn fd_fixed_points(
    map: *const FdMap,
    buf: *mut FdFixedSet,
    cap: usize,
    count: *mut usize,
) -> FdStatus {
    guard(|| {
        let t = map_ref(map)?;
        let count = out_ref(count)?;
        let sets = activations::fixed_points(t);
        *count = sets.len();
        if sets.len() > cap {
            return Err(Fail(
                FdStatus::BufferTooSmall,
                format!("{} fixed-point components, capacity {cap}", sets.len()),
            ));
        }
        if sets.is_empty() {
            return Ok(());
        }
        if buf.is_null() {
            return Err(null("buffer"));
        }
        for (i, s) in sets.iter().enumerate() {
            *buf.add(i) = match *s {
                FixedSet::Point { x } => FdFixedSet {
                    lo: x,
                    hi: x,
                    lo_inc: true,
                    hi_inc: true,
                },
                FixedSet::Interval { lo, hi, lo_inc, hi_inc } => FdFixedSet { lo, hi, lo_inc, hi_inc },
            };
        }
        Ok(())
    })
}

/// Classifies continuity of `T` at the fixed point `y0` (m1 or m2 only).
///
/// # Safety
/// `map` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fd_classify(
    map: *const FdMap,
    kind: FdKind,
    power: u32,
    y0: f64,
    out: *mut FdVerdict,
) -> FdStatus {
    guard(|| {
        let t = map_ref(map)?;
        let out = out_ref(out)?;
        let v = classify_at(t, &usual_metric(), kind_of(kind, power, 0.0)?, y0)?;
        *out = FdVerdict {
            status: match v.status {
                ContinuityStatus::Continuous => FdContinuity::Continuous,
                ContinuityStatus::DiscontinuousLimit => FdContinuity::DiscontinuousLimit,
                ContinuityStatus::DiscontinuousNoLimit => FdContinuity::DiscontinuousNoLimit,
            },
            has_left: v.left_estimate.is_some(),
            left: v.left_estimate.unwrap_or(f64::NAN),
            has_right: v.right_estimate.is_some(),
            right: v.right_estimate.unwrap_or(f64::NAN),
        };
        Ok(())
    })
}

/// Builds a Mexican-hat activation as a map on the real line.
///
/// # Safety
/// `params` must be null or readable; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fd_activation_build(params: *const FdMexicanHat, out: *mut *mut FdMap) -> FdStatus {
    guard(|| {
        let p = params.as_ref().ok_or_else(|| null("params"))?;
        let out = out_ref(out)?;
        let tails = if p.discontinuous {
            Tails::Discontinuous { u: p.u, v: p.v }
        } else {
            Tails::Continuous { m: p.m }
        };
        let params = MexicanHatParams {
            p: p.p,
            r: p.r,
            q: p.q,
            l1: p.l1,
            c1: p.c1,
            l2: p.l2,
            c2: p.c2,
            tails,
        };
        *out = boxed(activations::build(&params)?);
        Ok(())
    })
}
