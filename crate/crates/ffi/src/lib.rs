//! C ABI over `curveaut`.
//!
//! Objects cross the boundary as opaque heap handles released by their
//! matching `*_free` function. Every fallible call returns a
//! [`CurveautStatus`]; on failure [`curveaut_last_error`] describes the
//! most recent error on the calling thread. Strings handed out by the
//! library are NUL-terminated UTF-8 and must be released with
//! [`curveaut_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use curveaut::automorphism::PlaneAutomorphism;
use curveaut::bipoly::BiPoly;
use curveaut::classify::{classify, verify_invariance, Classification};
use curveaut::cli::{self, parse_poly, FieldSpec};
use curveaut::completions::automorphism_to_chain;
use curveaut::error::Error;
use curveaut::field::Field;

/// Result of every fallible call. Codes 2 to 4 match the command-line
/// exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveautStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Malformed text, unknown field, or an input the operation rejects.
    Input = 2,
    NotAnAutomorphism = 3,
    ResourceCap = 4,
    /// A Rust panic was caught at the boundary.
    Internal = 5,
}

/// A plane curve `F(x, y) = 0` over a fixed field.
pub struct CurveautCurve {
    poly: BiPoly,
}

/// A polynomial automorphism of the affine plane, with its inverse.
pub struct CurveautMap {
    map: PlaneAutomorphism,
}

/// The outcome of classifying a curve.
pub struct CurveautClassification {
    inner: Classification,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: &Error) -> CurveautStatus {
    set_error(e.to_string());
    match cli::exit_code(e) {
        cli::EXIT_NOT_AUTOMORPHISM => CurveautStatus::NotAnAutomorphism,
        cli::EXIT_RESOURCE => CurveautStatus::ResourceCap,
        _ => CurveautStatus::Input,
    }
}

/// Runs `body`, converting panics and errors into a status.
fn guard(body: impl FnOnce() -> Result<(), CurveautStatus>) -> CurveautStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CurveautStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            CurveautStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, CurveautStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(CurveautStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        CurveautStatus::Input
    })
}

unsafe fn read_field(spec: *const c_char) -> Result<Field, CurveautStatus> {
    let s = read_str(spec)?;
    s.parse::<FieldSpec>().and_then(|f| f.field()).map_err(|e| fail(&e))
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, CurveautStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        CurveautStatus::NullArgument
    })
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), CurveautStatus> {
    check_out(out)?;
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), CurveautStatus> {
    check_out(out)?;
    *out = CString::new(s).expect("library strings contain no NUL").into_raw();
    Ok(())
}

unsafe fn check_out<T>(out: *mut T) -> Result<(), CurveautStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(CurveautStatus::NullArgument);
    }
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn curveaut_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn curveaut_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `text` over `field` (`"q"` or `"fp:<p>"`).
///
/// # Safety
/// `text` and `field` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn curveaut_curve_parse(
    text: *const c_char,
    field: *const c_char,
    out: *mut *mut CurveautCurve,
) -> CurveautStatus {
    guard(|| {
        let k = read_field(field)?;
        let poly = parse_poly(read_str(text)?, &k).map_err(|e| fail(&e))?;
        if poly.is_zero() {
            return Err(fail(&Error::ZeroInput("curve")));
        }
        put(out, CurveautCurve { poly: poly.normalized() })
    })
}

/// # Safety
/// `curve` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn curveaut_curve_free(curve: *mut CurveautCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// The normalised equation as text.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn curveaut_curve_to_string(
    curve: *const CurveautCurve,
    out: *mut *mut c_char,
) -> CurveautStatus {
    guard(|| put_string(out, get(curve)?.poly.to_string()))
}

/// Builds the map `(x, y) -> (f, g)`, failing with
/// `NotAnAutomorphism` when it is not invertible.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn curveaut_map_parse(
    f: *const c_char,
    g: *const c_char,
    field: *const c_char,
    out: *mut *mut CurveautMap,
) -> CurveautStatus {
    guard(|| {
        let k = read_field(field)?;
        let f = parse_poly(read_str(f)?, &k).map_err(|e| fail(&e))?;
        let g = parse_poly(read_str(g)?, &k).map_err(|e| fail(&e))?;
        let map = PlaneAutomorphism::new(f, g).map_err(|e| fail(&e))?;
        put(out, CurveautMap { map })
    })
}

/// # Safety
/// `map` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn curveaut_map_free(map: *mut CurveautMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// The number of elementary links in the reduced decomposition.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn curveaut_map_link_length(map: *const CurveautMap, out: *mut usize) -> CurveautStatus {
    guard(|| {
        let chain = automorphism_to_chain(&get(map)?.map).map_err(|e| fail(&e))?;
        let n = chain.length().map_err(|e| fail(&e))?;
        check_out(out)?;
        *out = n;
        Ok(())
    })
}

/// The image curve under `map`, as a new handle.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn curveaut_map_pushforward(
    map: *const CurveautMap,
    curve: *const CurveautCurve,
    out: *mut *mut CurveautCurve,
) -> CurveautStatus {
    guard(|| {
        let (m, c) = (&get(map)?.map, &get(curve)?.poly);
        if m.field() != c.field() {
            return Err(fail(&Error::FieldMismatch(m.field().to_string(), c.field().to_string())));
        }
        put(out, CurveautCurve { poly: m.pushforward(c) })
    })
}

/// Whether `map` carries `curve` onto itself.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn curveaut_map_preserves(
    map: *const CurveautMap,
    curve: *const CurveautCurve,
    out: *mut bool,
) -> CurveautStatus {
    guard(|| {
        let (m, c) = (&get(map)?.map, &get(curve)?.poly);
        if m.field() != c.field() {
            return Err(fail(&Error::FieldMismatch(m.field().to_string(), c.field().to_string())));
        }
        check_out(out)?;
        *out = verify_invariance(c, m).is_some();
        Ok(())
    })
}

/// Classifies `curve` up to automorphisms of the plane.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn curveaut_classify(
    curve: *const CurveautCurve,
    out: *mut *mut CurveautClassification,
) -> CurveautStatus {
    guard(|| {
        let inner = classify(&get(curve)?.poly).map_err(|e| fail(&e))?;
        put(out, CurveautClassification { inner })
    })
}

/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn curveaut_classification_free(c: *mut CurveautClassification) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// The case tag, such as `"Line"` or `"MonomialHyperbola"`.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn curveaut_classification_case(
    c: *const CurveautClassification,
    out: *mut *mut c_char,
) -> CurveautStatus {
    guard(|| put_string(out, get(c)?.inner.tag().to_owned()))
}

/// The full classification, in the layout of the `classify` report.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn curveaut_classification_to_json(
    c: *const CurveautClassification,
    out: *mut *mut c_char,
) -> CurveautStatus {
    guard(|| put_string(out, get(c)?.inner.to_json().to_string()))
}

/// The conjugating automorphism taking the curve to its normal form.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn curveaut_classification_conjugator(
    c: *const CurveautClassification,
    out: *mut *mut CurveautMap,
) -> CurveautStatus {
    guard(|| {
        let map = get(c)?.inner.conjugator.clone();
        put(out, CurveautMap { map })
    })
}
