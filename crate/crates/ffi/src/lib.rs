//! C ABI for `grt-core`.
//!
//! Triangles cross the boundary as opaque [`GrtTriangle`] handles. Every
//! fallible function returns a [`GrtStatus`] and writes its result through an
//! out-pointer; on failure a description is available from
//! [`grt_last_error_message`] on the same thread. Strings returned by the
//! library are owned by the caller and released with [`grt_string_free`].
//!
//! Entries are arbitrary-precision internally. The `_i64` accessors report
//! [`GrtStatus::Overflow`] when a value does not fit; the string and JSON
//! accessors never lose precision.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use grt_core::format::{parse_triangle, to_json, to_plain};
use grt_core::report::classification_json;
use grt_core::{
    classify, fit_grt, generate_by_addition, generate_by_multiplication, generate_closed_form,
    mult_constant, BigInt, Boundary, GrtParams, TriangleGrid, Verdict,
};
use num_traits::ToPrimitive;

/// Result codes. `GRT_STATUS_OK` is zero; everything else is an error.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The multiplication rule hit a zero North or an inexact division.
    GenerationFailed = 3,
    ParseError = 4,
    OutOfRange = 5,
    /// The triangle is not a GRT.
    NotGrt = 6,
    /// Fewer rows than the analysis needs.
    TooSmall = 7,
    /// A value does not fit the requested fixed-width type.
    Overflow = 8,
    InvalidUtf8 = 9,
    /// An internal panic was caught at the boundary.
    Internal = 10,
}

/// How to build a triangle from parameters.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrtRule {
    ClosedForm = 0,
    Addition = 1,
    Multiplication = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrtVerdict {
    Grt = 0,
    AdditionOnly = 1,
    MultiplicationOnly = 2,
    Neither = 3,
}

/// The four parameters of `T(r, k) = c + k*d1 + r*d2 + r*k*d`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GrtParamsI64 {
    pub c: i64,
    pub d: i64,
    pub d1: i64,
    pub d2: i64,
}

/// Summary of a classification. Constants are only meaningful when the
/// matching `has_` flag is set; `params` only when `verdict` is `Grt`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrtClassification {
    pub verdict: GrtVerdict,
    pub has_addition_constant: bool,
    pub addition_constant: i64,
    pub has_multiplication_constant: bool,
    pub multiplication_constant: i64,
    pub params: GrtParamsI64,
}

/// Opaque triangle handle.
pub struct GrtTriangle {
    grid: TriangleGrid,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: GrtStatus,
    message: String,
}

impl Failure {
    fn new(status: GrtStatus, message: impl Into<String>) -> Self {
        Self { status, message: message.into() }
    }
}

fn set_last_error(message: Option<String>) {
    let message = message.map(|m| CString::new(m.replace('\0', " ")).unwrap_or_default());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message);
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> GrtStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error(None);
            GrtStatus::Ok
        }
        Ok(Err(failure)) => {
            set_last_error(Some(failure.message));
            failure.status
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal error".to_string());
            set_last_error(Some(message));
            GrtStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(GrtStatus::NullPointer, format!("{what} is null")))
}

fn check_out<T>(p: *mut T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure::new(GrtStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn to_i64(value: &BigInt, what: &str) -> Result<i64, Failure> {
    value
        .to_i64()
        .ok_or_else(|| Failure::new(GrtStatus::Overflow, format!("{what} {value} does not fit in 64 bits")))
}

fn params_from(p: &GrtParamsI64) -> GrtParams {
    GrtParams::new(p.c, p.d, p.d1, p.d2)
}

fn params_to(p: &GrtParams) -> Result<GrtParamsI64, Failure> {
    Ok(GrtParamsI64 {
        c: to_i64(&p.c, "c")?,
        d: to_i64(&p.d, "d")?,
        d1: to_i64(&p.d1, "d1")?,
        d2: to_i64(&p.d2, "d2")?,
    })
}

fn string_out(text: String) -> Result<*mut c_char, Failure> {
    CString::new(text)
        .map(CString::into_raw)
        .map_err(|_| Failure::new(GrtStatus::Internal, "string contains an interior NUL"))
}

fn store(out: *mut *mut GrtTriangle, grid: TriangleGrid) {
    // SAFETY: callers check `out` before building the grid.
    unsafe { *out = Box::into_raw(Box::new(GrtTriangle { grid })) };
}

/// Build an `n_rows` triangle from parameters using `rule`.
///
/// # Safety
///
/// `params` must point to a valid `GrtParamsI64`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_triangle_generate(
    params: *const GrtParamsI64,
    n_rows: usize,
    rule: GrtRule,
    out: *mut *mut GrtTriangle,
) -> GrtStatus {
    guard(|| {
        let params = params_from(deref(params, "params")?);
        check_out(out, "out")?;
        if n_rows == 0 {
            return Err(Failure::new(GrtStatus::InvalidArgument, "n_rows must be at least 1"));
        }
        let grid = match rule {
            GrtRule::ClosedForm => generate_closed_form(&params, n_rows),
            GrtRule::Addition => {
                let boundary = grt_core::boundary_from_params(&params, n_rows);
                generate_by_addition(&boundary, &params.d)
            }
            GrtRule::Multiplication => {
                let boundary = grt_core::boundary_from_params(&params, n_rows);
                generate_by_multiplication(&boundary, &mult_constant(&params))
                    .map_err(|e| Failure::new(GrtStatus::GenerationFailed, e.to_string()))?
            }
        };
        store(out, grid);
        Ok(())
    })
}

/// Build a triangle of `len` rows from its two edges and a rule constant.
/// `major` runs down the left edge (`r = 0`), `minor` down the right edge
/// (`k = 0`); both start at the apex. `rule` must be `Addition` (the
/// constant is `d`) or `Multiplication` (the constant is `D`).
///
/// # Safety
///
/// `major` and `minor` must each point to `len` readable values; `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_triangle_from_edges(
    major: *const i64,
    minor: *const i64,
    len: usize,
    constant: i64,
    rule: GrtRule,
    out: *mut *mut GrtTriangle,
) -> GrtStatus {
    guard(|| {
        if major.is_null() || minor.is_null() {
            return Err(Failure::new(GrtStatus::NullPointer, "edge array is null"));
        }
        check_out(out, "out")?;
        let major: Vec<BigInt> = std::slice::from_raw_parts(major, len).iter().map(|&v| v.into()).collect();
        let minor: Vec<BigInt> = std::slice::from_raw_parts(minor, len).iter().map(|&v| v.into()).collect();
        let boundary = Boundary::new(major, minor)
            .map_err(|e| Failure::new(GrtStatus::InvalidArgument, e.to_string()))?;
        let constant = BigInt::from(constant);
        let grid = match rule {
            GrtRule::Addition => generate_by_addition(&boundary, &constant),
            GrtRule::Multiplication => generate_by_multiplication(&boundary, &constant)
                .map_err(|e| Failure::new(GrtStatus::GenerationFailed, e.to_string()))?,
            GrtRule::ClosedForm => {
                return Err(Failure::new(
                    GrtStatus::InvalidArgument,
                    "edges need the addition or multiplication rule",
                ))
            }
        };
        store(out, grid);
        Ok(())
    })
}

/// Parse a triangle from whitespace-separated rows or from JSON
/// (`{"rows": [[...], ...]}`).
///
/// # Safety
///
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_triangle_parse(text: *const c_char, out: *mut *mut GrtTriangle) -> GrtStatus {
    guard(|| {
        if text.is_null() {
            return Err(Failure::new(GrtStatus::NullPointer, "text is null"));
        }
        check_out(out, "out")?;
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure::new(GrtStatus::InvalidUtf8, e.to_string()))?;
        let grid = parse_triangle(text).map_err(|e| Failure::new(GrtStatus::ParseError, e.to_string()))?;
        store(out, grid);
        Ok(())
    })
}

/// Release a triangle. Null is ignored.
///
/// # Safety
///
/// `triangle` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn grt_triangle_free(triangle: *mut GrtTriangle) {
    if !triangle.is_null() {
        drop(Box::from_raw(triangle));
    }
}

/// Number of rows, or 0 for a null handle.
///
/// # Safety
///
/// `triangle` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn grt_triangle_rows(triangle: *const GrtTriangle) -> usize {
    triangle.as_ref().map_or(0, |t| t.grid.n_rows())
}

fn entry<'a>(triangle: *const GrtTriangle, r: usize, k: usize) -> Result<&'a BigInt, Failure> {
    let t = unsafe { deref(triangle, "triangle")? };
    t.grid
        .entry_at(r, k)
        .map_err(|e| Failure::new(GrtStatus::OutOfRange, e.to_string()))
}

/// Entry `T(r, k)` as a 64-bit integer.
///
/// # Safety
///
/// `triangle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_triangle_entry_i64(
    triangle: *const GrtTriangle,
    r: usize,
    k: usize,
    out: *mut i64,
) -> GrtStatus {
    guard(|| {
        check_out(out, "out")?;
        let value = to_i64(entry(triangle, r, k)?, "entry")?;
        *out = value;
        Ok(())
    })
}

/// Entry `T(r, k)` as a decimal string. Free it with `grt_string_free`.
///
/// # Safety
///
/// `triangle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_triangle_entry_string(
    triangle: *const GrtTriangle,
    r: usize,
    k: usize,
    out: *mut *mut c_char,
) -> GrtStatus {
    guard(|| {
        check_out(out, "out")?;
        let text = entry(triangle, r, k)?.to_string();
        *out = string_out(text)?;
        Ok(())
    })
}

/// The triangle as text, one row per line.
///
/// # Safety
///
/// `triangle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_triangle_to_text(triangle: *const GrtTriangle, out: *mut *mut c_char) -> GrtStatus {
    guard(|| {
        let t = deref(triangle, "triangle")?;
        check_out(out, "out")?;
        *out = string_out(to_plain(&t.grid))?;
        Ok(())
    })
}

/// The triangle as JSON. Values outside the 64-bit range are strings.
///
/// # Safety
///
/// `triangle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_triangle_to_json(triangle: *const GrtTriangle, out: *mut *mut c_char) -> GrtStatus {
    guard(|| {
        let t = deref(triangle, "triangle")?;
        check_out(out, "out")?;
        *out = string_out(to_json(&t.grid))?;
        Ok(())
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
///
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn grt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Recover the parameters of a GRT.
///
/// # Safety
///
/// `triangle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_fit(triangle: *const GrtTriangle, out: *mut GrtParamsI64) -> GrtStatus {
    guard(|| {
        let t = deref(triangle, "triangle")?;
        check_out(out, "out")?;
        let params = fit_grt(&t.grid).map_err(|e| {
            let status = match e {
                grt_core::FitError::UnderDetermined { .. } => GrtStatus::TooSmall,
                grt_core::FitError::NotGrt { .. } => GrtStatus::NotGrt,
            };
            Failure::new(status, e.to_string())
        })?;
        *out = params_to(&params)?;
        Ok(())
    })
}

/// Classify a triangle against the closed form and both local rules.
///
/// # Safety
///
/// `triangle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_classify(triangle: *const GrtTriangle, out: *mut GrtClassification) -> GrtStatus {
    guard(|| {
        let t = deref(triangle, "triangle")?;
        check_out(out, "out")?;
        let cls = classify(&t.grid).map_err(|e| Failure::new(GrtStatus::TooSmall, e.to_string()))?;
        let (verdict, params) = match &cls.verdict {
            Verdict::Grt(p) => (GrtVerdict::Grt, params_to(p)?),
            Verdict::AdditionOnly(_) => (GrtVerdict::AdditionOnly, GrtParamsI64::default()),
            Verdict::MultiplicationOnly(_) => (GrtVerdict::MultiplicationOnly, GrtParamsI64::default()),
            Verdict::Neither => (GrtVerdict::Neither, GrtParamsI64::default()),
        };
        let add = cls.addition.constant().map(|v| to_i64(v, "addition constant")).transpose()?;
        let mult = cls
            .multiplication
            .constant()
            .map(|v| to_i64(v, "multiplication constant"))
            .transpose()?;
        *out = GrtClassification {
            verdict,
            has_addition_constant: add.is_some(),
            addition_constant: add.unwrap_or(0),
            has_multiplication_constant: mult.is_some(),
            multiplication_constant: mult.unwrap_or(0),
            params,
        };
        Ok(())
    })
}

/// The full classification report as JSON, including diagonal reports and
/// conflicting diamonds.
///
/// # Safety
///
/// `triangle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_classify_json(triangle: *const GrtTriangle, out: *mut *mut c_char) -> GrtStatus {
    guard(|| {
        let t = deref(triangle, "triangle")?;
        check_out(out, "out")?;
        let cls = classify(&t.grid).map_err(|e| Failure::new(GrtStatus::TooSmall, e.to_string()))?;
        *out = string_out(classification_json(&cls).to_string())?;
        Ok(())
    })
}

/// The multiplication-rule constant `D = c*d - d1*d2`.
///
/// # Safety
///
/// `params` must point to a valid `GrtParamsI64`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_mult_constant(params: *const GrtParamsI64, out: *mut i64) -> GrtStatus {
    guard(|| {
        let params = params_from(deref(params, "params")?);
        check_out(out, "out")?;
        *out = to_i64(&mult_constant(&params), "D")?;
        Ok(())
    })
}

/// Message for the most recent failure on this thread, or null after a
/// success. Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn grt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn grt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
