//! C ABI for `ovalg`.
//!
//! Every fallible function returns an [`OvalgStatus`]; results go through out
//! pointers. On failure a message is kept per thread and can be read with
//! [`ovalg_last_error`]. Handles are opaque and must be released with their
//! `_free` function; strings returned by the library are released with
//! [`ovalg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use ovalg::ffield::{FieldSpec, DEFAULT_PROXY_PRIMES};
use ovalg::invariants::{invariant_report, ov_decomposition, mixed_decomposition, regularity_degree};
use ovalg::macaulay::{first_fall_degree, solving_degree, empirical_hilbert};
use ovalg::series::{expand, RationalGF, TruncatedSeries};
use ovalg::sysgen::{gen_full, gen_mixed, gen_ov, PolySystem};
use ovalg::Error;

/// Outcome of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OvalgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    BadParameters = 4,
    BudgetExceeded = 5,
    NotFound = 6,
    Precondition = 7,
    Io = 8,
    Overflow = 9,
    Internal = 10,
}

/// Structure of a generated system.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OvalgKind {
    Ov = 0,
    Mixed = 1,
    Full = 2,
}

/// Parameters of [`ovalg_system_generate`]. `m` is ignored for mixed
/// systems, `v`, `e` and `u` where they do not apply. `p = 0` selects the
/// default char-0 proxy prime.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct OvalgGenParams {
    pub kind: OvalgKind,
    pub n: usize,
    pub v: usize,
    pub m: usize,
    pub e: usize,
    pub u: usize,
    pub p: u32,
    pub char0_proxy: bool,
    pub field_equations: bool,
    pub homogeneous: bool,
    pub seed: u64,
}

/// A polynomial system.
pub struct OvalgSystem(PolySystem);

/// A truncated power series with integer coefficients.
pub struct OvalgSeries(TruncatedSeries);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> OvalgStatus {
    match e {
        Error::Parse { .. } | Error::Json(_) => OvalgStatus::Parse,
        Error::BudgetExceeded { .. } => OvalgStatus::BudgetExceeded,
        Error::NotFoundWithin(_) => OvalgStatus::NotFound,
        Error::Io(_) => OvalgStatus::Io,
        Error::Precondition(_)
        | Error::NotOv(_)
        | Error::NotMixed(_)
        | Error::SingularSubset(_)
        | Error::InsufficientHeadroom { .. }
        | Error::UnderdeterminedNotCovered { .. }
        | Error::DegreeTooSmall { .. } => OvalgStatus::Precondition,
        _ => OvalgStatus::BadParameters,
    }
}

struct Failure(OvalgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Run `body`, converting errors and panics into a status and message.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> OvalgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            OvalgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            OvalgStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(OvalgStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(OvalgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn system<'a>(p: *const OvalgSystem) -> Result<&'a PolySystem, Failure> {
    p.as_ref().map(|s| &s.0).ok_or_else(|| null("system"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(OvalgStatus::Internal, "string contains nul".into()))
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ovalg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ovalg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ovalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a system from the text format or its JSON mirror.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ovalg_system_parse(text: *const c_char, out: *mut *mut OvalgSystem) -> OvalgStatus {
    guard(|| {
        let s = PolySystem::from_str_any(read_str(text, "text")?)?;
        write(out, Box::into_raw(Box::new(OvalgSystem(s))))
    })
}

/// Read a system file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ovalg_system_read_file(path: *const c_char, out: *mut *mut OvalgSystem) -> OvalgStatus {
    guard(|| {
        let s = PolySystem::read_file(Path::new(read_str(path, "path")?))?;
        write(out, Box::into_raw(Box::new(OvalgSystem(s))))
    })
}

/// Generate a seeded random system.
///
/// # Safety
/// `params` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ovalg_system_generate(
    params: *const OvalgGenParams,
    out: *mut *mut OvalgSystem,
) -> OvalgStatus {
    guard(|| {
        let p = *params.as_ref().ok_or_else(|| null("params"))?;
        let field = match (p.p, p.char0_proxy) {
            (0, _) if p.field_equations => {
                return Err(Failure(OvalgStatus::BadParameters, "field equations need a prime".into()))
            }
            (0, _) => FieldSpec::char0_proxy(DEFAULT_PROXY_PRIMES[0])?,
            (q, true) if !p.field_equations => FieldSpec::char0_proxy(q)?,
            (_, true) => {
                return Err(Failure(
                    OvalgStatus::BadParameters,
                    "field equations are never imposed in char-0 proxy mode".into(),
                ))
            }
            (q, false) => FieldSpec::new(q, p.field_equations)?,
        };
        let s = match p.kind {
            OvalgKind::Ov => gen_ov(p.n, p.v, p.m, field, p.homogeneous, p.seed)?,
            OvalgKind::Mixed => gen_mixed(p.n, p.v, p.e, p.u, field, p.homogeneous, p.seed)?,
            OvalgKind::Full => gen_full(p.n, p.m, field, p.homogeneous, p.seed)?,
        };
        write(out, Box::into_raw(Box::new(OvalgSystem(s))))
    })
}

/// Release a system.
///
/// # Safety
/// `s` must be NULL or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ovalg_system_free(s: *mut OvalgSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of variables, or 0 for NULL.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ovalg_system_nvars(s: *const OvalgSystem) -> usize {
    s.as_ref().map_or(0, |s| s.0.n())
}

/// Number of polynomials, or 0 for NULL.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ovalg_system_npolys(s: *const OvalgSystem) -> usize {
    s.as_ref().map_or(0, |s| s.0.m())
}

/// Serialize in the text format; free the result with [`ovalg_string_free`].
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ovalg_system_to_text(s: *const OvalgSystem, out: *mut *mut c_char) -> OvalgStatus {
    guard(|| write(out, into_c_string(system(s)?.to_text())?))
}

/// Empirical Hilbert series through degree `dmax`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ovalg_hilbert_series(
    s: *const OvalgSystem,
    dmax: usize,
    out: *mut *mut OvalgSeries,
) -> OvalgStatus {
    guard(|| {
        let h = empirical_hilbert(system(s)?, dmax)?;
        write(out, Box::into_raw(Box::new(OvalgSeries(h))))
    })
}

/// Expand `num / den` through degree `d`; coefficients are ascending and the
/// constant term of `den` must be ±1.
///
/// # Safety
/// `num` and `den` must point to `num_len` and `den_len` readable values;
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ovalg_series_expand(
    num: *const i64,
    num_len: usize,
    den: *const i64,
    den_len: usize,
    d: usize,
    out: *mut *mut OvalgSeries,
) -> OvalgStatus {
    guard(|| {
        if num.is_null() || den.is_null() {
            return Err(null("coefficient array"));
        }
        let gf = RationalGF::from_i64(
            std::slice::from_raw_parts(num, num_len),
            std::slice::from_raw_parts(den, den_len),
        );
        let s = expand(&gf, d)?;
        write(out, Box::into_raw(Box::new(OvalgSeries(s))))
    })
}

/// Number of coefficients (`D + 1`), or 0 for NULL.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ovalg_series_len(s: *const OvalgSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.coeffs().len())
}

/// Coefficient of `t^index`; `Overflow` when it does not fit in 64 bits.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ovalg_series_coeff(s: *const OvalgSeries, index: usize, out: *mut i64) -> OvalgStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("series"))?;
        let c = s.0.coeffs().get(index).ok_or_else(|| {
            Failure(OvalgStatus::BadParameters, format!("index {index} beyond degree {}", s.0.degree_bound()))
        })?;
        let v = i64::try_from(c.clone()).map_err(|_| Failure(OvalgStatus::Overflow, format!("{c} exceeds 64 bits")))?;
        write(out, v)
    })
}

/// Release a series.
///
/// # Safety
/// `s` must be NULL or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ovalg_series_free(s: *mut OvalgSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Degree of regularity of a homogeneous OV or mixed system, from series
/// computed through `dmax`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ovalg_dreg(s: *const OvalgSystem, dmax: usize, out: *mut usize) -> OvalgStatus {
    guard(|| {
        let s = system(s)?;
        let h = match s.kind() {
            ovalg::sysgen::SystemKind::Mixed { .. } => mixed_decomposition(s, dmax)?.h_vqp,
            _ => ov_decomposition(s, dmax)?.h_vf,
        };
        write(out, regularity_degree(&h, s.n(), dmax)?)
    })
}

/// Least degree `<= d_max` at which the reduced Macaulay matrix is a Gröbner basis.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ovalg_solving_degree(s: *const OvalgSystem, d_max: usize, out: *mut usize) -> OvalgStatus {
    guard(|| write(out, solving_degree(system(s)?, d_max)?))
}

/// Least degree `<= d_max` with non-trivial syzygies.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ovalg_first_fall_degree(
    s: *const OvalgSystem,
    d_max: usize,
    out: *mut usize,
) -> OvalgStatus {
    guard(|| write(out, first_fall_degree(system(s)?, d_max)?))
}

/// Full invariant report as JSON; free the result with [`ovalg_string_free`].
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ovalg_analyze_json(
    s: *const OvalgSystem,
    dmax: usize,
    d_max: usize,
    out: *mut *mut c_char,
) -> OvalgStatus {
    guard(|| {
        let report = invariant_report(system(s)?, dmax, d_max)?;
        let json = serde_json::to_string(&report).map_err(Error::from)?;
        write(out, into_c_string(json)?)
    })
}
