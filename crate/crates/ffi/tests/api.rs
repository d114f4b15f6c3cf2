use std::ffi::{CStr, CString};
use std::ptr;

use ovalg_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(ovalg_last_error()) }.to_string_lossy().into_owned()
}

fn parse(text: &str) -> *mut OvalgSystem {
    let text = CString::new(text).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ovalg_system_parse(text.as_ptr(), &mut s) }, OvalgStatus::Ok, "{}", last_error());
    s
}

fn coeffs(s: *const OvalgSeries) -> Vec<i64> {
    (0..unsafe { ovalg_series_len(s) })
        .map(|i| {
            let mut c = 0;
            assert_eq!(unsafe { ovalg_series_coeff(s, i, &mut c) }, OvalgStatus::Ok);
            c
        })
        .collect()
}

const WORKED_EXAMPLE: &str = "ring GF(2) vars 3
kind full
homogeneous false
x1^2 + x1*x2 + x2^2 + x1*x3 + x1 + x2 + x3
x1^2 + x2^2 + x2*x3 + x3^2 + x1 + 1
x1^2 + x2^2 + x1*x3 + x1 + x2 + 1
x1^2 + x2^2 + x3^2 + x1 + x2 + x3
";

#[test]
fn expands_a_generating_function() {
    let num = [1i64, 8, 28, 56, 70, 56, 28, 8, 1];
    let den = [1i64, 0, 1];
    let mut s = ptr::null_mut();
    let status = unsafe { ovalg_series_expand(num.as_ptr(), num.len(), den.as_ptr(), den.len(), 6, &mut s) };
    assert_eq!(status, OvalgStatus::Ok);
    assert_eq!(coeffs(s), [1, 8, 27, 48, 43, 8, -15]);
    let mut c = 0;
    assert_eq!(unsafe { ovalg_series_coeff(s, 7, &mut c) }, OvalgStatus::BadParameters);
    assert!(last_error().contains("beyond degree"));
    unsafe { ovalg_series_free(s) };
}

#[test]
fn non_unit_denominator_is_rejected() {
    let num = [1i64];
    let den = [2i64, 1];
    let mut s = ptr::null_mut();
    let status = unsafe { ovalg_series_expand(num.as_ptr(), 1, den.as_ptr(), 2, 3, &mut s) };
    assert_eq!(status, OvalgStatus::BadParameters);
    assert!(s.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn degrees_of_the_worked_example() {
    let s = parse(WORKED_EXAMPLE);
    assert_eq!(unsafe { (ovalg_system_nvars(s), ovalg_system_npolys(s)) }, (3, 4));
    let (mut solv, mut fall) = (0, 0);
    assert_eq!(unsafe { ovalg_solving_degree(s, 8, &mut solv) }, OvalgStatus::Ok);
    assert_eq!(unsafe { ovalg_first_fall_degree(s, 8, &mut fall) }, OvalgStatus::Ok);
    assert_eq!((solv, fall), (4, 3));
    assert_eq!(unsafe { ovalg_solving_degree(s, 3, &mut solv) }, OvalgStatus::NotFound);
    unsafe { ovalg_system_free(s) };
}

#[test]
fn generated_ov_system_round_trips_through_text() {
    let params = OvalgGenParams {
        kind: OvalgKind::Ov,
        n: 6,
        v: 2,
        m: 6,
        e: 0,
        u: 0,
        p: 0,
        char0_proxy: true,
        field_equations: false,
        homogeneous: true,
        seed: 3,
    };
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ovalg_system_generate(&params, &mut s) }, OvalgStatus::Ok);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { ovalg_system_to_text(s, &mut text) }, OvalgStatus::Ok);
    let round = parse(unsafe { CStr::from_ptr(text) }.to_str().unwrap());
    assert_eq!(unsafe { ovalg_system_npolys(round) }, 6);

    let mut d = 0;
    assert_eq!(unsafe { ovalg_dreg(s, 5, &mut d) }, OvalgStatus::Ok);
    assert_eq!(d, 3, "d_reg = v + 1 when m = n");

    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ovalg_hilbert_series(s, 4, &mut h) }, OvalgStatus::Ok);
    assert_eq!(coeffs(h)[..3], [1, 6, 15]);
    unsafe {
        ovalg_series_free(h);
        ovalg_string_free(text);
        ovalg_system_free(round);
        ovalg_system_free(s);
    }
}

#[test]
fn analyze_returns_json() {
    let s = parse(WORKED_EXAMPLE);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ovalg_analyze_json(s, 6, 6, &mut json) }, OvalgStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    assert!(text.contains("\"solv_deg\":4"), "{text}");
    assert!(text.contains("\"d_fall\":3"));
    unsafe {
        ovalg_string_free(json);
        ovalg_system_free(s);
    }
}

#[test]
fn errors_carry_status_and_message() {
    let bad = CString::new("ring GF(4) vars 2\nkind full\nhomogeneous true\n").unwrap();
    let mut s = ptr::null_mut();
    let status = unsafe { ovalg_system_parse(bad.as_ptr(), &mut s) };
    assert_ne!(status, OvalgStatus::Ok);
    assert!(s.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(unsafe { ovalg_system_parse(ptr::null(), &mut s) }, OvalgStatus::NullPointer);
    assert_eq!(unsafe { ovalg_solving_degree(ptr::null(), 4, ptr::null_mut()) }, OvalgStatus::NullPointer);

    let invalid = [0xffu8, 0];
    assert_eq!(unsafe { ovalg_system_parse(invalid.as_ptr().cast(), &mut s) }, OvalgStatus::InvalidUtf8);

    let missing = CString::new("/nonexistent/ovalg/system.txt").unwrap();
    assert_eq!(unsafe { ovalg_system_read_file(missing.as_ptr(), &mut s) }, OvalgStatus::Io);

    let params = OvalgGenParams {
        kind: OvalgKind::Ov,
        n: 4,
        v: 4,
        m: 2,
        e: 0,
        u: 0,
        p: 2,
        char0_proxy: false,
        field_equations: true,
        homogeneous: true,
        seed: 0,
    };
    assert_eq!(unsafe { ovalg_system_generate(&params, &mut s) }, OvalgStatus::BadParameters);

    // a success clears the message
    let ok = parse(WORKED_EXAMPLE);
    assert!(last_error().is_empty());
    unsafe { ovalg_system_free(ok) };
}

#[test]
fn free_functions_accept_null() {
    unsafe {
        ovalg_system_free(ptr::null_mut());
        ovalg_series_free(ptr::null_mut());
        ovalg_string_free(ptr::null_mut());
        assert_eq!(ovalg_system_nvars(ptr::null()), 0);
        assert_eq!(ovalg_series_len(ptr::null()), 0);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(ovalg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
