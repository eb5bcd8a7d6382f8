//! Drives the exported functions the way a C caller would.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use curveaut_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    curveaut_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(curveaut_last_error()).to_str().unwrap().to_owned()
}

unsafe fn curve(text: &str, field: &str) -> *mut CurveautCurve {
    let mut out = ptr::null_mut();
    assert_eq!(curveaut_curve_parse(c(text).as_ptr(), c(field).as_ptr(), &mut out), CurveautStatus::Ok);
    out
}

unsafe fn map(f: &str, g: &str) -> *mut CurveautMap {
    let mut out = ptr::null_mut();
    assert_eq!(curveaut_map_parse(c(f).as_ptr(), c(g).as_ptr(), c("q").as_ptr(), &mut out), CurveautStatus::Ok);
    out
}

#[test]
fn classify_hyperbola() {
    unsafe {
        let h = curve("x*y - 1", "q");
        let mut cls = ptr::null_mut();
        assert_eq!(curveaut_classify(h, &mut cls), CurveautStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(curveaut_classification_case(cls, &mut s), CurveautStatus::Ok);
        assert_eq!(take(s), "MonomialHyperbola");
        assert_eq!(curveaut_classification_to_json(cls, &mut s), CurveautStatus::Ok);
        let json = take(s);
        assert!(json.contains("\"confidence\":\"Proved\""), "{json}");

        let mut conj = ptr::null_mut();
        assert_eq!(curveaut_classification_conjugator(cls, &mut conj), CurveautStatus::Ok);
        let mut image = ptr::null_mut();
        assert_eq!(curveaut_map_pushforward(conj, h, &mut image), CurveautStatus::Ok);
        assert_eq!(curveaut_curve_to_string(image, &mut s), CurveautStatus::Ok);
        assert_eq!(take(s), "x*y - 1");

        curveaut_curve_free(image);
        curveaut_map_free(conj);
        curveaut_classification_free(cls);
        curveaut_curve_free(h);
    }
}

#[test]
fn swap_preserves_only_the_balanced_hyperbola() {
    unsafe {
        let swap = map("y", "x");
        let (a, b) = (curve("x*y - 1", "q"), curve("x^2*y - 1", "q"));
        let mut yes = false;
        assert_eq!(curveaut_map_preserves(swap, a, &mut yes), CurveautStatus::Ok);
        assert!(yes);
        assert_eq!(curveaut_map_preserves(swap, b, &mut yes), CurveautStatus::Ok);
        assert!(!yes);
        for p in [a, b] {
            curveaut_curve_free(p);
        }
        curveaut_map_free(swap);
    }
}

#[test]
fn link_length_of_a_triangular_map() {
    unsafe {
        let m = map("y", "x + y^2");
        let mut n = 0usize;
        assert_eq!(curveaut_map_link_length(m, &mut n), CurveautStatus::Ok);
        assert_eq!(n, 4);
        curveaut_map_free(m);
    }
}

#[test]
fn status_codes_mirror_exit_codes() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(curveaut_curve_parse(c("x +").as_ptr(), c("q").as_ptr(), &mut h), CurveautStatus::Input);
        assert!(last_error().contains("parse error"));
        assert_eq!(curveaut_curve_parse(c("x").as_ptr(), c("fp:4").as_ptr(), &mut h), CurveautStatus::Input);
        assert_eq!(curveaut_curve_parse(c("0").as_ptr(), c("q").as_ptr(), &mut h), CurveautStatus::Input);
        assert!(h.is_null());

        let mut m = ptr::null_mut();
        let st = curveaut_map_parse(c("x^2").as_ptr(), c("y").as_ptr(), c("q").as_ptr(), &mut m);
        assert_eq!(st, CurveautStatus::NotAnAutomorphism);
        assert_eq!(st as i32, curveaut::cli::EXIT_NOT_AUTOMORPHISM);
        assert_eq!(CurveautStatus::Input as i32, curveaut::cli::EXIT_INPUT);
        assert_eq!(CurveautStatus::ResourceCap as i32, curveaut::cli::EXIT_RESOURCE);
    }
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(curveaut_curve_parse(ptr::null(), c("q").as_ptr(), &mut h), CurveautStatus::NullArgument);
        assert_eq!(
            curveaut_curve_parse(c("x").as_ptr(), c("q").as_ptr(), ptr::null_mut()),
            CurveautStatus::NullArgument
        );
        let mut s = ptr::null_mut();
        assert_eq!(curveaut_curve_to_string(ptr::null(), &mut s), CurveautStatus::NullArgument);
        assert_eq!(last_error(), "null handle");
        curveaut_curve_free(ptr::null_mut());
        curveaut_string_free(ptr::null_mut());
    }
}

#[test]
fn fields_must_agree() {
    unsafe {
        let m = map("x + 1", "y");
        let h = curve("x", "fp:5");
        let mut out = ptr::null_mut();
        assert_eq!(curveaut_map_pushforward(m, h, &mut out), CurveautStatus::Input);
        assert!(last_error().contains("field mismatch"));
        curveaut_curve_free(h);
        curveaut_map_free(m);
    }
}
