//! Exercises the C entry points exactly as a foreign caller would: raw
//! pointers in, status codes and JSON strings out.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use sweedler_capi::{
    sweedler_algebra_builtin, sweedler_algebra_check, sweedler_algebra_free,
    sweedler_algebra_from_json, sweedler_algebra_separability, sweedler_algebra_to_json,
    sweedler_braiding_solve, sweedler_braiding_verify, sweedler_last_error, sweedler_string_free,
    SweedlerAlgebra, SweedlerStatus,
};

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let text = unsafe { CStr::from_ptr(p) }.to_str().expect("UTF-8").to_owned();
    unsafe { sweedler_string_free(p) };
    text
}

fn last_error() -> String {
    let p = sweedler_last_error();
    assert!(!p.is_null(), "an error message was expected");
    unsafe { CStr::from_ptr(p) }.to_str().expect("UTF-8").to_owned()
}

fn open_builtin(name: &str) -> *mut SweedlerAlgebra {
    let field = CString::new("Q").unwrap();
    let name = CString::new(name).unwrap();
    let mut handle: *mut SweedlerAlgebra = ptr::null_mut();
    let status = unsafe { sweedler_algebra_builtin(field.as_ptr(), name.as_ptr(), &mut handle) };
    assert_eq!(status, SweedlerStatus::Ok);
    assert!(!handle.is_null());
    handle
}

#[test]
fn builtin_loads_checks_and_serializes() {
    let handle = open_builtin("m2");
    let mut report: *mut c_char = ptr::null_mut();
    let status = unsafe { sweedler_algebra_check(handle, &mut report) };
    assert_eq!(status, SweedlerStatus::Ok);
    let rep: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
    assert_eq!(rep["status"], "pass");

    let mut json: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { sweedler_algebra_to_json(handle, &mut json) }, SweedlerStatus::Ok);
    let text = take_string(json);
    assert!(text.contains("\"dim\": 4"), "{text}");
    unsafe { sweedler_algebra_free(handle) };
}

#[test]
fn json_round_trips_through_the_abi() {
    let source = open_builtin("dual-numbers");
    let mut json: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { sweedler_algebra_to_json(source, &mut json) }, SweedlerStatus::Ok);
    let text = take_string(json);
    unsafe { sweedler_algebra_free(source) };

    let c = CString::new(text).unwrap();
    let mut again: *mut SweedlerAlgebra = ptr::null_mut();
    assert_eq!(
        unsafe { sweedler_algebra_from_json(c.as_ptr(), &mut again) },
        SweedlerStatus::Ok
    );
    unsafe { sweedler_algebra_free(again) };
}

#[test]
fn invalid_json_reports_invalid_input() {
    let c = CString::new("{ not json").unwrap();
    let mut handle: *mut SweedlerAlgebra = ptr::null_mut();
    let status = unsafe { sweedler_algebra_from_json(c.as_ptr(), &mut handle) };
    assert_eq!(status, SweedlerStatus::InvalidInput);
    assert!(handle.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn broken_axioms_report_check_failed() {
    let text = r#"{"field": "Q", "dim": 2, "basis": ["1", "x"], "unit": [1, 0],
                   "mult": [[[1,0],[1,0]],[[0,1],[0,0]]]}"#;
    let c = CString::new(text).unwrap();
    let mut handle: *mut SweedlerAlgebra = ptr::null_mut();
    let status = unsafe { sweedler_algebra_from_json(c.as_ptr(), &mut handle) };
    assert_eq!(status, SweedlerStatus::CheckFailed);
    assert!(handle.is_null());
    assert!(last_error().contains("axioms"), "{}", last_error());
}

#[test]
fn null_arguments_are_rejected_not_fatal() {
    let mut handle: *mut SweedlerAlgebra = ptr::null_mut();
    assert_eq!(
        unsafe { sweedler_algebra_from_json(ptr::null(), &mut handle) },
        SweedlerStatus::InvalidInput
    );
    let mut report: *mut c_char = ptr::null_mut();
    assert_eq!(
        unsafe { sweedler_algebra_check(ptr::null(), &mut report) },
        SweedlerStatus::InvalidInput
    );
}

#[test]
fn separability_reports_both_outcomes() {
    let m2 = open_builtin("m2");
    let mut report: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { sweedler_algebra_separability(m2, &mut report) }, SweedlerStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
    assert_eq!(v["separable"], true);
    assert_eq!(v["element"].as_array().unwrap().len(), 2);
    unsafe { sweedler_algebra_free(m2) };

    let dual = open_builtin("dual-numbers");
    let mut report: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { sweedler_algebra_separability(dual, &mut report) }, SweedlerStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
    assert_eq!(v["separable"], false);
    unsafe { sweedler_algebra_free(dual) };
}

#[test]
fn canonical_braiding_verifies_and_twist_fails() {
    let handle = open_builtin("prod2");
    let mut report: *mut c_char = ptr::null_mut();
    let status = unsafe { sweedler_braiding_verify(handle, ptr::null(), &mut report) };
    assert_eq!(status, SweedlerStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
    assert_eq!(v["status"], "pass");

    let twist = CString::new("(1,0)").unwrap();
    let mut report: *mut c_char = ptr::null_mut();
    let status = unsafe { sweedler_braiding_verify(handle, twist.as_ptr(), &mut report) };
    assert_eq!(status, SweedlerStatus::CheckFailed);
    let v: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
    assert_eq!(v["status"], "fail");
    unsafe { sweedler_algebra_free(handle) };
}

#[test]
fn solve_with_oracle_agrees_over_the_group_algebra() {
    let handle = open_builtin("group:c2");
    let mut report: *mut c_char = ptr::null_mut();
    let status = unsafe { sweedler_braiding_solve(handle, true, &mut report) };
    assert_eq!(status, SweedlerStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
    assert_eq!(v["solver"]["exactly_canonical"], true);
    assert_eq!(v["solver"]["oracle_agrees"], true);
    assert_eq!(v["oracle"]["survivor_count"], 1);
    unsafe { sweedler_algebra_free(handle) };
}
