//! C ABI over the verification engine. Algebras live behind opaque handles;
//! results travel as JSON strings allocated here and released with
//! [`sweedler_string_free`]. Every entry point catches panics and reports
//! them as `Internal`; details of the last failure on the current thread are
//! available through [`sweedler_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sweedler::algebra::{builtin, check_algebra, Algebra};
use sweedler::braiding::{default_test_objects, verify_braiding, BraidFamily, BraidingOptions};
use sweedler::error::Error;
use sweedler::field::FieldSpec;
use sweedler::io::{algebra_from_json, algebra_to_json};
use sweedler::oracle::enumerate_with_oracle;
use sweedler::separability::{
    build_E_from_separability, build_E_unit_projection, check_E, check_separability_element,
    find_separability_element, CentralMap,
};
use sweedler::solver::enumerate_braidings;

/// Opaque handle to a validated algebra.
pub struct SweedlerAlgebra {
    inner: Algebra,
}

/// Result class of every call. The numeric values are a stable contract.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SweedlerStatus {
    Ok = 0,
    CheckFailed = 1,
    InvalidInput = 2,
    Internal = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(sanitized).expect("NUL stripped"));
    });
}

fn classify(e: &Error) -> SweedlerStatus {
    match e {
        Error::CheckFailed(_) | Error::DescentFailure(_) => SweedlerStatus::CheckFailed,
        Error::Io(_) => SweedlerStatus::Internal,
        _ => SweedlerStatus::InvalidInput,
    }
}

fn fail(e: &Error) -> SweedlerStatus {
    set_error(&e.to_string());
    classify(e)
}

fn guarded(f: impl FnOnce() -> SweedlerStatus) -> SweedlerStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            SweedlerStatus::Internal
        }
    }
}

/// # Safety
/// `p` must be null or a NUL-terminated string valid for the call.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, SweedlerStatus> {
    if p.is_null() {
        set_error(&format!("{what} is null"));
        return Err(SweedlerStatus::InvalidInput);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        SweedlerStatus::InvalidInput
    })
}

fn write_string(text: String, out: *mut *mut c_char) -> SweedlerStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return SweedlerStatus::InvalidInput;
    }
    match CString::new(text.replace('\0', " ")) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            SweedlerStatus::Ok
        }
        Err(_) => {
            set_error("report contained an interior NUL");
            SweedlerStatus::Internal
        }
    }
}

unsafe fn algebra_ref<'a>(
    handle: *const SweedlerAlgebra,
) -> Result<&'a Algebra, SweedlerStatus> {
    if handle.is_null() {
        set_error("algebra handle is null");
        return Err(SweedlerStatus::InvalidInput);
    }
    Ok(&(*handle).inner)
}

fn install(a: Algebra, out: *mut *mut SweedlerAlgebra) -> SweedlerStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return SweedlerStatus::InvalidInput;
    }
    let rep = check_algebra(&a);
    if !rep.passed() {
        let witness = rep
            .first_failure()
            .map(|c| c.name.clone())
            .unwrap_or_else(|| "unknown check".into());
        set_error(&format!("algebra axioms fail: {witness}"));
        return SweedlerStatus::CheckFailed;
    }
    unsafe { *out = Box::into_raw(Box::new(SweedlerAlgebra { inner: a })) };
    SweedlerStatus::Ok
}

fn parse_field(s: &str) -> Result<FieldSpec, Error> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = t.strip_prefix('F').or_else(|| t.strip_prefix('f')) {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::InvalidField(format!("cannot read a prime from {s:?}")))?;
        return FieldSpec::prime(p);
    }
    Err(Error::InvalidField(format!("unknown field {s:?}; use Q or F<p>")))
}

fn parse_element(a: &Algebra, s: &str) -> Result<Vec<sweedler::field::Scalar>, Error> {
    let trimmed = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let parts: Vec<&str> = trimmed.split(',').map(str::trim).collect();
    if parts.len() != a.dim {
        return Err(Error::InvalidInput(format!(
            "twist element needs {} coordinates, got {}",
            a.dim,
            parts.len()
        )));
    }
    parts.iter().map(|p| a.field.parse(p)).collect()
}

fn pick_e(a: &Algebra) -> Result<CentralMap, Error> {
    if let Some(sep) = find_separability_element(a) {
        return build_E_from_separability(a, &sep);
    }
    let up = build_E_unit_projection(a);
    let rep = check_E(a, &up);
    if rep.passed() {
        Ok(up)
    } else {
        Err(Error::CheckFailed(
            "no default splitting map applies to this algebra".into(),
        ))
    }
}

/// Pointer to the last failure message on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sweedler_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds an algebra from the JSON schema used by the CLI. On success writes
/// a handle the caller must release with [`sweedler_algebra_free`]. The
/// algebra axioms are verified; failing them is `CheckFailed`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sweedler_algebra_from_json(
    json: *const c_char,
    out: *mut *mut SweedlerAlgebra,
) -> SweedlerStatus {
    guarded(|| {
        let text = match read_str(json, "algebra JSON") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match algebra_from_json(text) {
            Ok(a) => install(a, out),
            Err(e) => fail(&e),
        }
    })
}

/// Builds a built-in algebra, e.g. field "Q" and name "m2" or "group:c3".
///
/// # Safety
/// `field` and `name` must be NUL-terminated strings; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sweedler_algebra_builtin(
    field: *const c_char,
    name: *const c_char,
    out: *mut *mut SweedlerAlgebra,
) -> SweedlerStatus {
    guarded(|| {
        let field = match read_str(field, "field name") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let name = match read_str(name, "algebra name") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let spec = match parse_field(field) {
            Ok(f) => f,
            Err(e) => return fail(&e),
        };
        match builtin(spec, name) {
            Ok(a) => install(a, out),
            Err(e) => fail(&e),
        }
    })
}

/// Releases a handle returned by the constructors. Null is ignored.
///
/// # Safety
/// `handle` must be null or a pointer returned by a constructor, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sweedler_algebra_free(handle: *mut SweedlerAlgebra) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Releases a string returned by any reporting call. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sweedler_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Canonical JSON form of the algebra behind the handle.
///
/// # Safety
/// `handle` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sweedler_algebra_to_json(
    handle: *const SweedlerAlgebra,
    out: *mut *mut c_char,
) -> SweedlerStatus {
    guarded(|| {
        let a = match algebra_ref(handle) {
            Ok(a) => a,
            Err(s) => return s,
        };
        write_string(algebra_to_json(a), out)
    })
}

/// Runs the algebra axiom suite; the report is written as JSON.
///
/// # Safety
/// `handle` must be a live handle; `report` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sweedler_algebra_check(
    handle: *const SweedlerAlgebra,
    report: *mut *mut c_char,
) -> SweedlerStatus {
    guarded(|| {
        let a = match algebra_ref(handle) {
            Ok(a) => a,
            Err(s) => return s,
        };
        let rep = check_algebra(a);
        let passed = rep.passed();
        let status = write_string(rep.to_json(), report);
        if status != SweedlerStatus::Ok {
            return status;
        }
        if passed {
            SweedlerStatus::Ok
        } else {
            set_error("algebra axioms fail");
            SweedlerStatus::CheckFailed
        }
    })
}

/// Looks for a separability element. The report JSON records whether one
/// exists, its terms, and the verification of its defining identities.
///
/// # Safety
/// `handle` must be a live handle; `report` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sweedler_algebra_separability(
    handle: *const SweedlerAlgebra,
    report: *mut *mut c_char,
) -> SweedlerStatus {
    guarded(|| {
        let a = match algebra_ref(handle) {
            Ok(a) => a,
            Err(s) => return s,
        };
        let payload = match find_separability_element(a) {
            Some(e) => {
                let rep = check_separability_element(a, &e);
                if !rep.passed() {
                    set_error("found element fails its own verification");
                    return SweedlerStatus::Internal;
                }
                let mut terms = Vec::new();
                for r in 0..a.dim {
                    for c in 0..a.dim {
                        let v = e.matrix.at(r, c);
                        if !v.is_zero() {
                            terms.push(format!("{v}*{} (x) {}", a.basis[r], a.basis[c]));
                        }
                    }
                }
                serde_json::json!({ "separable": true, "element": terms })
            }
            None => serde_json::json!({ "separable": false }),
        };
        write_string(payload.to_string(), report)
    })
}

/// Verifies the braiding axioms over the default object family. A null
/// `twist` verifies the canonical braiding; otherwise `twist` holds the
/// coordinates of the twisting element, e.g. "(1,0)". `CheckFailed` means
/// the axioms fail; the JSON report names the failing check.
///
/// # Safety
/// `handle` must be a live handle; `twist` null or NUL-terminated; `report`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sweedler_braiding_verify(
    handle: *const SweedlerAlgebra,
    twist: *const c_char,
    report: *mut *mut c_char,
) -> SweedlerStatus {
    guarded(|| {
        let a = match algebra_ref(handle) {
            Ok(a) => a,
            Err(s) => return s,
        };
        let family = if twist.is_null() {
            BraidFamily::Canonical
        } else {
            let text = match read_str(twist, "twist element") {
                Ok(t) => t,
                Err(s) => return s,
            };
            match parse_element(a, text) {
                Ok(elt) => BraidFamily::Ca(elt),
                Err(e) => return fail(&e),
            }
        };
        let objects = match default_test_objects(a) {
            Ok(o) => o,
            Err(e) => return fail(&e),
        };
        let rep = verify_braiding(a, &family, &objects, &BraidingOptions::default());
        let passed = rep.passed();
        let status = write_string(rep.to_json(), report);
        if status != SweedlerStatus::Ok {
            return status;
        }
        if passed {
            SweedlerStatus::Ok
        } else {
            set_error("braiding axioms fail");
            SweedlerStatus::CheckFailed
        }
    })
}

/// Solves for every braiding with the default splitting map, optionally
/// cross-checking against the brute-force search. The report carries the
/// stage dimensions, survivors, and the agreement flag. `CheckFailed` means
/// the oracle disagreed with the pipeline.
///
/// # Safety
/// `handle` must be a live handle; `report` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sweedler_braiding_solve(
    handle: *const SweedlerAlgebra,
    with_oracle: bool,
    report: *mut *mut c_char,
) -> SweedlerStatus {
    guarded(|| {
        let a = match algebra_ref(handle) {
            Ok(a) => a,
            Err(s) => return s,
        };
        let e = match pick_e(a) {
            Ok(e) => e,
            Err(e) => return fail(&e),
        };
        let (rep, orc) = if with_oracle {
            match enumerate_with_oracle(a, &e) {
                Ok((rep, orc)) => (rep, Some(orc)),
                Err(e) => return fail(&e),
            }
        } else {
            match enumerate_braidings(a, &e) {
                Ok(rep) => (rep, None),
                Err(e) => return fail(&e),
            }
        };
        let payload = match &orc {
            Some(orc) => serde_json::json!({
                "solver": serde_json::to_value(&rep).expect("reports serialize"),
                "oracle": serde_json::to_value(orc).expect("reports serialize"),
            }),
            None => serde_json::to_value(&rep).expect("reports serialize"),
        };
        let status = write_string(payload.to_string(), report);
        if status != SweedlerStatus::Ok {
            return status;
        }
        if rep.oracle_agrees == Some(false) {
            set_error("oracle and pipeline survivors differ");
            SweedlerStatus::CheckFailed
        } else {
            SweedlerStatus::Ok
        }
    })
}
