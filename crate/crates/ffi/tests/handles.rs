use std::ffi::{CStr, CString};
use std::ptr;

use malcev_ffi::*;

fn catalog(name: &str, n: usize, m: &[i64]) -> *mut MalcevAlgebra {
    let name = CString::new(name).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { malcev_catalog_get(name.as_ptr(), n, m.as_ptr(), m.len(), 1, 2, &mut out) };
    assert_eq!(st, MalcevStatus::Ok);
    assert!(!out.is_null());
    out
}

fn dims(a: *const MalcevAlgebra) -> (usize, usize) {
    let (mut e, mut o) = (0, 0);
    assert_eq!(unsafe { malcev_dims(a, &mut e, &mut o) }, MalcevStatus::Ok);
    (e, o)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(malcev_last_error_message()) }
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn m7_checks_through_handles() {
    let a = catalog("m7", 0, &[]);
    let (mut malcev, mut jacobi, mut form) = (false, true, false);
    unsafe {
        assert_eq!(malcev_check_malcev(a, &mut malcev), MalcevStatus::Ok);
        assert_eq!(malcev_check_jacobi(a, &mut jacobi), MalcevStatus::Ok);
        assert_eq!(malcev_check_form(a, &mut form), MalcevStatus::Ok);
        malcev_algebra_free(a);
    }
    assert!(malcev && !jacobi && form);
}

#[test]
fn document_round_trip() {
    let a = catalog("example_gde", 2, &[1, 2]);
    assert_eq!(dims(a), (1, 6));
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { malcev_to_document(a, &mut text) }, MalcevStatus::Ok);
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { malcev_from_document(text, &mut b) }, MalcevStatus::Ok);
    let mut text2 = ptr::null_mut();
    assert_eq!(unsafe { malcev_to_document(b, &mut text2) }, MalcevStatus::Ok);
    unsafe {
        assert_eq!(CStr::from_ptr(text), CStr::from_ptr(text2));
        malcev_string_free(text);
        malcev_string_free(text2);
        malcev_algebra_free(a);
        malcev_algebra_free(b);
    }
}

#[test]
fn reduce_then_extend_restores_dimensions() {
    let k = catalog("example_gde", 2, &[1, 1]);
    let (mut ze, mut zo) = (0, 0);
    assert_eq!(unsafe { malcev_center_dims(k, &mut ze, &mut zo) }, MalcevStatus::Ok);
    assert!(zo >= 1);
    let mut n = ptr::null_mut();
    assert_eq!(unsafe { malcev_reduce_odd(k, &mut n) }, MalcevStatus::Ok);
    assert_eq!(dims(n), (1, 4));
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { malcev_extend_odd(n, &mut back) }, MalcevStatus::Ok);
    assert_eq!(dims(back), (1, 6));
    let mut malcev = false;
    assert_eq!(unsafe { malcev_check_malcev(back, &mut malcev) }, MalcevStatus::Ok);
    assert!(malcev);
    unsafe {
        malcev_algebra_free(k);
        malcev_algebra_free(n);
        malcev_algebra_free(back);
    }
}

#[test]
fn decompose_returns_json() {
    let a = catalog("odd_hyperbolic", 0, &[]);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { malcev_decompose_json(a, &mut out) }, MalcevStatus::Ok);
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    assert!(text.contains("\"odd_gde\""));
    unsafe {
        malcev_string_free(out);
        malcev_algebra_free(a);
    }
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    let bad = CString::new("no such thing").unwrap();
    let st = unsafe { malcev_catalog_get(bad.as_ptr(), 2, ptr::null(), 0, 1, 2, &mut out) };
    assert_eq!(st, MalcevStatus::Precondition);
    assert!(last_error().contains("unknown catalog name"));

    let junk = CString::new("{ not json").unwrap();
    assert_eq!(unsafe { malcev_from_document(junk.as_ptr(), &mut out) }, MalcevStatus::Parse);

    let zero = CString::new("example_M").unwrap();
    let m = [0i64, 1];
    let st = unsafe { malcev_catalog_get(zero.as_ptr(), 2, m.as_ptr(), 2, 1, 2, &mut out) };
    assert_eq!(st, MalcevStatus::Precondition);

    // odd reduction needs an odd central vector
    let sl2 = catalog("sl2", 0, &[]);
    assert_eq!(unsafe { malcev_reduce_odd(sl2, &mut out) }, MalcevStatus::Precondition);
    // no extension data on sl2
    assert_eq!(unsafe { malcev_extend_odd(sl2, &mut out) }, MalcevStatus::Precondition);
    assert_eq!(unsafe { malcev_dims(ptr::null(), ptr::null_mut(), ptr::null_mut()) }, MalcevStatus::NullArgument);
    unsafe { malcev_algebra_free(sl2) };
    assert!(out.is_null());
}

#[test]
fn validation_failure_is_code_3() {
    let a = catalog("sl2", 0, &[]);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { malcev_to_document(a, &mut text) }, MalcevStatus::Ok);
    let s = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_string();
    let gram_line = s.lines().position(|l| l.contains("\"gram\"")).unwrap();
    let mut lines: Vec<String> = s.lines().map(String::from).collect();
    // scale one Gram entry so invariance breaks
    let entry = &lines[gram_line + 1];
    let close = entry.rfind('"').unwrap();
    let open = entry[..close].rfind('"').unwrap();
    let mutated = format!("{}\"7/1\"{}", &entry[..open], &entry[close + 1..]);
    lines[gram_line + 1] = mutated;
    let bad = CString::new(lines.join("\n")).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { malcev_from_document(bad.as_ptr(), &mut out) }, MalcevStatus::Validation);
    unsafe {
        malcev_string_free(text);
        malcev_algebra_free(a);
    }
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/malcev.h");
    let src = std::env::temp_dir().join("malcev_header_check.c");
    std::fs::write(&src, "#include \"malcev.h\"\nint main(void) { return MALCEV_STATUS_OK; }\n").unwrap();
    let include = std::path::Path::new(header).parent().unwrap();
    let status = std::process::Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(include)
        .arg(&src)
        .status();
    match status {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler available; header check skipped"),
    }
}
