//! C interface to `malcev_core`.
//!
//! Algebras cross the boundary as opaque `MalcevAlgebra` handles, released
//! with [`malcev_algebra_free`]. Strings returned to the caller are owned by the
//! caller and released with [`malcev_string_free`]. Every function returns a
//! [`MalcevStatus`]; on failure [`malcev_last_error_message`] describes the
//! problem. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use malcev_core::catalog::{catalog_get, CatalogParams};
use malcev_core::decompose::{inductive_decompose, reduce_odd};
use malcev_core::error::Error;
use malcev_core::extensions::generalized_double_extension;
use malcev_core::identities::{check_jacobi, check_malcev};
use malcev_core::ideals::center;
use malcev_core::io::{emit_document, emit_tree, parse_document, Document};
use malcev_core::quadratic::check_form;

/// Status codes. Values 2 to 5 agree with the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MalcevStatus {
    Ok = 0,
    NullArgument = 1,
    Parse = 2,
    Validation = 3,
    Precondition = 4,
    Inconclusive = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

/// An algebra with its form, plus any operator or extension data it carries.
pub struct MalcevAlgebra {
    doc: Document,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> MalcevStatus {
    match e.exit_code() {
        2 => MalcevStatus::Parse,
        3 => MalcevStatus::Validation,
        5 => MalcevStatus::Inconclusive,
        _ => MalcevStatus::Precondition,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (MalcevStatus, String)>) -> MalcevStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MalcevStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MalcevStatus::Panic
        }
    }
}

type Failure = (MalcevStatus, String);

fn core(e: Error) -> Failure {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> Failure {
    (MalcevStatus::NullArgument, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (MalcevStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const MalcevAlgebra) -> Result<&'a MalcevAlgebra, Failure> {
    p.as_ref().ok_or_else(|| null("algebra"))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

fn boxed(doc: Document) -> *mut MalcevAlgebra {
    Box::into_raw(Box::new(MalcevAlgebra { doc }))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON output has no nul bytes").into_raw()
}

/// Message for the last failing call on this thread. Empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn malcev_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a catalog entry. `m` may be null when `m_len` is 0.
///
/// # Safety
/// `name` must be a nul-terminated string; `m` must point to `m_len` values;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn malcev_catalog_get(
    name: *const c_char,
    n: usize,
    m: *const i64,
    m_len: usize,
    p: usize,
    q: usize,
    out: *mut *mut MalcevAlgebra,
) -> MalcevStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let m = if m_len == 0 {
            Vec::new()
        } else if m.is_null() {
            return Err(null("m"));
        } else {
            std::slice::from_raw_parts(m, m_len).to_vec()
        };
        let e = catalog_get(name, &CatalogParams { n, m, p, q }).map_err(core)?;
        let mut doc = Document::new(e.algebra);
        doc.gde = e.gde;
        put(out, boxed(doc), "out")
    })
}

/// Parses and validates an algebra document.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn malcev_from_document(text: *const c_char, out: *mut *mut MalcevAlgebra) -> MalcevStatus {
    guard(|| {
        let doc = parse_document(str_arg(text, "text")?).map_err(core)?;
        put(out, boxed(doc), "out")
    })
}

/// Canonical document text; free with [`malcev_string_free`].
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn malcev_to_document(alg: *const MalcevAlgebra, out: *mut *mut c_char) -> MalcevStatus {
    guard(|| {
        let a = handle(alg)?;
        put(out, c_string(emit_document(&a.doc)), "out")
    })
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn malcev_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `alg` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn malcev_algebra_free(alg: *mut MalcevAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` must be a live handle; `even` and `odd` must be writable.
#[no_mangle]
pub unsafe extern "C" fn malcev_dims(alg: *const MalcevAlgebra, even: *mut usize, odd: *mut usize) -> MalcevStatus {
    guard(|| {
        let s = handle(alg)?.doc.algebra.space();
        put(even, s.even, "even")?;
        put(odd, s.odd, "odd")
    })
}

/// # Safety
/// `alg` must be a live handle; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn malcev_check_malcev(alg: *const MalcevAlgebra, passed: *mut bool) -> MalcevStatus {
    guard(|| {
        let a = handle(alg)?;
        put(passed, check_malcev(&a.doc.algebra.algebra).passed, "passed")
    })
}

/// # Safety
/// `alg` must be a live handle; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn malcev_check_jacobi(alg: *const MalcevAlgebra, passed: *mut bool) -> MalcevStatus {
    guard(|| {
        let a = handle(alg)?;
        put(passed, check_jacobi(&a.doc.algebra.algebra).passed, "passed")
    })
}

/// All four form axioms: even, supersymmetric, non-degenerate, invariant.
///
/// # Safety
/// `alg` must be a live handle; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn malcev_check_form(alg: *const MalcevAlgebra, passed: *mut bool) -> MalcevStatus {
    guard(|| {
        let q = &handle(alg)?.doc.algebra;
        let r = check_form(&q.algebra, &q.form).map_err(core)?;
        put(passed, r.passed(), "passed")
    })
}

/// # Safety
/// `alg` must be a live handle; `even` and `odd` must be writable.
#[no_mangle]
pub unsafe extern "C" fn malcev_center_dims(
    alg: *const MalcevAlgebra,
    even: *mut usize,
    odd: *mut usize,
) -> MalcevStatus {
    guard(|| {
        let z = center(&handle(alg)?.doc.algebra.algebra);
        put(even, z.even_dim(), "even")?;
        put(odd, z.odd_dim(), "odd")
    })
}

/// Odd reduction. The new handle carries the recovered extension data, so
/// [`malcev_extend_odd`] on it rebuilds the input in the adapted basis.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn malcev_reduce_odd(alg: *const MalcevAlgebra, out: *mut *mut MalcevAlgebra) -> MalcevStatus {
    guard(|| {
        let r = reduce_odd(&handle(alg)?.doc.algebra).map_err(core)?;
        let mut doc = Document::new(r.n);
        doc.gde = Some(r.gde);
        put(out, boxed(doc), "out")
    })
}

/// Generalized double extension using the handle's extension data.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn malcev_extend_odd(alg: *const MalcevAlgebra, out: *mut *mut MalcevAlgebra) -> MalcevStatus {
    guard(|| {
        let a = handle(alg)?;
        let g = a
            .doc
            .gde
            .as_ref()
            .ok_or_else(|| (MalcevStatus::Precondition, "algebra carries no extension data".to_string()))?;
        let (k, _) = generalized_double_extension(&a.doc.algebra, g).map_err(core)?;
        put(out, boxed(Document::new(k)), "out")
    })
}

/// Decomposition tree as JSON. The tree is written even when some leaf is
/// inconclusive; the status is then `MALCEV_STATUS_INCONCLUSIVE`.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn malcev_decompose_json(alg: *const MalcevAlgebra, out: *mut *mut c_char) -> MalcevStatus {
    let mut inconclusive = false;
    let status = guard(|| {
        let t = inductive_decompose(&handle(alg)?.doc.algebra).map_err(core)?;
        inconclusive = t.is_inconclusive();
        put(out, c_string(emit_tree(&t)), "out")
    });
    if status == MalcevStatus::Ok && inconclusive {
        set_error("decomposition has an inconclusive leaf");
        return MalcevStatus::Inconclusive;
    }
    status
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn null_arguments_are_reported() {
        let mut out = ptr::null_mut();
        let st = unsafe { malcev_from_document(ptr::null(), &mut out) };
        assert_eq!(st, MalcevStatus::NullArgument);
        assert!(out.is_null());
        let msg = unsafe { CStr::from_ptr(malcev_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "text is null");
    }
}
