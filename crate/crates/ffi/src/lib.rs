//! C interface to the rinehart kernel.
//!
//! Problems are opaque handles created by [`rh_problem_parse`] or
//! [`rh_problem_preset`] and released with [`rh_problem_free`]. Every
//! command writes a JSON report into `*out`, which the caller releases with
//! [`rh_string_free`]. On a nonzero status, [`rh_last_error_message`]
//! describes the failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rinehart::cli::{self, CliError};
use rinehart::problem::{self, Problem};
use rinehart::report::VerdictReport;
use rinehart::scalars::FieldSpec;

/// Result codes. Mathematical verdicts are never encoded here: an
/// infeasible system is `RH_STATUS_OK` with an infeasible report.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InputError = 3,
    InternalError = 4,
    Panic = 5,
}

/// A parsed problem file.
pub struct RhProblem {
    inner: Problem,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn guard(f: impl FnOnce() -> Result<(), (RhStatus, String)>) -> RhStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RhStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside rinehart");
            RhStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (RhStatus, String)> {
    if p.is_null() {
        return Err((RhStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (RhStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn problem_ref<'a>(p: *const RhProblem) -> Result<&'a Problem, (RhStatus, String)> {
    p.as_ref()
        .map(|h| &h.inner)
        .ok_or((RhStatus::NullPointer, "problem handle is null".into()))
}

fn cli_error(e: CliError) -> (RhStatus, String) {
    let status = match e {
        CliError::Input(_) => RhStatus::InputError,
        CliError::Internal(_) => RhStatus::InternalError,
    };
    (status, e.to_string())
}

unsafe fn emit(out: *mut *mut c_char, text: String) -> Result<(), (RhStatus, String)> {
    if out.is_null() {
        return Err((RhStatus::NullPointer, "output pointer is null".into()));
    }
    let s = CString::new(text).map_err(|_| (RhStatus::InternalError, "report contains a NUL byte".to_string()))?;
    *out = s.into_raw();
    Ok(())
}

unsafe fn emit_report(out: *mut *mut c_char, r: Result<VerdictReport, CliError>) -> Result<(), (RhStatus, String)> {
    let report = r.map_err(cli_error)?;
    emit(out, report.to_json())
}

unsafe fn store(out: *mut *mut RhProblem, p: Problem) -> Result<(), (RhStatus, String)> {
    if out.is_null() {
        return Err((RhStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(RhProblem { inner: p }));
    Ok(())
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn rh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses problem-file text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rh_problem_parse(text: *const c_char, out: *mut *mut RhProblem) -> RhStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let p = problem::parse_problem(text).map_err(|e| (RhStatus::InputError, e.to_string()))?;
        store(out, p)
    })
}

/// Loads a built-in problem by name (`square-zero`, `euler-dual`).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rh_problem_preset(name: *const c_char, out: *mut *mut RhProblem) -> RhStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let text = rinehart::presets::named(name)
            .ok_or_else(|| (RhStatus::InputError, format!("unknown preset {name:?}")))?;
        let p = problem::parse_problem(text).map_err(|e| (RhStatus::InternalError, e.to_string()))?;
        store(out, p)
    })
}

/// Releases a problem handle. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rh_problem_free(p: *mut RhProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Writes the problem back out as TOML.
///
/// # Safety
/// `p` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rh_problem_to_toml(p: *const RhProblem, out: *mut *mut c_char) -> RhStatus {
    guard(|| emit(out, problem_ref(p)?.file.to_toml()))
}

/// Axiom checks.
///
/// # Safety
/// `p` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rh_check(p: *const RhProblem, out: *mut *mut c_char) -> RhStatus {
    guard(|| emit_report(out, Ok(cli::check_report(problem_ref(p)?))))
}

/// Truncated enveloping algebra up to `degree`.
///
/// # Safety
/// `p` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rh_envelope(p: *const RhProblem, degree: usize, list_basis: bool, out: *mut *mut c_char) -> RhStatus {
    guard(|| emit_report(out, cli::envelope_report(problem_ref(p)?, degree, list_basis)))
}

/// Right-module extension search; a found extension is checked up to `degree`.
///
/// # Safety
/// `p` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rh_partial(p: *const RhProblem, degree: usize, out: *mut *mut c_char) -> RhStatus {
    guard(|| emit_report(out, cli::partial_report(problem_ref(p)?, degree)))
}

/// Left divisibility of `target` by `left` in the degree-`degree` slice.
///
/// # Safety
/// `p` must be a live handle, `left` and `target` NUL-terminated strings,
/// and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rh_divide(
    p: *const RhProblem,
    left: *const c_char,
    target: *const c_char,
    degree: usize,
    out: *mut *mut c_char,
) -> RhStatus {
    guard(|| {
        let left = read_str(left, "left")?;
        let target = read_str(target, "target")?;
        emit_report(out, cli::divide_report(problem_ref(p)?, left, target, degree))
    })
}

/// End-to-end obstruction run over GF(`prime`), or over the rationals when
/// `prime` is 0.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rh_theorem1(prime: u64, degree: usize, out: *mut *mut c_char) -> RhStatus {
    guard(|| {
        let field = if prime == 0 {
            FieldSpec::Rationals
        } else {
            FieldSpec::prime(prime).map_err(|e| (RhStatus::InputError, e.to_string()))?
        };
        emit_report(out, cli::theorem1_report(field, degree, false))
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
