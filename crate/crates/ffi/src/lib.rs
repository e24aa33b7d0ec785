//! C ABI over `invdiff`.
//!
//! Setups are opaque handles created by one of the `invdiff_setup_load_*`
//! functions and released with [`invdiff_setup_free`]. Every fallible call
//! returns an [`InvdiffStatus`]; on failure [`invdiff_last_error`] describes
//! the problem. Strings returned through `out` parameters are owned by the
//! caller and must be released with [`invdiff_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use invdiff::coset::{check_commutativity, imod_basis, in_dmod, project_mod_ideal};
use invdiff::expr::{eval_enveloping, eval_symmetric, parse_expr, Vocabulary};
use invdiff::format::{load_named, parse_setup, LoadedSetup};
use invdiff::lie::{invariant_complement, ComplementOutcome};

/// Result codes. `PropertyFailed` is never returned; boolean answers go
/// through `out` parameters. It is reserved to mirror the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvdiffStatus {
    Ok = 0,
    PropertyFailed = 1,
    InvalidInput = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    Panic = 5,
}

/// Opaque setup handle.
pub struct InvdiffSetup {
    loaded: LoadedSetup,
    vocab: Vocabulary,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(InvdiffStatus, String);

impl From<invdiff::Error> for Failure {
    fn from(e: invdiff::Error) -> Self {
        Failure(InvdiffStatus::InvalidInput, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> InvdiffStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => InvdiffStatus::Ok,
        Ok(Err(Failure(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".into());
            InvdiffStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(InvdiffStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(InvdiffStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(s: *const InvdiffSetup) -> Result<&'a InvdiffSetup, Failure> {
    s.as_ref().ok_or_else(|| Failure(InvdiffStatus::NullPointer, "setup is null".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(InvdiffStatus::NullPointer, "out is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(InvdiffStatus::InvalidInput, "nul byte in output".into()))?;
    if out.is_null() {
        return Err(Failure(InvdiffStatus::NullPointer, "out is null".into()));
    }
    out.write(c.into_raw());
    Ok(())
}

fn wrap(loaded: LoadedSetup) -> Result<*mut InvdiffSetup, Failure> {
    let vocab = Vocabulary::from_setup(&loaded.setup)?;
    Ok(Box::into_raw(Box::new(InvdiffSetup { loaded, vocab })))
}

/// Loads a built-in preset, or a setup file if `name` is not a preset.
///
/// # Safety
/// `name` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn invdiff_setup_load(name: *const c_char, out: *mut *mut InvdiffSetup) -> InvdiffStatus {
    guard(|| {
        let name = text(name, "name")?;
        write_out(out, wrap(load_named(name)?)?)
    })
}

/// Loads a setup from JSON text.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn invdiff_setup_load_json(json: *const c_char, out: *mut *mut InvdiffSetup) -> InvdiffStatus {
    guard(|| {
        let json = text(json, "json")?;
        write_out(out, wrap(parse_setup(json)?.build()?)?)
    })
}

/// # Safety
/// `setup` must come from a load function and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn invdiff_setup_free(setup: *mut InvdiffSetup) {
    if !setup.is_null() {
        drop(Box::from_raw(setup));
    }
}

/// `dim g`, or 0 for a null handle.
///
/// # Safety
/// `setup` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn invdiff_setup_dim(setup: *const InvdiffSetup) -> usize {
    setup.as_ref().map_or(0, |s| s.loaded.setup.n())
}

/// `dim m`, or 0 for a null handle.
///
/// # Safety
/// `setup` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn invdiff_setup_m_dim(setup: *const InvdiffSetup) -> usize {
    setup.as_ref().map_or(0, |s| s.loaded.setup.r())
}

/// PBW normal form of `expr` read in `U(g)`.
///
/// # Safety
/// Pointers must be valid; `out` receives a string to free with
/// [`invdiff_string_free`].
#[no_mangle]
pub unsafe extern "C" fn invdiff_normalize(
    setup: *const InvdiffSetup,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> InvdiffStatus {
    guard(|| {
        let s = handle(setup)?;
        let e = parse_expr(text(expr, "expr")?, &s.vocab)?;
        let u = eval_enveloping(&e, &s.loaded.setup, &s.vocab)?;
        write_string(out, u.render(s.loaded.setup.adapted_names()))
    })
}

/// Symmetrization of `expr` read in `S(g)`.
///
/// # Safety
/// As for [`invdiff_normalize`].
#[no_mangle]
pub unsafe extern "C" fn invdiff_symmetrize(
    setup: *const InvdiffSetup,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> InvdiffStatus {
    guard(|| {
        let s = handle(setup)?;
        let e = parse_expr(text(expr, "expr")?, &s.vocab)?;
        let p = eval_symmetric(&e, &s.loaded.setup, &s.vocab)?;
        write_string(out, s.loaded.setup.env().symmetrize(&p).render(s.loaded.setup.adapted_names()))
    })
}

/// Canonical representative of `expr` modulo the ideal.
///
/// # Safety
/// As for [`invdiff_normalize`].
#[no_mangle]
pub unsafe extern "C" fn invdiff_project(
    setup: *const InvdiffSetup,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> InvdiffStatus {
    guard(|| {
        let s = handle(setup)?;
        let e = parse_expr(text(expr, "expr")?, &s.vocab)?;
        let u = eval_enveloping(&e, &s.loaded.setup, &s.vocab)?;
        write_string(out, project_mod_ideal(&s.loaded.setup, &u).render(s.loaded.setup.adapted_names()))
    })
}

/// Whether `expr` (read in `U(g)`) lies in `D_mod`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn invdiff_in_dmod(
    setup: *const InvdiffSetup,
    expr: *const c_char,
    out: *mut bool,
) -> InvdiffStatus {
    guard(|| {
        let s = handle(setup)?;
        let e = parse_expr(text(expr, "expr")?, &s.vocab)?;
        let u = eval_enveloping(&e, &s.loaded.setup, &s.vocab)?;
        write_out(out, in_dmod(&s.loaded.setup, &u))
    })
}

/// Degree-`degree` basis of `I_mod(m)`, one polynomial per line.
///
/// # Safety
/// As for [`invdiff_normalize`].
#[no_mangle]
pub unsafe extern "C" fn invdiff_imod_basis(
    setup: *const InvdiffSetup,
    degree: usize,
    out: *mut *mut c_char,
) -> InvdiffStatus {
    guard(|| {
        let s = handle(setup)?;
        let names = s.loaded.setup.m_names();
        let lines: Vec<String> = imod_basis(&s.loaded.setup, degree).polys.iter().map(|p| p.render(names)).collect();
        write_string(out, lines.join("\n"))
    })
}

/// Whether `h` has an invariant complement.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn invdiff_is_reductive(setup: *const InvdiffSetup, out: *mut bool) -> InvdiffStatus {
    guard(|| {
        let s = handle(setup)?;
        let st = &s.loaded.setup;
        let outcome = invariant_complement(st.algebra(), st.h(), st.component_reps());
        write_out(out, matches!(outcome, ComplementOutcome::Invariant(_)))
    })
}

/// Commutativity of the symmetrized invariants modulo the ideal, up to
/// total degree `max_degree`. Not-applicable counts as false.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn invdiff_check_commutativity(
    setup: *const InvdiffSetup,
    max_degree: usize,
    out: *mut bool,
) -> InvdiffStatus {
    guard(|| {
        let s = handle(setup)?;
        write_out(out, check_commutativity(&s.loaded.setup, max_degree).verdict.passed())
    })
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn invdiff_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn invdiff_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
