//! C ABI over the engine. Handles are opaque heap pointers owned by the
//! caller and released with the matching `_free`; every function returns a
//! status code, with the last failure message available per thread via
//! `paraorbit_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use paraorbit::format;
use paraorbit::instances;
use paraorbit::orbit::{OrbitError, OrbitInstance};
use paraorbit::para::{ParaError, ParaMorphism};

/// Status code of every ABI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParaorbitStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Input does not parse (literal, JSON, or unknown label/name).
    Malformed = 3,
    /// Input parses but breaks an invariant (monotonicity, ranks, ...).
    InvariantViolated = 4,
    /// A validator or theorem check reported failures.
    CheckFailed = 5,
    /// The instance has no duality/cosieve for homotopy-level operations.
    MissingDuality = 6,
    /// The tubular condition fails, so the duality lift is refused.
    TubularConditionFailed = 7,
}

/// Opaque paracyclic morphism handle.
pub struct ParaHandle(ParaMorphism);

/// Opaque orbit-instance handle.
pub struct InstanceHandle(OrbitInstance);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("NUL bytes stripped");
    });
}

fn fail(status: ParaorbitStatus, message: &str) -> ParaorbitStatus {
    set_error(message);
    status
}

fn para_status(err: &ParaError) -> ParaorbitStatus {
    match err {
        ParaError::BadLiteral { .. } | ParaError::WrongValueCount { .. } => {
            ParaorbitStatus::Malformed
        }
        _ => ParaorbitStatus::InvariantViolated,
    }
}

fn orbit_status(err: &OrbitError) -> ParaorbitStatus {
    match err {
        OrbitError::UnknownObject(_) | OrbitError::ClassOutOfRange { .. } => {
            ParaorbitStatus::Malformed
        }
        OrbitError::MissingDuality => ParaorbitStatus::MissingDuality,
        OrbitError::TubularConditionFailed => ParaorbitStatus::TubularConditionFailed,
        _ => ParaorbitStatus::CheckFailed,
    }
}

/// Message of the most recent failure on this thread. Borrowed; valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn paraorbit_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by any `_format`/`_emit`/`_report` call.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, ParaorbitStatus> {
    if ptr.is_null() {
        return Err(fail(ParaorbitStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(ParaorbitStatus::InvalidUtf8, "argument is not UTF-8"))
}

fn give_string(out: *mut *mut c_char, text: String) -> ParaorbitStatus {
    let c = CString::new(text.replace('\0', " ")).expect("NUL bytes stripped");
    unsafe { *out = c.into_raw() };
    ParaorbitStatus::Ok
}

macro_rules! require {
    ($ptr:expr) => {
        if $ptr.is_null() {
            return fail(ParaorbitStatus::NullPointer, "null handle argument");
        }
    };
}

/// Parses the literal `n m : v0 ... vn` into a new morphism handle.
///
/// # Safety
/// `literal` must be a NUL-terminated string and `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_para_parse(
    literal: *const c_char,
    out: *mut *mut ParaHandle,
) -> ParaorbitStatus {
    require!(out);
    let text = match read_str(literal) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match ParaMorphism::parse(text) {
        Ok(f) => {
            *out = Box::into_raw(Box::new(ParaHandle(f)));
            ParaorbitStatus::Ok
        }
        Err(e) => fail(para_status(&e), &e.to_string()),
    }
}

/// # Safety
/// `out` must be a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_para_identity(
    rank: usize,
    out: *mut *mut ParaHandle,
) -> ParaorbitStatus {
    require!(out);
    *out = Box::into_raw(Box::new(ParaHandle(ParaMorphism::identity(rank))));
    ParaorbitStatus::Ok
}

/// # Safety
/// `out` must be a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_para_cycle(
    rank: usize,
    out: *mut *mut ParaHandle,
) -> ParaorbitStatus {
    require!(out);
    *out = Box::into_raw(Box::new(ParaHandle(ParaMorphism::cycle(rank))));
    ParaorbitStatus::Ok
}

/// `outer ∘ inner` (apply `inner` first).
///
/// # Safety
/// Handles must be live and `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_para_compose(
    outer: *const ParaHandle,
    inner: *const ParaHandle,
    out: *mut *mut ParaHandle,
) -> ParaorbitStatus {
    require!(outer);
    require!(inner);
    require!(out);
    match (*outer).0.compose(&(*inner).0) {
        Ok(f) => {
            *out = Box::into_raw(Box::new(ParaHandle(f)));
            ParaorbitStatus::Ok
        }
        Err(e) => fail(para_status(&e), &e.to_string()),
    }
}

/// # Safety
/// `f` must be live and `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_para_dual(
    f: *const ParaHandle,
    out: *mut *mut ParaHandle,
) -> ParaorbitStatus {
    require!(f);
    require!(out);
    *out = Box::into_raw(Box::new(ParaHandle((*f).0.cyclic_dual())));
    ParaorbitStatus::Ok
}

/// Representative modulo full turns of the target.
///
/// # Safety
/// `f` must be live and `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_para_canonical(
    f: *const ParaHandle,
    out: *mut *mut ParaHandle,
) -> ParaorbitStatus {
    require!(f);
    require!(out);
    *out = Box::into_raw(Box::new(ParaHandle((*f).0.lambda_canonical())));
    ParaorbitStatus::Ok
}

/// # Safety
/// `f` must be live and `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_para_eval(
    f: *const ParaHandle,
    j: i64,
    out: *mut i64,
) -> ParaorbitStatus {
    require!(f);
    require!(out);
    *out = (*f).0.eval(j);
    ParaorbitStatus::Ok
}

/// # Safety
/// `f` must be live and `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_para_in_k(
    f: *const ParaHandle,
    out: *mut bool,
) -> ParaorbitStatus {
    require!(f);
    require!(out);
    *out = (*f).0.in_k();
    ParaorbitStatus::Ok
}

/// # Safety
/// `f` must be live and `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_para_in_delta(
    f: *const ParaHandle,
    out: *mut bool,
) -> ParaorbitStatus {
    require!(f);
    require!(out);
    *out = (*f).0.in_delta();
    ParaorbitStatus::Ok
}

/// Renders the literal form; release with `paraorbit_string_free`.
///
/// # Safety
/// `f` must be live and `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_para_format(
    f: *const ParaHandle,
    out: *mut *mut c_char,
) -> ParaorbitStatus {
    require!(f);
    require!(out);
    give_string(out, (*f).0.to_string())
}

/// # Safety
/// `f` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_para_free(f: *mut ParaHandle) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Builds a catalog instance by name.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_instance_build(
    name: *const c_char,
    out: *mut *mut InstanceHandle,
) -> ParaorbitStatus {
    require!(out);
    let name = match read_str(name) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match instances::build(name) {
        Ok(inst) => {
            *out = Box::into_raw(Box::new(InstanceHandle(inst)));
            ParaorbitStatus::Ok
        }
        Err(e) => fail(ParaorbitStatus::Malformed, &e.to_string()),
    }
}

/// Parses an instance file.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_instance_parse(
    json: *const c_char,
    out: *mut *mut InstanceHandle,
) -> ParaorbitStatus {
    require!(out);
    let text = match read_str(json) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match format::parse_instance(text) {
        Ok(inst) => {
            *out = Box::into_raw(Box::new(InstanceHandle(inst)));
            ParaorbitStatus::Ok
        }
        Err(e) => fail(ParaorbitStatus::Malformed, &e.to_string()),
    }
}

/// Canonical instance-file text; release with `paraorbit_string_free`.
///
/// # Safety
/// `inst` must be live and `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_instance_emit(
    inst: *const InstanceHandle,
    out: *mut *mut c_char,
) -> ParaorbitStatus {
    require!(inst);
    require!(out);
    give_string(out, format::emit_instance(&(*inst).0))
}

/// Runs all structural validators: `Ok` or `CheckFailed`.
///
/// # Safety
/// `inst` must be live.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_instance_validate(
    inst: *const InstanceHandle,
) -> ParaorbitStatus {
    require!(inst);
    let report = (*inst).0.validate();
    if report.passed() {
        ParaorbitStatus::Ok
    } else {
        fail(ParaorbitStatus::CheckFailed, &report.render_text())
    }
}

/// Runs the full theorem suite: `Ok` or `CheckFailed`.
///
/// # Safety
/// `inst` must be live.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_instance_theorem(
    inst: *const InstanceHandle,
) -> ParaorbitStatus {
    require!(inst);
    let report = (*inst).0.theorem_report();
    if report.passed() {
        ParaorbitStatus::Ok
    } else {
        fail(ParaorbitStatus::CheckFailed, &report.render_text())
    }
}

/// Text report of the theorem suite regardless of outcome; release with
/// `paraorbit_string_free`.
///
/// # Safety
/// `inst` must be live and `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_instance_theorem_report(
    inst: *const InstanceHandle,
    out: *mut *mut c_char,
) -> ParaorbitStatus {
    require!(inst);
    require!(out);
    give_string(out, (*inst).0.theorem_report().render_text())
}

/// Number of coset morphisms between two labelled objects.
///
/// # Safety
/// `inst` must be live, labels NUL-terminated, `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_instance_hom_count(
    inst: *const InstanceHandle,
    from: *const c_char,
    to: *const c_char,
    out: *mut usize,
) -> ParaorbitStatus {
    require!(inst);
    require!(out);
    let inst = &(*inst).0;
    let (from, to) = match (read_str(from), read_str(to)) {
        (Ok(f), Ok(t)) => (f, t),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    match (inst.object_index(from), inst.object_index(to)) {
        (Ok(x), Ok(y)) => {
            *out = inst.hom(x, y).len();
            ParaorbitStatus::Ok
        }
        (Err(e), _) | (_, Err(e)) => fail(orbit_status(&e), &e.to_string()),
    }
}

/// Number of homotopy classes between two labelled objects.
///
/// # Safety
/// `inst` must be live, labels NUL-terminated, `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_instance_ho_count(
    inst: *const InstanceHandle,
    from: *const c_char,
    to: *const c_char,
    out: *mut usize,
) -> ParaorbitStatus {
    require!(inst);
    require!(out);
    let inst = &(*inst).0;
    let (from, to) = match (read_str(from), read_str(to)) {
        (Ok(f), Ok(t)) => (f, t),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    let (x, y) = match (inst.object_index(from), inst.object_index(to)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(e), _) | (_, Err(e)) => return fail(orbit_status(&e), &e.to_string()),
    };
    match inst.ho_hom(x, y) {
        Ok(classes) => {
            *out = classes.len();
            ParaorbitStatus::Ok
        }
        Err(e) => fail(orbit_status(&e), &e.to_string()),
    }
}

/// # Safety
/// `inst` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn paraorbit_instance_free(inst: *mut InstanceHandle) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}
