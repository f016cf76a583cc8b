//! C ABI for the induction-model analysis library.
//!
//! Conventions: handles are opaque pointers created and freed by this
//! library; functions return an [`IndmodStatus`] (or a NULL-able string) and
//! never unwind across the boundary; the last error message is kept in
//! thread-local storage and stays valid until the next failing call on the
//! same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use indmod::engine::{closure_trace, nim_verdict};
use indmod::reduction::{
    build_reduction, decide_reducible, verify_reduction, ReductionRelation, Verdict,
};
use indmod::{Bound, Error, InductionModel};

/// Opaque handle to a parsed induction model.
pub struct IndmodModel {
    inner: InductionModel,
}

/// Result codes shared by all fallible entry points.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IndmodStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed document or model-file schema violation.
    SchemaError = 3,
    /// Well-formed input the mathematics refuses (impossible construction,
    /// wrong-way reduction, unverified relation).
    DomainError = 4,
    /// Arity mismatch or integer overflow during evaluation.
    EvalError = 5,
    /// Invalid bound parameters or empty materialized base.
    BoundError = 6,
    InternalError = 7,
}

/// Bounded-semantics parameters by value.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct IndmodBound {
    pub universe: u64,
    pub cap: u64,
    pub cutoff: u32,
}

/// Summary of a bounded closure run.
#[repr(C)]
pub struct IndmodAnalysis {
    pub covered: bool,
    /// True when the step count was decided before the cutoff.
    pub step_count_is_finite: bool,
    /// The decided step count, or the cutoff when it was exhausted.
    pub step_count: u64,
    pub closure_size: u64,
    pub missing_count: u64,
}

/// Reducibility verdict for a model pair.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IndmodReducibility {
    Reducible = 0,
    /// Both step counts hit the cutoff and compare as presumed-equal.
    ReduciblePresumed = 1,
    NotReducible = 2,
    Undecided = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> IndmodStatus {
    match err {
        Error::Schema { .. } | Error::InvalidGenFn(_) | Error::InvalidSetSpec(_) => {
            IndmodStatus::SchemaError
        }
        Error::ArityMismatch { .. } | Error::Overflow { .. } => IndmodStatus::EvalError,
        Error::InvalidBound(_)
        | Error::EmptyBase { .. }
        | Error::CapTooLargeForEnumeration { .. } => IndmodStatus::BoundError,
        Error::Io(_) => IndmodStatus::InternalError,
        _ => IndmodStatus::DomainError,
    }
}

fn fail(err: Error) -> IndmodStatus {
    let status = status_of(&err);
    set_error(&err.to_string());
    status
}

fn bound_of(b: IndmodBound) -> Result<Bound, Error> {
    Bound::new(b.universe, b.cap, b.cutoff)
}

/// Runs a closure catching panics, so no unwind crosses the ABI.
fn guarded<T>(default: T, f: impl FnOnce() -> T) -> T {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(v) => v,
        Err(_) => {
            set_error("internal panic");
            default
        }
    }
}

unsafe fn str_arg<'a>(ptr: *const c_char) -> Result<&'a str, IndmodStatus> {
    if ptr.is_null() {
        set_error("null pointer argument");
        return Err(IndmodStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        IndmodStatus::InvalidUtf8
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Library version as a static string; never freed.
#[no_mangle]
pub extern "C" fn indmod_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the most recent error on this thread; valid until the next
/// failing call. Never NULL.
#[no_mangle]
pub extern "C" fn indmod_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Default bound: universe 60, cap 136, cutoff 64.
#[no_mangle]
pub extern "C" fn indmod_bound_default() -> IndmodBound {
    let b = Bound::default();
    IndmodBound {
        universe: b.universe,
        cap: b.cap,
        cutoff: b.cutoff,
    }
}

/// Parses a model from its JSON document; on success stores a handle the
/// caller must release with `indmod_model_free`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn indmod_model_parse(
    json: *const c_char,
    out: *mut *mut IndmodModel,
) -> IndmodStatus {
    if out.is_null() {
        set_error("null output pointer");
        return IndmodStatus::NullPointer;
    }
    let text = match str_arg(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    guarded(IndmodStatus::InternalError, || {
        match indmod::parse_model(text) {
            Ok(model) => {
                *out = Box::into_raw(Box::new(IndmodModel { inner: model }));
                IndmodStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a model handle; NULL is ignored.
///
/// # Safety
/// `model` must have come from `indmod_model_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn indmod_model_free(model: *mut IndmodModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Serializes the model back to its JSON document. Returns NULL on error;
/// free the result with `indmod_string_free`.
///
/// # Safety
/// `model` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn indmod_model_to_json(model: *const IndmodModel) -> *mut c_char {
    if model.is_null() {
        set_error("null model handle");
        return ptr::null_mut();
    }
    into_c_string(indmod::serialize_model(&(*model).inner))
}

/// Frees a string returned by this library; NULL is ignored.
///
/// # Safety
/// `s` must have been returned by an indmod function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn indmod_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs the bounded closure and fills the analysis summary.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn indmod_analyze(
    model: *const IndmodModel,
    bound: IndmodBound,
    out: *mut IndmodAnalysis,
) -> IndmodStatus {
    if model.is_null() || out.is_null() {
        set_error("null pointer argument");
        return IndmodStatus::NullPointer;
    }
    let model = &(*model).inner;
    guarded(IndmodStatus::InternalError, || {
        let bound = match bound_of(bound) {
            Ok(b) => b,
            Err(e) => return fail(e),
        };
        match closure_trace(model, &bound) {
            Ok(trace) => {
                let verdict = nim_verdict(&trace);
                let (finite, steps) = match trace.stabilized_at {
                    indmod::ExtNat::Finite(n) => (true, n),
                    indmod::ExtNat::AtLeast(c) => (false, c as u64),
                };
                *out = IndmodAnalysis {
                    covered: verdict.covered,
                    step_count_is_finite: finite,
                    step_count: steps,
                    closure_size: trace.closure().len() as u64,
                    missing_count: verdict.missing.len() as u64,
                };
                IndmodStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Full trace report (levels, l-table, verdict) as a JSON string. Returns
/// NULL on error; free with `indmod_string_free`.
///
/// # Safety
/// `model` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn indmod_analyze_json(
    model: *const IndmodModel,
    bound: IndmodBound,
) -> *mut c_char {
    if model.is_null() {
        set_error("null model handle");
        return ptr::null_mut();
    }
    let model = &(*model).inner;
    guarded(ptr::null_mut(), || {
        let bound = match bound_of(bound) {
            Ok(b) => b,
            Err(e) => {
                fail(e);
                return ptr::null_mut();
            }
        };
        match closure_trace(model, &bound) {
            Ok(trace) => {
                let verdict = nim_verdict(&trace);
                let report = serde_json::json!({
                    "model": model.to_string(),
                    "trace": trace,
                    "step_count": trace.stabilized_at,
                    "covered": verdict.covered,
                    "missing": verdict.missing,
                    "caveat": verdict.caveat,
                });
                into_c_string(report.to_string())
            }
            Err(e) => {
                fail(e);
                ptr::null_mut()
            }
        }
    })
}

/// Structure report (additive/multiplicative flags plus self-loop search up
/// to `search_cap`) as JSON. Returns NULL on error.
///
/// # Safety
/// `model` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn indmod_classify_json(
    model: *const IndmodModel,
    search_cap: u64,
) -> *mut c_char {
    if model.is_null() {
        set_error("null model handle");
        return ptr::null_mut();
    }
    let model = &(*model).inner;
    guarded(
        ptr::null_mut(),
        || match indmod::structure::structure_report(&model.gen, search_cap.max(1)) {
            Ok(report) => into_c_string(
                serde_json::to_string(&report).expect("report serialization cannot fail"),
            ),
            Err(e) => {
                fail(e);
                ptr::null_mut()
            }
        },
    )
}

/// Decides whether `m1` reduces to `m2` by the step-count comparison.
///
/// # Safety
/// Both handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn indmod_decide_reducible(
    m1: *const IndmodModel,
    m2: *const IndmodModel,
    bound: IndmodBound,
    out: *mut IndmodReducibility,
) -> IndmodStatus {
    if m1.is_null() || m2.is_null() || out.is_null() {
        set_error("null pointer argument");
        return IndmodStatus::NullPointer;
    }
    let (m1, m2) = (&(*m1).inner, &(*m2).inner);
    guarded(IndmodStatus::InternalError, || {
        let bound = match bound_of(bound) {
            Ok(b) => b,
            Err(e) => return fail(e),
        };
        match decide_reducible(m1, m2, &bound) {
            Ok(decision) => {
                *out = match decision.reducible {
                    Verdict::Yes {
                        presumed_infinite: false,
                    } => IndmodReducibility::Reducible,
                    Verdict::Yes {
                        presumed_infinite: true,
                    } => IndmodReducibility::ReduciblePresumed,
                    Verdict::No => IndmodReducibility::NotReducible,
                    Verdict::Unknown => IndmodReducibility::Undecided,
                };
                IndmodStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Builds the recipe relation for a reducible pair and returns it in the
/// documented relation-file JSON form. Returns NULL (with a domain error)
/// when the pair is not reducible.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn indmod_build_reduction_json(
    m1: *const IndmodModel,
    m2: *const IndmodModel,
    bound: IndmodBound,
) -> *mut c_char {
    if m1.is_null() || m2.is_null() {
        set_error("null model handle");
        return ptr::null_mut();
    }
    let (m1, m2) = (&(*m1).inner, &(*m2).inner);
    guarded(ptr::null_mut(), || {
        let bound = match bound_of(bound) {
            Ok(b) => b,
            Err(e) => {
                fail(e);
                return ptr::null_mut();
            }
        };
        match build_reduction(m1, m2, &bound, false) {
            Ok(relation) => into_c_string(relation.serialize()),
            Err(e) => {
                fail(e);
                ptr::null_mut()
            }
        }
    })
}

/// Verifies a relation (in relation-file JSON form) against the three
/// reduction conditions; sets `out_verified` accordingly.
///
/// # Safety
/// Handles must be live, `relation_json` NUL-terminated, `out_verified`
/// valid.
#[no_mangle]
pub unsafe extern "C" fn indmod_verify_reduction(
    m1: *const IndmodModel,
    m2: *const IndmodModel,
    relation_json: *const c_char,
    bound: IndmodBound,
    out_verified: *mut bool,
) -> IndmodStatus {
    if m1.is_null() || m2.is_null() || out_verified.is_null() {
        set_error("null pointer argument");
        return IndmodStatus::NullPointer;
    }
    let text = match str_arg(relation_json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let (m1, m2) = (&(*m1).inner, &(*m2).inner);
    guarded(IndmodStatus::InternalError, || {
        let bound = match bound_of(bound) {
            Ok(b) => b,
            Err(e) => return fail(e),
        };
        let relation = match ReductionRelation::parse(text) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        match verify_reduction(m1, m2, &relation, &bound) {
            Ok(report) => {
                *out_verified = report.passed();
                IndmodStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
