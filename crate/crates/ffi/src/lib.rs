//! C interface to the `grl` harness.
//!
//! Instances are parsed from JSON into opaque [`GrlInstance`] handles. Every
//! fallible call returns a [`GrlStatus`]; on failure a message is available
//! from [`grl_last_error`] on the same thread. Strings handed out by this
//! library must be released with [`grl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use grl::graded::EnumerationError;
use grl::harness::fixtures::run_fixture;
use grl::harness::instance::{check_instance, Instance, Transform};
use grl::harness::verify::Status;

/// Result of a call. Input and budget codes match the `grl` exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    BudgetExceeded = 4,
    Panic = 5,
}

/// Outcome of a verification run.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrlVerdict {
    Pass = 0,
    Fail = 2,
    BudgetExceeded = 4,
    Unsupported = 5,
}

impl From<Status> for GrlVerdict {
    fn from(s: Status) -> GrlVerdict {
        match s {
            Status::Pass => GrlVerdict::Pass,
            Status::Fail => GrlVerdict::Fail,
            Status::BudgetExceeded => GrlVerdict::BudgetExceeded,
            Status::Unsupported => GrlVerdict::Unsupported,
        }
    }
}

/// A parsed instance: a graded algebra or a group ring with named elements.
pub struct GrlInstance {
    inner: Instance,
}

/// Cap passed to calls that want the library default.
pub const GRL_DEFAULT_CAP: usize = 1000;
/// Budget passed to calls that want the library default.
pub const GRL_DEFAULT_BUDGET: u64 = 1_000_000;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(GrlStatus, String);

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GrlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GrlStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            GrlStatus::Panic
        }
    }
}

fn input<E: ToString>(e: E) -> Failure {
    Failure(GrlStatus::InvalidInput, e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(GrlStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(GrlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn instance_ref<'a>(p: *const GrlInstance) -> Result<&'a Instance, Failure> {
    p.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Failure(GrlStatus::NullPointer, "instance is NULL".into()))
}

fn check_out<T>(p: *mut T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(GrlStatus::NullPointer, format!("{what} is NULL")))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(input)
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<*mut c_char, Failure> {
    to_c_string(serde_json::to_string(value).map_err(input)?)
}

/// Parses an instance from JSON text. `name` may be NULL, in which case the
/// instance is called `instance` unless the JSON names it.
///
/// # Safety
/// `json` and `name` must be NULL or valid NUL-terminated strings; `out`
/// must be a valid pointer. The handle written to `out` must be released
/// with [`grl_instance_free`].
#[no_mangle]
pub unsafe extern "C" fn grl_instance_from_json(
    json: *const c_char,
    name: *const c_char,
    out: *mut *mut GrlInstance,
) -> GrlStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = ptr::null_mut();
        let text = read_str(json, "json")?;
        let name = if name.is_null() { "instance" } else { read_str(name, "name")? };
        let inner = Instance::from_json(text, name).map_err(input)?;
        *out = Box::into_raw(Box::new(GrlInstance { inner }));
        Ok(())
    })
}

/// Releases an instance. NULL is ignored.
///
/// # Safety
/// `instance` must be NULL or a handle from [`grl_instance_from_json`] that
/// has not been freed.
#[no_mangle]
pub unsafe extern "C" fn grl_instance_free(instance: *mut GrlInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Writes a newly allocated copy of the instance name to `out`.
///
/// # Safety
/// `instance` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grl_instance_name(instance: *const GrlInstance, out: *mut *mut c_char) -> GrlStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = to_c_string(instance_ref(instance)?.name().to_string())?;
        Ok(())
    })
}

/// Dimension of the instance as a graded algebra over its field. Fails with
/// `InvalidInput` for group rings over infinite groups.
///
/// # Safety
/// `instance` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grl_instance_dimension(instance: *const GrlInstance, out: *mut usize) -> GrlStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = instance_ref(instance)?.graded().map_err(input)?.dim();
        Ok(())
    })
}

/// Counts the central idempotents by exhaustive enumeration, zero included.
///
/// # Safety
/// `instance` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grl_instance_count_central_idempotents(
    instance: *const GrlInstance,
    budget: u64,
    out: *mut usize,
) -> GrlStatus {
    guard(|| {
        check_out(out, "out")?;
        let r = instance_ref(instance)?.graded().map_err(input)?;
        match r.central_idempotents_enumerate(budget) {
            Ok(list) => {
                *out = list.len();
                Ok(())
            }
            Err(e @ EnumerationError::BudgetExceeded { .. }) => Err(Failure(GrlStatus::BudgetExceeded, e.to_string())),
            Err(e) => Err(input(e)),
        }
    })
}

/// Checks the instance and writes the report as JSON to `report_json`.
/// `transforms` is NULL or a newline-separated list such as
/// `"dorroh\nphi"`.
///
/// # Safety
/// `instance` must be a live handle; `transforms` NULL or a valid string;
/// `verdict` and `report_json` valid pointers. The report must be released
/// with [`grl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn grl_instance_check(
    instance: *const GrlInstance,
    transforms: *const c_char,
    cap: usize,
    budget: u64,
    verdict: *mut GrlVerdict,
    report_json: *mut *mut c_char,
) -> GrlStatus {
    guard(|| {
        check_out(verdict, "verdict")?;
        check_out(report_json, "report_json")?;
        *report_json = ptr::null_mut();
        let inst = instance_ref(instance)?;
        let transforms: Vec<Transform> = if transforms.is_null() {
            Vec::new()
        } else {
            read_str(transforms, "transforms")?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(|l| l.parse::<Transform>().map_err(input))
                .collect::<Result<_, _>>()?
        };
        let report = check_instance(inst, &transforms, cap, budget).map_err(input)?;
        *verdict = report.status.into();
        *report_json = to_json(&report)?;
        Ok(())
    })
}

/// Runs a built-in example by name and writes its report as JSON.
///
/// # Safety
/// `name` must be a valid string; `verdict` and `report_json` valid
/// pointers. The report must be released with [`grl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn grl_fixture_run(
    name: *const c_char,
    cap: usize,
    budget: u64,
    verdict: *mut GrlVerdict,
    report_json: *mut *mut c_char,
) -> GrlStatus {
    guard(|| {
        check_out(verdict, "verdict")?;
        check_out(report_json, "report_json")?;
        *report_json = ptr::null_mut();
        let report = run_fixture(read_str(name, "name")?, cap, budget).map_err(input)?;
        *verdict = if report.pass { GrlVerdict::Pass } else { GrlVerdict::Fail };
        *report_json = to_json(&report)?;
        Ok(())
    })
}

/// Message for the most recent failed call on this thread, or NULL. The
/// pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn grl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn grl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
