//! C interface to the ksbicat engine.
//!
//! Handles are opaque and owned by the caller until passed to the matching
//! `_free` function. Failing calls return a nonzero [`KsStatus`] and leave a
//! message readable through [`ks_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ksbicat::io::{scalar_string, Instance, InstanceFile};
use ksbicat::kstheory::Decomposition;
use ksbicat::Error;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed or invalid instance, unknown name, bad argument.
    Input = 3,
    /// A certificate could not be produced; the result may be partial.
    Incomplete = 4,
    /// An identity failed to verify.
    Verification = 5,
    OutOfRange = 6,
    /// A Rust panic was caught at the boundary.
    Panic = 7,
}

/// A loaded and validated instance file.
pub struct KsInstance {
    inner: Instance,
}

/// The result of a block decomposition.
pub struct KsDecomposition {
    inner: Decomposition,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: KsStatus, msg: impl Into<String>) -> KsStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> KsStatus {
    let status = match e {
        Error::Incomplete(_) => KsStatus::Incomplete,
        Error::Verification(_) => KsStatus::Verification,
        _ => KsStatus::Input,
    };
    fail(status, e.to_string())
}

fn guarded(f: impl FnOnce() -> KsStatus) -> KsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(KsStatus::Panic, msg)
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, KsStatus> {
    if p.is_null() {
        return Err(fail(KsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(KsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failure on this thread, or NULL. Valid until the next
/// call into this library on the same thread; do not free.
#[no_mangle]
pub extern "C" fn ks_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ks_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates an instance given as JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string, `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ks_instance_from_json(json: *const c_char, out: *mut *mut KsInstance) -> KsStatus {
    guarded(|| {
        if out.is_null() {
            return fail(KsStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let text = match str_arg(json, "json") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match InstanceFile::from_json(text).and_then(|f| f.load()) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(KsInstance { inner }));
                KsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Reads and validates an instance file.
///
/// # Safety
/// `path` must be a NUL-terminated string, `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ks_instance_read(path: *const c_char, out: *mut *mut KsInstance) -> KsStatus {
    guarded(|| {
        if out.is_null() {
            return fail(KsStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let path = match str_arg(path, "path") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Instance::read(path) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(KsInstance { inner }));
                KsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `inst` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ks_instance_free(inst: *mut KsInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Decomposes the named algebra into blocks. A `seed` of zero means the
/// deterministic search; any other value drives the randomized one.
///
/// A decomposition whose last factorization could not be certified is still
/// returned, together with [`KsStatus::Incomplete`].
///
/// # Safety
/// `inst` must be a live handle, `algebra` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ks_decompose(
    inst: *const KsInstance,
    algebra: *const c_char,
    seed: u64,
    out: *mut *mut KsDecomposition,
) -> KsStatus {
    guarded(|| {
        if out.is_null() || inst.is_null() {
            return fail(KsStatus::NullPointer, "null handle");
        }
        *out = ptr::null_mut();
        let name = match str_arg(algebra, "algebra") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let x = match (*inst).inner.algebra(name) {
            Ok(x) => x.clone(),
            Err(e) => return from_error(e),
        };
        let d = if seed == 0 {
            ksbicat::kstheory::ks_decompose(&x)
        } else {
            ksbicat::kstheory::ks_decompose_seeded(&x, seed)
        };
        match d {
            Ok(inner) => {
                let complete = inner.complete;
                *out = Box::into_raw(Box::new(KsDecomposition { inner }));
                if complete {
                    KsStatus::Ok
                } else {
                    fail(KsStatus::Incomplete, "some summand could not be certified indecomposable")
                }
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `d` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ks_decomposition_free(d: *mut KsDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of summands, or 0 for NULL.
///
/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ks_decomposition_len(d: *const KsDecomposition) -> usize {
    d.as_ref().map_or(0, |d| d.inner.len())
}

/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ks_decomposition_is_complete(d: *const KsDecomposition) -> bool {
    d.as_ref().is_some_and(|d| d.inner.complete)
}

/// Dimension of summand `i`.
///
/// # Safety
/// `d` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ks_decomposition_summand_dim(d: *const KsDecomposition, i: usize, out: *mut usize) -> KsStatus {
    guarded(|| {
        let (Some(d), false) = (d.as_ref(), out.is_null()) else {
            return fail(KsStatus::NullPointer, "null handle");
        };
        match d.inner.summands().get(i) {
            Some(s) => {
                *out = s.y.dim();
                KsStatus::Ok
            }
            None => fail(KsStatus::OutOfRange, format!("summand {i} of {}", d.inner.len())),
        }
    })
}

/// Coordinates of the idempotent of summand `i` as a JSON array of exact
/// scalar strings. Free with [`ks_string_free`].
///
/// # Safety
/// `d` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ks_decomposition_idempotent(d: *const KsDecomposition, i: usize, out: *mut *mut c_char) -> KsStatus {
    guarded(|| {
        let (Some(d), false) = (d.as_ref(), out.is_null()) else {
            return fail(KsStatus::NullPointer, "null handle");
        };
        *out = ptr::null_mut();
        let Some(e) = d.inner.idempotents.get(i) else {
            return fail(KsStatus::OutOfRange, format!("summand {i} of {}", d.inner.len()));
        };
        let v: Vec<String> = e.iter().map(scalar_string).collect();
        *out = into_c_string(serde_json::to_string(&v).unwrap_or_default());
        KsStatus::Ok
    })
}

/// Runs a command-line invocation in process. `argv[0]` is the program name.
/// Returns the exit code the binary would return; stdout is written to
/// `*out` when `out` is not NULL (free with [`ks_string_free`]).
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn ks_run(argc: c_int, argv: *const *const c_char, out: *mut *mut c_char) -> c_int {
    if !out.is_null() {
        *out = ptr::null_mut();
    }
    if argc < 0 || (argc > 0 && argv.is_null()) {
        set_error("bad argument vector");
        return ksbicat::cli::EXIT_INPUT;
    }
    let mut args = Vec::with_capacity(argc as usize);
    for k in 0..argc as usize {
        match str_arg(*argv.add(k), "argument") {
            Ok(a) => args.push(a.to_string()),
            Err(_) => return ksbicat::cli::EXIT_INPUT,
        }
    }
    match catch_unwind(|| ksbicat::cli::run_command(args)) {
        Ok(o) => {
            if !o.stderr.is_empty() {
                set_error(o.stderr.trim_end());
            }
            if !out.is_null() {
                *out = into_c_string(o.stdout);
            }
            o.code
        }
        Err(_) => {
            set_error("panic");
            ksbicat::cli::EXIT_INPUT
        }
    }
}
