//! C interface to `lce-core`.
//!
//! Every fallible function returns an [`LceStatus`]. On failure a message is
//! kept per thread and can be read with [`lce_last_error`]. Strings handed
//! out by the library are NUL-terminated UTF-8 and must be released with
//! [`lce_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use lce_core::combinat::count_01_matrices;
use lce_core::klpoly::KlEngine;
use lce_core::multiseg::Multisegment;
use lce_core::report::{kl_json, Expansion};
use lce_core::symgroup::Permutation;
use lce_core::Error;

/// Result codes. The non-zero values match the exit codes of the `lce` tool
/// where they overlap.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LceStatus {
    Ok = 0,
    /// Internal failure, cache I/O error, or a value too large for the output type.
    Failure = 1,
    Parse = 2,
    Invalid = 3,
    /// The two computation routes disagree. Output is still produced.
    Mismatch = 4,
    NullArgument = 5,
}

/// Shared Kazhdan-Lusztig cache. Safe to use from several threads at once.
pub struct LceEngine {
    inner: KlEngine,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Fail(LceStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) | Error::InvalidPartition(_) | Error::InvalidPermutation(_) | Error::LengthMismatch { .. } => {
                LceStatus::Parse
            }
            Error::InvalidMultisegment(_) | Error::EmptyWindow { .. } | Error::InvalidStandardModule(_) => {
                LceStatus::Invalid
            }
            _ => LceStatus::Failure,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(LceStatus::NullArgument, format!("{what} is null"))
}

/// Runs `f`, recording the message of any failure or panic.
fn guard(f: impl FnOnce() -> Result<LceStatus, Fail>) -> LceStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LceStatus::Failure
        }
    }
}

unsafe fn engine_ref<'a>(engine: *const LceEngine) -> Result<&'a KlEngine, Fail> {
    engine.as_ref().map(|e| &e.inner).ok_or_else(|| null("engine"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(LceStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn hand_out(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    let s = CString::new(s).map_err(|_| Fail(LceStatus::Failure, "output contains NUL".into()))?;
    *out = s.into_raw();
    Ok(())
}

unsafe fn permutations(x: *const c_char, w: *const c_char) -> Result<(Permutation, Permutation), Fail> {
    let x: Permutation = text(x, "x")?.parse()?;
    let w: Permutation = text(w, "w")?.parse()?;
    if x.k() != w.k() {
        return Err(Error::LengthMismatch { left: x.k(), right: w.k() }.into());
    }
    Ok((x, w))
}

/// Creates an engine with an empty cache. Release it with [`lce_engine_free`].
#[no_mangle]
pub extern "C" fn lce_engine_new() -> *mut LceEngine {
    Box::into_raw(Box::new(LceEngine { inner: KlEngine::new() }))
}

/// # Safety
/// `engine` must come from [`lce_engine_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lce_engine_free(engine: *mut LceEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Number of polynomials currently cached, or 0 for a null engine.
///
/// # Safety
/// `engine` must be null or a live engine.
#[no_mangle]
pub unsafe extern "C" fn lce_engine_cached_pairs(engine: *const LceEngine) -> usize {
    engine.as_ref().map_or(0, |e| e.inner.cached_pairs())
}

/// Merges a cache file into the engine. A missing file loads nothing.
/// `loaded` may be null.
///
/// # Safety
/// `engine` must be a live engine, `path` a NUL-terminated string, `loaded` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lce_engine_load_cache(
    engine: *const LceEngine,
    path: *const c_char,
    loaded: *mut usize,
) -> LceStatus {
    guard(|| {
        let engine = engine_ref(engine)?;
        let count = engine.load_cache_file(Path::new(text(path, "path")?))?;
        if let Some(out) = loaded.as_mut() {
            *out = count;
        }
        Ok(LceStatus::Ok)
    })
}

/// Writes every cached polynomial to `path`.
///
/// # Safety
/// `engine` must be a live engine and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn lce_engine_save_cache(engine: *const LceEngine, path: *const c_char) -> LceStatus {
    guard(|| {
        let engine = engine_ref(engine)?;
        engine.save_cache_file(Path::new(text(path, "path")?))?;
        Ok(LceStatus::Ok)
    })
}

/// Computes the expansion of the multisegment written as `"[0,1]+[1,2]"` and
/// stores it as a JSON object in `*out`. With `verify`, both routes are run
/// and [`LceStatus::Mismatch`] is returned if they differ.
///
/// # Safety
/// `engine` must be a live engine, `multisegment` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lce_expand_json(
    engine: *const LceEngine,
    multisegment: *const c_char,
    verify: bool,
    out: *mut *mut c_char,
) -> LceStatus {
    guard(|| {
        let engine = engine_ref(engine)?;
        let m: Multisegment = text(multisegment, "multisegment")?.parse()?;
        let x = Expansion::compute(engine, &m, verify);
        hand_out(out, x.to_json().to_string())?;
        if x.verified() == Some(false) {
            return Err(Fail(LceStatus::Mismatch, format!("the two routes disagree for {m}")));
        }
        Ok(LceStatus::Ok)
    })
}

/// Stores `P_{x,w}` as a JSON object in `*out`. Permutations are in one-line
/// notation, e.g. `"1234"` or `"[1,2,3,4]"`.
///
/// # Safety
/// `engine` must be a live engine, `x` and `w` NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lce_kl_json(
    engine: *const LceEngine,
    x: *const c_char,
    w: *const c_char,
    out: *mut *mut c_char,
) -> LceStatus {
    guard(|| {
        let engine = engine_ref(engine)?;
        let (x, w) = permutations(x, w)?;
        let p = engine.kl(&x, &w)?;
        hand_out(out, kl_json(&x, &w, &p).to_string())?;
        Ok(LceStatus::Ok)
    })
}

/// Stores `P_{x,w}(1)` in `*value`.
///
/// # Safety
/// `engine` must be a live engine, `x` and `w` NUL-terminated strings and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn lce_kl_at_one(
    engine: *const LceEngine,
    x: *const c_char,
    w: *const c_char,
    value: *mut u64,
) -> LceStatus {
    guard(|| {
        let engine = engine_ref(engine)?;
        if value.is_null() {
            return Err(null("value"));
        }
        let (x, w) = permutations(x, w)?;
        let v = engine.kl_at_one(&x, &w)?;
        *value = u64::try_from(&v).map_err(|_| Fail(LceStatus::Failure, format!("{v} does not fit in 64 bits")))?;
        Ok(LceStatus::Ok)
    })
}

/// Stores in `*count` the number of 0-1 matrices with row sums `alpha` and
/// column sums `beta`. Empty arrays may be passed as null with length 0.
///
/// # Safety
/// `alpha` and `beta` must point to `alpha_len` and `beta_len` readable values; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lce_count_01(
    alpha: *const usize,
    alpha_len: usize,
    beta: *const usize,
    beta_len: usize,
    count: *mut u64,
) -> LceStatus {
    guard(|| {
        let slice = |p: *const usize, len: usize, what: &str| -> Result<&[usize], Fail> {
            match (p.is_null(), len) {
                (_, 0) => Ok(&[]),
                (true, _) => Err(null(what)),
                (false, _) => Ok(std::slice::from_raw_parts(p, len)),
            }
        };
        let a = slice(alpha, alpha_len, "alpha")?;
        let b = slice(beta, beta_len, "beta")?;
        if count.is_null() {
            return Err(null("count"));
        }
        let s = count_01_matrices(a, b);
        *count = u64::try_from(&s).map_err(|_| Fail(LceStatus::Failure, format!("{s} does not fit in 64 bits")))?;
        Ok(LceStatus::Ok)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lce_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lce_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lce_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
