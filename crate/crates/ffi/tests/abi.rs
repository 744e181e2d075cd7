use std::ffi::{c_char, CStr, CString};
use std::ptr;

use lce_ffi::*;
use serde_json::Value;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = lce_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { lce_string_free(s) };
    out
}

struct Engine(*mut LceEngine);

impl Engine {
    fn new() -> Self {
        Engine(lce_engine_new())
    }
}

impl Drop for Engine {
    fn drop(&mut self) {
        unsafe { lce_engine_free(self.0) };
    }
}

fn expand(e: &Engine, m: &str, verify: bool) -> (LceStatus, Option<Value>) {
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { lce_expand_json(e.0, cstr(m).as_ptr(), verify, &mut out) };
    let json = (!out.is_null()).then(|| serde_json::from_str(&take(out)).unwrap());
    (status, json)
}

#[test]
fn expand_through_the_abi() {
    let e = Engine::new();
    let (status, json) = expand(&e, "[0,1]+[1,2]", true);
    assert_eq!(status, LceStatus::Ok);
    let v = json.unwrap();
    assert_eq!(v["c"].to_string(), r#"{"(2)":1,"(1,1)":-1}"#);
    assert_eq!(v["d"].to_string(), r#"{"(2)":1,"(1,1)":1}"#);
    assert_eq!(v["verified"], Value::Bool(true));
    assert!(unsafe { lce_engine_cached_pairs(e.0) } > 0);
}

#[test]
fn status_codes() {
    let e = Engine::new();
    assert_eq!(expand(&e, "[0,1", false).0, LceStatus::Parse);
    assert!(last_error().contains("[0,1"));
    assert_eq!(expand(&e, "[0,0]", false).0, LceStatus::Invalid);

    let mut out: *mut c_char = ptr::null_mut();
    let s = unsafe { lce_expand_json(ptr::null(), cstr("[0,1]").as_ptr(), false, &mut out) };
    assert_eq!(s, LceStatus::NullArgument);
    let s = unsafe { lce_expand_json(e.0, ptr::null(), false, &mut out) };
    assert_eq!(s, LceStatus::NullArgument);
    let s = unsafe { lce_expand_json(e.0, cstr("[0,1]").as_ptr(), false, ptr::null_mut()) };
    assert_eq!(s, LceStatus::NullArgument);
    assert!(out.is_null());

    let mut v = 0u64;
    let s = unsafe { lce_kl_at_one(e.0, cstr("12").as_ptr(), cstr("123").as_ptr(), &mut v) };
    assert_eq!(s, LceStatus::Parse);
    let s = unsafe { lce_kl_at_one(e.0, cstr("1").as_ptr(), cstr("1").as_ptr(), ptr::null_mut()) };
    assert_eq!(s, LceStatus::NullArgument);
}

#[test]
fn kl_through_the_abi() {
    let e = Engine::new();
    let mut v = 0u64;
    let s = unsafe { lce_kl_at_one(e.0, cstr("1234").as_ptr(), cstr("4231").as_ptr(), &mut v) };
    assert_eq!((s, v), (LceStatus::Ok, 2));
    let s = unsafe { lce_kl_at_one(e.0, cstr("321").as_ptr(), cstr("123").as_ptr(), &mut v) };
    assert_eq!((s, v), (LceStatus::Ok, 0));

    let mut out: *mut c_char = ptr::null_mut();
    let s = unsafe { lce_kl_json(e.0, cstr("[1,2,3,4]").as_ptr(), cstr("3412").as_ptr(), &mut out) };
    assert_eq!(s, LceStatus::Ok);
    let v: Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["polynomial"], "1 + q");
}

#[test]
fn counts_through_the_abi() {
    let mut c = 0u64;
    let (a, b) = ([2usize, 2], [2usize, 1, 1]);
    let s = unsafe { lce_count_01(a.as_ptr(), a.len(), b.as_ptr(), b.len(), &mut c) };
    assert_eq!((s, c), (LceStatus::Ok, 2));
    let s = unsafe { lce_count_01(ptr::null(), 0, ptr::null(), 0, &mut c) };
    assert_eq!((s, c), (LceStatus::Ok, 1));
    let s = unsafe { lce_count_01(ptr::null(), 2, b.as_ptr(), b.len(), &mut c) };
    assert_eq!(s, LceStatus::NullArgument);
    // 30! overflows 64 bits
    let ones = [1usize; 30];
    let s = unsafe { lce_count_01(ones.as_ptr(), 30, ones.as_ptr(), 30, &mut c) };
    assert_eq!(s, LceStatus::Failure);
    assert!(last_error().contains("64 bits"));
}

#[test]
fn cache_through_the_abi() {
    let dir = tempfile::tempdir().unwrap();
    let path = cstr(dir.path().join("kl.cache").to_str().unwrap());
    let e = Engine::new();
    let mut loaded = 99usize;
    assert_eq!(unsafe { lce_engine_load_cache(e.0, path.as_ptr(), &mut loaded) }, LceStatus::Ok);
    assert_eq!(loaded, 0);
    expand(&e, "[0,1]+[1,2]+[2,3]", false);
    assert_eq!(unsafe { lce_engine_save_cache(e.0, path.as_ptr()) }, LceStatus::Ok);

    let f = Engine::new();
    assert_eq!(unsafe { lce_engine_load_cache(f.0, path.as_ptr(), &mut loaded) }, LceStatus::Ok);
    assert_eq!(loaded, unsafe { lce_engine_cached_pairs(e.0) });

    std::fs::write(dir.path().join("kl.cache"), "junk\n").unwrap();
    assert_eq!(unsafe { lce_engine_load_cache(f.0, path.as_ptr(), ptr::null_mut()) }, LceStatus::Failure);
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/lce.h")).unwrap();
    for symbol in [
        "lce_engine_new",
        "lce_engine_free",
        "lce_engine_cached_pairs",
        "lce_engine_load_cache",
        "lce_engine_save_cache",
        "lce_expand_json",
        "lce_kl_json",
        "lce_kl_at_one",
        "lce_count_01",
        "lce_string_free",
        "lce_last_error",
        "lce_version",
        "typedef struct LceEngine LceEngine",
        "LCE_STATUS_MISMATCH = 4",
    ] {
        assert!(header.contains(symbol), "{symbol}");
    }
    let version = unsafe { CStr::from_ptr(lce_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}
