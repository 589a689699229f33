use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use grl_ffi::*;

const S3_K: &str = include_str!("../../../instances/s3-k.json");

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { grl_string_free(s) };
    out
}

fn last_error() -> String {
    let p = grl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn load(json: &str) -> *mut GrlInstance {
    let text = CString::new(json).unwrap();
    let mut h = ptr::null_mut();
    let status = unsafe { grl_instance_from_json(text.as_ptr(), c"s3-k".as_ptr(), &mut h) };
    assert_eq!(status, GrlStatus::Ok);
    h
}

#[test]
fn instance_round_trip() {
    let h = load(S3_K);
    let mut name = ptr::null_mut();
    assert_eq!(unsafe { grl_instance_name(h, &mut name) }, GrlStatus::Ok);
    assert_eq!(take(name), "s3-k");
    let mut dim = 0;
    assert_eq!(unsafe { grl_instance_dimension(h, &mut dim) }, GrlStatus::Ok);
    assert_eq!(dim, 2);
    let mut count = 0;
    assert_eq!(unsafe { grl_instance_count_central_idempotents(h, GRL_DEFAULT_BUDGET, &mut count) }, GrlStatus::Ok);
    assert_eq!(count, 4);
    unsafe { grl_instance_free(h) };
}

#[test]
fn check_reports_json() {
    let h = load(S3_K);
    let (mut verdict, mut report) = (GrlVerdict::Fail, ptr::null_mut());
    let status = unsafe { grl_instance_check(h, ptr::null(), GRL_DEFAULT_CAP, GRL_DEFAULT_BUDGET, &mut verdict, &mut report) };
    assert_eq!(status, GrlStatus::Ok);
    assert_eq!(verdict, GrlVerdict::Pass);
    let json: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(json["instance"], "s3-k");
    let f = &json["elements"][0];
    assert_eq!((f["idempotent"].as_bool(), f["central"].as_bool()), (Some(true), Some(true)));

    let transforms = c"dorroh\nphi";
    let status = unsafe { grl_instance_check(h, transforms.as_ptr(), 1000, 1_000_000, &mut verdict, &mut report) };
    assert_eq!(status, GrlStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(json["transforms"].as_array().unwrap().len(), 2);
    unsafe { grl_instance_free(h) };
}

#[test]
fn every_fixture_passes_through_the_c_api() {
    for name in grl::harness::fixtures::FIXTURE_NAMES {
        let c = CString::new(*name).unwrap();
        let (mut verdict, mut report) = (GrlVerdict::Fail, ptr::null_mut());
        let status = unsafe { grl_fixture_run(c.as_ptr(), 100, GRL_DEFAULT_BUDGET, &mut verdict, &mut report) };
        assert_eq!(status, GrlStatus::Ok, "{name}");
        assert_eq!(verdict, GrlVerdict::Pass, "{name}");
        assert!(take(report).contains(name));
    }
}

#[test]
fn errors_set_status_and_message() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { grl_instance_from_json(ptr::null(), ptr::null(), &mut h) }, GrlStatus::NullPointer);
    assert!(h.is_null());
    assert!(last_error().contains("json"));

    assert_eq!(unsafe { grl_instance_from_json(c"{".as_ptr(), ptr::null(), &mut h) }, GrlStatus::InvalidInput);
    assert!(h.is_null());

    let bad = [0xffu8, 0];
    assert_eq!(unsafe { grl_instance_from_json(bad.as_ptr().cast(), ptr::null(), &mut h) }, GrlStatus::InvalidUtf8);

    let (mut verdict, mut report) = (GrlVerdict::Pass, ptr::null_mut());
    let status = unsafe { grl_fixture_run(c"nope".as_ptr(), 10, 10, &mut verdict, &mut report) };
    assert_eq!(status, GrlStatus::InvalidInput);
    assert!(report.is_null());
    assert!(last_error().contains("nope"));

    // a successful call clears the message
    let mut dim = 0;
    let h = load(S3_K);
    assert_eq!(unsafe { grl_instance_dimension(h, &mut dim) }, GrlStatus::Ok);
    assert!(grl_last_error().is_null());
    let status = unsafe { grl_instance_check(h, c"frobnicate".as_ptr(), 10, 10, &mut verdict, &mut report) };
    assert_eq!(status, GrlStatus::InvalidInput);
    unsafe { grl_instance_free(h) };
    unsafe { grl_instance_free(ptr::null_mut()) };
    unsafe { grl_string_free(ptr::null_mut()) };
}

#[test]
fn tiny_budget_is_its_own_status() {
    let json = r#"{"field": {"kind": "Fp", "p": 5}, "algebra": {"builtin": "truncated_poly", "n": 4},
                   "group": {"kind": "Zk", "k": 1}, "degrees": [[0], [1], [2], [3]]}"#;
    let h = load(json);
    let mut count = 0;
    assert_eq!(unsafe { grl_instance_count_central_idempotents(h, 3, &mut count) }, GrlStatus::BudgetExceeded);
    unsafe { grl_instance_free(h) };
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/capi-<hash>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libgrl_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = tempfile_dir();
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "grl.h"
int main(void) {
    GrlVerdict verdict;
    char *report = NULL;
    if (grl_fixture_run("dinf-q4", GRL_DEFAULT_CAP, GRL_DEFAULT_BUDGET, &verdict, &report) != GRL_STATUS_OK) return 1;
    if (verdict != GRL_VERDICT_PASS || strstr(report, "dinf-q4") == NULL) return 2;
    grl_string_free(report);
    GrlInstance *h = NULL;
    if (grl_instance_from_json("not json", NULL, &h) != GRL_STATUS_INVALID_INPUT || h != NULL) return 3;
    if (grl_last_error() == NULL) return 4;
    puts("ok");
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.join("smoke");
    let build = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(build.status.success(), "{}", String::from_utf8_lossy(&build.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
    let _ = std::fs::remove_dir_all(&dir);
}

fn tempfile_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("grl-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
