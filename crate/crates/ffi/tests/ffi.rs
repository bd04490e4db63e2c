use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use permbase_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { pb_string_free(p) };
    s
}

fn catalog(name: &str) -> *mut PbGroup {
    let name = CString::new(name).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { pb_group_from_catalog(name.as_ptr(), &mut g) },
        PbStatus::Ok
    );
    g
}

#[test]
fn synthesize_and_round_trip() {
    let g = catalog("linked_wreath(7,2,2)");
    assert_eq!(unsafe { pb_group_degree(g) }, 14);
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { pb_synthesize(g, 0, &mut c) }, PbStatus::Ok);
    assert_eq!(unsafe { pb_certificate_count(c) }, 8);
    assert!(unsafe { pb_certificate_verified(c) });
    assert!(unsafe { pb_certificate_bound_ratio(c) } <= 10.0);
    assert_eq!(unsafe { pb_certificate_check(c, g) }, PbStatus::Ok);

    let json = take_string(unsafe { pb_certificate_to_json(c) });
    let cjson = CString::new(json.clone()).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { pb_certificate_from_json(cjson.as_ptr(), &mut back) },
        PbStatus::Ok
    );
    assert_eq!(take_string(unsafe { pb_certificate_to_json(back) }), json);
    unsafe {
        pb_certificate_free(back);
        pb_certificate_free(c);
        pb_group_free(g);
    }
}

#[test]
fn cycles_and_base_size() {
    let gens = [
        CString::new("(1 2 3 4 5)").unwrap(),
        CString::new("(1 2)").unwrap(),
    ];
    let ptrs: Vec<_> = gens.iter().map(|s| s.as_ptr()).collect();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { pb_group_from_cycles(5, ptrs.as_ptr(), 2, &mut g) },
        PbStatus::Ok
    );
    assert_eq!(take_string(unsafe { pb_group_order(g) }), "120");
    let mut b = 0usize;
    assert_eq!(unsafe { pb_group_base_size(g, &mut b) }, PbStatus::Ok);
    assert_eq!(b, 4);
    unsafe { pb_group_free(g) };
}

#[test]
fn errors_set_status_and_message() {
    let name = CString::new("no_such_group(3)").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { pb_group_from_catalog(name.as_ptr(), &mut g) },
        PbStatus::Parse
    );
    assert!(g.is_null());
    assert!(take_string(pb_last_error_message()).contains("no_such_group"));

    assert_eq!(
        unsafe { pb_group_from_catalog(ptr::null(), &mut g) },
        PbStatus::NullPointer
    );

    let gens = [CString::new("(1 2)").unwrap()];
    let ptrs: Vec<_> = gens.iter().map(|s| s.as_ptr()).collect();
    assert_eq!(
        unsafe { pb_group_from_cycles(3, ptrs.as_ptr(), 1, &mut g) },
        PbStatus::Ok
    );
    let mut c = ptr::null_mut();
    assert_eq!(
        unsafe { pb_synthesize(g, 0, &mut c) },
        PbStatus::NotTransitive
    );
    assert!(c.is_null());
    unsafe { pb_group_free(g) };

    let bad = CString::new("{").unwrap();
    assert_eq!(
        unsafe { pb_certificate_from_json(bad.as_ptr(), &mut c) },
        PbStatus::Parse
    );
    assert_eq!(unsafe { pb_certificate_count(ptr::null()) }, 0);
}

#[test]
fn tampered_certificate_fails_check() {
    let g = catalog("linked_wreath(7,2,2)");
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { pb_synthesize(g, 0, &mut c) }, PbStatus::Ok);
    let json = take_string(unsafe { pb_certificate_to_json(c) });
    let mut doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let parts = doc["partitions"].as_array_mut().unwrap();
    let at = parts
        .iter()
        .position(|p| p["provenance"].as_str().unwrap().starts_with('L'))
        .unwrap();
    parts.remove(at);
    let cjson = CString::new(doc.to_string()).unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { pb_certificate_from_json(cjson.as_ptr(), &mut t) },
        PbStatus::Ok
    );
    assert_eq!(
        unsafe { pb_certificate_check(t, g) },
        PbStatus::VerificationFailed
    );
    unsafe {
        pb_certificate_free(t);
        pb_certificate_free(c);
        pb_group_free(g);
    }
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let header_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let lib = target_dir().join("libpermbase_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!(
            "skipping: no C compiler or static library at {}",
            lib.display()
        );
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "permbase.h"
int main(void) {
    PbGroup *g = NULL;
    PbCertificate *c = NULL;
    if (pb_group_from_catalog("symmetric(8)", &g) != PB_STATUS_OK) return 10;
    if (pb_synthesize(g, 0, &c) != PB_STATUS_OK) return 11;
    if (pb_certificate_count(c) != 3 || !pb_certificate_verified(c)) return 12;
    char *order = pb_group_order(g);
    printf("%s\n", order);
    pb_string_free(order);
    PbGroup *bad = NULL;
    if (pb_group_from_catalog("bogus", &bad) != PB_STATUS_PARSE || bad != NULL) return 13;
    char *msg = pb_last_error_message();
    if (msg == NULL) return 14;
    pb_string_free(msg);
    pb_certificate_free(c);
    pb_group_free(g);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "40320");
}
