use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use bruhat_strata_ffi::*;

fn last_error() -> String {
    let p = bs_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { bs_string_free(p) };
    s
}

fn preset_atlas(name: &str) -> *mut BsAtlas {
    let name = CString::new(name).unwrap();
    let mut case = ptr::null_mut();
    let mut atlas = ptr::null_mut();
    unsafe {
        assert_eq!(bs_case_from_preset(name.as_ptr(), &mut case), BsStatus::Ok);
        assert_eq!(bs_atlas_build(case, &mut atlas), BsStatus::Ok);
        bs_case_free(case);
    }
    atlas
}

#[test]
fn siegel_through_handles() {
    let atlas = preset_atlas("siegel:2");
    unsafe {
        assert_eq!(bs_atlas_stratum_count(atlas), 3);
        let mut dims = Vec::new();
        let mut eos = Vec::new();
        for id in 0..3 {
            let (mut d, mut e) = (0usize, 0usize);
            assert_eq!(bs_atlas_stratum_dim(atlas, id, &mut d), BsStatus::Ok);
            assert_eq!(bs_atlas_stratum_eo_count(atlas, id, &mut e), BsStatus::Ok);
            dims.push(d);
            eos.push(e);
        }
        assert_eq!(dims, vec![0, 2, 3]);
        assert_eq!(eos, vec![1, 2, 1]);
        let mut moduli = 0usize;
        assert_eq!(bs_atlas_moduli_dim(atlas, &mut moduli), BsStatus::Ok);
        assert_eq!(moduli, 3);
        let mut ordinary = false;
        assert_eq!(bs_atlas_mu_ordinary(atlas, &mut ordinary), BsStatus::Ok);
        assert!(ordinary);
        assert_eq!(bs_atlas_verify(atlas), BsStatus::Ok);

        let json = take_string(bs_atlas_to_json(atlas));
        assert!(json.contains("\"moduli_dim\": 3"));
        let dot = take_string(bs_atlas_to_dot(atlas));
        assert!(dot.contains("s0 -> s1;"));

        let mut d = 0usize;
        assert_eq!(bs_atlas_stratum_dim(atlas, 9, &mut d), BsStatus::InvalidInput);
        assert!(last_error().contains("unknown stratum"));
        bs_atlas_free(atlas);
    }
}

#[test]
fn unitary_inert_is_not_ordinary() {
    let atlas = preset_atlas("gu:1,2:inert");
    let mut ordinary = true;
    unsafe {
        assert_eq!(bs_atlas_mu_ordinary(atlas, &mut ordinary), BsStatus::Ok);
        bs_atlas_free(atlas);
    }
    assert!(!ordinary);
}

#[test]
fn json_errors_map_to_status_codes() {
    let mut case = ptr::null_mut();
    let bad = CString::new(r#"{"group": {"factors": [{"type": "A", "rank": 2}]}, "frobenius": {"permutation": [1, 1]}, "J": [1]}"#).unwrap();
    assert_eq!(unsafe { bs_case_from_json(bad.as_ptr(), &mut case) }, BsStatus::InvalidInput);
    assert!(case.is_null());
    assert!(last_error().contains("bijection"));

    let big = CString::new(r#"{"group": {"factors": [{"type": "C", "rank": 4}]}, "mu": {"pairings": [0, 0, 0, 1]}, "options": {"element_bound": 10}}"#).unwrap();
    let mut atlas = ptr::null_mut();
    unsafe {
        assert_eq!(bs_case_from_json(big.as_ptr(), &mut case), BsStatus::Ok);
        assert_eq!(bs_atlas_build(case, &mut atlas), BsStatus::BoundExceeded);
        bs_case_free(case);
    }
    assert!(atlas.is_null());

    let unknown = CString::new("moduli:4").unwrap();
    assert_eq!(unsafe { bs_case_from_preset(unknown.as_ptr(), &mut case) }, BsStatus::InvalidInput);
}

#[test]
fn null_handles_are_rejected() {
    let mut out = 0usize;
    let mut case = ptr::null_mut();
    let mut atlas = ptr::null_mut();
    unsafe {
        assert_eq!(bs_case_from_json(ptr::null(), &mut case), BsStatus::NullPointer);
        assert_eq!(bs_atlas_build(ptr::null(), &mut atlas), BsStatus::NullPointer);
        assert_eq!(bs_atlas_stratum_dim(ptr::null(), 0, &mut out), BsStatus::NullPointer);
        assert_eq!(bs_atlas_verify(ptr::null()), BsStatus::NullPointer);
        assert_eq!(bs_atlas_stratum_count(ptr::null()), 0);
        assert!(bs_atlas_to_json(ptr::null()).is_null());
        bs_atlas_free(ptr::null_mut());
        bs_case_free(ptr::null_mut());
        bs_string_free(ptr::null_mut());
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_interface() {
    let header = std::fs::read_to_string(crate_dir().join("include/bruhat_strata.h")).unwrap();
    for name in [
        "typedef struct BsCase BsCase;",
        "typedef struct BsAtlas BsAtlas;",
        "BS_STATUS_BOUND_EXCEEDED = 3",
        "bs_case_from_json",
        "bs_case_from_preset",
        "bs_atlas_build",
        "bs_atlas_stratum_dim",
        "bs_atlas_mu_ordinary",
        "bs_atlas_to_dot",
        "bs_last_error_message",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

fn static_library() -> Option<PathBuf> {
    let target = Path::new(env!("CARGO_TARGET_TMPDIR")).parent()?.to_path_buf();
    ["debug", "debug/deps", "release", "release/deps"]
        .iter()
        .map(|dir| target.join(dir).join("libbruhat_strata_ffi.a"))
        .find(|p| p.exists())
}

const SMOKE: &str = r#"
#include <stdio.h>
#include "bruhat_strata.h"

int main(void) {
    BsCase *c = NULL;
    BsAtlas *a = NULL;
    if (bs_case_from_preset("siegel:3", &c) != BS_STATUS_OK) return 10;
    if (bs_atlas_build(c, &a) != BS_STATUS_OK) return 11;
    size_t n = bs_atlas_stratum_count(a), dim = 0, total = 0;
    for (size_t i = 0; i < n; i++) {
        if (bs_atlas_stratum_dim(a, i, &dim) != BS_STATUS_OK) return 12;
        total += dim;
    }
    bs_case_free(c);
    c = NULL;
    if (bs_case_from_json("{", &c) != BS_STATUS_INVALID_INPUT || c != NULL) return 13;
    printf("%zu %zu %s\n", n, total, bs_last_error_message() ? "error-set" : "no-error");
    bs_atlas_free(a);
    return 0;
}
"#;

#[test]
fn c_program_links_against_the_static_library() {
    let Some(lib) = static_library() else {
        eprintln!("static library not built; skipping");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("ffi-smoke");
    std::fs::create_dir_all(&dir).unwrap();
    let source = dir.join("smoke.c");
    let binary = dir.join("smoke");
    std::fs::write(&source, SMOKE).unwrap();
    let status = Command::new("cc")
        .arg(&source)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&binary)
        .status()
        .unwrap();
    assert!(status.success());
    let output = Command::new(&binary).output().unwrap();
    assert!(output.status.success(), "{:?}", output);
    // Strata of dimension 6, 5, 3 and 0.
    assert_eq!(String::from_utf8_lossy(&output.stdout).trim(), "4 14 error-set");
}
