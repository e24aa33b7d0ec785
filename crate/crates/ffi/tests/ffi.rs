use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use invdiff_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn load(name: &str) -> *mut InvdiffSetup {
    let mut h = ptr::null_mut();
    let st = unsafe { invdiff_setup_load(c(name).as_ptr(), &mut h) };
    assert_eq!(st, InvdiffStatus::Ok);
    assert!(!h.is_null());
    h
}

fn take(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { invdiff_string_free(p) };
    s
}

fn last_error() -> String {
    let p = invdiff_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn horocycle_round_trip() {
    let h = load("sl2r_horocycle");
    unsafe {
        assert_eq!(invdiff_setup_dim(h), 3);
        assert_eq!(invdiff_setup_m_dim(h), 2);

        let mut out = ptr::null_mut();
        assert_eq!(invdiff_imod_basis(h, 2, &mut out), InvdiffStatus::Ok);
        assert_eq!(take(out), "H^2");

        assert_eq!(invdiff_project(h, c("1/2*H^2 + E*F + F*E").as_ptr(), &mut out), InvdiffStatus::Ok);
        assert_eq!(take(out), "1/2*H^2 + 1*H^1");

        assert_eq!(invdiff_normalize(h, c("E*H").as_ptr(), &mut out), InvdiffStatus::Ok);
        assert_eq!(take(out), "1*H^1*E^1 - 2*E^1");

        assert_eq!(invdiff_symmetrize(h, c("H*K").as_ptr(), &mut out), InvdiffStatus::Ok);
        assert!(!take(out).is_empty());

        let mut flag = true;
        assert_eq!(invdiff_is_reductive(h, &mut flag), InvdiffStatus::Ok);
        assert!(!flag);
        assert_eq!(invdiff_check_commutativity(h, 4, &mut flag), InvdiffStatus::Ok);
        assert!(flag);
        assert_eq!(invdiff_in_dmod(h, c("H").as_ptr(), &mut flag), InvdiffStatus::Ok);
        assert!(flag);
        assert_eq!(invdiff_in_dmod(h, c("K").as_ptr(), &mut flag), InvdiffStatus::Ok);
        assert!(!flag);
        assert!(invdiff_last_error().is_null());

        invdiff_setup_free(h);
    }
}

#[test]
fn errors_are_reported() {
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(invdiff_setup_load(c("no/such/file.json").as_ptr(), &mut h), InvdiffStatus::InvalidInput);
        assert!(h.is_null());
        assert!(last_error().contains("no/such/file.json"));

        assert_eq!(invdiff_setup_load(ptr::null(), &mut h), InvdiffStatus::NullPointer);
        assert_eq!(invdiff_setup_load_json(c("{").as_ptr(), &mut h), InvdiffStatus::InvalidInput);

        let s = load("so3_sphere");
        let mut out = ptr::null_mut();
        assert_eq!(invdiff_normalize(s, c("Q*W").as_ptr(), &mut out), InvdiffStatus::InvalidInput);
        assert!(last_error().contains("unknown identifier `Q`"));
        assert_eq!(invdiff_normalize(ptr::null(), c("X").as_ptr(), &mut out), InvdiffStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(invdiff_normalize(s, bad.as_ptr().cast(), &mut out), InvdiffStatus::InvalidUtf8);
        assert_eq!(invdiff_setup_dim(ptr::null()), 0);
        invdiff_setup_free(s);
        invdiff_setup_free(ptr::null_mut());
        invdiff_string_free(ptr::null_mut());
    }
}

#[test]
fn load_from_json_text() {
    let json = r#"{
        "name": "abelian",
        "basis": ["A", "B"],
        "subspaces": {"h": {"vectors": [{"B": "1"}]}}
    }"#;
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(invdiff_setup_load_json(c(json).as_ptr(), &mut h), InvdiffStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(invdiff_imod_basis(h, 3, &mut out), InvdiffStatus::Ok);
        assert_eq!(take(out), "A^3");
        invdiff_setup_free(h);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/invdiff.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in ["invdiff_setup_load", "invdiff_setup_free", "invdiff_last_error", "INVDIFF_STATUS_INVALID_INPUT"] {
        assert!(text.contains(sym), "{sym} missing from header");
    }
    let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"]).arg(&header).status()
    else {
        eprintln!("no C compiler, syntax check skipped");
        return;
    };
    assert!(status.success());
}
