use std::ffi::{CStr, CString};
use std::ptr;

use hermlie_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { hermlie_string_free(s) };
    out
}

fn last_error() -> String {
    let p = hermlie_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn preset(id: &str) -> *mut HermlieGroup {
    let id = CString::new(id).unwrap();
    let mut g = ptr::null_mut();
    let code = unsafe { hermlie_group_from_preset(id.as_ptr(), &mut g) };
    assert_eq!(code, HERMLIE_OK);
    g
}

#[test]
fn dimensions_and_hodge_numbers() {
    let g = preset("su2xu1");
    let (mut real, mut cplx) = (0usize, 0usize);
    assert_eq!(
        unsafe { hermlie_group_dimension(g, &mut real, &mut cplx) },
        HERMLIE_OK
    );
    assert_eq!((real, cplx), (4, 2));

    let mut written = 0usize;
    let mut small = [0usize; 1];
    let code = unsafe { hermlie_hodge_numbers(g, small.as_mut_ptr(), small.len(), &mut written) };
    assert_eq!(code, HERMLIE_BUFFER_TOO_SMALL);
    assert_eq!(written, 3);

    let mut buf = [9usize; 3];
    let code = unsafe { hermlie_hodge_numbers(g, buf.as_mut_ptr(), buf.len(), &mut written) };
    assert_eq!(code, HERMLIE_OK);
    assert_eq!(buf, [1, 1, 0]);
    unsafe { hermlie_group_free(g) };
}

#[test]
fn verify_report_round_trips() {
    let g = preset("su2xu1");
    let suites = CString::new("identities,hopf").unwrap();
    let mut out = ptr::null_mut();
    let code = unsafe { hermlie_verify_json(g, suites.as_ptr(), 1, 1e-9, &mut out) };
    assert_eq!(code, HERMLIE_OK);
    let json: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(json["status"], "pass");
    assert_eq!(json["exit_code"], 0);
    assert!(json["suites"].as_array().unwrap().len() >= 2);
    unsafe { hermlie_group_free(g) };
}

#[test]
fn verify_is_deterministic() {
    let g = preset("su2xsu2");
    let suites = CString::new("clifford").unwrap();
    let run = || {
        let mut out = ptr::null_mut();
        unsafe { hermlie_verify_json(g, suites.as_ptr(), 7, 1e-9, &mut out) };
        take(out)
    };
    assert_eq!(run(), run());
    unsafe { hermlie_group_free(g) };
}

#[test]
fn odd_dimensional_preset_is_rejected() {
    let id = CString::new("su3xu1").unwrap();
    let mut g = ptr::null_mut();
    let code = unsafe { hermlie_group_from_preset(id.as_ptr(), &mut g) };
    assert_eq!(code, HERMLIE_INVALID_INPUT);
    assert!(g.is_null());
    assert!(last_error().contains("odd"));
}

#[test]
fn json_groups_and_validation() {
    let spec = CString::new(r#"{"preset": "t4"}"#).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { hermlie_group_from_json(spec.as_ptr(), &mut g) },
        HERMLIE_OK
    );
    let (mut real, mut cplx) = (0usize, 0usize);
    unsafe { hermlie_group_dimension(g, &mut real, &mut cplx) };
    assert_eq!((real, cplx), (4, 2));
    unsafe { hermlie_group_free(g) };

    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { hermlie_validate_json(spec.as_ptr(), &mut out) },
        HERMLIE_OK
    );
    let json: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(json["command"], "validate");
}

#[test]
fn broken_jacobi_fails_validation() {
    let spec = CString::new(
        r#"{"dimension": 3, "structure_constants": [
            {"i": 1, "j": 2, "k": 1, "v": 1.0},
            {"i": 1, "j": 3, "k": 2, "v": 1.0}
        ]}"#,
    )
    .unwrap();
    let mut out = ptr::null_mut();
    let code = unsafe { hermlie_validate_json(spec.as_ptr(), &mut out) };
    assert_eq!(code, HERMLIE_INVALID_INPUT);
    let json: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    let checks = json["suites"][0]["checks"].as_array().unwrap();
    let jac = checks.iter().find(|c| c["id"] == "jacobi").unwrap();
    assert_eq!(jac["status"], "fail");
    assert!(jac["residual"].as_f64().unwrap() > 0.5);
}

#[test]
fn malformed_arguments() {
    let bad = CString::new("{not json").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { hermlie_group_from_json(bad.as_ptr(), &mut g) },
        HERMLIE_INVALID_INPUT
    );
    assert!(!last_error().is_empty());

    let invalid = [0xffu8, 0xfe, 0];
    let code = unsafe { hermlie_group_from_json(invalid.as_ptr().cast(), &mut g) };
    assert_eq!(code, HERMLIE_INVALID_UTF8);

    let mut w = 0usize;
    assert_eq!(
        unsafe { hermlie_hodge_numbers(ptr::null(), ptr::null_mut(), 0, &mut w) },
        HERMLIE_NULL_POINTER
    );

    let g = preset("t2");
    let suites = CString::new("all").unwrap();
    let mut out = ptr::null_mut();
    let code = unsafe { hermlie_verify_json(g, suites.as_ptr(), 1, -1.0, &mut out) };
    assert_eq!(code, HERMLIE_INVALID_INPUT);
    assert!(out.is_null());
    unsafe { hermlie_group_free(g) };
}

#[test]
fn successful_call_clears_error() {
    let id = CString::new("nope").unwrap();
    let mut g = ptr::null_mut();
    unsafe { hermlie_group_from_preset(id.as_ptr(), &mut g) };
    assert!(!hermlie_last_error().is_null());
    let g = preset("t2");
    assert!(hermlie_last_error().is_null());
    unsafe { hermlie_group_free(g) };
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/hermlie.h")).unwrap();
    for sym in [
        "hermlie_group_from_preset",
        "hermlie_group_from_json",
        "hermlie_group_free",
        "hermlie_group_dimension",
        "hermlie_hodge_numbers",
        "hermlie_verify_json",
        "hermlie_validate_json",
        "hermlie_string_free",
        "hermlie_last_error",
        "typedef struct HermlieGroup HermlieGroup",
        "HERMLIE_BUFFER_TOO_SMALL",
    ] {
        assert!(header.contains(sym), "{sym}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = tempfile_dir();
    let src = dir.join("use_header.c");
    std::fs::write(
        &src,
        "#include \"hermlie.h\"\nint main(void) {\n  HermlieGroup *g = NULL;\n  size_t h[8], w;\n  if (hermlie_group_from_preset(\"su2xu1\", &g) != HERMLIE_OK) return 1;\n  hermlie_hodge_numbers(g, h, 8, &w);\n  hermlie_group_free(g);\n  return 0;\n}\n",
    )
    .unwrap();
    let status = std::process::Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if std::process::Command::new(cc)
            .arg("--version")
            .output()
            .is_ok()
        {
            return Ok(cc);
        }
    }
    Err(())
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("hermlie-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
