use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use pbent_ffi::*;

unsafe fn take_string(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    pb_string_free(s);
    out
}

#[test]
fn field_arithmetic() {
    unsafe {
        let mut f = ptr::null_mut();
        // x^2 + 1 over F_3
        let modulus = [1u32, 0, 1];
        assert_eq!(pb_field_new(3, modulus.as_ptr(), 3, &mut f), PbStatus::Ok);
        assert_eq!(pb_field_order(f), 9);
        let mut r = 0;
        // X · X = −1 = 2
        assert_eq!(pb_field_mul(f, 3, 3, &mut r), PbStatus::Ok);
        assert_eq!(r, 2);
        assert_eq!(pb_field_add(f, 2, 1, &mut r), PbStatus::Ok);
        assert_eq!(r, 0);
        assert_eq!(pb_field_trace(f, 1, &mut r), PbStatus::Ok);
        assert_eq!(r, 2);
        assert_eq!(pb_field_mul(f, 9, 1, &mut r), PbStatus::InvalidArgument);
        assert!(take_string(pb_last_error_message()).contains("out of range"));
        pb_field_free(f);
    }
}

#[test]
fn bad_inputs_report_status() {
    unsafe {
        let mut f = ptr::null_mut();
        let reducible = [2u32, 0, 1];
        assert_eq!(pb_field_new(3, reducible.as_ptr(), 3, &mut f), PbStatus::InvalidField);
        assert!(f.is_null());
        assert_eq!(pb_field_new(3, ptr::null(), 0, &mut f), PbStatus::NullPointer);
        assert_eq!(pb_field_default(4, 2, &mut f), PbStatus::InvalidField);
        let mut v = ptr::null_mut();
        let short = [0u32, 1];
        assert_eq!(pb_vfunc_from_table(3, 1, 1, short.as_ptr(), 2, &mut v), PbStatus::InvalidArgument);
        assert_eq!(pb_report_component_count(ptr::null()), 0);
        assert!(pb_report_json(ptr::null()).is_null());
        let mut rep = ptr::null_mut();
        assert_eq!(pb_reproduce_example(7, &mut rep), PbStatus::InvalidArgument);
        pb_field_free(ptr::null_mut());
        pb_vfunc_free(ptr::null_mut());
        pb_report_free(ptr::null_mut());
    }
}

#[test]
fn classify_and_ptt_roundtrip() {
    unsafe {
        // x·y on F_3^2 seen as GF(9) → GF(3) through canonical indices
        let table: Vec<u32> = (0..9).map(|x| (x % 3) * (x / 3) % 3).collect();
        let mut v = ptr::null_mut();
        assert_eq!(pb_vfunc_from_table(3, 2, 1, table.as_ptr(), 9, &mut v), PbStatus::Ok);
        let mut y = 0;
        assert_eq!(pb_vfunc_eval(v, 8, &mut y), PbStatus::Ok);
        assert_eq!(y, 1);

        let dir = tempfile::tempdir().unwrap();
        let path = CString::new(dir.path().join("xy.ptt").to_str().unwrap()).unwrap();
        assert_eq!(pb_vfunc_write_ptt(v, path.as_ptr()), PbStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(pb_vfunc_read_ptt(path.as_ptr(), &mut back), PbStatus::Ok);
        for x in 0..9 {
            let (mut a, mut b) = (0, 0);
            pb_vfunc_eval(v, x, &mut a);
            pb_vfunc_eval(back, x, &mut b);
            assert_eq!(a, b);
        }

        let mut rep = ptr::null_mut();
        assert_eq!(pb_classify(back, &mut rep), PbStatus::Ok);
        assert_eq!(pb_report_bent(rep), 1);
        assert_eq!(pb_report_component_count(rep), 2);
        let (mut lambda, mut wr, mut eps) = (0, 0, 0);
        assert_eq!(pb_report_component(rep, 1, &mut lambda, &mut wr, &mut eps), PbStatus::Ok);
        assert_eq!((lambda, wr), (2, 1));
        assert!(eps == 1 || eps == -1);
        assert_eq!(pb_report_component(rep, 2, &mut lambda, &mut wr, &mut eps), PbStatus::InvalidArgument);
        let json = take_string(pb_report_json(rep));
        assert!(json.contains("\"vectorial_weakly_regular\":true"), "{json}");

        let missing = CString::new(dir.path().join("nope.ptt").to_str().unwrap()).unwrap();
        let mut none = ptr::null_mut();
        assert_eq!(pb_vfunc_read_ptt(missing.as_ptr(), &mut none), PbStatus::Io);

        pb_report_free(rep);
        pb_vfunc_free(back);
        pb_vfunc_free(v);
    }
}

#[test]
fn header_is_current() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/pbent.h")).unwrap();
    for name in ["PBENT_H", "PB_STATUS_OK", "typedef struct PbField PbField", "pb_classify", "pb_reproduce_example"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_lib() {
    let lib = target_dir().join("libpbent_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
