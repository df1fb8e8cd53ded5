use std::ffi::{CStr, CString};
use std::ptr;

use ksbicat_ffi::*;

const K2: &str = r#"{"field":"GF(5)","algebras":{"K2":{
  "structure_constants":[[["1","0"],["0","0"]],[["0","0"],["0","1"]]],"unit":["1","1"]}}}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = ks_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn decompose_through_handles() {
    unsafe {
        let mut inst = ptr::null_mut();
        assert_eq!(ks_instance_from_json(c(K2).as_ptr(), &mut inst), KsStatus::Ok);
        let mut d = ptr::null_mut();
        assert_eq!(ks_decompose(inst, c("K2").as_ptr(), 0, &mut d), KsStatus::Ok);
        assert_eq!(ks_decomposition_len(d), 2);
        assert!(ks_decomposition_is_complete(d));
        let mut dim = 0;
        assert_eq!(ks_decomposition_summand_dim(d, 1, &mut dim), KsStatus::Ok);
        assert_eq!(dim, 1);
        assert_eq!(ks_decomposition_summand_dim(d, 2, &mut dim), KsStatus::OutOfRange);

        let mut seen = Vec::new();
        for i in 0..2 {
            let mut s = ptr::null_mut();
            assert_eq!(ks_decomposition_idempotent(d, i, &mut s), KsStatus::Ok);
            seen.push(CStr::from_ptr(s).to_str().unwrap().to_string());
            ks_string_free(s);
        }
        seen.sort();
        assert_eq!(seen, vec![r#"["0","1"]"#, r#"["1","0"]"#]);

        let mut seeded = ptr::null_mut();
        assert_eq!(ks_decompose(inst, c("K2").as_ptr(), 7, &mut seeded), KsStatus::Ok);
        assert_eq!(ks_decomposition_len(seeded), 2);
        ks_decomposition_free(seeded);
        ks_decomposition_free(d);
        ks_instance_free(inst);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut inst = ptr::null_mut();
        assert_eq!(ks_instance_from_json(c("{\"field\":\"Q\",\"algebras\":3}").as_ptr(), &mut inst), KsStatus::Input);
        assert!(inst.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(ks_instance_from_json(ptr::null(), &mut inst), KsStatus::NullPointer);
        assert_eq!(ks_instance_read(c("/nonexistent/x.json").as_ptr(), &mut inst), KsStatus::Input);

        assert_eq!(ks_instance_from_json(c(K2).as_ptr(), &mut inst), KsStatus::Ok);
        let mut d = ptr::null_mut();
        assert_eq!(ks_decompose(inst, c("nope").as_ptr(), 0, &mut d), KsStatus::Input);
        assert!(last_error().contains("nope"));
        assert!(d.is_null());
        assert_eq!(ks_decomposition_len(ptr::null()), 0);
        ks_instance_free(inst);
        ks_instance_free(ptr::null_mut());
        ks_string_free(ptr::null_mut());
    }
}

#[test]
fn uncertified_decomposition_is_still_returned() {
    let qx = r#"{"field":"Q","algebras":{"QX":{"structure_constants":[
     [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
     [["0","1","0","0"],["0","0","1","0"],["0","0","0","1"],["-1","0","0","0"]],
     [["0","0","1","0"],["0","0","0","1"],["-1","0","0","0"],["0","-1","0","0"]],
     [["0","0","0","1"],["-1","0","0","0"],["0","-1","0","0"],["0","0","-1","0"]]],
     "unit":["1","0","0","0"]}}}"#;
    unsafe {
        let mut inst = ptr::null_mut();
        assert_eq!(ks_instance_from_json(c(qx).as_ptr(), &mut inst), KsStatus::Ok);
        let mut d = ptr::null_mut();
        assert_eq!(ks_decompose(inst, c("QX").as_ptr(), 0, &mut d), KsStatus::Incomplete);
        assert!(!d.is_null());
        assert!(!ks_decomposition_is_complete(d));
        ks_decomposition_free(d);
        ks_instance_free(inst);
    }
}

#[test]
fn run_matches_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k2.json");
    std::fs::write(&path, K2).unwrap();
    let args: Vec<CString> = ["ksbicat", "report-indec", path.to_str().unwrap(), "K2", "--format", "json"]
        .iter()
        .map(|a| c(a))
        .collect();
    let argv: Vec<*const std::ffi::c_char> = args.iter().map(|a| a.as_ptr()).collect();
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(ks_run(argv.len() as i32, argv.as_ptr(), &mut out), 1);
        let report: serde_json::Value = serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
        assert_eq!(report["command"], "report-indec");
        ks_string_free(out);
        assert_eq!(ks_run(1, argv.as_ptr(), ptr::null_mut()), 3);
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = include_str!("../include/ksbicat.h");
    let src = include_str!("../src/lib.rs");
    let exported: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exported.len() >= 10);
    for name in exported {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct KsInstance KsInstance;"));
}
