//! Exercises the C ABI the way a foreign caller would: through raw pointers
//! and status codes.

use std::ffi::{CStr, CString};
use std::ptr;

use momhist_ffi::*;

fn parse(text: &str) -> *mut MomhistDataset {
    let c = CString::new(text).unwrap();
    let mut ds: *mut MomhistDataset = ptr::null_mut();
    let status = unsafe { momhist_dataset_parse(c.as_ptr(), &mut ds) };
    assert_eq!(status, MomhistStatus::Ok);
    assert!(!ds.is_null());
    ds
}

#[test]
fn dataset_roundtrip_and_len() {
    let ds = parse("1\n2\n5");
    assert_eq!(unsafe { momhist_dataset_len(ds) }, 3);
    unsafe { momhist_dataset_free(ds) };
}

#[test]
fn catalog_build_and_json() {
    let ds = parse("1\n2\n5");
    let mut cat: *mut MomhistCatalog = ptr::null_mut();
    let status = unsafe { momhist_catalog_build(ds, 4, false, &mut cat) };
    assert_eq!(status, MomhistStatus::Ok);
    assert_eq!(unsafe { momhist_catalog_len(cat) }, 7);

    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(unsafe { momhist_catalog_json(cat, &mut json) }, MomhistStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
    assert!(text.contains("\"shape_count\": 7"));
    unsafe { momhist_string_free(json) };

    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { momhist_classify_json(cat, false, &mut json) },
        MomhistStatus::Ok
    );
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap();
    assert!(text.contains("\"tallies\""));
    unsafe { momhist_string_free(json) };

    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { momhist_stability_json(cat, &mut json) },
        MomhistStatus::Ok
    );
    unsafe { momhist_string_free(json) };

    unsafe { momhist_catalog_free(cat) };
    unsafe { momhist_dataset_free(ds) };
}

#[test]
fn audit_json_via_strings() {
    let ds = parse("1\n2\n5");
    let t0 = CString::new("1/2").unwrap();
    let h = CString::new("1.5").unwrap();
    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe { momhist_audit_json(ds, t0.as_ptr(), h.as_ptr(), 4, &mut json) };
    assert_eq!(status, MomhistStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap();
    assert!(text.contains("\"counts\""));
    unsafe { momhist_string_free(json) };
    unsafe { momhist_dataset_free(ds) };
}

#[test]
fn error_paths_map_to_status_codes() {
    // parse error
    let bad = CString::new("not a number").unwrap();
    let mut ds: *mut MomhistDataset = ptr::null_mut();
    assert_eq!(
        unsafe { momhist_dataset_parse(bad.as_ptr(), &mut ds) },
        MomhistStatus::ParseError
    );
    assert!(ds.is_null());

    // degenerate data
    let flat = parse("5\n5\n5");
    let mut cat: *mut MomhistCatalog = ptr::null_mut();
    assert_eq!(
        unsafe { momhist_catalog_build(flat, 4, false, &mut cat) },
        MomhistStatus::DegenerateData
    );
    unsafe { momhist_dataset_free(flat) };

    // null arguments
    assert_eq!(
        unsafe { momhist_dataset_parse(ptr::null(), &mut ds) },
        MomhistStatus::NullArgument
    );
    assert_eq!(unsafe { momhist_dataset_len(ptr::null()) }, 0);
    unsafe {
        momhist_dataset_free(ptr::null_mut());
        momhist_catalog_free(ptr::null_mut());
        momhist_string_free(ptr::null_mut());
    }

    // status messages are static C strings
    let msg = momhist_status_message(MomhistStatus::DegenerateData);
    assert_eq!(
        unsafe { CStr::from_ptr(msg) }.to_str().unwrap(),
        "degenerate data"
    );
}
