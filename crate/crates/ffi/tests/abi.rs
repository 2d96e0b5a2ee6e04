use std::ffi::{CStr, CString};
use std::ptr;

use qhomology_ffi::*;

fn last_error() -> String { unsafe { CStr::from_ptr(qh_last_error()).to_string_lossy().into_owned() } }

#[test]
fn model_round_trip() {
  unsafe {
    let mut model = ptr::null_mut();
    assert_eq!(qh_model_build(2, &mut model), QhStatus::Ok);
    let mut dims = QhModelDims::default();
    assert_eq!(qh_model_dims(model, &mut dims), QhStatus::Ok);
    assert_eq!(dims, QhModelDims { h: 2, fock_dim: 4, state_dim: 16, invariant_dim: 3 });

    let suite = CString::new("theorem0").unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(qh_model_verify(model, suite.as_ptr(), 0, 7, &mut report), QhStatus::Ok);
    assert!(qh_report_passed(report));
    let json: serde_json::Value = serde_json::from_str(CStr::from_ptr(qh_report_json(report)).to_str().unwrap()).unwrap();
    assert_eq!(json["suite"], "theorem0");
    assert_eq!(json["data"]["dims"], serde_json::json!([1]));
    qh_report_free(report);

    let bogus = CString::new("everything").unwrap();
    assert_eq!(qh_model_verify(model, bogus.as_ptr(), 0, 7, &mut report), QhStatus::InvalidArgument);
    assert!(last_error().contains("everything"));
    qh_model_free(model);
  }
}

#[test]
fn invalid_height_and_nulls() {
  unsafe {
    let mut model = ptr::null_mut();
    assert_eq!(qh_model_build(1, &mut model), QhStatus::InvalidHeight);
    assert!(model.is_null());
    assert_eq!(qh_model_build(2, ptr::null_mut()), QhStatus::NullPointer);
    let mut dims = QhModelDims::default();
    assert_eq!(qh_model_dims(ptr::null(), &mut dims), QhStatus::NullPointer);
    qh_model_free(ptr::null_mut());
    qh_report_free(ptr::null_mut());
    qh_matrix_free(ptr::null_mut());
  }
}

fn matrix(json: &str) -> *mut QhMatrix {
  let text = CString::new(json).unwrap();
  let mut m = ptr::null_mut();
  assert_eq!(unsafe { qh_matrix_from_json(text.as_ptr(), &mut m) }, QhStatus::Ok);
  m
}

#[test]
fn homology_of_blocks() {
  // Q_2 ⊕ Q_3 ⊕ Q_3 over the h = 3 field
  let m = matrix(r#"{"h": 3, "rows": 8, "cols": 8, "entries": [[0, 1, 1], [2, 3, 1], [3, 4, 1], [5, 6, 1], [6, 7, 1]]}"#);
  let mut dims = [usize::MAX; 4];
  let mut written = 0;
  unsafe {
    assert_eq!(qh_homology_dims(m, 3, dims.as_mut_ptr(), dims.len(), &mut written), QhStatus::Ok);
    assert_eq!(&dims[..written], &[1, 1]);
    assert_eq!(qh_homology_dims(m, 3, dims.as_mut_ptr(), 1, &mut written), QhStatus::BufferTooSmall);
    assert_eq!(written, 2);
    // nilpotent of order 3 only
    assert_eq!(qh_homology_dims(m, 2, dims.as_mut_ptr(), dims.len(), &mut written), QhStatus::NotNilpotent);
    assert!(last_error().contains("smallest vanishing power is 3"), "{}", last_error());
    qh_matrix_free(m);
  }
}

#[test]
fn malformed_matrix_json() {
  let text = CString::new("{\"h\": 3").unwrap();
  let mut m = ptr::null_mut();
  assert_eq!(unsafe { qh_matrix_from_json(text.as_ptr(), &mut m) }, QhStatus::Parse);
  assert!(m.is_null());
}

#[test]
fn feasibility_verdicts() {
  let mut ok = true;
  unsafe {
    assert_eq!(qh_feasibility(16, 2, &mut ok), QhStatus::Ok);
    assert!(!ok);
    assert_eq!(qh_feasibility(3, 2, &mut ok), QhStatus::Ok);
    assert!(ok);
    assert_eq!(qh_feasibility(3, 0, &mut ok), QhStatus::InvalidHeight);
  }
}

#[test]
fn header_lists_the_api() {
  let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qhomology.h")).unwrap();
  for name in ["qh_model_build", "qh_model_verify", "qh_homology_dims", "qh_last_error", "QH_STATUS_NOT_NILPOTENT", "typedef struct QhModel QhModel"] {
    assert!(header.contains(name), "{name} missing from header");
  }
  let version = unsafe { CStr::from_ptr(qh_version()) };
  assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
  let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/qhomology.h");
  let Ok(out) = std::process::Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header]).output() else {
    eprintln!("no C compiler on PATH; skipping");
    return;
  };
  assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
