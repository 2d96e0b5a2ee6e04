//! C ABI over the `qhomology` engine.
//!
//! Objects cross the boundary as opaque handles created by the `*_build` and `*_from_json` functions and
//! released by the matching `*_free`. Every fallible call returns a [`QhStatus`]; the message of
//! the most recent failure on the calling thread is available from [`qh_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qhomology::cli::{run_suite, Suite};
use qhomology::linalg::MatrixFile;
use qhomology::ndiff::{feasibility, homology_report, HDiffSpace};
use qhomology::wznw::ZeroModeModel;
use qhomology::{Error, ExactMatrix, Field};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QhStatus {
  Ok = 0,
  NullPointer = 1,
  InvalidHeight = 2,
  InvalidArgument = 3,
  Parse = 4,
  NotNilpotent = 5,
  Model = 6,
  BufferTooSmall = 7,
  Internal = 8,
}

/// A built zero-mode model.
pub struct QhModel(ZeroModeModel);

/// A square matrix over the cyclotomic field of its height.
pub struct QhMatrix {
  field:  Field,
  matrix: ExactMatrix,
}

/// A suite report, held as its JSON text.
pub struct QhReport {
  passed: bool,
  json:   CString,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QhModelDims {
  pub h:             usize,
  pub fock_dim:      usize,
  pub state_dim:     usize,
  pub invariant_dim: usize,
}

thread_local! {
  static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
  let text = CString::new(msg.into().replace('\0', " ")).expect("interior nul removed");
  LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> QhStatus {
  match e {
    Error::InvalidHeight(_) => QhStatus::InvalidHeight,
    Error::NotNilpotent { .. } => QhStatus::NotNilpotent,
    Error::Parse(_) | Error::Json(_) => QhStatus::Parse,
    Error::ModelConstruction(_) => QhStatus::Model,
    Error::OutOfRange(_) | Error::Dimension(_) => QhStatus::InvalidArgument,
    _ => QhStatus::Internal,
  }
}

fn fail(e: Error) -> QhStatus {
  let s = status_of(&e);
  set_error(e.to_string());
  s
}

/// Runs `f`, turning panics into `QhStatus::Internal`.
fn guard(f: impl FnOnce() -> QhStatus) -> QhStatus {
  match catch_unwind(AssertUnwindSafe(f)) {
    Ok(s) => s,
    Err(_) => {
      set_error("internal panic");
      QhStatus::Internal
    }
  }
}

fn check_height(h: u32) -> Result<usize, QhStatus> {
  if h < 2 {
    set_error(format!("invalid height {h}: expected h >= 2"));
    return Err(QhStatus::InvalidHeight);
  }
  Ok(h as usize)
}

/// Message of the last failure on this thread, or NULL. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn qh_last_error() -> *const c_char {
  LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qh_version() -> *const c_char { concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast() }

/// Builds the zero-mode model at height `h`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn qh_model_build(h: u32, out: *mut *mut QhModel) -> QhStatus {
  if out.is_null() {
    return QhStatus::NullPointer;
  }
  guard(|| {
    let h = match check_height(h) {
      Ok(h) => h,
      Err(s) => return s,
    };
    match ZeroModeModel::build(h) {
      Ok(m) => {
        *out = Box::into_raw(Box::new(QhModel(m)));
        QhStatus::Ok
      }
      Err(e) => fail(e),
    }
  })
}

/// # Safety
/// `model` must be NULL or a handle from [`qh_model_build`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qh_model_free(model: *mut QhModel) {
  if !model.is_null() {
    drop(Box::from_raw(model));
  }
}

/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qh_model_dims(model: *const QhModel, out: *mut QhModelDims) -> QhStatus {
  let (Some(m), false) = (model.as_ref(), out.is_null()) else { return QhStatus::NullPointer };
  let m = &m.0;
  *out = QhModelDims { h: m.h(), fock_dim: m.fock.dim(), state_dim: m.h_dim(), invariant_dim: m.h_i.dim() };
  QhStatus::Ok
}

/// Runs one suite (`"relations"`, `"theorem0"`, `"section3"`, `"theorem1"` or `"hochschild"`).
/// `trials = 0` selects the suite default.
///
/// # Safety
/// `model` must be a live handle, `suite` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qh_model_verify(
  model: *const QhModel,
  suite: *const c_char,
  trials: u32,
  seed: u64,
  out: *mut *mut QhReport,
) -> QhStatus {
  let (Some(m), false, false) = (model.as_ref(), suite.is_null(), out.is_null()) else { return QhStatus::NullPointer };
  guard(|| {
    let name = CStr::from_ptr(suite).to_string_lossy();
    let Some(s) = Suite::parse(&name).filter(|s| *s != Suite::All) else {
      set_error(format!("unknown suite {name:?}"));
      return QhStatus::InvalidArgument;
    };
    let trials = if trials == 0 { s.default_trials() } else { trials as usize };
    match run_suite(&m.0, s, trials, seed) {
      Ok(r) => {
        let json = serde_json::to_string(&r).expect("serializable");
        let json = CString::new(json).expect("JSON has no interior nul");
        *out = Box::into_raw(Box::new(QhReport { passed: r.passed(), json }));
        QhStatus::Ok
      }
      Err(e) => fail(e),
    }
  })
}

/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qh_report_passed(report: *const QhReport) -> bool { report.as_ref().is_some_and(|r| r.passed) }

/// JSON text of the report, owned by the handle.
///
/// # Safety
/// `report` must be a live handle; the pointer is invalid after [`qh_report_free`].
#[no_mangle]
pub unsafe extern "C" fn qh_report_json(report: *const QhReport) -> *const c_char {
  report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qh_report_free(report: *mut QhReport) {
  if !report.is_null() {
    drop(Box::from_raw(report));
  }
}

/// Parses a matrix from the JSON matrix-file format.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qh_matrix_from_json(json: *const c_char, out: *mut *mut QhMatrix) -> QhStatus {
  if json.is_null() || out.is_null() {
    return QhStatus::NullPointer;
  }
  guard(|| {
    let Ok(text) = CStr::from_ptr(json).to_str() else {
      set_error("matrix JSON is not UTF-8");
      return QhStatus::Parse;
    };
    match MatrixFile::parse(text).and_then(|f| f.to_matrix()) {
      Ok((field, matrix)) => {
        *out = Box::into_raw(Box::new(QhMatrix { field, matrix }));
        QhStatus::Ok
      }
      Err(e) => fail(e),
    }
  })
}

/// # Safety
/// `matrix` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qh_matrix_free(matrix: *mut QhMatrix) {
  if !matrix.is_null() {
    drop(Box::from_raw(matrix));
  }
}

/// Writes `dim H_(k)` for `k = 1..h-1` into `dims`; `written` receives `h - 1`. Fails with
/// `QH_STATUS_NOT_NILPOTENT` unless `matrix^h = 0`, and with `QH_STATUS_BUFFER_TOO_SMALL` (still
/// setting `written`) when `capacity < h - 1`.
///
/// # Safety
/// `matrix` must be a live handle, `dims` valid for `capacity` writes and `written` writable.
#[no_mangle]
pub unsafe extern "C" fn qh_homology_dims(
  matrix: *const QhMatrix,
  h: u32,
  dims: *mut usize,
  capacity: usize,
  written: *mut usize,
) -> QhStatus {
  let (Some(m), false, false) = (matrix.as_ref(), dims.is_null(), written.is_null()) else { return QhStatus::NullPointer };
  guard(|| {
    let h = match check_height(h) {
      Ok(h) => h,
      Err(s) => return s,
    };
    let space = match HDiffSpace::new(&m.field, h, m.matrix.clone()) {
      Ok(s) => s,
      Err(e) => return fail(e),
    };
    *written = h - 1;
    if capacity < h - 1 {
      set_error(format!("need room for {} dimensions, got {capacity}", h - 1));
      return QhStatus::BufferTooSmall;
    }
    for (i, d) in homology_report(&m.field, &space).dims.into_iter().enumerate() {
      *dims.add(i) = d;
    }
    QhStatus::Ok
  })
}

/// Whether a nilpotent operator with `Q^h = 0` on a space of dimension `dim` can have every
/// generalized homology one-dimensional.
///
/// # Safety
/// `feasible` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qh_feasibility(dim: usize, h: u32, feasible: *mut bool) -> QhStatus {
  if feasible.is_null() {
    return QhStatus::NullPointer;
  }
  let h = match check_height(h) {
    Ok(h) => h,
    Err(s) => return s,
  };
  match feasibility(dim, h) {
    Ok(f) => {
      *feasible = f.feasible;
      QhStatus::Ok
    }
    Err(e) => fail(e),
  }
}
