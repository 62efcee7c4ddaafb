//! C ABI for `cvsteer`.
//!
//! Covariance matrices cross the boundary as opaque [`CvsCovariance`]
//! handles created by the `cvs_*` constructors and released with
//! [`cvs_covariance_free`]. Every fallible call returns a [`CvsStatus`];
//! on failure the message is kept per thread and can be fetched with
//! [`cvs_last_error_message`]. Mode indices are zero-based and matrices
//! are row-major in interleaved `(x, p)` ordering.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cvsteer::states::{apply_loss, square_cluster, LossChannel};
use cvsteer::steering::{critical_eta, nullifier_variances, steering_value, Crossing};
use cvsteer::symplectic::{is_physical, symplectic_eigenvalues, CovarianceDocument};
use cvsteer::{CovarianceMatrix, Error, ModePartition};

/// Result codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CvsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    ArityError = 4,
    NumericalError = 5,
    IoError = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Outcome kind of [`cvs_critical_eta`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CvsCrossingKind {
    Threshold = 0,
    NeverSteers = 1,
    AlwaysSteers = 2,
}

/// Opaque covariance matrix with its mode labels.
pub struct CvsCovariance {
    doc: CovarianceDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: CvsStatus,
    message: String,
}

impl Failure {
    fn new(status: CvsStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }

    fn null(name: &str) -> Self {
        Failure::new(CvsStatus::NullPointer, format!("{name} is null"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) | Error::Json(_) | Error::Csv(_) => CvsStatus::ParseError,
            Error::Arity(_) | Error::IncompletePlan(_) | Error::UnsupportedModeCount(_) => {
                CvsStatus::ArityError
            }
            Error::Io(_) => CvsStatus::IoError,
            _ => CvsStatus::NumericalError,
        };
        Failure::new(status, e.to_string())
    }
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> CvsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            CvsStatus::Ok
        }
        Ok(Err(failure)) => {
            set_last_error(failure.message);
            failure.status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            CvsStatus::Panic
        }
    }
}

unsafe fn handle<'a>(h: *const CvsCovariance) -> Result<&'a CvsCovariance, Failure> {
    h.as_ref().ok_or_else(|| Failure::null("covariance handle"))
}

unsafe fn slice<'a, T>(data: *const T, len: usize, name: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(Failure::null(name));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn write_out<T>(out: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn copy_into(values: &[f64], buf: *mut f64, len: usize) -> Result<(), Failure> {
    if len < values.len() {
        return Err(Failure::new(
            CvsStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", values.len()),
        ));
    }
    if buf.is_null() {
        return Err(Failure::null("output buffer"));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    Ok(())
}

fn boxed(cm: CovarianceMatrix) -> *mut CvsCovariance {
    Box::into_raw(Box::new(CvsCovariance {
        doc: CovarianceDocument::with_default_labels(cm),
    }))
}

unsafe fn partition(
    steering: *const usize,
    n_steering: usize,
    steered: *const usize,
    n_steered: usize,
) -> Result<ModePartition, Failure> {
    let a = slice(steering, n_steering, "steering modes")?.to_vec();
    let b = slice(steered, n_steered, "steered modes")?.to_vec();
    Ok(ModePartition::new(a, b)?)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cvs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf` and returns
/// the buffer size it needs including the terminating NUL, or 0 when the
/// last call succeeded. Nothing is copied if `buf` is null or too small.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn cvs_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes_with_nul();
            if !buf.is_null() && len >= bytes.len() {
                ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, bytes.len());
            }
            bytes.len()
        }
    })
}

/// Builds a covariance matrix from `dim × dim` row-major entries, where
/// `dim = 2 · n_modes`.
///
/// # Safety
/// `data` must be valid for `len` reads; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cvs_covariance_from_matrix(
    n_modes: usize,
    data: *const f64,
    len: usize,
    out: *mut *mut CvsCovariance,
) -> CvsStatus {
    guard(|| {
        let dim = 2 * n_modes;
        if len != dim * dim {
            return Err(Failure::new(
                CvsStatus::InvalidArgument,
                format!("{n_modes} modes need {} entries, got {len}", dim * dim),
            ));
        }
        let entries = slice(data, len, "matrix data")?;
        let cm = CovarianceMatrix::from_row_slice(n_modes, entries)?;
        write_out(out, boxed(cm), "out")
    })
}

/// Parses a covariance JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cvs_covariance_from_json(
    json: *const c_char,
    out: *mut *mut CvsCovariance,
) -> CvsStatus {
    guard(|| {
        if json.is_null() {
            return Err(Failure::null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| Failure::new(CvsStatus::ParseError, "json is not UTF-8"))?;
        let doc = CovarianceDocument::from_json(text)?;
        write_out(out, Box::into_raw(Box::new(CvsCovariance { doc })), "out")
    })
}

/// Serializes to a newly allocated JSON string, released with
/// [`cvs_string_free`].
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cvs_covariance_to_json(
    h: *const CvsCovariance,
    out: *mut *mut c_char,
) -> CvsStatus {
    guard(|| {
        let json = handle(h)?.doc.to_json()?;
        let c = CString::new(json)
            .map_err(|_| Failure::new(CvsStatus::InvalidArgument, "label contains NUL"))?;
        write_out(out, c.into_raw(), "out")
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cvs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `h` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn cvs_covariance_free(h: *mut CvsCovariance) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cvs_covariance_n_modes(
    h: *const CvsCovariance,
    out: *mut usize,
) -> CvsStatus {
    guard(|| write_out(out, handle(h)?.doc.cm.n_modes(), "out"))
}

/// Copies the `(2n)²` row-major entries into `buf`.
///
/// # Safety
/// `h` must be a live handle; `buf` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn cvs_covariance_copy_matrix(
    h: *const CvsCovariance,
    buf: *mut f64,
    len: usize,
) -> CvsStatus {
    guard(|| copy_into(&handle(h)?.doc.cm.to_row_major(), buf, len))
}

/// Lossless four-mode square cluster with squeezing `r`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cvs_square_cluster(r: f64, out: *mut *mut CvsCovariance) -> CvsStatus {
    guard(|| write_out(out, boxed(square_cluster(r)?), "out"))
}

/// New handle holding `h` after loss with transmission `eta` on `mode`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cvs_apply_loss(
    h: *const CvsCovariance,
    mode: usize,
    eta: f64,
    out: *mut *mut CvsCovariance,
) -> CvsStatus {
    guard(|| {
        let source = handle(h)?;
        let cm = apply_loss(&source.doc.cm, &LossChannel::new(mode, eta)?)?;
        let doc = CovarianceDocument::new(cm, source.doc.labels.clone())?;
        write_out(out, Box::into_raw(Box::new(CvsCovariance { doc })), "out")
    })
}

/// Writes the `n` symplectic eigenvalues in ascending order.
///
/// # Safety
/// `h` must be a live handle; `buf` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn cvs_symplectic_eigenvalues(
    h: *const CvsCovariance,
    buf: *mut f64,
    len: usize,
) -> CvsStatus {
    guard(|| copy_into(&symplectic_eigenvalues(&handle(h)?.doc.cm)?, buf, len))
}

/// # Safety
/// `h` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn cvs_is_physical(
    h: *const CvsCovariance,
    out_physical: *mut bool,
    out_min_eigenvalue: *mut f64,
) -> CvsStatus {
    guard(|| {
        let p = is_physical(&handle(h)?.doc.cm)?;
        write_out(out_physical, p.physical, "out_physical")?;
        write_out(
            out_min_eigenvalue,
            p.min_symplectic_eigenvalue,
            "out_min_eigenvalue",
        )
    })
}

/// Steerability of the `steered` modes by the `steering` modes.
///
/// # Safety
/// `h` must be a live handle; the mode arrays must be valid for their
/// lengths; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cvs_gaussian_steering(
    h: *const CvsCovariance,
    steering: *const usize,
    n_steering: usize,
    steered: *const usize,
    n_steered: usize,
    out: *mut f64,
) -> CvsStatus {
    guard(|| {
        let part = partition(steering, n_steering, steered, n_steered)?;
        write_out(out, steering_value(&handle(h)?.doc.cm, &part)?, "out")
    })
}

/// Transmission on `lossy_mode` of the square cluster at which steering
/// across the partition switches. `out_eta` is NaN unless the kind is
/// `Threshold`.
///
/// # Safety
/// The mode arrays must be valid for their lengths; both outputs must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cvs_critical_eta(
    r: f64,
    steering: *const usize,
    n_steering: usize,
    steered: *const usize,
    n_steered: usize,
    lossy_mode: usize,
    out_kind: *mut CvsCrossingKind,
    out_eta: *mut f64,
) -> CvsStatus {
    guard(|| {
        let part = partition(steering, n_steering, steered, n_steered)?;
        let (kind, eta) = match critical_eta(r, &part, lossy_mode)? {
            Crossing::Threshold(eta) => (CvsCrossingKind::Threshold, eta),
            Crossing::NeverSteers => (CvsCrossingKind::NeverSteers, f64::NAN),
            Crossing::AlwaysSteers => (CvsCrossingKind::AlwaysSteers, f64::NAN),
        };
        write_out(out_kind, kind, "out_kind")?;
        write_out(out_eta, eta, "out_eta")
    })
}

/// Writes the four cluster nullifier variances into `out[0..4]`.
///
/// # Safety
/// `h` must be a live handle; `out` must be valid for 4 writes.
#[no_mangle]
pub unsafe extern "C" fn cvs_nullifier_variances(
    h: *const CvsCovariance,
    out: *mut f64,
) -> CvsStatus {
    guard(|| {
        let n = nullifier_variances(&handle(h)?.doc.cm)?;
        copy_into(&n.variances, out, 4)
    })
}
