//! C ABI for the spin-orbit Green-function library.
//!
//! Conventions:
//! - A model is held behind an opaque [`SpinorbModel`] handle created with
//!   [`spinorb_model_new`] and released with [`spinorb_model_free`].
//! - Every fallible call returns an `int32_t` status: `SPINORB_OK` (0),
//!   `SPINORB_ERR_ARGUMENT` (1) for null pointers or parameters that never
//!   make sense, `SPINORB_ERR_DOMAIN` (2) for requests outside the domain of
//!   the evaluated quantity (poles, branch cuts, the wrong field/coupling
//!   case), and `SPINORB_ERR_ACCURACY` (3) when evaluation ran but could not
//!   reach its accuracy target.
//! - On a non-zero status the output locations are left untouched and a
//!   human-readable message is stored per thread; fetch it with
//!   [`spinorb_last_error`].
//! - Complex numbers cross the boundary as a `{re, im}` pair of doubles.
//!
//! The checked-in `include/spinorb.h` mirrors these declarations; keep the
//! two in sync (regenerate with `cbindgen` per `cbindgen.toml` if available).

use std::cell::RefCell;
use std::ffi::{c_char, c_int};

use num_complex::Complex64;
use spinorb::green::{green0_landau, green_kernel, KernelRequest};
use spinorb::model::{ModelParams, Point2, Variant};
use spinorb::renorm::green_ren;
use spinorb::spectrum::spin_orbit_levels;
use spinorb::Error;

pub const SPINORB_OK: c_int = 0;
pub const SPINORB_ERR_ARGUMENT: c_int = 1;
pub const SPINORB_ERR_DOMAIN: c_int = 2;
pub const SPINORB_ERR_ACCURACY: c_int = 3;

/// Opaque model handle: variant, coupling, field, and Zeeman factor.
pub struct SpinorbModel {
    params: ModelParams,
}

/// A complex number as two doubles, layout-compatible with C99 `double _Complex`.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct SpinorbComplex {
    pub re: f64,
    pub im: f64,
}

impl SpinorbComplex {
    fn to_c64(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn from_c64(w: Complex64) -> Self {
        SpinorbComplex { re: w.re, im: w.im }
    }
}

/// The four entries of a 2x2 spin-space kernel, row-major.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct SpinorbKernel {
    pub g11: SpinorbComplex,
    pub g12: SpinorbComplex,
    pub g21: SpinorbComplex,
    pub g22: SpinorbComplex,
}

/// The two diagonal entries of the renormalized kernel at coinciding points.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct SpinorbRenorm {
    pub diag_up: SpinorbComplex,
    pub diag_down: SpinorbComplex,
}

thread_local! {
    // Message bytes of the most recent failure on this thread, NUL-terminated.
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_last_error(msg: &str) {
    LAST_ERROR.with(|slot| {
        let mut bytes = slot.borrow_mut();
        bytes.clear();
        // interior NULs would silently truncate the C string
        bytes.extend(msg.bytes().map(|b| if b == 0 { b' ' } else { b }));
        bytes.push(0);
    });
}

fn argument_error(msg: &str) -> c_int {
    set_last_error(msg);
    SPINORB_ERR_ARGUMENT
}

fn store_error(err: &Error) -> c_int {
    set_last_error(&err.to_string());
    match err {
        Error::InvalidParameter(_) | Error::UnsupportedParameter(_) => SPINORB_ERR_ARGUMENT,
        Error::Accuracy { .. } => SPINORB_ERR_ACCURACY,
        _ => SPINORB_ERR_DOMAIN,
    }
}

/// Version of the underlying library, as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn spinorb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copies the most recent error message on this thread into `buf`.
///
/// Returns the full message length in bytes (excluding the terminating NUL);
/// the copy is truncated to `cap - 1` bytes and always NUL-terminated when
/// `cap > 0`. A zero return means no error has been recorded yet.
///
/// # Safety
/// `buf` must be valid for writes of `cap` bytes, or null (with `cap` 0) for
/// a pure length query.
#[no_mangle]
pub unsafe extern "C" fn spinorb_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let bytes = slot.borrow();
        let len = bytes.len().saturating_sub(1);
        if !buf.is_null() && cap > 0 {
            let n = len.min(cap - 1);
            // SAFETY: caller guarantees `buf` holds `cap` writable bytes.
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
                *buf.add(n) = 0;
            }
        }
        len
    })
}

/// Creates a model handle.
///
/// `variant` is `'R'` (Rashba) or `'D'` (Dresselhaus); `kappa` is the
/// spin-orbit coupling, `b` the reduced magnetic field, `gamma` the reduced
/// Zeeman factor. On success writes the new handle to `*out` and returns
/// `SPINORB_OK`; the handle must later be released with
/// [`spinorb_model_free`].
///
/// # Safety
/// `out` must be valid for a single pointer write.
#[no_mangle]
pub unsafe extern "C" fn spinorb_model_new(
    variant: c_char,
    kappa: f64,
    b: f64,
    gamma: f64,
    out: *mut *mut SpinorbModel,
) -> c_int {
    if out.is_null() {
        return argument_error("spinorb_model_new: out pointer is null");
    }
    let variant = match variant as u8 {
        b'R' | b'r' => Variant::R,
        b'D' | b'd' => Variant::D,
        other => {
            return argument_error(&format!(
                "spinorb_model_new: variant must be 'R' or 'D', got byte {other}"
            ))
        }
    };
    match ModelParams::new(variant, kappa, b, gamma) {
        Ok(params) => {
            let handle = Box::new(SpinorbModel { params });
            // SAFETY: `out` is non-null and the caller guarantees it is writable.
            unsafe { *out = Box::into_raw(handle) };
            SPINORB_OK
        }
        Err(e) => store_error(&e),
    }
}

/// Releases a handle created by [`spinorb_model_new`]. Null is a no-op.
///
/// # Safety
/// `model` must be a pointer previously returned by [`spinorb_model_new`] and
/// not yet freed; passing any other non-null pointer is undefined behavior.
#[no_mangle]
pub unsafe extern "C" fn spinorb_model_free(model: *mut SpinorbModel) {
    if model.is_null() {
        return;
    }
    // SAFETY: caller guarantees `model` came from Box::into_raw above.
    drop(unsafe { Box::from_raw(model) });
}

unsafe fn deref_model<'a>(model: *const SpinorbModel) -> Option<&'a SpinorbModel> {
    // SAFETY: caller guarantees a live handle or null.
    unsafe { model.as_ref() }
}

/// Evaluates the 2x2 resolvent kernel G(r, r'; z) of the model.
///
/// `(x, y)` and `(xp, yp)` are the two points, `z` the complex energy. The
/// free (`b == 0`) and magnetic cases are dispatched automatically.
///
/// # Safety
/// `model` must be a live handle from [`spinorb_model_new`]; `out` must be
/// valid for a [`SpinorbKernel`] write.
#[no_mangle]
pub unsafe extern "C" fn spinorb_green(
    model: *const SpinorbModel,
    x: f64,
    y: f64,
    xp: f64,
    yp: f64,
    z: SpinorbComplex,
    out: *mut SpinorbKernel,
) -> c_int {
    // SAFETY: forwarded caller contract.
    let Some(handle) = (unsafe { deref_model(model) }) else {
        return argument_error("spinorb_green: model handle is null");
    };
    if out.is_null() {
        return argument_error("spinorb_green: out pointer is null");
    }
    let r = match Point2::new(x, y) {
        Ok(p) => p,
        Err(e) => return store_error(&e),
    };
    let rp = match Point2::new(xp, yp) {
        Ok(p) => p,
        Err(e) => return store_error(&e),
    };
    let req = KernelRequest::new(handle.params, r, rp, z.to_c64());
    match green_kernel(&req) {
        Ok(k) => {
            // SAFETY: `out` is non-null and the caller guarantees it is writable.
            unsafe {
                *out = SpinorbKernel {
                    g11: SpinorbComplex::from_c64(k.g11),
                    g12: SpinorbComplex::from_c64(k.g12),
                    g21: SpinorbComplex::from_c64(k.g21),
                    g22: SpinorbComplex::from_c64(k.g22),
                };
            }
            SPINORB_OK
        }
        Err(e) => store_error(&e),
    }
}

/// Evaluates the scalar Landau-level kernel G0(r, r'; z) at field `b`,
/// without spin-orbit or Zeeman terms.
///
/// # Safety
/// `out` must be valid for a [`SpinorbComplex`] write.
#[no_mangle]
pub unsafe extern "C" fn spinorb_green0_landau(
    b: f64,
    x: f64,
    y: f64,
    xp: f64,
    yp: f64,
    z: SpinorbComplex,
    out: *mut SpinorbComplex,
) -> c_int {
    if out.is_null() {
        return argument_error("spinorb_green0_landau: out pointer is null");
    }
    let r = match Point2::new(x, y) {
        Ok(p) => p,
        Err(e) => return store_error(&e),
    };
    let rp = match Point2::new(xp, yp) {
        Ok(p) => p,
        Err(e) => return store_error(&e),
    };
    match green0_landau(b, &r, &rp, z.to_c64()) {
        Ok(w) => {
            // SAFETY: `out` is non-null and the caller guarantees it is writable.
            unsafe { *out = SpinorbComplex::from_c64(w) };
            SPINORB_OK
        }
        Err(e) => store_error(&e),
    }
}

/// Evaluates the renormalized kernel at coinciding points: the diagonal of
/// G(r, r; z) after the logarithmic short-distance part is subtracted.
///
/// # Safety
/// `model` must be a live handle from [`spinorb_model_new`]; `out` must be
/// valid for a [`SpinorbRenorm`] write.
#[no_mangle]
pub unsafe extern "C" fn spinorb_green_ren(
    model: *const SpinorbModel,
    z: SpinorbComplex,
    out: *mut SpinorbRenorm,
) -> c_int {
    // SAFETY: forwarded caller contract.
    let Some(handle) = (unsafe { deref_model(model) }) else {
        return argument_error("spinorb_green_ren: model handle is null");
    };
    if out.is_null() {
        return argument_error("spinorb_green_ren: out pointer is null");
    }
    match green_ren(&handle.params, z.to_c64()) {
        Ok(v) => {
            // SAFETY: `out` is non-null and the caller guarantees it is writable.
            unsafe {
                *out = SpinorbRenorm {
                    diag_up: SpinorbComplex::from_c64(v.diag_up),
                    diag_down: SpinorbComplex::from_c64(v.diag_down),
                };
            }
            SPINORB_OK
        }
        Err(e) => store_error(&e),
    }
}

/// Tabulates the energy levels of the magnetic spin-orbit model, ascending,
/// from oscillator indices `0..=n_max`.
///
/// The total number of levels is written to `*out_len`; the first
/// `min(*out_len, cap)` of them are copied into `energies`. Call with
/// `cap == 0` (and `energies` null) to query the size first. Requires a
/// nonzero field and coupling (`SPINORB_ERR_DOMAIN` otherwise).
///
/// # Safety
/// `model` must be a live handle from [`spinorb_model_new`]; `energies` must
/// be valid for `cap` double writes (null only with `cap == 0`); `out_len`
/// must be valid for a size write.
#[no_mangle]
pub unsafe extern "C" fn spinorb_levels(
    model: *const SpinorbModel,
    n_max: u32,
    energies: *mut f64,
    cap: usize,
    out_len: *mut usize,
) -> c_int {
    // SAFETY: forwarded caller contract.
    let Some(handle) = (unsafe { deref_model(model) }) else {
        return argument_error("spinorb_levels: model handle is null");
    };
    if out_len.is_null() {
        return argument_error("spinorb_levels: out_len pointer is null");
    }
    if energies.is_null() && cap > 0 {
        return argument_error("spinorb_levels: energies is null but cap is nonzero");
    }
    match spin_orbit_levels(&handle.params, n_max) {
        Ok(table) => {
            let all = table.energies();
            let n = all.len().min(cap);
            // SAFETY: `energies` holds `cap >= n` writable doubles and
            // `out_len` is non-null, both per the caller contract (`energies`
            // may be null only when nothing is copied).
            unsafe {
                if n > 0 {
                    std::ptr::copy_nonoverlapping(all.as_ptr(), energies, n);
                }
                *out_len = all.len();
            }
            SPINORB_OK
        }
        Err(e) => store_error(&e),
    }
}
