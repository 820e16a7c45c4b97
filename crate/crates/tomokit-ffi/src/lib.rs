//! C ABI for tomokit.
//!
//! Conventions: every function returns a `TkStatus`; results come back
//! through out-pointers. Objects are opaque handles created by `*_new`
//! constructors and released with the matching `*_free`. The most recent
//! error message for the calling thread is available through
//! `tomokit_last_error_message` (free it with `tomokit_string_free`).
//!
//! States are built from the same spec strings the CLI uses, e.g.
//! `fock:n=1`, `coherent:re=1,im=0`, `thermal:nbar=0.5`,
//! `cgauss:sq=0.01,sp=0.01`, and spin specs like `bell`, `ghz`,
//! `mixhaar:N=3,seed=7`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::Path;

use tomokit::entropy;
use tomokit::error::Error;
use tomokit::fidelity::{fidelity_from_tomograms, DEFAULT_LAMBDA_MAX};
use tomokit::grid::Grid1D;
use tomokit::haar::{haar_unitary, seeded_rng};
use tomokit::recon::{classify_tomogram, DEFAULT_CLASS_CUTOFF, DEFAULT_CLASS_TOLERANCE};
use tomokit::spec::{parse_cv_state, parse_spin_state};
use tomokit::spin::{group_average_entropy, qft_inequality_check, GroupAverageTarget};
use tomokit::tomo::{OpticalTomogram, Quadrature, SymplecticTomogram};

/// Result code of every tomokit call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TkStatus {
    /// Success.
    TkOk = 0,
    /// A required pointer argument was null.
    TkNullPointer = 1,
    /// A string argument was not valid UTF-8.
    TkUtf8 = 2,
    /// Invalid argument (parse error, out-of-range parameter, shape
    /// mismatch).
    TkInvalidArgument = 3,
    /// Numerical failure (decay precondition, eigensolver refutation).
    TkNumerical = 4,
    /// File input/output failure.
    TkIo = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let cstring = CString::new(message).unwrap_or_else(|_| CString::new("error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn status_of(err: &Error) -> TkStatus {
    match err {
        Error::NonDecaying(_) | Error::NumericalFailure(_) => TkStatus::TkNumerical,
        Error::Io(_) => TkStatus::TkIo,
        _ => TkStatus::TkInvalidArgument,
    }
}

fn fail(err: Error) -> TkStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, TkStatus> {
    if ptr.is_null() {
        set_error("null string argument".into());
        return Err(TkStatus::TkNullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8".into());
        TkStatus::TkUtf8
    })
}

macro_rules! out_ptr {
    ($ptr:expr) => {{
        if $ptr.is_null() {
            set_error("null output pointer".into());
            return TkStatus::TkNullPointer;
        }
        $ptr
    }};
}

macro_rules! handle {
    ($ptr:expr) => {{
        if $ptr.is_null() {
            set_error("null handle".into());
            return TkStatus::TkNullPointer;
        }
        &*$ptr
    }};
}

/// Opaque continuous-variable state handle (wraps its symplectic tomogram
/// evaluator).
pub struct TkState {
    tomo: SymplecticTomogram,
}

/// Opaque optical tomogram handle.
pub struct TkOptical {
    inner: OpticalTomogram,
}

/// Classification record of a tomogram.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TkClassification {
    /// 1 when the inverse Radon transform stays nonnegative.
    pub classical: i32,
    /// 1 when the reconstructed density matrix is positive semidefinite.
    pub quantum: i32,
    pub min_phase_space_value: f64,
    pub min_density_eigenvalue: f64,
}

/// Fidelity extracted from two optical tomograms.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TkFidelity {
    pub fidelity: f64,
    pub im_residual: f64,
    /// 1 when 0 <= F <= 1 within 1e-3.
    pub bounds_ok: i32,
}

/// Haar-average entropy report.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TkHaarAverage {
    pub mean: f64,
    /// Standard error of the mean. (Named to dodge the C stdio macro.)
    pub std_error: f64,
    pub bound_residual: f64,
    pub column_mean: f64,
    pub column_std_error: f64,
    pub column_residual: f64,
}

/// Version string of the library; static storage, do not free.
#[no_mangle]
pub extern "C" fn tomokit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Most recent error message on this thread, or null when none. The caller
/// owns the returned string and must release it with `tomokit_string_free`.
#[no_mangle]
pub extern "C" fn tomokit_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a tomokit function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn tomokit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build a continuous-variable state from a spec string.
///
/// # Safety
/// `spec` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tomokit_state_new(
    spec: *const c_char,
    out: *mut *mut TkState,
) -> TkStatus {
    let out = out_ptr!(out);
    let spec = match read_str(spec) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let tomo = match parse_cv_state(spec).and_then(|s| s.tomogram()) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    *out = Box::into_raw(Box::new(TkState { tomo }));
    TkStatus::TkOk
}

/// # Safety
/// `state` must come from `tomokit_state_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tomokit_state_free(state: *mut TkState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Symplectic tomogram density M(X, mu, nu).
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tomokit_symplectic_eval(
    state: *const TkState,
    x: f64,
    mu: f64,
    nu: f64,
    out: *mut f64,
) -> TkStatus {
    let state = handle!(state);
    let out = out_ptr!(out);
    match state.tomo.evaluate(x, mu, nu) {
        Ok(v) => {
            *out = v;
            TkStatus::TkOk
        }
        Err(e) => fail(e),
    }
}

/// Raw moment of the position (which = 0) or momentum (which = 1)
/// distribution.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tomokit_state_moment(
    state: *const TkState,
    order: u32,
    which: i32,
    out: *mut f64,
) -> TkStatus {
    let state = handle!(state);
    let out = out_ptr!(out);
    let quad = match which {
        0 => Quadrature::Position,
        1 => Quadrature::Momentum,
        _ => {
            set_error(format!("quadrature selector {which} is not 0 or 1"));
            return TkStatus::TkInvalidArgument;
        }
    };
    match state.tomo.moment(order, quad) {
        Ok(v) => {
            *out = v;
            TkStatus::TkOk
        }
        Err(e) => fail(e),
    }
}

/// Shannon entropic-uncertainty residual S(theta) + S(theta + pi/2) -
/// ln(pi e).
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tomokit_entropic_ur_residual(
    state: *const TkState,
    theta: f64,
    out: *mut f64,
) -> TkStatus {
    let state = handle!(state);
    let out = out_ptr!(out);
    match entropy::entropic_ur_check(&state.tomo, &[theta]) {
        Ok(entries) => {
            *out = entries[0].residual;
            TkStatus::TkOk
        }
        Err(e) => fail(e),
    }
}

/// Renyi conjugate-pair residual at angle theta for q in (0, 1).
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tomokit_renyi_ur_residual(
    state: *const TkState,
    theta: f64,
    q: f64,
    out: *mut f64,
) -> TkStatus {
    let state = handle!(state);
    let out = out_ptr!(out);
    match entropy::renyi_ur_residual(&state.tomo, theta, q) {
        Ok(v) => {
            *out = v;
            TkStatus::TkOk
        }
        Err(e) => fail(e),
    }
}

/// Classify a state's tomogram as classical / quantum / both / neither.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tomokit_classify(
    state: *const TkState,
    out: *mut TkClassification,
) -> TkStatus {
    let state = handle!(state);
    let out = out_ptr!(out);
    match classify_tomogram(&state.tomo, DEFAULT_CLASS_TOLERANCE, DEFAULT_CLASS_CUTOFF) {
        Ok(c) => {
            *out = TkClassification {
                classical: c.classical as i32,
                quantum: c.quantum as i32,
                min_phase_space_value: c.min_phase_space_value,
                min_density_eigenvalue: c.min_density_eigenvalue,
            };
            TkStatus::TkOk
        }
        Err(e) => fail(e),
    }
}

/// Compute the optical tomogram of a state on `ntheta` angles in [0, 2 pi).
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tomokit_optical_new(
    state: *const TkState,
    ntheta: usize,
    out: *mut *mut TkOptical,
) -> TkStatus {
    let state = handle!(state);
    let out = out_ptr!(out);
    let thetagrid = match Grid1D::new(0.0, std::f64::consts::TAU, ntheta) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    match state.tomo.optical(thetagrid) {
        Ok(w) => {
            *out = Box::into_raw(Box::new(TkOptical { inner: w }));
            TkStatus::TkOk
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `optical` must come from a tomokit constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tomokit_optical_free(optical: *mut TkOptical) {
    if !optical.is_null() {
        drop(Box::from_raw(optical));
    }
}

/// Grid shape of an optical tomogram.
///
/// # Safety
/// `optical` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn tomokit_optical_shape(
    optical: *const TkOptical,
    nx: *mut usize,
    ntheta: *mut usize,
) -> TkStatus {
    let optical = handle!(optical);
    let nx = out_ptr!(nx);
    let ntheta = out_ptr!(ntheta);
    *nx = optical.inner.xgrid().count();
    *ntheta = optical.inner.thetagrid().count();
    TkStatus::TkOk
}

/// Stored density w(X, theta) at grid indices.
///
/// # Safety
/// `optical` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tomokit_optical_value(
    optical: *const TkOptical,
    itheta: usize,
    ix: usize,
    out: *mut f64,
) -> TkStatus {
    let optical = handle!(optical);
    let out = out_ptr!(out);
    if itheta >= optical.inner.thetagrid().count() || ix >= optical.inner.xgrid().count() {
        set_error(format!("index ({itheta}, {ix}) out of range"));
        return TkStatus::TkInvalidArgument;
    }
    *out = optical.inner.row(itheta)[ix];
    TkStatus::TkOk
}

/// Write an optical tomogram in the `tomokit optical v1` CSV format.
///
/// # Safety
/// `optical` must be a live handle; `path` must be a valid string.
#[no_mangle]
pub unsafe extern "C" fn tomokit_optical_save(
    optical: *const TkOptical,
    path: *const c_char,
) -> TkStatus {
    let optical = handle!(optical);
    let path = match read_str(path) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match optical.inner.save(Path::new(path)) {
        Ok(()) => TkStatus::TkOk,
        Err(e) => fail(e),
    }
}

/// Load an optical tomogram from the `tomokit optical v1` CSV format.
///
/// # Safety
/// `path` must be a valid string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tomokit_optical_load(
    path: *const c_char,
    out: *mut *mut TkOptical,
) -> TkStatus {
    let out = out_ptr!(out);
    let path = match read_str(path) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match OpticalTomogram::load(Path::new(path)) {
        Ok(w) => {
            *out = Box::into_raw(Box::new(TkOptical { inner: w }));
            TkStatus::TkOk
        }
        Err(e) => fail(e),
    }
}

/// Fidelity between the states behind two optical tomograms.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tomokit_fidelity(
    a: *const TkOptical,
    b: *const TkOptical,
    out: *mut TkFidelity,
) -> TkStatus {
    let a = handle!(a);
    let b = handle!(b);
    let out = out_ptr!(out);
    match fidelity_from_tomograms(&a.inner, &b.inner, DEFAULT_LAMBDA_MAX) {
        Ok(f) => {
            *out = TkFidelity {
                fidelity: f.fidelity,
                im_residual: f.im_residual,
                bounds_ok: f.bounds_ok as i32,
            };
            TkStatus::TkOk
        }
        Err(e) => fail(e),
    }
}

/// Haar-average Shannon tomographic entropy of a spin state against the
/// (1/2) ln N group-average bound.
///
/// # Safety
/// `spin_spec` must be a valid string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tomokit_haar_average(
    spin_spec: *const c_char,
    samples: usize,
    seed: u64,
    out: *mut TkHaarAverage,
) -> TkStatus {
    let out = out_ptr!(out);
    let spec = match read_str(spin_spec) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let rho = match parse_spin_state(spec) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    match group_average_entropy(&rho, GroupAverageTarget::Shannon, samples, seed) {
        Ok(rep) => {
            *out = TkHaarAverage {
                mean: rep.mean,
                std_error: rep.stderr,
                bound_residual: rep.bound_residual,
                column_mean: rep.column_mean,
                column_std_error: rep.column_stderr,
                column_residual: rep.column_residual,
            };
            TkStatus::TkOk
        }
        Err(e) => fail(e),
    }
}

/// Smallest QFT conjugate-pair inequality residual over Haar-random frames
/// at (alpha, beta) = (2, 2/3); nonnegative for genuine states.
///
/// # Safety
/// `spin_spec` must be a valid string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tomokit_spin_qft_min_residual(
    spin_spec: *const c_char,
    samples: usize,
    seed: u64,
    out: *mut f64,
) -> TkStatus {
    let out = out_ptr!(out);
    let spec = match read_str(spin_spec) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let rho = match parse_spin_state(spec) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut rng = seeded_rng(seed);
    let mut min_res = f64::INFINITY;
    for _ in 0..samples.max(1) {
        let u = haar_unitary(rho.dim(), &mut rng);
        match qft_inequality_check(&rho, &u, 2.0, 2.0 / 3.0) {
            Ok(rep) => min_res = min_res.min(rep.min_residual()),
            Err(e) => return fail(e),
        }
    }
    *out = min_res;
    TkStatus::TkOk
}

/// Run the acceptance suite; returns the number of failing criteria
/// (0 on a healthy build, negative on an execution error).
#[no_mangle]
pub extern "C" fn tomokit_selftest(seed: u64) -> i32 {
    match tomokit::selftest::run_all(seed) {
        Ok(results) => results.iter().filter(|r| !r.passed).count() as i32,
        Err(e) => {
            set_error(e.to_string());
            -1
        }
    }
}
