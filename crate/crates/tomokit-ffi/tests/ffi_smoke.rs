//! Exercises the C ABI through the exported extern functions: handle
//! lifecycle, error codes, and a few physics values.

use std::ffi::{CStr, CString};
use std::ptr;

use tomokit_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

#[test]
fn version_is_available() {
    let v = tomokit_version();
    assert!(!v.is_null());
    let text = unsafe { CStr::from_ptr(v) }.to_str().unwrap();
    assert!(!text.is_empty());
}

#[test]
fn state_lifecycle_and_evaluation() {
    unsafe {
        let mut state: *mut TkState = ptr::null_mut();
        let status = tomokit_state_new(cstr("fock:n=0").as_ptr(), &mut state);
        assert_eq!(status, TkStatus::TkOk);

        let mut value = 0.0;
        let status = tomokit_symplectic_eval(state, 0.0, 1.0, 0.0, &mut value);
        assert_eq!(status, TkStatus::TkOk);
        let expect = 1.0 / std::f64::consts::PI.sqrt();
        assert!((value - expect).abs() < 1e-6, "M(0,1,0) = {value}");

        let mut var = 0.0;
        assert_eq!(tomokit_state_moment(state, 2, 0, &mut var), TkStatus::TkOk);
        assert!((var - 0.5).abs() < 1e-6);

        let mut residual = 0.0;
        assert_eq!(
            tomokit_entropic_ur_residual(state, 0.7, &mut residual),
            TkStatus::TkOk
        );
        assert!(residual.abs() < 1e-4, "vacuum residual {residual}");

        tomokit_state_free(state);
    }
}

#[test]
fn error_paths_set_messages() {
    unsafe {
        let mut state: *mut TkState = ptr::null_mut();
        let status = tomokit_state_new(cstr("nope:x=1").as_ptr(), &mut state);
        assert_eq!(status, TkStatus::TkInvalidArgument);
        let msg = tomokit_last_error_message();
        assert!(!msg.is_null());
        let text = CStr::from_ptr(msg).to_str().unwrap().to_string();
        assert!(text.contains("unknown state kind"), "{text}");
        tomokit_string_free(msg);

        let mut value = 0.0;
        assert_eq!(
            tomokit_symplectic_eval(ptr::null(), 0.0, 1.0, 0.0, &mut value),
            TkStatus::TkNullPointer
        );
        assert_eq!(
            tomokit_state_new(ptr::null(), &mut state),
            TkStatus::TkNullPointer
        );
    }
}

#[test]
fn classify_fock_one_through_the_abi() {
    unsafe {
        let mut state: *mut TkState = ptr::null_mut();
        assert_eq!(
            tomokit_state_new(cstr("fock:n=1").as_ptr(), &mut state),
            TkStatus::TkOk
        );
        let mut cls = TkClassification {
            classical: -1,
            quantum: -1,
            min_phase_space_value: 0.0,
            min_density_eigenvalue: 0.0,
        };
        assert_eq!(tomokit_classify(state, &mut cls), TkStatus::TkOk);
        assert_eq!(cls.classical, 0);
        assert_eq!(cls.quantum, 1);
        assert!(cls.min_phase_space_value < -0.25);
        tomokit_state_free(state);
    }
}

#[test]
fn optical_roundtrip_and_fidelity() {
    unsafe {
        let mut vac: *mut TkState = ptr::null_mut();
        let mut coh: *mut TkState = ptr::null_mut();
        assert_eq!(
            tomokit_state_new(cstr("fock:n=0").as_ptr(), &mut vac),
            TkStatus::TkOk
        );
        assert_eq!(
            tomokit_state_new(cstr("coherent:re=1,im=0").as_ptr(), &mut coh),
            TkStatus::TkOk
        );

        let mut w_vac: *mut TkOptical = ptr::null_mut();
        let mut w_coh: *mut TkOptical = ptr::null_mut();
        assert_eq!(tomokit_optical_new(vac, 64, &mut w_vac), TkStatus::TkOk);
        assert_eq!(tomokit_optical_new(coh, 64, &mut w_coh), TkStatus::TkOk);

        let mut nx = 0;
        let mut ntheta = 0;
        assert_eq!(
            tomokit_optical_shape(w_vac, &mut nx, &mut ntheta),
            TkStatus::TkOk
        );
        assert_eq!((nx, ntheta), (1024, 64));

        // save + load through the v1 CSV format
        let path = std::env::temp_dir().join(format!("tomokit-ffi-{}.csv", std::process::id()));
        let cpath = cstr(path.to_str().unwrap());
        assert_eq!(tomokit_optical_save(w_vac, cpath.as_ptr()), TkStatus::TkOk);
        let mut loaded: *mut TkOptical = ptr::null_mut();
        assert_eq!(
            tomokit_optical_load(cpath.as_ptr(), &mut loaded),
            TkStatus::TkOk
        );

        let mut fid = TkFidelity {
            fidelity: 0.0,
            im_residual: 0.0,
            bounds_ok: 0,
        };
        assert_eq!(tomokit_fidelity(loaded, w_coh, &mut fid), TkStatus::TkOk);
        assert!(
            (fid.fidelity - (-1.0f64).exp()).abs() < 2e-3,
            "F = {}",
            fid.fidelity
        );
        assert_eq!(fid.bounds_ok, 1);
        assert!(fid.im_residual < 1e-3);

        tomokit_optical_free(w_vac);
        tomokit_optical_free(w_coh);
        tomokit_optical_free(loaded);
        tomokit_state_free(vac);
        tomokit_state_free(coh);
        std::fs::remove_file(&path).ok();
    }
}

#[test]
fn spin_surfaces_through_the_abi() {
    unsafe {
        let mut avg = TkHaarAverage {
            mean: 0.0,
            std_error: 0.0,
            bound_residual: 0.0,
            column_mean: 0.0,
            column_std_error: 0.0,
            column_residual: 0.0,
        };
        assert_eq!(
            tomokit_haar_average(cstr("pure:1,0").as_ptr(), 2000, 5, &mut avg),
            TkStatus::TkOk
        );
        assert!((avg.mean - 0.5).abs() < 0.05, "mean {}", avg.mean);
        assert!(avg.bound_residual > 0.0);

        let mut min_res = 0.0;
        assert_eq!(
            tomokit_spin_qft_min_residual(
                cstr("mixhaar:N=3,seed=4").as_ptr(),
                100,
                11,
                &mut min_res
            ),
            TkStatus::TkOk
        );
        assert!(min_res >= -1e-10, "min residual {min_res}");
    }
}

#[test]
fn generated_header_covers_the_surface() {
    let header = include_str!("../include/tomokit.h");
    for symbol in [
        "tomokit_state_new",
        "tomokit_symplectic_eval",
        "tomokit_classify",
        "tomokit_optical_load",
        "tomokit_fidelity",
        "tomokit_haar_average",
        "tomokit_selftest",
        "TkClassification",
        "TkStatus",
    ] {
        assert!(header.contains(symbol), "header misses {symbol}");
    }
}
