use std::ffi::CStr;
use std::ptr;

use hybridcomb_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(hc_last_error()) }.to_string_lossy().into_owned()
}

fn one(w0: f64, w1: f64) -> *mut HcComb {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { hc_comb_new_one(w0, w1, 1.0, &mut c) }, HcStatus::Ok);
    c
}

#[test]
fn closed_form_agrees_with_transfer_matrix() {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { hc_comb_new_two(-5.0, 0.2, 5.0, 0.0, 1.0 / 3.0, 1.0, &mut c) }, HcStatus::Ok);
    for i in 0..200 {
        let eps = -20.0 + 0.5 * i as f64;
        let (mut f, mut m) = (0.0, 0.0);
        unsafe {
            assert_eq!(hc_band_function(c, eps, &mut f), HcStatus::Ok);
            assert_eq!(hc_transfer_half_trace(c, eps, &mut m), HcStatus::Ok);
        }
        assert!((f - m).abs() <= 1e-10 * f.abs().max(1.0));
    }
    unsafe { hc_comb_free(c) };
}

#[test]
fn band_list_round_trip() {
    let c = one(-5.0, 0.5);
    let mut list = ptr::null_mut();
    assert_eq!(unsafe { hc_bands(c, f64::NAN, 40.0, 9, &mut list) }, HcStatus::Ok);
    let n = unsafe { hc_band_list_len(list) };
    assert_eq!(n, 2);
    let mut b = HcBand {
        index: 99,
        lower: 0.0,
        upper: 0.0,
        lower_kind: HcEdgeKind::Plus,
        upper_kind: HcEdgeKind::Plus,
        curvature_sign: 0,
        n_samples: 0,
    };
    assert_eq!(unsafe { hc_band_list_get(list, 0, &mut b) }, HcStatus::Ok);
    assert_eq!(b.index, 0);
    assert!(b.lower < b.upper && b.upper < 0.0);
    assert_eq!(b.n_samples, 9);
    assert_eq!(b.curvature_sign, 1);

    let (mut q, mut e) = ([0.0; 9], [0.0; 9]);
    assert_eq!(unsafe { hc_band_list_samples(list, 0, q.as_mut_ptr(), e.as_mut_ptr(), 9) }, HcStatus::Ok);
    assert_eq!(q[0], 0.0);
    assert_eq!(e[0], b.lower);
    assert_eq!(e[8], b.upper);
    assert_eq!(unsafe { hc_band_list_samples(list, 0, q.as_mut_ptr(), e.as_mut_ptr(), 8) }, HcStatus::BufferTooSmall);
    assert_eq!(unsafe { hc_band_list_get(list, 2, &mut b) }, HcStatus::OutOfRange);
    assert!(last_error().contains("band 2"));
    unsafe {
        hc_band_list_free(list);
        hc_comb_free(c);
    }
}

#[test]
fn error_codes() {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { hc_comb_new_one(0.0, 0.0, -1.0, &mut c) }, HcStatus::InvalidParameter);
    assert!(c.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { hc_comb_new_one(0.0, 0.0, 1.0, ptr::null_mut()) }, HcStatus::NullPointer);

    let opaque = one(2.0, 1.0);
    let mut out = 0.0;
    assert_eq!(unsafe { hc_band_function(opaque, 1.0, &mut out) }, HcStatus::OpaqueRegime);
    let mut list = ptr::null_mut();
    assert_eq!(unsafe { hc_bands(opaque, f64::NAN, 10.0, 4, &mut list) }, HcStatus::OpaqueRegime);
    assert_eq!(unsafe { hc_band_function(ptr::null(), 1.0, &mut out) }, HcStatus::NullPointer);
    assert_eq!(unsafe { hc_band_list_len(ptr::null()) }, 0);
    unsafe {
        hc_comb_free(opaque);
        hc_comb_free(ptr::null_mut());
        hc_band_list_free(ptr::null_mut());
    }

    let free = one(0.0, 0.0);
    assert_eq!(unsafe { hc_density_of_states(free, 1.0, &mut out) }, HcStatus::Ok);
    assert!(last_error().is_empty());
    assert!((out - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-12);
    unsafe { hc_comb_free(free) };
}

#[test]
fn discrete_spectrum() {
    let mut roots = [0.0; 3];
    assert_eq!(unsafe { hc_discrete_spectrum(1e9, 1.0, 1.0, 3, roots.as_mut_ptr()) }, HcStatus::Ok);
    for (n, r) in roots.iter().enumerate() {
        let exact = ((n + 1) as f64 * std::f64::consts::PI).powi(2);
        assert!((r - exact).abs() / exact < 1e-7);
    }
    assert_eq!(unsafe { hc_discrete_spectrum(1.0, 0.5, 1.0, 3, roots.as_mut_ptr()) }, HcStatus::InvalidParameter);
    assert_eq!(unsafe { hc_discrete_spectrum(1.0, 1.0, 1.0, 0, ptr::null_mut()) }, HcStatus::Ok);
}
