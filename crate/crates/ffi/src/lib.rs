//! C ABI for `hybridcomb`.
//!
//! Every fallible call returns an [`HcStatus`]; results go through out
//! pointers. The message of the most recent failure on the calling thread is
//! available from [`hc_last_error`]. Handles are owned by the caller and must
//! be released with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hybridcomb::bands::{default_eps_min, discrete_spectrum_critical, enumerate_bands};
use hybridcomb::dos::density_of_states;
use hybridcomb::transfer::{monodromy_one_species, monodromy_two_species};
use hybridcomb::{Band, Comb, EdgeKind, Error, Lattice, OneSpecies, ScanOptions, TwoSpecies};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    OpaqueRegime = 3,
    OutOfRange = 4,
    BufferTooSmall = 5,
    Numerical = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcEdgeKind {
    /// band function = +1, q = 0
    Plus = 0,
    /// band function = -1, q = pi/a
    Minus = 1,
}

/// One allowed band, without its dispersion samples.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HcBand {
    pub index: usize,
    pub lower: f64,
    pub upper: f64,
    pub lower_kind: HcEdgeKind,
    pub upper_kind: HcEdgeKind,
    pub curvature_sign: i8,
    pub n_samples: usize,
}

/// Opaque comb handle.
pub struct HcComb(Comb);

/// Opaque list of bands.
pub struct HcBandList(Vec<Band>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HcStatus {
    match e {
        Error::OpaqueRegime => HcStatus::OpaqueRegime,
        Error::PoleHit { .. }
        | Error::SingularConversion
        | Error::ScanTooCoarse { .. }
        | Error::QuadratureFailure { .. } => HcStatus::Numerical,
        _ => HcStatus::InvalidParameter,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (HcStatus, String)>) -> HcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HcStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HcStatus::Panic
        }
    }
}

fn lib(e: Error) -> (HcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (HcStatus, String) {
    (HcStatus::NullPointer, format!("{name} is null"))
}

unsafe fn comb_ref<'a>(comb: *const HcComb) -> Result<&'a Comb, (HcStatus, String)> {
    comb.as_ref().map(|c| &c.0).ok_or_else(|| null("comb"))
}

unsafe fn write<T>(out: *mut T, value: T, name: &str) -> Result<(), (HcStatus, String)> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// One-species comb with couplings `w0`, `w1` and spacing `a`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hc_comb_new_one(w0: f64, w1: f64, a: f64, out: *mut *mut HcComb) -> HcStatus {
    guard(|| {
        let p = OneSpecies::new(w0, w1, a).map_err(lib)?;
        write(out, Box::into_raw(Box::new(HcComb(Comb::One(p)))), "out")
    })
}

/// Two-species comb; the second node sits at distance `d` from the first.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hc_comb_new_two(
    w0: f64,
    w1: f64,
    v0: f64,
    v1: f64,
    d: f64,
    a: f64,
    out: *mut *mut HcComb,
) -> HcStatus {
    guard(|| {
        let p = TwoSpecies::new(w0, w1, v0, v1, d, a).map_err(lib)?;
        write(out, Box::into_raw(Box::new(HcComb(Comb::Two(p)))), "out")
    })
}

/// # Safety
/// `comb` must come from `hc_comb_new_*` and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hc_comb_free(comb: *mut HcComb) {
    if !comb.is_null() {
        drop(Box::from_raw(comb));
    }
}

/// Band function `cos(qa)` at energy `epsilon`, from the closed form.
///
/// # Safety
/// `comb` must be a live handle, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hc_band_function(comb: *const HcComb, epsilon: f64, out: *mut f64) -> HcStatus {
    guard(|| {
        let v = comb_ref(comb)?.secular(epsilon).map_err(lib)?;
        write(out, v.value, "out")
    })
}

/// Half trace of the cell transfer matrix at `epsilon`.
///
/// # Safety
/// `comb` must be a live handle, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hc_transfer_half_trace(comb: *const HcComb, epsilon: f64, out: *mut f64) -> HcStatus {
    guard(|| {
        let m = match comb_ref(comb)? {
            Comb::One(p) => monodromy_one_species(epsilon, p),
            Comb::Two(p) => monodromy_two_species(epsilon, p),
        }
        .map_err(lib)?;
        write(out, m.half_trace(), "out")
    })
}

/// Density of states per cell at `epsilon`; zero in gaps, infinite on edges.
///
/// # Safety
/// `comb` must be a live handle, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hc_density_of_states(comb: *const HcComb, epsilon: f64, out: *mut f64) -> HcStatus {
    guard(|| {
        let s = density_of_states(epsilon, comb_ref(comb)?).map_err(lib)?;
        write(out, s.g, "out")
    })
}

/// Energy below which the comb has no allowed states.
///
/// # Safety
/// `comb` must be a live handle, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hc_default_eps_min(comb: *const HcComb, out: *mut f64) -> HcStatus {
    guard(|| {
        let comb = comb_ref(comb)?;
        if comb.is_opaque() {
            return Err(lib(Error::OpaqueRegime));
        }
        write(out, default_eps_min(comb), "out")
    })
}

/// Complete bands in `[eps_min, eps_max]`, each with `n_samples` dispersion points.
/// A NaN `eps_min` selects the default lower limit.
///
/// # Safety
/// `comb` must be a live handle, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hc_bands(
    comb: *const HcComb,
    eps_min: f64,
    eps_max: f64,
    n_samples: usize,
    out: *mut *mut HcBandList,
) -> HcStatus {
    guard(|| {
        let comb = comb_ref(comb)?;
        if out.is_null() {
            return Err(null("out"));
        }
        if comb.is_opaque() {
            return Err(lib(Error::OpaqueRegime));
        }
        let lo = if eps_min.is_nan() { default_eps_min(comb) } else { eps_min };
        let bands = enumerate_bands(comb, &ScanOptions::new(lo, eps_max), n_samples).map_err(lib)?;
        write(out, Box::into_raw(Box::new(HcBandList(bands))), "out")
    })
}

/// # Safety
/// `list` must come from `hc_bands` and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hc_band_list_free(list: *mut HcBandList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Number of bands; zero for a null list.
///
/// # Safety
/// `list` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_band_list_len(list: *const HcBandList) -> usize {
    list.as_ref().map_or(0, |l| l.0.len())
}

fn band_of<'a>(list: *const HcBandList, index: usize) -> Result<&'a Band, (HcStatus, String)> {
    let list = unsafe { list.as_ref() }.ok_or_else(|| null("list"))?;
    list.0.get(index).ok_or_else(|| (HcStatus::OutOfRange, format!("band {index} of {}", list.0.len())))
}

fn kind(k: EdgeKind) -> HcEdgeKind {
    match k {
        EdgeKind::Plus => HcEdgeKind::Plus,
        EdgeKind::Minus => HcEdgeKind::Minus,
    }
}

/// # Safety
/// `list` must be a live handle, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hc_band_list_get(list: *const HcBandList, index: usize, out: *mut HcBand) -> HcStatus {
    guard(|| {
        let b = band_of(list, index)?;
        let info = HcBand {
            index: b.index,
            lower: b.lower.epsilon,
            upper: b.upper.epsilon,
            lower_kind: kind(b.lower.kind),
            upper_kind: kind(b.upper.kind),
            curvature_sign: b.curvature_sign,
            n_samples: b.samples.len(),
        };
        write(out, info, "out")
    })
}

/// Copies the dispersion of band `index` into `q` and `epsilon`, each of
/// length `capacity`. Fails with `BufferTooSmall` if `capacity` is less than
/// the band's `n_samples`.
///
/// # Safety
/// `list` must be a live handle; `q` and `epsilon` valid for `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn hc_band_list_samples(
    list: *const HcBandList,
    index: usize,
    q: *mut f64,
    epsilon: *mut f64,
    capacity: usize,
) -> HcStatus {
    guard(|| {
        let b = band_of(list, index)?;
        if q.is_null() || epsilon.is_null() {
            return Err(null("sample buffer"));
        }
        if capacity < b.samples.len() {
            return Err((HcStatus::BufferTooSmall, format!("need {} samples, got {capacity}", b.samples.len())));
        }
        for (i, s) in b.samples.iter().enumerate() {
            q.add(i).write(s.q);
            epsilon.add(i).write(s.epsilon);
        }
        Ok(())
    })
}

/// First `count` eigenvalues of the opaque one-species comb (`|w1| = 1`),
/// ascending, written to `out`.
///
/// # Safety
/// `out` must be valid for `count` writes (may be null when `count` is 0).
#[no_mangle]
pub unsafe extern "C" fn hc_discrete_spectrum(w0: f64, w1: f64, a: f64, count: usize, out: *mut f64) -> HcStatus {
    guard(|| {
        let p = OneSpecies::new(w0, w1, a).map_err(lib)?;
        let roots = discrete_spectrum_critical(&p, count).map_err(lib)?;
        if count > 0 && out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(roots.as_ptr(), out, roots.len());
        Ok(())
    })
}
