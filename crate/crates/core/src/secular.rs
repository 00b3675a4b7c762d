//! The band function `F(eps)` of the Bloch condition `cos(q a) = F(eps)`.
//!
//! Three routes are provided: the generic expression in terms of scattering
//! amplitudes, and the closed forms for the one- and two-species combs. The
//! trace/determinant form `tr(S) cos(qa) = e^{-iak} + det(S) e^{iak}` is the
//! same identity as the generic route and is not evaluated separately.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{Comb, Momentum, OneSpecies, TwoSpecies};
use crate::scattering::{self, ScatteringAmplitudes, POLE_TOL};
use crate::wave::Wave;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecularValue {
    pub epsilon: f64,
    pub value: f64,
    /// `dF/deps`; absent for the generic route.
    pub derivative: Option<f64>,
    pub imag_residual: f64,
}

impl SecularValue {
    pub fn is_allowed(&self) -> bool {
        self.value.abs() <= 1.0
    }

    pub(crate) fn slope(&self) -> f64 {
        self.derivative.unwrap_or(f64::NAN)
    }
}

/// A periodic comb with a computable band function.
pub trait Lattice {
    fn lattice_spacing(&self) -> f64;
    fn is_opaque(&self) -> bool;
    fn secular(&self, epsilon: f64) -> Result<SecularValue>;
    fn amplitudes(&self, k: Momentum) -> Result<ScatteringAmplitudes>;
}

/// f(w1) = (1 + w1^2) / (1 - w1^2)
pub fn f_factor(w1: f64) -> f64 {
    (1.0 + w1 * w1) / (1.0 - w1 * w1)
}

/// h(w1) = 1 / (1 + w1^2)
pub fn h_factor(w1: f64) -> f64 {
    1.0 / (1.0 + w1 * w1)
}

pub fn secular_generic(k: Momentum, s: &ScatteringAmplitudes, a: f64) -> Result<SecularValue> {
    if s.t.norm() < POLE_TOL {
        return Err(Error::OpaqueRegime);
    }
    let i = Complex64::new(0.0, 1.0);
    let kk = k.value();
    let f = ((i * a * kk).exp() * (s.t * s.t - s.r_left * s.r_right) + (-i * a * kk).exp()) / (2.0 * s.t);
    Ok(SecularValue { epsilon: k.energy(), value: f.re, derivative: None, imag_residual: f.im.abs() })
}

pub fn secular_one_species(epsilon: f64, p: &OneSpecies) -> Result<SecularValue> {
    if p.is_opaque() {
        return Err(Error::OpaqueRegime);
    }
    let w = Wave::new(epsilon, p.a);
    let f = f_factor(p.w1);
    // f * (a w0 h / 2) * sin(ka)/(ka) = w0 / (2 (1 - w1^2)) * sin(ka)/k
    let beta_half = 0.5 * p.w0 / (1.0 - p.w1 * p.w1);
    Ok(SecularValue {
        epsilon,
        value: f * w.c + beta_half * w.s,
        derivative: Some(f * w.dc + beta_half * w.ds),
        imag_residual: w.imag,
    })
}

pub fn secular_two_species(epsilon: f64, p: &TwoSpecies) -> Result<SecularValue> {
    if p.is_opaque() {
        return Err(Error::OpaqueRegime);
    }
    let TwoSpecies { w0, w1, v0, v1, d, a } = *p;
    let (hw, hv) = (h_factor(w1), h_factor(v1));
    let hh = hw * hv;
    let ff = f_factor(w1) * f_factor(v1);

    let full = Wave::new(epsilon, a);
    let skew = Wave::new(epsilon, a - 2.0 * d);
    let near = Wave::new(epsilon, d);
    let far = Wave::new(epsilon, a - d);

    let c_sin_a = 0.5 * (w0 * hw + v0 * hv);
    let c_sin_skew = (v0 * w1 - v1 * w0) * hh;
    let c_cos_skew = 4.0 * w1 * v1 * hh;
    // (cos(k(a-2d)) - cos(ka)) / k^2 = 2 sin(k(a-d))/k * sin(kd)/k
    let c_prod = 0.5 * w0 * v0 * hh;

    let bracket = c_sin_a * full.s + c_sin_skew * skew.s + full.c + c_cos_skew * skew.c + c_prod * far.s * near.s;
    let dbracket = c_sin_a * full.ds
        + c_sin_skew * skew.ds
        + full.dc
        + c_cos_skew * skew.dc
        + c_prod * (far.ds * near.s + far.s * near.ds);
    let imag = [full.imag, skew.imag, near.imag, far.imag].into_iter().fold(0.0, f64::max);
    Ok(SecularValue { epsilon, value: ff * bracket, derivative: Some(ff * dbracket), imag_residual: imag })
}

/// `|dF_closed - central difference|` at `epsilon`.
pub fn secular_derivative_check<L: Lattice + ?Sized>(epsilon: f64, p: &L, h: f64) -> Result<f64> {
    let center = p.secular(epsilon)?;
    let hi = p.secular(epsilon + h)?.value;
    let lo = p.secular(epsilon - h)?.value;
    Ok((center.slope() - (hi - lo) / (2.0 * h)).abs())
}

impl Lattice for OneSpecies {
    fn lattice_spacing(&self) -> f64 {
        self.a
    }
    fn is_opaque(&self) -> bool {
        OneSpecies::is_opaque(self)
    }
    fn secular(&self, epsilon: f64) -> Result<SecularValue> {
        secular_one_species(epsilon, self)
    }
    fn amplitudes(&self, k: Momentum) -> Result<ScatteringAmplitudes> {
        scattering::one_species_amplitudes(k, self)
    }
}

impl Lattice for TwoSpecies {
    fn lattice_spacing(&self) -> f64 {
        self.a
    }
    fn is_opaque(&self) -> bool {
        TwoSpecies::is_opaque(self)
    }
    fn secular(&self, epsilon: f64) -> Result<SecularValue> {
        secular_two_species(epsilon, self)
    }
    fn amplitudes(&self, k: Momentum) -> Result<ScatteringAmplitudes> {
        scattering::two_species_amplitudes(k, self)
    }
}

impl Lattice for Comb {
    fn lattice_spacing(&self) -> f64 {
        Comb::lattice_spacing(self)
    }
    fn is_opaque(&self) -> bool {
        Comb::is_opaque(self)
    }
    fn secular(&self, epsilon: f64) -> Result<SecularValue> {
        match self {
            Comb::One(p) => secular_one_species(epsilon, p),
            Comb::Two(p) => secular_two_species(epsilon, p),
        }
    }
    fn amplitudes(&self, k: Momentum) -> Result<ScatteringAmplitudes> {
        match self {
            Comb::One(p) => scattering::one_species_amplitudes(k, p),
            Comb::Two(p) => scattering::two_species_amplitudes(k, p),
        }
    }
}
