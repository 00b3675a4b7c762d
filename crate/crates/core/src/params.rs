//! Dimensionless comb parameters.
//!
//! All quantities follow the Compton-wavelength scaling: lengths in units of
//! hbar/(mc), energies in units of mc^2/2, so the Schrodinger operator is
//! `-d^2/dx^2 + sum_n [w0 delta(x - na) + 2 w1 delta'(x - na)]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance from `w1 = +-1` below which a delta-prime coupling counts as opaque.
pub const OPAQUE_TOL: f64 = 1e-9;

pub(crate) fn is_critical(w1: f64) -> bool {
    (w1 - 1.0).abs() < OPAQUE_TOL || (w1 + 1.0).abs() < OPAQUE_TOL
}

fn finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be finite, got {x}")))
    }
}

/// One delta/delta-prime node per lattice site.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneSpecies {
    pub w0: f64,
    pub w1: f64,
    pub a: f64,
}

impl OneSpecies {
    pub fn new(w0: f64, w1: f64, a: f64) -> Result<Self> {
        finite("w0", w0)?;
        finite("w1", w1)?;
        finite("a", a)?;
        if a <= 0.0 {
            return Err(Error::InvalidParameter(format!("a must be > 0, got {a}")));
        }
        Ok(Self { w0, w1, a })
    }

    pub fn is_opaque(&self) -> bool {
        is_critical(self.w1)
    }
}

/// Two nodes per cell: `(w0, w1)` at `-d/2` and `(v0, v1)` at `+d/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoSpecies {
    pub w0: f64,
    pub w1: f64,
    pub v0: f64,
    pub v1: f64,
    pub d: f64,
    pub a: f64,
}

impl TwoSpecies {
    pub fn new(w0: f64, w1: f64, v0: f64, v1: f64, d: f64, a: f64) -> Result<Self> {
        for (name, x) in [("w0", w0), ("w1", w1), ("v0", v0), ("v1", v1), ("d", d), ("a", a)] {
            finite(name, x)?;
        }
        if a <= 0.0 {
            return Err(Error::InvalidParameter(format!("a must be > 0, got {a}")));
        }
        if !(d > 0.0 && d < a) {
            return Err(Error::InvalidParameter(format!("displacement must satisfy 0 < d < a, got d = {d}, a = {a}")));
        }
        Ok(Self { w0, w1, v0, v1, d, a })
    }

    pub fn is_opaque(&self) -> bool {
        is_critical(self.w1) || is_critical(self.v1)
    }
}

/// Either comb, for callers that pick the species count at run time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "species", rename_all = "snake_case")]
pub enum Comb {
    One(OneSpecies),
    Two(TwoSpecies),
}

impl Comb {
    pub fn lattice_spacing(&self) -> f64 {
        match self {
            Comb::One(p) => p.a,
            Comb::Two(p) => p.a,
        }
    }

    pub fn is_opaque(&self) -> bool {
        match self {
            Comb::One(p) => p.is_opaque(),
            Comb::Two(p) => p.is_opaque(),
        }
    }
}

impl From<OneSpecies> for Comb {
    fn from(p: OneSpecies) -> Self {
        Comb::One(p)
    }
}

impl From<TwoSpecies> for Comb {
    fn from(p: TwoSpecies) -> Self {
        Comb::Two(p)
    }
}

/// Complex wavenumber with `eps = k^2`.
///
/// Positive energies sit on the nonnegative real axis, negative energies on
/// the positive imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Momentum(Complex64);

impl Momentum {
    pub fn from_energy(epsilon: f64) -> Self {
        if epsilon >= 0.0 {
            Momentum(Complex64::new(epsilon.sqrt(), 0.0))
        } else {
            Momentum(Complex64::new(0.0, (-epsilon).sqrt()))
        }
    }

    /// Real momentum `k >= 0`.
    pub fn real(k: f64) -> Result<Self> {
        if k >= 0.0 && k.is_finite() {
            Ok(Momentum(Complex64::new(k, 0.0)))
        } else {
            Err(Error::InvalidParameter(format!("real momentum must be finite and >= 0, got {k}")))
        }
    }

    /// Imaginary momentum `k = i kappa`, `kappa >= 0`.
    pub fn imaginary(kappa: f64) -> Result<Self> {
        if kappa >= 0.0 && kappa.is_finite() {
            Ok(Momentum(Complex64::new(0.0, kappa)))
        } else {
            Err(Error::InvalidParameter(format!("imaginary momentum must be finite and >= 0, got {kappa}")))
        }
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn energy(&self) -> f64 {
        (self.0 * self.0).re
    }

    pub fn is_zero(&self) -> bool {
        self.0 == Complex64::new(0.0, 0.0)
    }

    pub fn is_real(&self) -> bool {
        self.0.im == 0.0
    }
}
