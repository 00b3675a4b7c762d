//! Conversion from physical units (eV, angstrom) to dimensionless couplings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::OneSpecies;

/// hbar c in eV angstrom.
pub const HBAR_C: f64 = 1973.27;
/// hbar^2 / m_e in eV angstrom^2.
pub const HBAR2_OVER_ME: f64 = 7.62;
/// Reduced Compton wavelength of the electron, angstrom.
pub const ELECTRON_COMPTON: f64 = 3.86e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalUnitsSpec {
    /// delta strength, eV angstrom
    pub mu: f64,
    /// delta-prime strength, eV angstrom^2
    pub lambda: f64,
    /// lattice spacing, angstrom
    pub y0: f64,
    /// particle mass in electron masses
    pub mass: f64,
}

pub fn to_dimensionless(spec: &PhysicalUnitsSpec) -> Result<OneSpecies> {
    if !(spec.mass > 0.0) {
        return Err(Error::NonPositiveInput("mass"));
    }
    if !(spec.y0 > 0.0) {
        return Err(Error::NonPositiveInput("y0"));
    }
    let w0 = 2.0 * spec.mu / HBAR_C;
    let w1 = spec.lambda * spec.mass / HBAR2_OVER_ME;
    let a = spec.y0 * spec.mass / ELECTRON_COMPTON;
    OneSpecies::new(w0, w1, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn electron(mu: f64, lambda: f64, y0: f64) -> PhysicalUnitsSpec {
        PhysicalUnitsSpec { mu, lambda, y0, mass: 1.0 }
    }

    #[test]
    fn electron_examples() {
        let p = to_dimensionless(&electron(0.0, 7.62, 1.0)).unwrap();
        assert!((p.w1 - 1.0).abs() < 1e-12);
        assert_eq!(p.w0, 0.0);
        assert!((p.a - 259.067).abs() < 1e-2);
        let p = to_dimensionless(&electron(1973.27, 0.0, 2.0)).unwrap();
        assert!((p.w0 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn heavier_particle() {
        let spec = PhysicalUnitsSpec { mu: 1.0, lambda: 7.62, y0: 1.0, mass: 2.0 };
        let p = to_dimensionless(&spec).unwrap();
        assert!((p.w1 - 2.0).abs() < 1e-12);
        assert!((p.a - 2.0 / ELECTRON_COMPTON).abs() < 1e-9);
    }

    #[test]
    fn rejects_nonpositive() {
        assert_eq!(
            to_dimensionless(&PhysicalUnitsSpec { mass: 0.0, ..electron(1.0, 1.0, 1.0) }),
            Err(Error::NonPositiveInput("mass"))
        );
        assert_eq!(to_dimensionless(&electron(1.0, 1.0, -1.0)), Err(Error::NonPositiveInput("y0")));
    }
}
