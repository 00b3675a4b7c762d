//! Closed-form scattering data of the single and double delta/delta-prime
//! potentials.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{Momentum, OneSpecies, TwoSpecies};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Denominators smaller than `POLE_TOL * (1 + |k|)` are treated as poles.
pub const POLE_TOL: f64 = 1e-12;

/// Transmission and the two reflection amplitudes at one momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAmplitudes {
    pub t: Complex64,
    pub r_right: Complex64,
    pub r_left: Complex64,
    pub k: Momentum,
}

impl ScatteringAmplitudes {
    /// Residuals of column orthonormality of `[[t, rR], [rL, t]]`.
    pub fn unitarity_residuals(&self) -> [f64; 3] {
        let t2 = self.t.norm_sqr();
        [
            (t2 + self.r_left.norm_sqr() - 1.0).abs(),
            (t2 + self.r_right.norm_sqr() - 1.0).abs(),
            (self.t * self.r_right.conj() + self.r_left * self.t.conj()).norm(),
        ]
    }
}

fn check_pole(k: Momentum, denominator: Complex64) -> Result<()> {
    if denominator.norm() < POLE_TOL * (1.0 + k.value().norm()) {
        let k = k.value();
        return Err(Error::PoleHit { re: k.re, im: k.im });
    }
    Ok(())
}

pub fn one_species_amplitudes(k: Momentum, p: &OneSpecies) -> Result<ScatteringAmplitudes> {
    if k.is_zero() {
        return Err(Error::DegenerateMomentum);
    }
    let kk = k.value();
    let (w0, w1) = (p.w0, p.w1);
    let den = (1.0 + w1 * w1) * kk + I * (w0 / 2.0);
    check_pole(k, den)?;
    Ok(ScatteringAmplitudes {
        t: (1.0 - w1 * w1) * kk / den,
        r_right: -(2.0 * w1 * kk + I * (w0 / 2.0)) / den,
        r_left: (2.0 * w1 * kk - I * (w0 / 2.0)) / den,
        k,
    })
}

/// Amplitudes of the double node `(w0, w1)` at `-d/2`, `(v0, v1)` at `+d/2`.
pub fn two_species_amplitudes(k: Momentum, p: &TwoSpecies) -> Result<ScatteringAmplitudes> {
    if k.is_zero() {
        return Err(Error::DegenerateMomentum);
    }
    let kk = k.value();
    let TwoSpecies { w0, w1, v0, v1, d, .. } = *p;
    let ph = (I * d * kk).exp();
    let ph_inv = (-I * d * kk).exp();

    let delta = ph * ph * (4.0 * kk * v1 + I * v0) * (4.0 * kk * w1 - I * w0)
        + (2.0 * kk * (v1 * v1 + 1.0) + I * v0) * (2.0 * kk * (w1 * w1 + 1.0) + I * w0);
    check_pole(k, delta)?;

    let t = 4.0 * kk * kk * (v1 * v1 - 1.0) * (w1 * w1 - 1.0) / delta;
    let r_right = -(ph_inv * (2.0 * kk * (v1 * v1 + 1.0) + I * v0) * (4.0 * kk * w1 + I * w0)
        + ph * (2.0 * kk * (w1 * w1 + 1.0) - I * w0) * (4.0 * kk * v1 + I * v0))
        / delta;
    let r_left = (ph * (2.0 * kk * (v1 * v1 + 1.0) - I * v0) * (4.0 * kk * w1 - I * w0)
        + ph_inv * (2.0 * kk * (w1 * w1 + 1.0) + I * w0) * (4.0 * kk * v1 - I * v0))
        / delta;
    Ok(ScatteringAmplitudes { t, r_right, r_left, k })
}

/// True iff all three orthonormality residuals are below `tol`.
pub fn check_unitarity(s: &ScatteringAmplitudes, tol: f64) -> Result<bool> {
    if !s.k.is_real() || s.k.is_zero() {
        return Err(Error::NotApplicable);
    }
    Ok(s.unitarity_residuals().iter().all(|r| *r < tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    fn real(k: f64) -> Momentum {
        Momentum::real(k).unwrap()
    }

    #[test]
    fn free_particle_is_transparent() {
        let p = OneSpecies::new(0.0, 0.0, 1.0).unwrap();
        let s = one_species_amplitudes(real(1.0), &p).unwrap();
        assert!(close(s.t, Complex64::new(1.0, 0.0), 1e-15));
        assert!(s.r_right.norm() < 1e-15 && s.r_left.norm() < 1e-15);
        assert!(check_unitarity(&s, 1e-12).unwrap());
    }

    #[test]
    fn critical_coupling_is_opaque() {
        for w0 in [-7.0, 0.0, 3.5] {
            let p = OneSpecies::new(w0, 1.0, 1.0).unwrap();
            let s = one_species_amplitudes(real(1.0), &p).unwrap();
            assert!(s.t.norm() < 1e-15);
            assert!(close(s.r_right, Complex64::new(-1.0, 0.0), 1e-14));
        }
    }

    #[test]
    fn one_species_reference_values() {
        // (1 - w1^2) k / ((1 + w1^2) k + i w0/2) at k=1, w0=-5, w1=0.5:
        // 0.75 / (1.25 - 2.5i) = 0.12 + 0.24i
        let p = OneSpecies::new(-5.0, 0.5, 1.0).unwrap();
        let s = one_species_amplitudes(real(1.0), &p).unwrap();
        assert!(close(s.t, Complex64::new(0.12, 0.24), 1e-14));
        // -(1 - 2.5i)/(1.25 - 2.5i) = -0.96 + 0.08i, (1 + 2.5i)/(1.25 - 2.5i) = -0.64 + 0.72i
        assert!(close(s.r_right, Complex64::new(-0.96, 0.08), 1e-14));
        assert!(close(s.r_left, Complex64::new(-0.64, 0.72), 1e-14));
        let res = s.unitarity_residuals();
        assert!(res.iter().all(|r| *r < 1e-12), "{res:?}");
        assert!(check_unitarity(
            &one_species_amplitudes(real(3.0), &OneSpecies::new(7.0, -0.4, 1.0).unwrap()).unwrap(),
            1e-10
        )
        .unwrap());
    }

    #[test]
    fn asymmetric_reflection() {
        let p = OneSpecies::new(2.0, 0.3, 1.0).unwrap();
        let s = one_species_amplitudes(real(1.5), &p).unwrap();
        assert!((s.r_right - s.r_left).norm() > 1e-3);
    }

    #[test]
    fn perturbed_amplitudes_fail_unitarity() {
        let p = OneSpecies::new(0.0, 0.0, 1.0).unwrap();
        let mut s = one_species_amplitudes(real(1.0), &p).unwrap();
        s.t *= 1.01;
        assert!(!check_unitarity(&s, 1e-10).unwrap());
    }

    #[test]
    fn errors() {
        let p = OneSpecies::new(-2.0, 0.0, 1.0).unwrap();
        assert_eq!(one_species_amplitudes(Momentum::from_energy(0.0), &p), Err(Error::DegenerateMomentum));
        // bound-state pole: k + i w0/2 = 0 at k = i
        assert!(matches!(one_species_amplitudes(Momentum::imaginary(1.0).unwrap(), &p), Err(Error::PoleHit { .. })));
        let s = one_species_amplitudes(Momentum::imaginary(0.5).unwrap(), &p).unwrap();
        assert_eq!(check_unitarity(&s, 1e-10), Err(Error::NotApplicable));
    }

    #[test]
    fn two_species_reduces_to_one_species() {
        let one = OneSpecies::new(-5.0, 0.5, 1.0).unwrap();
        let two = TwoSpecies::new(-5.0, 0.5, 0.0, 0.0, 1.0 / 3.0, 1.0).unwrap();
        for i in 1..200 {
            let k = real(0.05 * i as f64);
            let s1 = one_species_amplitudes(k, &one).unwrap();
            let s2 = two_species_amplitudes(k, &two).unwrap();
            assert!((s1.t - s2.t).norm() < 1e-12);
        }
    }

    #[test]
    fn two_species_critical_and_unitary() {
        let p = TwoSpecies::new(-5.0, 1.0, 5.0, 1.0, 0.4, 1.0).unwrap();
        for k in [0.3, 1.0, 7.0] {
            assert!(two_species_amplitudes(real(k), &p).unwrap().t.norm() < 1e-14);
        }
        let p = TwoSpecies::new(-5.0, 0.2, 5.0, 0.0, 1.0 / 3.0, 1.0).unwrap();
        let s = two_species_amplitudes(real(2.0), &p).unwrap();
        assert!(s.unitarity_residuals().iter().all(|r| *r < 1e-12));
    }
}
