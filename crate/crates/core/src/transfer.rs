//! Transfer matrices acting on `(psi, psi')`.
//!
//! This is the independent check on the closed-form band functions: each
//! node is a jump matrix built from the matching conditions
//!
//! ```text
//! (psi(0+), psi'(0+)) = [[alpha, 0], [beta, 1/alpha]] (psi(0-), psi'(0-))
//! alpha = (1 + w1) / (1 - w1),  beta = w0 / (1 - w1^2)
//! ```
//!
//! and free segments are propagated with real `cos`/`cosh` arithmetic. With
//! this orientation of `alpha` the plane-wave conversion in
//! [`scattering_from_jump`] reproduces the closed-form node amplitudes exactly;
//! the reciprocal `alpha` exchanges `r_R` and `r_L`.

use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{is_critical, Momentum, OneSpecies, TwoSpecies};
use crate::scattering::ScatteringAmplitudes;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl TransferMatrix {
    pub const IDENTITY: TransferMatrix = TransferMatrix { m11: 1.0, m12: 0.0, m21: 0.0, m22: 1.0 };

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    /// `cos(q a)` when `self` is a unit-cell monodromy.
    pub fn half_trace(&self) -> f64 {
        0.5 * self.trace()
    }
}

impl Mul for TransferMatrix {
    type Output = TransferMatrix;

    fn mul(self, r: TransferMatrix) -> TransferMatrix {
        TransferMatrix {
            m11: self.m11 * r.m11 + self.m12 * r.m21,
            m12: self.m11 * r.m12 + self.m12 * r.m22,
            m21: self.m21 * r.m11 + self.m22 * r.m21,
            m22: self.m21 * r.m12 + self.m22 * r.m22,
        }
    }
}

pub fn jump_matrix(w0: f64, w1: f64) -> Result<TransferMatrix> {
    if is_critical(w1) {
        return Err(Error::OpaqueRegime);
    }
    let alpha = (1.0 + w1) / (1.0 - w1);
    let beta = w0 / (1.0 - w1 * w1);
    Ok(TransferMatrix { m11: alpha, m12: 0.0, m21: beta, m22: 1.0 / alpha })
}

/// Free evolution over a length `length` at energy `epsilon`.
pub fn propagation_matrix(epsilon: f64, length: f64) -> TransferMatrix {
    let x = epsilon * length * length;
    if x.abs() < 1e-8 {
        // cos ~ 1 - x/2 + x^2/24, sin(kL)/k ~ L (1 - x/6 + x^2/120)
        let c = 1.0 - x / 2.0 + x * x / 24.0;
        let s = length * (1.0 - x / 6.0 + x * x / 120.0);
        return TransferMatrix { m11: c, m12: s, m21: -epsilon * s, m22: c };
    }
    if epsilon > 0.0 {
        let k = epsilon.sqrt();
        let (sin, cos) = (k * length).sin_cos();
        TransferMatrix { m11: cos, m12: sin / k, m21: -k * sin, m22: cos }
    } else {
        let kappa = (-epsilon).sqrt();
        let (sinh, cosh) = ((kappa * length).sinh(), (kappa * length).cosh());
        TransferMatrix { m11: cosh, m12: sinh / kappa, m21: kappa * sinh, m22: cosh }
    }
}

pub fn monodromy_one_species(epsilon: f64, p: &OneSpecies) -> Result<TransferMatrix> {
    Ok(jump_matrix(p.w0, p.w1)? * propagation_matrix(epsilon, p.a))
}

/// Cell: propagate `a - d` to the `w` node, jump, propagate `d` to the `v` node, jump.
pub fn monodromy_two_species(epsilon: f64, p: &TwoSpecies) -> Result<TransferMatrix> {
    let jw = jump_matrix(p.w0, p.w1)?;
    let jv = jump_matrix(p.v0, p.v1)?;
    Ok(jv * propagation_matrix(epsilon, p.d) * jw * propagation_matrix(epsilon, p.a - p.d))
}

/// Scattering amplitudes of a localized transfer `j` placed at `x = 0`.
///
/// Right incidence: `j (1 + rR, ik(1 - rR)) = (t, ik t)`.
/// Left incidence: `j (t, -ik t) = (1 + rL, ik(rL - 1))`.
pub fn scattering_from_jump(k: Momentum, j: &TransferMatrix) -> Result<ScatteringAmplitudes> {
    if !k.is_real() || k.is_zero() {
        return Err(Error::NotApplicable);
    }
    let ik = Complex64::new(0.0, k.value().re);
    let (m11, m12, m21, m22) =
        (Complex64::from(j.m11), Complex64::from(j.m12), Complex64::from(j.m21), Complex64::from(j.m22));
    // Both systems share the matrix [[m11 - ik m12, -1], [m21 - ik m22, -ik]].
    let a11 = m11 - ik * m12;
    let a21 = m21 - ik * m22;
    let det = a11 * (-ik) + a21;
    if det.norm() < 1e-14 * (1.0 + k.value().re) {
        return Err(Error::SingularConversion);
    }
    let solve = |b1: Complex64, b2: Complex64| {
        let x = (b1 * (-ik) + b2) / det;
        let y = (a11 * b2 - a21 * b1) / det;
        (x, y)
    };
    let (r_right, t) = solve(-(m11 + ik * m12), -(m21 + ik * m22));
    let (t_left, r_left) = solve(Complex64::from(1.0), -ik);
    debug_assert!((t - t_left).norm() < 1e-8 * (1.0 + t.norm()));
    Ok(ScatteringAmplitudes { t, r_right, r_left, k })
}
