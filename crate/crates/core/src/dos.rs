//! Density of states and occupation factors.
//!
//! `g(eps) = (1/pi) |F'(eps)| / sqrt(1 - F^2)` inside bands, zero in gaps.
//! With this normalization every band carries exactly one state per cell.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bands::{Band, BandEdge};
use crate::error::{Error, Result};
use crate::roots::bisect;
use crate::secular::Lattice;

pub const DEFAULT_QUAD_NODES: usize = 32;
pub const MAX_QUAD_NODES: usize = 1024;
/// Allowed deviation of a band integral from 1.
pub const NORMALIZATION_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DosSample {
    pub epsilon: f64,
    /// `+inf` exactly at a band edge.
    pub g: f64,
    pub occupation: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistics {
    FermiDirac,
    BoseEinstein,
}

/// Temperature in energy units (Boltzmann constant absorbed).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OccupationSpec {
    pub statistics: Statistics,
    pub mu: f64,
    pub temperature: f64,
}

impl OccupationSpec {
    pub fn new(statistics: Statistics, mu: f64, temperature: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::InvalidParameter(format!("mu must be finite, got {mu}")));
        }
        if !(temperature > 0.0 && temperature.is_finite()) {
            return Err(Error::InvalidParameter(format!("temperature must be > 0, got {temperature}")));
        }
        Ok(Self { statistics, mu, temperature })
    }
}

pub fn density_of_states<L: Lattice + ?Sized>(epsilon: f64, lattice: &L) -> Result<DosSample> {
    if lattice.is_opaque() {
        return Err(Error::OpaqueRegime);
    }
    let v = lattice.secular(epsilon)?;
    let f = v.value;
    let g = if f.abs() > 1.0 {
        0.0
    } else if f.abs() == 1.0 {
        f64::INFINITY
    } else {
        v.slope().abs() / (std::f64::consts::PI * (1.0 - f * f).sqrt())
    };
    Ok(DosSample { epsilon, g, occupation: None })
}

/// `g` on many energies, evaluated in parallel, returned in input order.
pub fn density_of_states_many<L: Lattice + Sync + ?Sized>(energies: &[f64], lattice: &L) -> Result<Vec<DosSample>> {
    energies.par_iter().map(|&e| density_of_states(e, lattice)).collect()
}

/// `integral of g over the band`, which should be 1.
///
/// Each half of the band is mapped by `eps = edge +- s^2`, which turns the
/// inverse-square-root edge singularity into a bounded integrand. The node
/// count doubles from `n_quad` until two estimates agree or
/// [`MAX_QUAD_NODES`] is reached.
pub fn dos_band_integral<L: Lattice + ?Sized>(band: &Band, lattice: &L, n_quad: usize) -> Result<f64> {
    let lo = allowed_end(&band.lower, lattice, true)?.min(band.upper.epsilon);
    let hi = allowed_end(&band.upper, lattice, false)?.max(band.lower.epsilon);
    let mut n = n_quad.clamp(1, MAX_QUAD_NODES);
    let mut previous = integrate(lattice, lo, hi, n)?;
    loop {
        if n >= MAX_QUAD_NODES {
            break;
        }
        n = (2 * n).min(MAX_QUAD_NODES);
        let next = integrate(lattice, lo, hi, n)?;
        let converged = (next - previous).abs() < 1e-10;
        previous = next;
        if converged {
            break;
        }
    }
    if (previous - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::QuadratureFailure { value: previous });
    }
    Ok(previous)
}

// Bracket end on the allowed side, after bisecting the bracket down to rounding.
fn allowed_end<L: Lattice + ?Sized>(edge: &BandEdge, lattice: &L, is_lower: bool) -> Result<f64> {
    let (a, b) = edge.bracket;
    let target = edge.kind.target();
    let f = |e: f64| -> Result<f64> { Ok(lattice.secular(e)?.value - target) };
    let (fa, fb) = (f(a)?, f(b)?);
    if a >= b || (fa > 0.0) == (fb > 0.0) {
        return Ok(if is_lower { b } else { a });
    }
    let (a, b) = bisect(f, a, b, fa, 0.0)?;
    Ok(if is_lower { b } else { a })
}

fn integrate<L: Lattice + ?Sized>(lattice: &L, lo: f64, hi: f64, n: usize) -> Result<f64> {
    if hi <= lo {
        return Ok(0.0);
    }
    let rule = GaussLegendre::new(NonZeroUsize::new(n).expect("n >= 1"));
    let mid = 0.5 * (lo + hi);
    let half = (mid - lo).sqrt();
    let mut failure = None;
    let mut g = |eps: f64| match density_of_states(eps, lattice) {
        Ok(s) if s.g.is_finite() => s.g,
        Ok(_) => 0.0,
        Err(e) => {
            failure.get_or_insert(e);
            0.0
        }
    };
    let lower = rule.integrate(0.0, half, |s| 2.0 * s * g(lo + s * s));
    let upper = rule.integrate(0.0, half, |s| 2.0 * s * g(hi - s * s));
    match failure {
        Some(e) => Err(e),
        None => Ok(lower + upper),
    }
}

/// Attaches `g / (exp((eps - mu)/T) +- 1)` to the sample.
pub fn occupation(sample: DosSample, spec: &OccupationSpec) -> Result<DosSample> {
    let x = (sample.epsilon - spec.mu) / spec.temperature;
    let g = sample.g;
    let n = match spec.statistics {
        Statistics::FermiDirac => {
            if g == 0.0 || g.is_infinite() {
                g
            } else if x > 0.0 {
                let e = (-x).exp();
                g * e / (1.0 + e)
            } else {
                g / (1.0 + x.exp())
            }
        }
        Statistics::BoseEinstein => {
            if sample.epsilon <= spec.mu {
                return Err(Error::BoseDivergence { epsilon: sample.epsilon, mu: spec.mu });
            }
            if g == 0.0 || g.is_infinite() {
                g
            } else {
                g / x.exp_m1()
            }
        }
    };
    Ok(DosSample { occupation: Some(n), ..sample })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bands::{enumerate_bands, ScanOptions};
    use crate::params::{Comb, OneSpecies, TwoSpecies};
    use std::f64::consts::PI;

    #[test]
    fn free_particle_closed_form() {
        // g_free = a / (2 pi sqrt(eps))
        for a in [1.0, 2.3] {
            let p = OneSpecies::new(0.0, 0.0, a).unwrap();
            for eps in [0.3, 2.0, 7.5] {
                let g = density_of_states(eps, &p).unwrap().g;
                assert!((g - a / (2.0 * PI * f64::sqrt(eps))).abs() < 1e-12, "{g}");
            }
        }
    }

    #[test]
    fn zero_in_gaps_and_positive_inside() {
        let p = OneSpecies::new(5.0, 0.5, 1.0).unwrap();
        let bands = enumerate_bands(&p, &ScanOptions::new(-5.0, 60.0), 3).unwrap();
        for w in bands.windows(2) {
            let gap_mid = 0.5 * (w[0].upper.epsilon + w[1].lower.epsilon);
            assert_eq!(density_of_states(gap_mid, &p).unwrap().g, 0.0);
            assert!(density_of_states(w[0].midpoint(), &p).unwrap().g > 0.0);
        }
    }

    #[test]
    fn square_root_divergence_at_edges() {
        let p = OneSpecies::new(-5.0, 0.0, 1.0).unwrap();
        let bands = enumerate_bands(&p, &ScanOptions::new(-10.0, 40.0), 3).unwrap();
        let edge = bands[1].lower.bracket.1;
        let scaled: Vec<f64> =
            [1e-2, 1e-3, 1e-4].iter().map(|s| density_of_states(edge + s * s, &p).unwrap().g * s).collect();
        for v in &scaled {
            assert!(v.is_finite() && *v > 0.0);
        }
        assert!((scaled[1] / scaled[2] - 1.0).abs() < 1e-2);
    }

    #[test]
    fn band_integrals_are_one() {
        let one = OneSpecies::new(-5.0, 0.0, 1.0).unwrap();
        let two = TwoSpecies::new(-5.0, 0.2, 5.0, 0.0, 1.0 / 3.0, 1.0).unwrap();
        for comb in [Comb::One(one), Comb::Two(two), Comb::One(OneSpecies::new(0.0, 0.0, 1.0).unwrap())] {
            let opts = ScanOptions::new(-30.0, 120.0);
            let bands = enumerate_bands(&comb, &opts, 3).unwrap();
            assert!(bands.len() >= 3);
            for b in bands.iter().take(3) {
                let i = dos_band_integral(b, &comb, DEFAULT_QUAD_NODES).unwrap();
                assert!((i - 1.0).abs() < 1e-4, "{comb:?} band {}: {i}", b.index);
            }
        }
    }

    #[test]
    fn fermi_dirac() {
        let spec = OccupationSpec::new(Statistics::FermiDirac, 2.0, 0.1).unwrap();
        let s = DosSample { epsilon: 2.0, g: 0.8, occupation: None };
        assert_eq!(occupation(s, &spec).unwrap().occupation, Some(0.4));
        let far = DosSample { epsilon: 6.0, ..s };
        let n = occupation(far, &spec).unwrap().occupation.unwrap();
        assert!((n / (0.8 * (-40.0f64).exp()) - 1.0).abs() < 1e-12);
        let very_far = DosSample { epsilon: 1e6, ..s };
        assert_eq!(occupation(very_far, &spec).unwrap().occupation, Some(0.0));
        let deep = DosSample { epsilon: -1e6, ..s };
        assert_eq!(occupation(deep, &spec).unwrap().occupation, Some(0.8));
    }

    #[test]
    fn bose_einstein() {
        let spec = OccupationSpec::new(Statistics::BoseEinstein, 1.0, 0.5).unwrap();
        let s = DosSample { epsilon: 0.5, g: 1.0, occupation: None };
        assert!(matches!(occupation(s, &spec), Err(Error::BoseDivergence { .. })));
        let s = DosSample { epsilon: 2.0, ..s };
        let n = occupation(s, &spec).unwrap().occupation.unwrap();
        assert!((n - 1.0 / (2.0f64.exp() - 1.0)).abs() < 1e-15);
        assert!(OccupationSpec::new(Statistics::BoseEinstein, 1.0, 0.0).is_err());
    }

    #[test]
    fn opaque_rejected() {
        let p = OneSpecies::new(1.0, -1.0, 1.0).unwrap();
        assert_eq!(density_of_states(1.0, &p), Err(Error::OpaqueRegime));
    }
}
