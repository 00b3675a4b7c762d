//! Coalescence of the two nodes of a two-species cell into one node, and the
//! exchange symmetry of the two-species comb.
//!
//! The merge is not commutative: which node sits on the left matters once
//! either carries a delta-prime term. With the `w` node at `-d/2` and the `v`
//! node at `+d/2`:
//!
//! ```text
//! d -> 0:  u0 = [v0 (1 + w1)^2 + w0 (1 - v1)^2] / (1 + v1 w1)^2
//! d -> a:  u0 = [w0 (1 + v1)^2 + v0 (1 - w1)^2] / (1 + v1 w1)^2
//! both:    u1 = (v1 + w1) / (1 + v1 w1)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{OneSpecies, TwoSpecies};

pub const MERGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeDirection {
    ToZero,
    ToA,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MergedCouplings {
    pub u0: f64,
    pub u1: f64,
    pub direction: MergeDirection,
}

impl MergedCouplings {
    /// The one-species comb with the merged node at spacing `a`.
    pub fn into_one_species(self, a: f64) -> Result<OneSpecies> {
        OneSpecies::new(self.u0, self.u1, a)
    }
}

// Node (l0, l1) immediately to the left of node (r0, r1).
fn compose(l0: f64, l1: f64, r0: f64, r1: f64, direction: MergeDirection) -> Result<MergedCouplings> {
    let denominator = 1.0 + l1 * r1;
    if denominator.abs() < MERGE_TOL {
        return Err(Error::MergeSingular { denominator });
    }
    let u0 = (r0 * (1.0 + l1).powi(2) + l0 * (1.0 - r1).powi(2)) / (denominator * denominator);
    let u1 = (l1 + r1) / denominator;
    Ok(MergedCouplings { u0, u1, direction })
}

pub fn merge_d_to_zero(p: &TwoSpecies) -> Result<MergedCouplings> {
    compose(p.w0, p.w1, p.v0, p.v1, MergeDirection::ToZero)
}

/// As `d -> a` the `v` node meets the `w` node of the next cell from the left.
pub fn merge_d_to_a(p: &TwoSpecies) -> Result<MergedCouplings> {
    compose(p.v0, p.v1, p.w0, p.w1, MergeDirection::ToA)
}

pub fn merge(p: &TwoSpecies, direction: MergeDirection) -> Result<MergedCouplings> {
    match direction {
        MergeDirection::ToZero => merge_d_to_zero(p),
        MergeDirection::ToA => merge_d_to_a(p),
    }
}

/// `(w0, w1, v0, v1, d, a) -> (v0, v1, w0, w1, a - d, a)`, which leaves `F` unchanged.
pub fn exchange_map(p: &TwoSpecies) -> TwoSpecies {
    TwoSpecies { w0: p.v0, w1: p.v1, v0: p.w0, v1: p.w1, d: p.a - p.d, a: p.a }
}
