//! Band spectra, dispersion relations and densities of states of periodic
//! delta / delta-prime combs on a line, with one or two nodes per cell.
//!
//! Closed-form band functions live in [`secular`]; [`transfer`] recomputes
//! them from transfer matrices as an independent check.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bands;
pub mod cli;
pub mod dos;
pub mod error;
pub mod limits;
pub mod params;
mod roots;
pub mod scattering;
pub mod secular;
pub mod transfer;
pub mod units;
mod wave;

pub use bands::{Band, BandEdge, DispersionSample, EdgeKind, NegativeBandRegime, ScanOptions};
pub use dos::{DosSample, OccupationSpec, Statistics};
pub use error::{Error, Result};
pub use limits::{MergeDirection, MergedCouplings};
pub use params::{Comb, Momentum, OneSpecies, TwoSpecies};
pub use scattering::ScatteringAmplitudes;
pub use secular::{Lattice, SecularValue};
pub use transfer::TransferMatrix;
pub use units::PhysicalUnitsSpec;
