use thiserror::Error;

/// Everything that can go wrong while evaluating a comb.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("amplitudes are undefined at k = 0")]
    DegenerateMomentum,

    #[error("scattering denominator vanishes at k = {re} + {im}i (bound-state pole)")]
    PoleHit { re: f64, im: f64 },

    #[error("operation only applies to real, nonzero momenta")]
    NotApplicable,

    #[error("opaque coupling (|w1| or |v1| = 1): the band function is undefined")]
    OpaqueRegime,

    #[error("transfer matrix cannot be converted to scattering amplitudes")]
    SingularConversion,

    #[error("scan grid too coarse near eps = {epsilon}: more than one critical point in one cell")]
    ScanTooCoarse { epsilon: f64 },

    #[error("discrete spectrum requires |w1| = 1, got w1 = {w1}")]
    NotCritical { w1: f64 },

    #[error("invalid regime: {0}")]
    InvalidRegime(String),

    #[error("band integral {value} does not converge to 1")]
    QuadratureFailure { value: f64 },

    #[error("Bose-Einstein occupation diverges for eps = {epsilon} <= mu = {mu}")]
    BoseDivergence { epsilon: f64, mu: f64 },

    #[error("merged couplings diverge: 1 + v1*w1 = {denominator}")]
    MergeSingular { denominator: f64 },

    #[error("sweep grid has {cells} cells, limit is {limit}")]
    GridTooLarge { cells: u64, limit: u64 },

    #[error("{0} must be positive")]
    NonPositiveInput(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
