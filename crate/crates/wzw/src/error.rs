//! Error type shared by all modules.
//!
//! Errors split into two families: *validation* errors (bad user input,
//! rejected preconditions) and *consistency* errors (a numerical check that
//! is supposed to hold by theory failed, signalling a bug or a convention
//! mismatch). The CLI maps the first family to exit code 1 and the second
//! to exit code 2.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank must be at least 2, got n = {0}")]
    InvalidRank(usize),

    #[error("level must be at least 1, got k = {0}")]
    InvalidLevel(u32),

    #[error("cannot parse weight from {input:?}: {reason}")]
    WeightParse { input: String, reason: String },

    #[error("weight {0} has wrong rank for SU({1})")]
    WeightRankMismatch(String, usize),

    #[error("weight {0} is not in the level-{1} alcove")]
    WeightNotInAlcove(String, u32),

    #[error("partition rows must be weakly decreasing, got {0:?}")]
    PartitionNotDecreasing(Vec<u32>),

    #[error("partition has {rows} rows, at most {max} allowed for SU({max})")]
    PartitionTooManyRows { rows: usize, max: usize },

    #[error("S-matrix normalization failed: unitarity residual {residual:e} exceeds {tolerance:e}")]
    NormalizationFailure { residual: f64, tolerance: f64 },

    #[error("S-matrix row of the vacuum is not strictly positive at index {index}")]
    NonPositiveVacuumRow { index: usize },

    #[error("degenerate braiding: |a| = {modulus:e} is numerically zero")]
    DegenerateBraiding { modulus: f64 },

    #[error("|a|^2 = {lhs} disagrees with sum of squared quantum dimensions {rhs}")]
    GlobalDimensionMismatch { lhs: f64, rhs: f64 },

    #[error("Verlinde sum for ({lambda}) x ({mu}) -> ({nu}) is {value} with residual {residual:e} above {tolerance:e}")]
    VerlindeResidual {
        lambda: String,
        mu: String,
        nu: String,
        value: f64,
        residual: f64,
        tolerance: f64,
    },

    #[error("monodromy of ({lambda}, {mu}) has no channel ({nu}): fusion coefficient is zero")]
    MissingFusionChannel {
        lambda: String,
        mu: String,
        nu: String,
    },

    #[error("level {k} is not a valid simple-current level for SU({n}): {reason}")]
    InvalidSimpleCurrentLevel { n: usize, k: u32, reason: String },

    #[error("Z-matrix does not commute with {with}: max deviation {deviation:e} exceeds {tolerance:e}")]
    CommutationFailure {
        with: &'static str,
        deviation: f64,
        tolerance: f64,
    },

    #[error("k + n = {0} is not a prime power")]
    NotPrimePower(u64),

    #[error("(k, n) = (2, 2) is excluded from the prime-power criterion")]
    PrimePowerExcludedCase,

    #[error("{0}")]
    InvalidArgument(String),
}

impl Error {
    /// Process exit code for the CLI: 1 for validation failures, 2 for
    /// internal consistency aborts.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidRank(_)
            | Error::InvalidLevel(_)
            | Error::WeightParse { .. }
            | Error::WeightRankMismatch(..)
            | Error::WeightNotInAlcove(..)
            | Error::PartitionNotDecreasing(_)
            | Error::PartitionTooManyRows { .. }
            | Error::MissingFusionChannel { .. }
            | Error::InvalidSimpleCurrentLevel { .. }
            | Error::NotPrimePower(_)
            | Error::PrimePowerExcludedCase
            | Error::InvalidArgument(_) => 1,
            Error::NormalizationFailure { .. }
            | Error::NonPositiveVacuumRow { .. }
            | Error::DegenerateBraiding { .. }
            | Error::GlobalDimensionMismatch { .. }
            | Error::VerlindeResidual { .. }
            | Error::CommutationFailure { .. } => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
