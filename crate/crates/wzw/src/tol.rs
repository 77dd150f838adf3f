//! Numerical tolerances used across the crate, each with its origin.
//!
//! All matrix entries are O(1) complex doubles built from a single table of
//! roots of unity, so accumulated rounding stays within a few hundred ulps
//! even for the largest desk-scale alcoves. The constants below are the
//! defaults; builders accept explicit overrides and the CLI exposes them as
//! flags (plus the `WZW_TOLERANCE` environment variable).

/// Construction gate for the S-matrix and other builders.
///
/// A freshly built S-matrix whose unitarity residual exceeds this signals a
/// convention bug, not rounding; construction aborts.
pub const CONSTRUCTION: f64 = 1e-9;

/// Residual allowed in the exact modular relations (unitarity, S^2 = C,
/// STS = T^-1 S T^-1, the simple-current phase symmetry, Z commutation).
pub const MODULAR_RELATION: f64 = 1e-10;

/// Largest distance from an integer tolerated in a Verlinde sum before the
/// coefficient is rejected. Fusion coefficients are exact integers in exact
/// arithmetic; anything near 1e-6 means the sum is numerically unhealthy.
pub const VERLINDE_ROUNDING: f64 = 1e-6;

/// Relative tolerance for quantum-dimension identities: the dimension sum
/// rule, |a|^2 against the global dimension, and the Y-route comparison.
pub const DIMENSION_SUM: f64 = 1e-8;

/// Relative threshold below which an S-matrix entry counts as exactly zero.
///
/// Vanishing Kac-Peterson entries vanish exactly (root-of-unity
/// cancellation), so the gap to the smallest genuinely nonzero entry is many
/// orders of magnitude at desk scale.
pub const S_ZERO_RELATIVE: f64 = 1e-8;

/// Equality tolerance for products of piece dimensions in the factorization
/// scan.
pub const PIECE_DIM_PRODUCT: f64 = 1e-6;
