//! Modular data and fusion rings of the SU(n) level-k WZW models.
//!
//! The crate enumerates the level-k alcove of integrable dominant weights,
//! builds the Kac-Peterson S-matrix and the rest of the modular data
//! (twists, T, the statistics phase and its central-charge residue, the
//! fusion-side Y-matrix), computes fusion coefficients by the Verlinde
//! formula with a combinatorial Pieri oracle as an independent check,
//! constructs the D-type simple-current modular invariant at levels
//! k = n'n, and classifies maximality of the associated subfactors with
//! the numeric evidence for their 2n-element intermediate lattices.
//!
//! Every runnable capability has an example under `examples/`; the `wzw`
//! binary exposes the same operations as batch subcommands with text, JSON
//! and CSV output.
//!
//! ```
//! use wzw::weights::TheoryParams;
//! use wzw::modular::ModularData;
//! use wzw::fusion::{fuse_weights, FusionTensor};
//!
//! let md = ModularData::new(TheoryParams::new(3, 4).unwrap()).unwrap();
//! let nt = FusionTensor::verlinde(&md).unwrap();
//! let product = fuse_weights(&nt, &md.tp().v(), &md.tp().v0()).unwrap();
//! assert_eq!(product.support_len(), 3);
//! ```

pub mod cli;
pub mod error;
pub mod fusion;
pub mod mat;
pub mod modular;
pub mod simple_current;
pub mod subfactor;
pub mod tol;
pub mod weights;

pub use error::{Error, Result};
pub use fusion::{FusionTensor, SectorSum};
pub use modular::ModularData;
pub use simple_current::SimpleCurrentData;
pub use weights::{Partition, TheoryParams, Weight};
