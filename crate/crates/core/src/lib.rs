//! Fusion rules for modules of the singlet vertex operator algebras `M(p)`.
//!
//! * [`labels`]: exact weights and lattice coordinates.
//! * [`catalog`]: indecomposable modules and their structure.
//! * [`fusion`]: closed-form fusion products.
//! * [`oracle`]: the same products rebuilt from generator rules alone.
//! * [`triplet`]: induction to the triplet algebra `W(p)`.
//! * [`bpz`]: hypergeometric solution bases and connection coefficients.

pub mod bpz;
pub mod catalog;
pub mod error;
pub mod fusion;
pub mod generators;
pub mod labels;
pub mod matrix;
pub mod oracle;
pub mod triplet;

pub use catalog::{FormalSum, Indecomposable, Kind};
pub use error::{Error, Result};
pub use labels::{KacLabel, Params, Rational};
