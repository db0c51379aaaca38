//! Phaseless sampling and reconstruction of real-valued signals in
//! shift-invariant spaces: exact generator evaluation, signal graphs and
//! separability analysis, discrete sampling-set construction with
//! stability constants, and magnitude-only reconstruction.

pub mod error;
pub mod generators;
pub mod geom;
pub mod lattice;
pub mod linalg;

pub use error::{Result, SivError};
