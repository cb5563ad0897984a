//! Convolution-like recurrences: given a kernel sequence **b** (b₀ ≠ 0)
//! and a shift m ≥ 1, compute the sequence **a**, the auxiliary
//! α-sequences, their generating-function representations, limits,
//! convergence radii, and the initial values that steer **a** to a
//! prescribed limit.

pub mod analysis;
pub mod cli;
pub mod constants;
pub mod error;
pub mod numeric;
pub mod recurrence;
pub mod sequences;
pub mod series;
pub mod solver;

pub use error::{Error, Result};
pub use numeric::Coefficient;
pub use sequences::SequenceSpec;
