//! Lefschetz numbers, Dold indices and zeta functions of self-maps, together
//! with the generating-function identities for their induced maps on
//! symmetric powers, configuration spaces, subset spaces and partition
//! functors. Every identity can be checked against brute-force fixed-point
//! counts on finite dynamical systems.

pub mod dynamics;
pub mod engine;
pub mod error;
pub mod graded;
pub mod oracle;
pub mod partition;
pub mod series;

pub use error::{Error, Result};
