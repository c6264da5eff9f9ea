//! Numerical invariants of log del Pezzo surfaces and their fibrations.

pub mod base;
pub mod cbf;
pub mod cli;
pub mod dualgraph;
pub mod duval;
pub mod error;
pub mod eulerform;
pub mod fibration;
pub mod mordellweil;

pub use error::{Error, Result};
