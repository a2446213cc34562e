//! Photon-number cat states from a cavity mode driven by passing three-level atoms.

pub mod analytic;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod hilbert;
pub mod observables;
pub mod protocol;

pub use error::{Error, Result};
