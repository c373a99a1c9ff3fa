//! Composite π pulses that implement a NOT gate robustly against pulse
//! strength and off-resonance errors: gate algebra, error models, series
//! analysis of the infidelity, a catalog of named sequences and phase solvers.

pub mod analysis;
pub mod cli;
pub mod design;
pub mod error;
pub mod error_model;
pub mod families;
pub mod sequence;
pub mod su2;

pub use error::{Error, Result};
