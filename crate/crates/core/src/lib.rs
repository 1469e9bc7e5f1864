//! Exact single-mode quantum statistics of the codirectional Kerr nonlinear
//! coupler, with a truncated Fock-space simulation as an independent check.

pub mod cli;
pub mod coupler;
pub mod error;
pub mod numerics;
pub mod oracle;
pub mod phase_space;
pub mod phase_stats;
pub mod special;
pub mod squeezing;

pub use coupler::{evolve_amplitude, moment, CouplerParams, EvolvedAmplitude};
pub use error::{KerrError, Result};
pub use phase_space::{OrderingParam, SeriesControl};
