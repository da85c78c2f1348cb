//! Memory-assisted entropic uncertainty for a pair of V-type qutrits, each
//! damped by its own non-Markovian reservoir with tunable spontaneously
//! generated interference.
//!
//! The pipeline for one time sample is
//! [`states::isotropic_state`] → [`channel::apply_product_channel`] →
//! [`entropy::eur_sample`]; [`experiment::run_sweep`] repeats it over a time
//! grid.

pub mod channel;
pub mod checks;
pub mod entropy;
pub mod error;
pub mod experiment;
pub mod linalg;
pub mod random;
pub mod states;

pub use error::{Error, Result};
