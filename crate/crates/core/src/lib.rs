//! Tripartite Bell inequalities with modular joint probabilities.
//!
//! * [`inequality`]: probability and correlation forms, catalog, symmetries.
//! * [`local`]: classical bounds and facet certificates.
//! * [`quantum`]: states, multiport devices and qubit observables.
//! * [`optimize`]: maximal violations, thresholds and sweeps.

pub mod error;
pub mod inequality;
pub mod local;
pub mod numfmt;
pub mod optimize;
pub mod quantum;

pub use error::{Error, Result};
