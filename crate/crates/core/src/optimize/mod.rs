//! Multi-start maximization of quantum violations, noise thresholds and
//! parameter sweeps.

pub mod config;
mod multistart;
pub mod nelder_mead;
pub mod phases;
pub mod probe;
pub mod qubit;
pub mod sweep;
pub mod threshold;

pub use config::OptimizationConfig;
pub use multistart::{PROBE_STEP, STATIONARITY_TOL};
pub use phases::{
    lhs_at, maximize_violation_phases, reference_settings_d4, reference_settings_d5,
    QUARTIT_REFERENCE_TABLE,
    reference_settings_d5_best, PhaseOptimum,
};
pub use probe::{violates_all_entangled_probe, ProbeReport, Verdict};
pub use qubit::{maximize_qubit_probability, maximize_violation_qubit, QubitOptimum};
pub use sweep::{sweep, violation_onset, xi_grid, Family, SweepRow, Target};
pub use threshold::{threshold, ThresholdKind, ThresholdReport};
