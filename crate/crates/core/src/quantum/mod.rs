//! Quantum statistics of multiport beam splitter and qubit measurements.

pub mod multiport;
pub mod qubit;
pub mod record;
pub mod state;

pub use multiport::{
    ghz_closed_form_table, joint_behavior, joint_distribution, mix_white_noise, multiport_unitary,
    quantum_table, NoiseParameter, PhaseSettings,
};
pub use qubit::{
    entanglement_check, qubit_behavior, qubit_expectations, EntanglementReport, QubitObservable,
    QubitSettings,
};
pub use state::PureState;
