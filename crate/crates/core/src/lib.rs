//! Simulator and verification checks for bidirectional controlled quantum
//! teleportation (BCQT) over three EPR pairs.
//!
//! The crate is split into three layers:
//!
//! * [`qstate`]: a small dense statevector engine over labeled qubits
//!   (gates, Z/X post-selection, Bell measurement, partial trace, fidelity).
//! * [`protocol`]: the three-party protocol (Alice, Bob, Charlie) driven over
//!   a classical [`Transcript`](protocol::Transcript), the brute-force
//!   correction table and the control-power analysis.
//! * [`verify`]: checks that compare the simulator against the published
//!   collapse table, the Hadamard/Bell regrouping and the correction table.

pub mod error;
pub mod protocol;
pub mod qstate;
pub mod rng;
pub mod verify;

pub use error::{Error, Result};
pub use protocol::{
    control_power, derive_correction_table, enumerate_branches, resolve_corrections, run_protocol,
    Branch, ControlPower, CorrectionTable, InputState, OutcomeRecord, Party, PauliCorrection,
    ProtocolResult, Receiver, RunMode, Transcript, UserBranch,
};
pub use qstate::{
    Basis, BellOutcome, DensityMatrix, Gate, OneQubitGate, PauliOp, QubitLabel, StateVector, C64,
};

/// Pass threshold for fidelities and phase-insensitive state comparisons.
pub const ACCEPT_TOL: f64 = 1e-10;
/// Normalization tolerance for user-supplied amplitudes.
pub const INPUT_NORM_TOL: f64 = 1e-9;
/// Branches below this probability are treated as impossible.
pub const ZERO_PROB_TOL: f64 = 1e-15;
