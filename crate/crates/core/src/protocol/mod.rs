//! The three-party protocol: Alice and Bob swap single-qubit payloads over a
//! channel of three EPR pairs, with Charlie's Bell measurement completing
//! the transfer towards Alice.

mod branch;
mod control;
mod corrections;
mod input;
mod run;
pub mod steps;
mod transcript;

pub use branch::{Branch, OutcomeRecord, UserBranch};
pub use control::{control_power, ControlPower, ReceiverPower};
pub use corrections::{
    derive_correction_table, resolve_corrections, CorrectionTable, PauliCorrection, Receiver,
    REVALIDATION_PAIRS, REVALIDATION_SEED,
};
pub use input::InputState;
pub use run::{
    enumerate_branches, run_protocol, Announced, Entangled, Measured, Prepared, ProtocolResult,
    RunMode,
};
pub use transcript::{Message, Party, Payload, Transcript};
