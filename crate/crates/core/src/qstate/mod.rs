//! Dense statevector engine for small labeled registers.
//!
//! Basis index convention: the first label in a register is the most
//! significant bit, so `|a1 b1 c1 a2 c2 b2>` reads left to right.

mod bell;
mod density;
mod gate;
mod label;
mod state;

pub use bell::BellOutcome;
pub use density::DensityMatrix;
pub use gate::{Gate, OneQubitGate, PauliOp};
pub use label::QubitLabel;
pub use state::{Basis, StateVector};

pub type C64 = num_complex::Complex64;

pub(crate) const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;
