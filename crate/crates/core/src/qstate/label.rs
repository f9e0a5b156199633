use std::fmt;

use serde::{Deserialize, Serialize};

/// Name of a qubit in a register.
///
/// The protocol uses the eight fixed registers below; `Generic` covers
/// anonymous qubits in tests and helper computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QubitLabel {
    A1,
    B1,
    C1,
    A2,
    C2,
    B2,
    /// Alice's payload qubit.
    A,
    /// Bob's payload qubit.
    B,
    Generic(u8),
}

impl fmt::Display for QubitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QubitLabel::A1 => f.write_str("a1"),
            QubitLabel::B1 => f.write_str("b1"),
            QubitLabel::C1 => f.write_str("c1"),
            QubitLabel::A2 => f.write_str("a2"),
            QubitLabel::C2 => f.write_str("c2"),
            QubitLabel::B2 => f.write_str("b2"),
            QubitLabel::A => f.write_str("A"),
            QubitLabel::B => f.write_str("B"),
            QubitLabel::Generic(n) => write!(f, "q{n}"),
        }
    }
}
