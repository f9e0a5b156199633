use std::fmt;

use serde::{Deserialize, Serialize};

use super::{QubitLabel, C64, FRAC_1_SQRT_2};

/// Single-qubit gates used by the protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OneQubitGate {
    I,
    X,
    /// `iσy = |0><1| - |1><0|`, real-valued.
    IY,
    Z,
    H,
}

impl OneQubitGate {
    /// Row-major 2x2 matrix.
    pub fn matrix(self) -> [[C64; 2]; 2] {
        let r = |x: f64| C64::new(x, 0.0);
        match self {
            OneQubitGate::I => [[r(1.0), r(0.0)], [r(0.0), r(1.0)]],
            OneQubitGate::X => [[r(0.0), r(1.0)], [r(1.0), r(0.0)]],
            OneQubitGate::IY => [[r(0.0), r(1.0)], [r(-1.0), r(0.0)]],
            OneQubitGate::Z => [[r(1.0), r(0.0)], [r(0.0), r(-1.0)]],
            OneQubitGate::H => {
                let h = FRAC_1_SQRT_2;
                [[r(h), r(h)], [r(h), r(-h)]]
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    Single {
        gate: OneQubitGate,
        target: QubitLabel,
    },
    Cnot {
        control: QubitLabel,
        target: QubitLabel,
    },
}

impl Gate {
    pub fn single(gate: OneQubitGate, target: QubitLabel) -> Self {
        Gate::Single { gate, target }
    }

    pub fn h(target: QubitLabel) -> Self {
        Gate::single(OneQubitGate::H, target)
    }

    pub fn cnot(control: QubitLabel, target: QubitLabel) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn targets(&self) -> Vec<QubitLabel> {
        match *self {
            Gate::Single { target, .. } => vec![target],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }
}

/// Recovery operation applied by a receiver: one of `I`, `σx`, `iσy`, `σz`.
///
/// Serialized as `"I"`, `"X"`, `"iY"`, `"Z"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliOp {
    I,
    X,
    #[serde(rename = "iY")]
    IY,
    Z,
}

impl PauliOp {
    pub const ALL: [PauliOp; 4] = [PauliOp::I, PauliOp::X, PauliOp::IY, PauliOp::Z];

    pub fn gate(self) -> OneQubitGate {
        match self {
            PauliOp::I => OneQubitGate::I,
            PauliOp::X => OneQubitGate::X,
            PauliOp::IY => OneQubitGate::IY,
            PauliOp::Z => OneQubitGate::Z,
        }
    }

    pub fn on(self, target: QubitLabel) -> Gate {
        Gate::single(self.gate(), target)
    }

    pub fn name(self) -> &'static str {
        match self {
            PauliOp::I => "I",
            PauliOp::X => "X",
            PauliOp::IY => "iY",
            PauliOp::Z => "Z",
        }
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
