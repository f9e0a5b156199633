use thiserror::Error;

use crate::protocol::Branch;
use crate::qstate::QubitLabel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitudes are not normalized (squared norm {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("amplitude count {found} does not match 2^{qubits}")]
    LengthMismatch { qubits: usize, found: usize },
    #[error("qubit label {0} appears more than once")]
    DuplicateLabel(QubitLabel),
    #[error("qubit label {0} is not in the register")]
    UnknownLabel(QubitLabel),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("outcome has probability {probability:e}, branch is impossible")]
    ZeroProbabilityBranch { probability: f64 },
    #[error("outcome record has no Bell outcome from Charlie")]
    MissingCharlieOutcome,
    #[error("no Pauli pair recovers both states on branch {0}")]
    NoValidCorrection(Branch),
    #[error("{count} Pauli pairs recover both states on branch {branch}")]
    AmbiguousCorrection { branch: Branch, count: usize },
    #[error("transcript ordering violated: {0}")]
    TranscriptOrder(String),
}
