use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::state::sample_index;
use super::{Basis, Gate, QubitLabel, StateVector, C64, FRAC_1_SQRT_2};
use crate::{Error, Result, ZERO_PROB_TOL};

/// One of the four Bell states, used as Charlie's announced outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BellOutcome {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [
        BellOutcome::PhiPlus,
        BellOutcome::PhiMinus,
        BellOutcome::PsiPlus,
        BellOutcome::PsiMinus,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Z-measurement bits after `CNOT(q1 -> q2)` then `H(q1)`.
    pub fn bits(self) -> (u8, u8) {
        match self {
            BellOutcome::PhiPlus => (0, 0),
            BellOutcome::PsiPlus => (0, 1),
            BellOutcome::PhiMinus => (1, 0),
            BellOutcome::PsiMinus => (1, 1),
        }
    }

    pub fn from_bits(first: u8, second: u8) -> Self {
        match (first, second) {
            (0, 0) => BellOutcome::PhiPlus,
            (0, _) => BellOutcome::PsiPlus,
            (_, 0) => BellOutcome::PhiMinus,
            _ => BellOutcome::PsiMinus,
        }
    }

    /// The Bell state on `(q1, q2)`.
    pub fn state(self, q1: QubitLabel, q2: QubitLabel) -> StateVector {
        let h = FRAC_1_SQRT_2;
        let (z, p, m) = (C64::new(0.0, 0.0), C64::new(h, 0.0), C64::new(-h, 0.0));
        let amps = match self {
            BellOutcome::PhiPlus => vec![p, z, z, p],
            BellOutcome::PhiMinus => vec![p, z, z, m],
            BellOutcome::PsiPlus => vec![z, p, p, z],
            BellOutcome::PsiMinus => vec![z, p, m, z],
        };
        StateVector::new(vec![q1, q2], amps).expect("Bell states are normalized")
    }

    pub fn name(self) -> &'static str {
        match self {
            BellOutcome::PhiPlus => "phi_plus",
            BellOutcome::PhiMinus => "phi_minus",
            BellOutcome::PsiPlus => "psi_plus",
            BellOutcome::PsiMinus => "psi_minus",
        }
    }
}

impl fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl StateVector {
    fn bell_rotated(&self, q1: QubitLabel, q2: QubitLabel) -> Result<StateVector> {
        self.apply(&Gate::cnot(q1, q2))?.apply(&Gate::h(q1))
    }

    fn bell_project(
        rotated: &StateVector,
        q1: QubitLabel,
        q2: QubitLabel,
        o: BellOutcome,
    ) -> Result<(f64, StateVector)> {
        let (b1, b2) = o.bits();
        let p1 = rotated.probability(q1, Basis::Z, b1)?;
        if p1 < ZERO_PROB_TOL {
            return Err(Error::ZeroProbabilityBranch { probability: p1 });
        }
        let (_, s) = rotated.postselect(q1, Basis::Z, b1)?;
        let (p2, s) = s.postselect(q2, Basis::Z, b2).map_err(|e| match e {
            Error::ZeroProbabilityBranch { probability } => Error::ZeroProbabilityBranch {
                probability: probability * p1,
            },
            e => e,
        })?;
        Ok((p1 * p2, s))
    }

    /// Probabilities of the four Bell outcomes on `(q1, q2)`, indexed by
    /// [`BellOutcome::index`].
    pub fn bell_probabilities(&self, q1: QubitLabel, q2: QubitLabel) -> Result<[f64; 4]> {
        let rotated = self.bell_rotated(q1, q2)?;
        let mut out = [0.0; 4];
        for o in BellOutcome::ALL {
            let (b1, b2) = o.bits();
            let p1 = rotated.probability(q1, Basis::Z, b1)?;
            out[o.index()] = if p1 < ZERO_PROB_TOL {
                0.0
            } else {
                let (_, s) = rotated.postselect(q1, Basis::Z, b1)?;
                p1 * s.probability(q2, Basis::Z, b2)?
            };
        }
        Ok(out)
    }

    /// Bell measurement on `(q1, q2)` conditioned on `outcome`; both qubits
    /// are removed from the register.
    pub fn postselect_bell(
        &self,
        q1: QubitLabel,
        q2: QubitLabel,
        outcome: BellOutcome,
    ) -> Result<(f64, StateVector)> {
        let rotated = self.bell_rotated(q1, q2)?;
        Self::bell_project(&rotated, q1, q2, outcome)
    }

    /// Sampled Bell measurement on `(q1, q2)`.
    pub fn measure_bell<R: Rng + ?Sized>(
        &self,
        q1: QubitLabel,
        q2: QubitLabel,
        rng: &mut R,
    ) -> Result<(BellOutcome, f64, StateVector)> {
        let probs = self.bell_probabilities(q1, q2)?;
        let outcome = BellOutcome::ALL[sample_index(&probs, rng)];
        let (p, s) = self.postselect_bell(q1, q2, outcome)?;
        Ok((outcome, p, s))
    }
}
