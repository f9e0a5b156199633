//! End-to-end protocol run as a sequence of typed stages, with each party
//! acting only on its own qubits and on the messages it has received.

use rand::RngCore;

use super::steps::{
    alice_measure_forced, apply_correction, bob_measure_forced, build_channel, compose_system,
    receiver_fidelities, step2_cnots, step4_charlie, step4_charlie_forced,
};
use super::transcript::{Message, Payload};
use super::{
    Branch, CorrectionTable, InputState, OutcomeRecord, Party, PauliCorrection, Receiver,
    Transcript, UserBranch,
};
use crate::qstate::{Basis, DensityMatrix, QubitLabel, StateVector};
use crate::{Error, Result};

/// How measurement outcomes are chosen.
pub enum RunMode<'r> {
    /// Born-rule sampling.
    Sampled(&'r mut dyn RngCore),
    /// Post-selection on a fixed branch.
    Forced(Branch),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolResult {
    pub transcript: Transcript,
    pub record: OutcomeRecord,
    pub correction: PauliCorrection,
    /// Bob's qubit after correction; should equal Alice's payload.
    pub final_b1: DensityMatrix,
    /// Alice's qubit after correction; should equal Bob's payload.
    pub final_a2: DensityMatrix,
    pub fidelity_b1: f64,
    pub fidelity_a2: f64,
    pub branch_probability: f64,
}

impl ProtocolResult {
    pub fn min_fidelity(&self) -> f64 {
        self.fidelity_b1.min(self.fidelity_a2)
    }
}

/// Local view of one user.
#[derive(Debug, Clone, Copy)]
struct User {
    party: Party,
    peer: Party,
    channel: QubitLabel,
    payload: QubitLabel,
    receiver: Receiver,
}

const ALICE: User = User {
    party: Party::Alice,
    peer: Party::Bob,
    channel: QubitLabel::A1,
    payload: QubitLabel::A,
    receiver: Receiver::A2,
};

const BOB: User = User {
    party: Party::Bob,
    peer: Party::Alice,
    channel: QubitLabel::B2,
    payload: QubitLabel::B,
    receiver: Receiver::B1,
};

impl User {
    fn measure(
        &self,
        s: &StateVector,
        mode: &mut RunMode<'_>,
    ) -> Result<(u8, u8, f64, StateVector)> {
        match mode {
            RunMode::Forced(b) => {
                let (z, x) = match self.party {
                    Party::Alice => (b.user.alice_z, b.user.alice_x),
                    _ => (b.user.bob_z, b.user.bob_x),
                };
                let (p, s) = match self.party {
                    Party::Alice => alice_measure_forced(s, z, x)?,
                    _ => bob_measure_forced(s, z, x)?,
                };
                Ok((z, x, p, s))
            }
            RunMode::Sampled(rng) => {
                let (z, pz, s) = s.measure(self.channel, Basis::Z, rng)?;
                let (x, px, s) = s.measure(self.payload, Basis::X, rng)?;
                Ok((z, x, pz * px, s))
            }
        }
    }

    fn announce(&self, z: u8, x: u8) -> Message {
        Message {
            sender: self.party,
            recipients: vec![self.peer, Party::Charlie],
            payload: Payload::UserOutcome { z, x },
        }
    }

    /// Picks a correction from the messages this user has seen.
    fn correction(
        &self,
        transcript: &Transcript,
        table: &CorrectionTable,
    ) -> Result<crate::PauliOp> {
        let mut alice = None;
        let mut bob = None;
        let mut bell = None;
        for m in transcript.view_of(self.party) {
            match (m.sender, m.payload) {
                (Party::Alice, Payload::UserOutcome { z, x }) => alice = Some((z, x)),
                (Party::Bob, Payload::UserOutcome { z, x }) => bob = Some((z, x)),
                (Party::Charlie, Payload::Bell(b)) => bell = Some(b),
                _ => {}
            }
        }
        let ((az, ax), (bz, bx)) = alice.zip(bob).ok_or_else(|| {
            Error::TranscriptOrder(format!("{} is missing a user announcement", self.party))
        })?;
        table.correction_for(self.receiver, UserBranch::new(az, ax, bz, bx), bell)
    }
}

/// Step 1: channel and payloads prepared.
#[derive(Debug, Clone)]
pub struct Prepared {
    alice: InputState,
    bob: InputState,
    state: StateVector,
}

/// Step 2 done.
#[derive(Debug, Clone)]
pub struct Entangled {
    prepared: Prepared,
}

/// Step 3 done: both users have measured and announced.
#[derive(Debug, Clone)]
pub struct Measured {
    alice: InputState,
    bob: InputState,
    state: StateVector,
    transcript: Transcript,
    probability: f64,
}

/// Step 4 done: Charlie has acted (or stayed silent).
#[derive(Debug, Clone)]
pub struct Announced {
    measured: Measured,
}

impl Prepared {
    pub fn new(alice: InputState, bob: InputState) -> Result<Self> {
        let state = compose_system(&build_channel(), &alice, &bob)?;
        Ok(Prepared { alice, bob, state })
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn entangle(self) -> Result<Entangled> {
        let state = step2_cnots(&self.state)?;
        Ok(Entangled {
            prepared: Prepared { state, ..self },
        })
    }
}

impl Entangled {
    pub fn state(&self) -> &StateVector {
        &self.prepared.state
    }

    pub fn measure_users(self, mode: &mut RunMode<'_>) -> Result<Measured> {
        let Prepared { alice, bob, state } = self.prepared;
        let mut transcript = Transcript::new();
        let (az, ax, pa, state) = ALICE.measure(&state, mode)?;
        transcript.push(ALICE.announce(az, ax))?;
        let (bz, bx, pb, state) = BOB.measure(&state, mode)?;
        transcript.push(BOB.announce(bz, bx))?;
        Ok(Measured {
            alice,
            bob,
            state,
            transcript,
            probability: pa * pb,
        })
    }
}

impl Measured {
    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn probability(&self) -> f64 {
        self.probability
    }

    pub fn charlie(mut self, cooperate: bool, mode: &mut RunMode<'_>) -> Result<Announced> {
        if !cooperate {
            return Ok(Announced { measured: self });
        }
        let (bell, p, state) = match mode {
            RunMode::Forced(b) => {
                let (p, s) = step4_charlie_forced(&self.state, b.bell)?;
                (b.bell, p, s)
            }
            RunMode::Sampled(rng) => match step4_charlie(&self.state, true, rng)? {
                (Some((o, p)), s) => (o, p, s),
                (None, _) => unreachable!("cooperating Charlie always measures"),
            },
        };
        self.transcript.push(Message {
            sender: Party::Charlie,
            recipients: vec![Party::Alice, Party::Bob],
            payload: Payload::Bell(bell),
        })?;
        self.state = state;
        self.probability *= p;
        Ok(Announced { measured: self })
    }
}

impl Announced {
    pub fn transcript(&self) -> &Transcript {
        &self.measured.transcript
    }

    pub fn state(&self) -> &StateVector {
        &self.measured.state
    }

    /// Both receivers correct their qubits from their own transcript views.
    pub fn recover(self) -> Result<ProtocolResult> {
        let Measured {
            alice,
            bob,
            state,
            transcript,
            probability,
        } = self.measured;
        let table = CorrectionTable::derived()?;
        let correction = PauliCorrection::new(
            BOB.correction(&transcript, table)?,
            ALICE.correction(&transcript, table)?,
        );
        let fixed = apply_correction(&state, correction)?;
        let (fidelity_b1, fidelity_a2) = receiver_fidelities(&fixed, &alice, &bob)?;
        Ok(ProtocolResult {
            record: transcript.outcome_record()?,
            transcript,
            correction,
            final_b1: fixed.partial_trace(&[QubitLabel::B1])?,
            final_a2: fixed.partial_trace(&[QubitLabel::A2])?,
            fidelity_b1,
            fidelity_a2,
            branch_probability: probability,
        })
    }
}

/// Runs all four steps with a cooperating Charlie and applies the
/// corrections.
pub fn run_protocol(
    alice: &InputState,
    bob: &InputState,
    mut mode: RunMode<'_>,
) -> Result<ProtocolResult> {
    Prepared::new(*alice, *bob)?
        .entangle()?
        .measure_users(&mut mode)?
        .charlie(true, &mut mode)?
        .recover()
}

/// Forced runs over all 64 branches, in branch order.
pub fn enumerate_branches(alice: &InputState, bob: &InputState) -> Result<Vec<ProtocolResult>> {
    use rayon::prelude::*;
    Branch::all()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|b| run_protocol(alice, bob, RunMode::Forced(b)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{BellOutcome, PauliOp};
    use approx::assert_abs_diff_eq;

    #[test]
    fn basis_inputs_teleport_on_every_branch() {
        for b in Branch::all() {
            let r =
                run_protocol(&InputState::zero(), &InputState::one(), RunMode::Forced(b)).unwrap();
            assert_abs_diff_eq!(r.final_b1.get(0, 0).re, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(r.final_a2.get(1, 1).re, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(r.min_fidelity(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(r.branch_probability, 1.0 / 64.0, epsilon = 1e-12);
            assert_eq!(r.record.branch().unwrap(), b);
        }
    }

    #[test]
    fn sampled_runs_are_perfect() {
        let mut rng = crate::rng::seeded(2024);
        for _ in 0..100 {
            let a = InputState::haar(&mut rng);
            let b = InputState::haar(&mut rng);
            let r = run_protocol(&a, &b, RunMode::Sampled(&mut rng)).unwrap();
            assert!(r.min_fidelity() >= 1.0 - 1e-10);
            assert!(r.branch_probability > 0.0 && r.branch_probability <= 1.0);
        }
    }

    #[test]
    fn transcript_has_charlie_last() {
        let b = UserBranch::new(0, 1, 1, 0).with(BellOutcome::PsiPlus);
        let r = run_protocol(
            &InputState::probe_alice(),
            &InputState::probe_bob(),
            RunMode::Forced(b),
        )
        .unwrap();
        let senders: Vec<_> = r.transcript.messages().iter().map(|m| m.sender).collect();
        assert_eq!(senders, vec![Party::Alice, Party::Bob, Party::Charlie]);
    }

    #[test]
    fn silent_charlie_blocks_only_alice() {
        let b = UserBranch::new(0, 0, 0, 0).with(BellOutcome::PhiPlus);
        let mut mode = RunMode::Forced(b);
        let announced = Prepared::new(InputState::probe_alice(), InputState::probe_bob())
            .unwrap()
            .entangle()
            .unwrap()
            .measure_users(&mut mode)
            .unwrap()
            .charlie(false, &mut mode)
            .unwrap();
        let table = CorrectionTable::derived().unwrap();
        assert_eq!(
            BOB.correction(announced.transcript(), table).unwrap(),
            PauliOp::I
        );
        assert_eq!(
            ALICE.correction(announced.transcript(), table).unwrap_err(),
            Error::MissingCharlieOutcome
        );
        assert_eq!(
            announced.recover().unwrap_err(),
            Error::MissingCharlieOutcome
        );
    }
}

#[cfg(test)]
mod enumerate_tests {
    use super::*;

    #[test]
    fn enumeration_is_in_branch_order() {
        let rs = enumerate_branches(&InputState::probe_alice(), &InputState::probe_bob()).unwrap();
        assert_eq!(rs.len(), 64);
        for (i, r) in rs.iter().enumerate() {
            assert_eq!(r.record.branch().unwrap().index(), i);
        }
    }
}
