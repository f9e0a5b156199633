//! The individual protocol steps as pure state transformations.

use rand::Rng;

use super::{Branch, InputState, PauliCorrection, UserBranch};
use crate::qstate::{Basis, BellOutcome, Gate, QubitLabel, StateVector};
use crate::Result;

use QubitLabel::{A, A1, A2, B, B1, B2, C1, C2};

/// Channel register: EPR pairs on `(a1,b1)`, `(c1,a2)` and `(c2,b2)`.
pub const CHANNEL_LABELS: [QubitLabel; 6] = [A1, B1, C1, A2, C2, B2];
/// Channel plus the two payload qubits.
pub const SYSTEM_LABELS: [QubitLabel; 8] = [A1, B1, C1, A2, C2, B2, A, B];
/// Register left after the users measure.
pub const POST_USER_LABELS: [QubitLabel; 4] = [B1, C1, A2, C2];
/// Register left after Charlie's Bell measurement.
pub const RECEIVER_LABELS: [QubitLabel; 2] = [B1, A2];

/// Three `|phi+>` pairs on `(a1,b1)`, `(c1,a2)`, `(c2,b2)`, in the register
/// order `a1 b1 c1 a2 c2 b2`.
pub fn build_channel() -> StateVector {
    let pair = |x, y| BellOutcome::PhiPlus.state(x, y);
    let s = pair(A1, B1)
        .tensor(&pair(C1, A2))
        .and_then(|s| s.tensor(&pair(C2, B2)))
        .and_then(|s| s.reordered(&CHANNEL_LABELS))
        .expect("channel labels are distinct");
    debug_assert_eq!(s.labels(), &CHANNEL_LABELS);
    s
}

/// Channel tensored with Alice's payload on `A` and Bob's on `B`.
pub fn compose_system(
    channel: &StateVector,
    alice: &InputState,
    bob: &InputState,
) -> Result<StateVector> {
    channel.tensor(&alice.to_state(A))?.tensor(&bob.to_state(B))
}

/// `CNOT(A -> a1)` and `CNOT(B -> b2)`.
pub fn step2_cnots(s: &StateVector) -> Result<StateVector> {
    s.apply(&Gate::cnot(A, A1))?.apply(&Gate::cnot(B, B2))
}

/// Alice's measurements (Z on `a1`, X on `A`) conditioned on the given outcomes.
pub fn alice_measure_forced(s: &StateVector, z: u8, x: u8) -> Result<(f64, StateVector)> {
    let (pz, s) = s.postselect(A1, Basis::Z, z)?;
    let (px, s) = s.postselect(A, Basis::X, x)?;
    Ok((pz * px, s))
}

/// Bob's measurements (Z on `b2`, X on `B`) conditioned on the given outcomes.
pub fn bob_measure_forced(s: &StateVector, z: u8, x: u8) -> Result<(f64, StateVector)> {
    let (pz, s) = s.postselect(B2, Basis::Z, z)?;
    let (px, s) = s.postselect(B, Basis::X, x)?;
    Ok((pz * px, s))
}

/// All four user measurements conditioned on `branch`. Returns the joint
/// probability and the state on `b1 c1 a2 c2`.
pub fn step3_measure_forced(s: &StateVector, branch: UserBranch) -> Result<(f64, StateVector)> {
    let (pa, s) = alice_measure_forced(s, branch.alice_z, branch.alice_x)?;
    let (pb, s) = bob_measure_forced(&s, branch.bob_z, branch.bob_x)?;
    Ok((pa * pb, s))
}

/// Sampled version of [`step3_measure_forced`].
pub fn step3_measure<R: Rng + ?Sized>(
    s: &StateVector,
    rng: &mut R,
) -> Result<(UserBranch, f64, StateVector)> {
    let (az, p1, s) = s.measure(A1, Basis::Z, rng)?;
    let (ax, p2, s) = s.measure(A, Basis::X, rng)?;
    let (bz, p3, s) = s.measure(B2, Basis::Z, rng)?;
    let (bx, p4, s) = s.measure(B, Basis::X, rng)?;
    Ok((UserBranch::new(az, ax, bz, bx), p1 * p2 * p3 * p4, s))
}

/// Hadamards on both of Charlie's qubits.
pub fn charlie_hadamards(s: &StateVector) -> Result<StateVector> {
    s.apply(&Gate::h(C1))?.apply(&Gate::h(C2))
}

/// Charlie cooperates with a forced Bell outcome on `(c1, c2)`. Returns the
/// outcome probability and the state on `b1 a2`.
pub fn step4_charlie_forced(s: &StateVector, outcome: BellOutcome) -> Result<(f64, StateVector)> {
    let (p, rest) = charlie_hadamards(s)?.postselect_bell(C1, C2, outcome)?;
    Ok((p, rest.reordered(&RECEIVER_LABELS)?))
}

/// Charlie's step. Without cooperation nothing happens to the state
/// and no outcome is produced.
pub fn step4_charlie<R: Rng + ?Sized>(
    s: &StateVector,
    cooperate: bool,
    rng: &mut R,
) -> Result<(Option<(BellOutcome, f64)>, StateVector)> {
    if !cooperate {
        return Ok((None, s.clone()));
    }
    let (o, p, rest) = charlie_hadamards(s)?.measure_bell(C1, C2, rng)?;
    Ok((Some((o, p)), rest.reordered(&RECEIVER_LABELS)?))
}

/// Runs Steps 1-4 on a fully forced branch. Returns the branch probability
/// and the uncorrected state on `b1 a2`.
pub fn forced_branch(
    alice: &InputState,
    bob: &InputState,
    branch: Branch,
) -> Result<(f64, StateVector)> {
    let s = step2_cnots(&compose_system(&build_channel(), alice, bob)?)?;
    let (p3, s) = step3_measure_forced(&s, branch.user)?;
    let (p4, s) = step4_charlie_forced(&s, branch.bell)?;
    Ok((p3 * p4, s))
}

/// Applies a correction pair to a state on `b1 a2`.
pub fn apply_correction(s: &StateVector, c: PauliCorrection) -> Result<StateVector> {
    s.apply(&c.on_b1.on(B1))?.apply(&c.on_a2.on(A2))
}

/// Fidelity of `b1` against Alice's payload and of `a2` against Bob's.
pub fn receiver_fidelities(
    s: &StateVector,
    alice: &InputState,
    bob: &InputState,
) -> Result<(f64, f64)> {
    let f_b1 = s.partial_trace(&[B1])?.fidelity_to(alice.amplitudes())?;
    let f_a2 = s.partial_trace(&[A2])?.fidelity_to(bob.amplitudes())?;
    Ok((f_b1, f_a2))
}
