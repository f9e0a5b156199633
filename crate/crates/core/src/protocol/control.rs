//! What each receiver can recover when Charlie stays silent.

use serde::{Deserialize, Serialize};

use super::steps::{
    build_channel, compose_system, step2_cnots, step3_measure_forced, step4_charlie_forced,
};
use super::{CorrectionTable, InputState, Receiver, UserBranch};
use crate::qstate::{BellOutcome, DensityMatrix, PauliOp, StateVector};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReceiverPower {
    pub receiver: Receiver,
    /// Whether the derived table makes this receiver's correction depend on
    /// Charlie's outcome.
    pub charlie_dependent: bool,
    /// Fidelities of the Charlie-averaged state over the 16 user branches.
    pub fidelity_min: f64,
    pub fidelity_max: f64,
    pub fidelity_mean: f64,
    /// Largest trace distance from `I/2` over the user branches.
    pub max_trace_distance_to_mixed: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlPower {
    pub b1: ReceiverPower,
    pub a2: ReceiverPower,
}

impl ControlPower {
    pub fn receivers(&self) -> [&ReceiverPower; 2] {
        [&self.b1, &self.a2]
    }

    /// The receiver that needs Charlie, if exactly one does.
    pub fn controlled(&self) -> Option<&ReceiverPower> {
        match (self.b1.charlie_dependent, self.a2.charlie_dependent) {
            (true, false) => Some(&self.b1),
            (false, true) => Some(&self.a2),
            _ => None,
        }
    }

    pub fn uncontrolled(&self) -> Option<&ReceiverPower> {
        match (self.b1.charlie_dependent, self.a2.charlie_dependent) {
            (true, false) => Some(&self.a2),
            (false, true) => Some(&self.b1),
            _ => None,
        }
    }

    /// `(controlled receiver mean fidelity, uncontrolled receiver minimum
    /// fidelity)` without Charlie's announcement.
    pub fn fidelities(&self) -> Option<(f64, f64)> {
        Some((
            self.controlled()?.fidelity_mean,
            self.uncontrolled()?.fidelity_min,
        ))
    }
}

/// The correction a receiver applies without Charlie's announcement: its
/// table entry when that does not depend on Charlie, otherwise the `phi+`
/// entry as a guess.
fn blind_correction(table: &CorrectionTable, r: Receiver, u: UserBranch) -> PauliOp {
    table
        .correction_for(r, u, None)
        .or_else(|_| table.correction_for(r, u, Some(BellOutcome::PhiPlus)))
        .unwrap_or(PauliOp::I)
}

/// Per user branch, averages each receiver's reduced state over Charlie's
/// unannounced Bell outcome, after the receiver's Charlie-blind correction,
/// and scores it against the receiver's target payload.
pub fn control_power(alice: &InputState, bob: &InputState) -> Result<ControlPower> {
    let table = CorrectionTable::derived()?;
    let dependent = table.charlie_dependent();
    let entangled = step2_cnots(&compose_system(&build_channel(), alice, bob)?)?;

    let mut per_receiver = [Vec::new(), Vec::new()];
    for u in UserBranch::all() {
        let (_, s3) = step3_measure_forced(&entangled, u)?;
        let finals = BellOutcome::ALL
            .iter()
            .map(|&k| step4_charlie_forced(&s3, k))
            .collect::<Result<Vec<(f64, StateVector)>>>()?;
        for (slot, r) in Receiver::BOTH.into_iter().enumerate() {
            let fix = blind_correction(table, r, u).on(r.qubit());
            let rhos = finals
                .iter()
                .map(|(p, s)| Ok((*p, s.apply(&fix)?.partial_trace(&[r.qubit()])?)))
                .collect::<Result<Vec<_>>>()?;
            let avg = DensityMatrix::weighted_sum(rhos.iter().map(|(p, rho)| (*p, rho)))?;
            let target = match r {
                Receiver::B1 => alice.amplitudes(),
                Receiver::A2 => bob.amplitudes(),
            };
            let mixed = DensityMatrix::maximally_mixed(vec![r.qubit()]);
            per_receiver[slot].push((avg.fidelity_to(target)?, avg.trace_distance(&mixed)?));
        }
    }

    let summarize = |r: Receiver, rows: &[(f64, f64)]| ReceiverPower {
        receiver: r,
        charlie_dependent: dependent.contains(&r),
        fidelity_min: rows.iter().map(|x| x.0).fold(f64::INFINITY, f64::min),
        fidelity_max: rows.iter().map(|x| x.0).fold(f64::NEG_INFINITY, f64::max),
        fidelity_mean: rows.iter().map(|x| x.0).sum::<f64>() / rows.len() as f64,
        max_trace_distance_to_mixed: rows.iter().map(|x| x.1).fold(0.0, f64::max),
    };
    Ok(ControlPower {
        b1: summarize(Receiver::B1, &per_receiver[0]),
        a2: summarize(Receiver::A2, &per_receiver[1]),
    })
}
