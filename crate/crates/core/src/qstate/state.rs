use std::collections::HashSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Gate, QubitLabel, C64, FRAC_1_SQRT_2};
use crate::{Error, Result, INPUT_NORM_TOL, ZERO_PROB_TOL};

/// Single-qubit measurement basis. In the X basis outcome 0 is `|+>` and
/// outcome 1 is `|->`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    Z,
    X,
}

/// Pure state over an ordered, labeled register.
///
/// Values are immutable; every operation returns a new state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    labels: Vec<QubitLabel>,
    amps: Vec<C64>,
}

fn check_labels(labels: &[QubitLabel]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for &l in labels {
        if !seen.insert(l) {
            return Err(Error::DuplicateLabel(l));
        }
    }
    Ok(())
}

fn norm_sqr(amps: &[C64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

/// Picks an index with the given (non-negative, summing to ~1) weights.
pub(crate) fn sample_index<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut last = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p < ZERO_PROB_TOL {
            continue;
        }
        acc += p;
        last = i;
        if u < acc {
            return i;
        }
    }
    last
}

impl StateVector {
    /// Builds a state, requiring the amplitudes to be normalized within
    /// `INPUT_NORM_TOL`.
    pub fn new(labels: Vec<QubitLabel>, amps: Vec<C64>) -> Result<Self> {
        let s = Self::from_parts(labels, amps)?;
        let n = s.norm_sqr();
        if (n - 1.0).abs() > INPUT_NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr: n });
        }
        Ok(s)
    }

    /// Builds a state from unnormalized amplitudes and rescales it.
    pub fn normalized(labels: Vec<QubitLabel>, amps: Vec<C64>) -> Result<Self> {
        let mut s = Self::from_parts(labels, amps)?;
        let n = s.norm_sqr();
        if n < ZERO_PROB_TOL {
            return Err(Error::ZeroProbabilityBranch { probability: n });
        }
        let scale = 1.0 / n.sqrt();
        s.amps.iter_mut().for_each(|a| *a *= scale);
        Ok(s)
    }

    fn from_parts(labels: Vec<QubitLabel>, amps: Vec<C64>) -> Result<Self> {
        check_labels(&labels)?;
        if amps.len() != 1usize << labels.len() {
            return Err(Error::LengthMismatch {
                qubits: labels.len(),
                found: amps.len(),
            });
        }
        Ok(StateVector { labels, amps })
    }

    /// Computational basis state `|index>`, first label most significant.
    pub fn basis_state(labels: Vec<QubitLabel>, index: usize) -> Result<Self> {
        let mut amps = vec![C64::new(0.0, 0.0); 1usize << labels.len()];
        let len = amps.len();
        let slot = amps.get_mut(index).ok_or(Error::DimensionMismatch {
            expected: len,
            found: index,
        })?;
        *slot = C64::new(1.0, 0.0);
        Self::from_parts(labels, amps)
    }

    /// `alpha0|0> + alpha1|1>` on one qubit.
    pub fn prepare_single(label: QubitLabel, alpha0: C64, alpha1: C64) -> Result<Self> {
        Self::new(vec![label], vec![alpha0, alpha1])
    }

    /// The zero-qubit state with amplitude 1.
    pub fn empty() -> Self {
        StateVector {
            labels: Vec::new(),
            amps: vec![C64::new(1.0, 0.0)],
        }
    }

    pub fn labels(&self) -> &[QubitLabel] {
        &self.labels
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amps)
    }

    pub fn count_nonzero(&self, tol: f64) -> usize {
        self.amps.iter().filter(|a| a.norm() > tol).count()
    }

    pub fn position(&self, label: QubitLabel) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(Error::UnknownLabel(label))
    }

    /// Bit shift of the label inside a basis index.
    fn shift(&self, label: QubitLabel) -> Result<usize> {
        Ok(self.labels.len() - 1 - self.position(label)?)
    }

    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let labels: Vec<_> = self.labels.iter().chain(&other.labels).copied().collect();
        check_labels(&labels)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(StateVector { labels, amps })
    }

    pub fn apply(&self, gate: &Gate) -> Result<StateVector> {
        let mut amps = self.amps.clone();
        match *gate {
            Gate::Single { gate, target } => {
                let bit = 1usize << self.shift(target)?;
                let m = gate.matrix();
                for i in (0..amps.len()).filter(|i| i & bit == 0) {
                    let (a0, a1) = (amps[i], amps[i | bit]);
                    amps[i] = m[0][0] * a0 + m[0][1] * a1;
                    amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
                }
            }
            Gate::Cnot { control, target } => {
                let c = 1usize << self.shift(control)?;
                let t = 1usize << self.shift(target)?;
                if c == t {
                    return Err(Error::DuplicateLabel(control));
                }
                for i in (0..amps.len()).filter(|i| i & c != 0 && i & t == 0) {
                    amps.swap(i, i | t);
                }
            }
        }
        Ok(StateVector {
            labels: self.labels.clone(),
            amps,
        })
    }

    pub fn apply_all<'a, I>(&self, gates: I) -> Result<StateVector>
    where
        I: IntoIterator<Item = &'a Gate>,
    {
        gates.into_iter().try_fold(self.clone(), |s, g| s.apply(g))
    }

    /// Unnormalized projection onto `outcome` of `label` in `basis`, with
    /// the measured qubit removed from the register.
    fn project(&self, label: QubitLabel, basis: Basis, outcome: u8) -> Result<StateVector> {
        let shift = self.shift(label)?;
        let bit = 1usize << shift;
        let low = bit - 1;
        let labels: Vec<_> = self
            .labels
            .iter()
            .copied()
            .filter(|&l| l != label)
            .collect();
        let half = self.amps.len() / 2;
        let sign = if outcome == 0 { 1.0 } else { -1.0 };
        let amps = (0..half)
            .map(|k| {
                // reinsert the measured bit at `shift`
                let i0 = ((k & !low) << 1) | (k & low);
                let (a0, a1) = (self.amps[i0], self.amps[i0 | bit]);
                match basis {
                    Basis::Z if outcome == 0 => a0,
                    Basis::Z => a1,
                    Basis::X => (a0 + a1 * sign) * FRAC_1_SQRT_2,
                }
            })
            .collect();
        Ok(StateVector { labels, amps })
    }

    /// Born probability of `outcome` for `label` measured in `basis`.
    pub fn probability(&self, label: QubitLabel, basis: Basis, outcome: u8) -> Result<f64> {
        Ok(self.project(label, basis, outcome)?.norm_sqr())
    }

    /// Conditions on a measurement outcome: returns its probability and the
    /// renormalized post-measurement state without the measured qubit.
    pub fn postselect(
        &self,
        label: QubitLabel,
        basis: Basis,
        outcome: u8,
    ) -> Result<(f64, StateVector)> {
        let mut s = self.project(label, basis, outcome)?;
        let p = s.norm_sqr();
        if p < ZERO_PROB_TOL {
            return Err(Error::ZeroProbabilityBranch { probability: p });
        }
        let scale = 1.0 / p.sqrt();
        s.amps.iter_mut().for_each(|a| *a *= scale);
        Ok((p, s))
    }

    /// Samples a measurement outcome and returns `(outcome, probability,
    /// post-measurement state)`. Agrees with [`postselect`](Self::postselect)
    /// for the sampled outcome.
    pub fn measure<R: Rng + ?Sized>(
        &self,
        label: QubitLabel,
        basis: Basis,
        rng: &mut R,
    ) -> Result<(u8, f64, StateVector)> {
        let p0 = self.probability(label, basis, 0)?;
        let outcome = sample_index(&[p0, 1.0 - p0], rng) as u8;
        let (p, s) = self.postselect(label, basis, outcome)?;
        Ok((outcome, p, s))
    }

    /// Same state with the register permuted into `order`.
    pub fn reordered(&self, order: &[QubitLabel]) -> Result<StateVector> {
        if order.len() != self.labels.len() {
            return Err(Error::DimensionMismatch {
                expected: self.labels.len(),
                found: order.len(),
            });
        }
        check_labels(order)?;
        let shifts = order
            .iter()
            .map(|&l| self.shift(l))
            .collect::<Result<Vec<_>>>()?;
        let n = order.len();
        let amps = (0..self.amps.len())
            .map(|j| {
                let src = shifts
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (p, &s)| acc | (((j >> (n - 1 - p)) & 1) << s));
                self.amps[src]
            })
            .collect();
        Ok(StateVector {
            labels: order.to_vec(),
            amps,
        })
    }

    /// `<self|other>`, with `other` brought into this register's label order.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        let other = other.reordered(&self.labels)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// True iff `|<self|other>| >= 1 - tol`.
    pub fn equal_up_to_phase(&self, other: &StateVector, tol: f64) -> Result<bool> {
        Ok(self.inner(other)?.norm() >= 1.0 - tol)
    }

    /// Same amplitudes on a different set of labels (position-wise).
    pub fn relabeled(&self, labels: Vec<QubitLabel>) -> Result<StateVector> {
        if labels.len() != self.labels.len() {
            return Err(Error::DimensionMismatch {
                expected: self.labels.len(),
                found: labels.len(),
            });
        }
        Self::from_parts(labels, self.amps.clone())
    }

    /// `|<target|self>|^2` for a one-qubit state.
    pub fn fidelity_to(&self, target: &[C64; 2]) -> Result<f64> {
        if self.labels.len() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: self.labels.len(),
            });
        }
        let ov = target[0].conj() * self.amps[0] + target[1].conj() * self.amps[1];
        Ok(ov.norm_sqr())
    }
}

impl fmt::Display for StateVector {
    /// Ket expansion of the nonzero amplitudes, e.g. `(0.7071+0i)|00> + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.labels.len();
        let labels: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}] ", labels.join(","))?;
        let mut first = true;
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() < 1e-12 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(
                f,
                "({:.6}{:+.6}i)|{:0width$b}>",
                a.re,
                a.im,
                i,
                width = n.max(1)
            )?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::OneQubitGate;
    use approx::assert_abs_diff_eq;

    const Q0: QubitLabel = QubitLabel::Generic(0);
    const Q1: QubitLabel = QubitLabel::Generic(1);
    const Q2: QubitLabel = QubitLabel::Generic(2);

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn phi_plus(a: QubitLabel, b: QubitLabel) -> StateVector {
        let h = FRAC_1_SQRT_2;
        StateVector::new(
            vec![a, b],
            vec![c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn prepare_single_examples() {
        let zero = StateVector::prepare_single(Q0, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(zero.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);

        let h = FRAC_1_SQRT_2;
        let plus = StateVector::prepare_single(Q0, c(h, 0.0), c(h, 0.0)).unwrap();
        let from_h = StateVector::basis_state(vec![Q0], 0)
            .unwrap()
            .apply(&Gate::h(Q0))
            .unwrap();
        assert!(plus.equal_up_to_phase(&from_h, 1e-12).unwrap());

        let s = StateVector::prepare_single(Q0, c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        assert_eq!(s.amplitudes(), &[c(0.6, 0.0), c(0.0, 0.8)]);
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn prepare_single_rejects_unnormalized() {
        let err = StateVector::prepare_single(Q0, c(1.0, 0.0), c(1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::NotNormalized { .. }));
    }

    #[test]
    fn tensor_examples() {
        let zero = StateVector::basis_state(vec![Q0], 0).unwrap();
        let one = StateVector::basis_state(vec![Q1], 1).unwrap();
        let s = zero.tensor(&one).unwrap();
        assert_eq!(s.labels(), &[Q0, Q1]);
        assert_eq!(s.amplitudes()[0b01], c(1.0, 0.0));
        assert_eq!(s.count_nonzero(1e-12), 1);

        let pp = phi_plus(Q0, Q1)
            .tensor(&phi_plus(Q2, QubitLabel::Generic(3)))
            .unwrap();
        assert_eq!(pp.count_nonzero(1e-12), 4);
        for a in pp.amplitudes().iter().filter(|a| a.norm() > 1e-12) {
            assert_abs_diff_eq!(a.re, 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn tensor_rejects_shared_label() {
        let a = StateVector::basis_state(vec![Q0], 0).unwrap();
        assert_eq!(a.tensor(&a).unwrap_err(), Error::DuplicateLabel(Q0));
    }

    #[test]
    fn gate_examples() {
        let plus = StateVector::basis_state(vec![Q0], 0)
            .unwrap()
            .apply(&Gate::h(Q0))
            .unwrap();
        assert_abs_diff_eq!(plus.amplitudes()[0].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(plus.amplitudes()[1].re, FRAC_1_SQRT_2, epsilon = 1e-15);

        // |1>_A |0>_a1 -> |1>_A |1>_a1
        let s = StateVector::basis_state(vec![QubitLabel::A, QubitLabel::A1], 0b10).unwrap();
        let s = s.apply(&Gate::cnot(QubitLabel::A, QubitLabel::A1)).unwrap();
        assert_eq!(s.amplitudes()[0b11], c(1.0, 0.0));

        let psi = StateVector::prepare_single(Q0, c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let out = psi.apply(&Gate::single(OneQubitGate::IY, Q0)).unwrap();
        // alpha1|0> - alpha0|1>
        assert_eq!(out.amplitudes(), &[c(0.0, 0.8), c(-0.6, 0.0)]);
    }

    #[test]
    fn gate_on_unknown_label() {
        let s = StateVector::basis_state(vec![Q0], 0).unwrap();
        assert_eq!(s.apply(&Gate::h(Q1)).unwrap_err(), Error::UnknownLabel(Q1));
    }

    #[test]
    fn postselect_examples() {
        let (p, s) = phi_plus(Q0, Q1).postselect(Q0, Basis::Z, 0).unwrap();
        assert_abs_diff_eq!(p, 0.5, epsilon = 1e-15);
        assert_eq!(s.labels(), &[Q1]);
        assert_abs_diff_eq!(s.amplitudes()[0].re, 1.0, epsilon = 1e-15);

        let plus = StateVector::basis_state(vec![Q0], 0)
            .unwrap()
            .apply(&Gate::h(Q0))
            .unwrap();
        let err = plus.postselect(Q0, Basis::X, 1).unwrap_err();
        assert!(matches!(err, Error::ZeroProbabilityBranch { .. }));
        let (p, s) = plus.postselect(Q0, Basis::X, 0).unwrap();
        assert_abs_diff_eq!(p, 1.0, epsilon = 1e-15);
        assert_eq!(s.num_qubits(), 0);
    }

    #[test]
    fn reorder_matches_manual_permutation() {
        // |q0 q1 q2> = |110>
        let s = StateVector::basis_state(vec![Q0, Q1, Q2], 0b110).unwrap();
        let r = s.reordered(&[Q2, Q0, Q1]).unwrap();
        assert_eq!(r.amplitudes()[0b011], c(1.0, 0.0));
        assert!(s.equal_up_to_phase(&r, 1e-12).unwrap());
    }

    #[test]
    fn phase_comparison() {
        let psi = StateVector::prepare_single(Q0, c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let neg = StateVector::new(vec![Q0], vec![c(-0.6, 0.0), c(0.0, -0.8)]).unwrap();
        assert!(psi.equal_up_to_phase(&neg, 1e-12).unwrap());
        let zero = StateVector::basis_state(vec![Q0], 0).unwrap();
        let one = StateVector::basis_state(vec![Q0], 1).unwrap();
        assert!(!zero.equal_up_to_phase(&one, 1e-12).unwrap());
        let two = StateVector::basis_state(vec![Q0, Q1], 1).unwrap();
        assert!(matches!(
            zero.equal_up_to_phase(&two, 1e-12).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn fidelity_is_phase_invariant() {
        let target = [c(0.6, 0.0), c(0.0, 0.8)];
        for theta in [0.0, 0.3, 1.7, -2.9] {
            let ph = C64::from_polar(1.0, theta);
            let s = StateVector::new(vec![Q0], vec![ph * target[0], ph * target[1]]).unwrap();
            assert_abs_diff_eq!(s.fidelity_to(&target).unwrap(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn display_lists_nonzero_terms() {
        let s = StateVector::basis_state(vec![Q0, Q1], 0b10).unwrap();
        assert_eq!(s.to_string(), "[q0,q1] (1.000000+0.000000i)|10>");
    }
}
