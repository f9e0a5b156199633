use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::qstate::{QubitLabel, StateVector, C64};
use crate::{Error, Result, INPUT_NORM_TOL};

/// A normalized single-qubit payload `a0|0> + a1|1>`.
///
/// Serialized as the flat array `[re0, im0, re1, im1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct InputState {
    amps: [C64; 2],
}

impl InputState {
    pub fn new(a0: C64, a1: C64) -> Result<Self> {
        let n = a0.norm_sqr() + a1.norm_sqr();
        if !n.is_finite() || (n - 1.0).abs() > INPUT_NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr: n });
        }
        Ok(InputState { amps: [a0, a1] })
    }

    pub fn from_parts(parts: [f64; 4]) -> Result<Self> {
        Self::new(C64::new(parts[0], parts[1]), C64::new(parts[2], parts[3]))
    }

    pub fn zero() -> Self {
        InputState {
            amps: [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        }
    }

    pub fn one() -> Self {
        InputState {
            amps: [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        }
    }

    /// Default probe for Alice: `(0.6, 0.8i)`.
    pub fn probe_alice() -> Self {
        InputState {
            amps: [C64::new(0.6, 0.0), C64::new(0.0, 0.8)],
        }
    }

    /// Default probe for Bob: `(0.36 + 0.48i, 0.8)`.
    pub fn probe_bob() -> Self {
        InputState {
            amps: [C64::new(0.36, 0.48), C64::new(0.8, 0.0)],
        }
    }

    /// Haar-random state: draws `re0, im0, re1, im1` from a standard normal,
    /// normalizes, then rotates the global phase so `a0` is real and
    /// non-negative.
    pub fn haar<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let mut draw = || -> f64 { rng.sample(StandardNormal) };
            let a0 = C64::new(draw(), draw());
            let a1 = C64::new(draw(), draw());
            let n = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
            if n < 1e-300 {
                continue;
            }
            let phase = if a0.norm() > 0.0 {
                a0.conj() / a0.norm()
            } else {
                C64::new(1.0, 0.0)
            };
            return InputState {
                amps: [C64::new(a0.norm() / n, 0.0), a1 * phase / n],
            };
        }
    }

    pub fn amplitudes(&self) -> &[C64; 2] {
        &self.amps
    }

    pub fn parts(&self) -> [f64; 4] {
        [
            self.amps[0].re,
            self.amps[0].im,
            self.amps[1].re,
            self.amps[1].im,
        ]
    }

    pub fn to_state(&self, label: QubitLabel) -> StateVector {
        StateVector::new(vec![label], self.amps.to_vec()).expect("input is normalized")
    }
}

impl TryFrom<[f64; 4]> for InputState {
    type Error = Error;

    fn try_from(parts: [f64; 4]) -> Result<Self> {
        Self::from_parts(parts)
    }
}

impl From<InputState> for [f64; 4] {
    fn from(s: InputState) -> Self {
        s.parts()
    }
}
