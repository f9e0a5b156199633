use nalgebra::DMatrix;

use super::{QubitLabel, StateVector, C64};
use crate::{Error, Result};

/// Density operator over a labeled register, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    labels: Vec<QubitLabel>,
    dim: usize,
    entries: Vec<C64>,
}

impl DensityMatrix {
    pub fn from_pure(s: &StateVector) -> Self {
        let a = s.amplitudes();
        let dim = a.len();
        let entries = (0..dim * dim)
            .map(|k| a[k / dim] * a[k % dim].conj())
            .collect();
        DensityMatrix {
            labels: s.labels().to_vec(),
            dim,
            entries,
        }
    }

    /// `I / 2^n` on `labels`.
    pub fn maximally_mixed(labels: Vec<QubitLabel>) -> Self {
        let dim = 1usize << labels.len();
        let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = C64::new(1.0 / dim as f64, 0.0);
        }
        DensityMatrix {
            labels,
            dim,
            entries,
        }
    }

    /// `sum_k w_k rho_k`; all terms must share one label order.
    pub fn weighted_sum<'a, I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, &'a DensityMatrix)>,
    {
        let mut iter = terms.into_iter();
        let (w, first) = iter.next().ok_or(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        })?;
        let mut acc = first.clone();
        acc.entries.iter_mut().for_each(|e| *e *= w);
        for (w, rho) in iter {
            acc.check_same_register(rho)?;
            for (e, r) in acc.entries.iter_mut().zip(&rho.entries) {
                *e += r * w;
            }
        }
        Ok(acc)
    }

    fn check_same_register(&self, other: &DensityMatrix) -> Result<()> {
        if self.labels != other.labels {
            return Err(Error::DimensionMismatch {
                expected: self.labels.len(),
                found: other.labels.len(),
            });
        }
        Ok(())
    }

    pub fn labels(&self) -> &[QubitLabel] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.dim)
            .all(|i| (0..self.dim).all(|j| (self.get(i, j) - self.get(j, i).conj()).norm() <= tol))
    }

    fn to_matrix(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.entries)
    }

    /// Eigenvalues in ascending order (the matrix is treated as Hermitian).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .to_matrix()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn purity(&self) -> f64 {
        let m = self.to_matrix();
        (&m * &m).trace().re
    }

    /// `<t|rho|t>` for a one-qubit register.
    pub fn fidelity_to(&self, target: &[C64; 2]) -> Result<f64> {
        if self.labels.len() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: self.labels.len(),
            });
        }
        let mut f = C64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                f += target[i].conj() * self.get(i, j) * target[j];
            }
        }
        Ok(f.re)
    }

    /// `1/2 * ||self - other||_1`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        self.check_same_register(other)?;
        let diff = self.to_matrix() - other.to_matrix();
        Ok(0.5
            * diff
                .symmetric_eigenvalues()
                .iter()
                .map(|l| l.abs())
                .sum::<f64>())
    }
}

impl StateVector {
    /// Reduced density matrix on `keep`, in the order given.
    pub fn partial_trace(&self, keep: &[QubitLabel]) -> Result<DensityMatrix> {
        for &l in keep {
            self.position(l)?;
        }
        let mut order = keep.to_vec();
        order.extend(self.labels().iter().filter(|l| !keep.contains(l)));
        let s = self.reordered(&order)?;
        let dk = 1usize << keep.len();
        let dr = s.amplitudes().len() / dk;
        let a = s.amplitudes();
        let entries = (0..dk * dk)
            .map(|k| {
                let (i, j) = (k / dk, k % dk);
                (0..dr).map(|r| a[i * dr + r] * a[j * dr + r].conj()).sum()
            })
            .collect();
        Ok(DensityMatrix {
            labels: keep.to_vec(),
            dim: dk,
            entries,
        })
    }
}
