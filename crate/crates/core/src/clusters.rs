//! Eigenvalue clusters of a dense Schur form, the basis of the structural classifiers.

use crate::error::{Error, Result};
use crate::matcore::{schur_dense, Cmplx, DenseMatrix, SchurForm, Tolerance};

/// Schur form with eigenvalues grouped by single linkage at `cutoff`; eigenvalues within
/// `cutoff` of the origin form the zero cluster.
#[derive(Debug, Clone)]
pub(crate) struct ClusteredSchur {
    pub schur: SchurForm,
    pub eigenvalues: Vec<Cmplx>,
    pub zero: Vec<usize>,
    pub nonzero: Vec<Vec<usize>>,
    pub cutoff: f64,
    pub scale: f64,
}

impl ClusteredSchur {
    pub fn new(m: &DenseMatrix, tol: Tolerance) -> Result<Self> {
        Self::with_noise_floor(m, 0.0, tol)
    }

    /// Clusters at `max(spectral_cutoff(‖M‖_F), floor)`, where `floor` bounds the rounding
    /// error already present in `m`.
    pub fn with_noise_floor(m: &DenseMatrix, floor: f64, tol: Tolerance) -> Result<Self> {
        let n = m.require_square()?;
        m.require_finite()?;
        if n == 0 {
            return Err(Error::InvalidInput("empty matrix".into()));
        }
        let schur = schur_dense(m)?;
        let eigenvalues = schur.eigenvalues();
        let scale = m.frobenius_norm();
        let cutoff = tol.spectral_cutoff(scale).max(floor);
        // Node n is the origin.
        let near = |i: usize, j: usize| {
            let value = |k: usize| {
                if k == n {
                    Cmplx::new(0.0, 0.0)
                } else {
                    eigenvalues[k]
                }
            };
            (value(i) - value(j)).norm() <= cutoff
        };
        let mut label = vec![usize::MAX; n + 1];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for start in (0..=n).rev() {
            if label[start] != usize::MAX {
                continue;
            }
            let id = groups.len();
            label[start] = id;
            let mut stack = vec![start];
            let mut members = Vec::new();
            while let Some(i) = stack.pop() {
                if i < n {
                    members.push(i);
                }
                for (j, l) in label.iter_mut().enumerate() {
                    if *l == usize::MAX && near(i, j) {
                        *l = id;
                        stack.push(j);
                    }
                }
            }
            members.sort_unstable();
            groups.push(members);
        }
        let zero = groups.remove(0);
        let nonzero = groups.into_iter().filter(|g| !g.is_empty()).collect();
        Ok(Self {
            schur,
            eigenvalues,
            zero,
            nonzero,
            cutoff,
            scale,
        })
    }

    /// Schur form with `indices` moved to the leading block.
    pub fn leading(&self, indices: &[usize]) -> SchurForm {
        let mut s = self.schur.clone();
        s.reorder_to_front(indices);
        s
    }

    /// Leading triangular block for `indices` with its diagonal removed.
    pub fn nilpotent_part(&self, indices: &[usize]) -> DenseMatrix {
        let m = indices.len();
        let s = self.leading(indices);
        DenseMatrix::from_fn(m, m, |i, j| {
            if j > i {
                s.triangular[(i, j)]
            } else {
                Cmplx::new(0.0, 0.0)
            }
        })
    }

    /// The cluster's leading block is numerically a multiple of the identity.
    pub fn is_semisimple(&self, indices: &[usize]) -> bool {
        indices.len() < 2 || self.nilpotent_part(indices).frobenius_norm() <= self.cutoff
    }

    /// Every cluster, the zero cluster included, is semisimple.
    pub fn is_diagonalizable(&self) -> bool {
        self.is_semisimple(&self.zero) && self.nonzero.iter().all(|c| self.is_semisimple(c))
    }

    /// Eigenvalues with the zero cluster snapped to the origin.
    pub fn snapped(&self) -> Vec<Cmplx> {
        let mut v = self.eigenvalues.clone();
        for &i in &self.zero {
            v[i] = Cmplx::new(0.0, 0.0);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(n: usize, data: &[f64]) -> DenseMatrix {
        DenseMatrix::from_real(n, n, data).unwrap()
    }

    #[test]
    fn clusters_split_zero_and_nonzero() {
        let m = real(3, &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let c = ClusteredSchur::new(&m, Tolerance::default()).unwrap();
        assert_eq!(c.zero.len(), 2);
        assert_eq!(c.nonzero.len(), 1);
        assert!(!c.is_semisimple(&c.zero));
        assert!(!c.is_diagonalizable());
    }

    #[test]
    fn repeated_semisimple_eigenvalue() {
        let m = real(3, &[2.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, -1.0]);
        let c = ClusteredSchur::new(&m, Tolerance::default()).unwrap();
        assert!(c.zero.is_empty());
        assert_eq!(c.nonzero.iter().map(Vec::len).max(), Some(2));
        assert!(c.is_diagonalizable());
    }
}
