use super::dense::DenseMatrix;
use super::scalar::{phase, Cmplx, ZERO};
use super::tolerance::Tolerance;

/// Householder QR with column pivoting: `A Π = Q R`.
#[derive(Debug, Clone)]
pub struct PivotedQr {
    pub q: DenseMatrix,
    pub r: DenseMatrix,
    /// Column `j` of `A Π` is column `columns[j]` of `A`.
    pub columns: Vec<usize>,
}

impl PivotedQr {
    pub fn new(a: &DenseMatrix) -> Self {
        let (m, n) = (a.rows(), a.cols());
        let mut r = a.clone();
        let mut q = DenseMatrix::identity(m);
        let mut columns: Vec<usize> = (0..n).collect();
        for k in 0..m.min(n) {
            let norms: Vec<f64> = (k..n)
                .map(|j| (k..m).map(|i| r[(i, j)].norm_sqr()).sum::<f64>())
                .collect();
            let best = (0..norms.len()).fold(0, |b, j| if norms[j] > norms[b] { j } else { b }) + k;
            if best != k {
                for i in 0..m {
                    let tmp = r[(i, k)];
                    r[(i, k)] = r[(i, best)];
                    r[(i, best)] = tmp;
                }
                columns.swap(k, best);
            }
            let norm = norms[best - k].sqrt();
            if norm == 0.0 {
                break;
            }
            let alpha = -phase(r[(k, k)]) * norm;
            let mut v: Vec<Cmplx> = (k..m).map(|i| r[(i, k)]).collect();
            v[0] -= alpha;
            let vnorm2: f64 = v.iter().map(|x| x.norm_sqr()).sum();
            if vnorm2 == 0.0 {
                continue;
            }
            let beta = 2.0 / vnorm2;
            for j in k..n {
                let s: Cmplx = v
                    .iter()
                    .enumerate()
                    .map(|(l, vl)| vl.conj() * r[(k + l, j)])
                    .sum();
                let s = s * beta;
                for (l, vl) in v.iter().enumerate() {
                    r[(k + l, j)] -= s * vl;
                }
            }
            for i in 0..m {
                let s: Cmplx = v.iter().enumerate().map(|(l, vl)| q[(i, k + l)] * vl).sum();
                let s = s * beta;
                for (l, vl) in v.iter().enumerate() {
                    q[(i, k + l)] -= s * vl.conj();
                }
            }
            r[(k, k)] = alpha;
            for i in k + 1..m {
                r[(i, k)] = ZERO;
            }
        }
        Self { q, r, columns }
    }

    /// Number of diagonal entries of R above the threshold.
    pub fn rank(&self, threshold: f64) -> usize {
        self.r
            .diagonal()
            .iter()
            .take_while(|d| d.norm() > threshold)
            .count()
    }
}

/// Rank threshold `max(abs, rel * ||A||_F * n)`.
pub fn rank_threshold(a: &DenseMatrix, tol: Tolerance) -> f64 {
    tol.cutoff(a.frobenius_norm() * a.rows().max(a.cols()) as f64)
}

pub fn numerical_rank(a: &DenseMatrix, threshold: f64) -> usize {
    PivotedQr::new(a).rank(threshold)
}

pub fn rank(a: &DenseMatrix, tol: Tolerance) -> usize {
    numerical_rank(a, rank_threshold(a, tol))
}

pub fn nullity(a: &DenseMatrix, tol: Tolerance) -> usize {
    a.cols() - rank(a, tol)
}

/// Orthonormal basis (as columns) of the numerical null space, using pivoted QR of `A*`.
pub fn null_space(a: &DenseMatrix, threshold: f64) -> DenseMatrix {
    let qr = PivotedQr::new(&a.adjoint());
    let r = qr.rank(threshold);
    let n = a.cols();
    qr.q.submatrix(0..n, r..n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::scalar::ONE;

    #[test]
    fn reconstructs_with_pivoting() {
        let a = DenseMatrix::from_fn(4, 3, |i, j| {
            Cmplx::new((i * 3 + j) as f64, (i as f64) - (j as f64))
        });
        let qr = PivotedQr::new(&a);
        let ap = a.permute_columns(&qr.columns);
        assert!((&qr.q * &qr.r).distance(&ap).unwrap() < 1e-12);
        let qq = &qr.q.adjoint() * &qr.q;
        assert!(qq.distance(&DenseMatrix::identity(4)).unwrap() < 1e-13);
        assert!(qr.r.lower_norm() == 0.0);
    }

    #[test]
    fn rank_of_nilpotent_chain() {
        let mut j3 = DenseMatrix::zeros(3, 3);
        j3[(0, 1)] = ONE;
        j3[(1, 2)] = ONE;
        let tol = Tolerance::default();
        assert_eq!(nullity(&j3, tol), 1);
        assert_eq!(nullity(&(&j3 * &j3), tol), 2);
        assert_eq!(nullity(&(&(&j3 * &j3) * &j3), tol), 3);
    }

    #[test]
    fn null_space_is_annihilated() {
        let a =
            DenseMatrix::from_real(3, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 1.0, 0.0, 1.0]).unwrap();
        let basis = null_space(&a, 1e-10);
        assert_eq!(basis.cols(), 1);
        assert!((&a * &basis).frobenius_norm() < 1e-12);
    }
}
