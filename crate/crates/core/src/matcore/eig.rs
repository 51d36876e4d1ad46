use super::dense::DenseMatrix;
use super::scalar::{phase, Cmplx, ONE, ZERO};
use crate::error::{Error, Result};

/// Largest dimension accepted by the dense eigensolver.
pub const MAX_DENSE_DIM: usize = 256;

/// Complex Schur form `M = Z T Z*` with `Z` unitary and `T` upper triangular.
#[derive(Debug, Clone)]
pub struct SchurForm {
    pub unitary: DenseMatrix,
    pub triangular: DenseMatrix,
}

/// Eigenvalues, with unit-norm eigenvectors as columns when requested.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<Cmplx>,
    pub vectors: Option<DenseMatrix>,
}

/// Rotation `[[c, s], [-conj(s), c]]` with real `c` mapping `(x, y)` to `(r, 0)`.
fn givens(x: Cmplx, y: Cmplx) -> (f64, Cmplx) {
    if y == ZERO {
        return (1.0, ZERO);
    }
    if x == ZERO {
        return (0.0, ONE);
    }
    let ax = x.norm();
    let nu = ax.hypot(y.norm());
    (ax / nu, phase(x) * y.conj() / nu)
}

/// Applies the rotation to rows `k`, `k + 1` over the column range.
fn rotate_rows(m: &mut DenseMatrix, k: usize, c: f64, s: Cmplx, cols: std::ops::Range<usize>) {
    for j in cols {
        let (p, q) = (m[(k, j)], m[(k + 1, j)]);
        m[(k, j)] = p * c + s * q;
        m[(k + 1, j)] = q * c - s.conj() * p;
    }
}

/// Applies the adjoint rotation from the right to columns `k`, `k + 1` over the row range.
fn rotate_cols(m: &mut DenseMatrix, k: usize, c: f64, s: Cmplx, rows: std::ops::Range<usize>) {
    for i in rows {
        let (p, q) = (m[(i, k)], m[(i, k + 1)]);
        m[(i, k)] = p * c + q * s.conj();
        m[(i, k + 1)] = q * c - p * s;
    }
}

fn check_input(m: &DenseMatrix) -> Result<usize> {
    let n = m.require_square()?;
    m.require_finite()?;
    if n > MAX_DENSE_DIM {
        return Err(Error::TooLarge {
            n,
            limit: MAX_DENSE_DIM,
        });
    }
    Ok(n)
}

/// Householder reduction to upper Hessenberg form, accumulating the unitary factor.
fn hessenberg(m: &DenseMatrix) -> (DenseMatrix, DenseMatrix) {
    let n = m.rows();
    let mut h = m.clone();
    let mut q = DenseMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Cmplx> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = -phase(x[0]) * norm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        for j in 0..n {
            let s: Cmplx = v
                .iter()
                .enumerate()
                .map(|(l, vl)| vl.conj() * h[(k + 1 + l, j)])
                .sum();
            let s = s * beta;
            for (l, vl) in v.iter().enumerate() {
                h[(k + 1 + l, j)] -= s * vl;
            }
        }
        for target in [&mut h, &mut q] {
            for i in 0..n {
                let s: Cmplx = v
                    .iter()
                    .enumerate()
                    .map(|(l, vl)| target[(i, k + 1 + l)] * vl)
                    .sum();
                let s = s * beta;
                for (l, vl) in v.iter().enumerate() {
                    target[(i, k + 1 + l)] -= s * vl.conj();
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    (h, q)
}

/// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
fn wilkinson_shift(a: Cmplx, b: Cmplx, c: Cmplx, d: Cmplx) -> Cmplx {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let (m1, m2) = (mean + disc, mean - disc);
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// Complex Schur decomposition by Hessenberg reduction and single-shift QR iteration.
pub fn schur_dense(m: &DenseMatrix) -> Result<SchurForm> {
    let n = check_input(m)?;
    let (mut h, mut z) = hessenberg(m);
    if n <= 1 {
        return Ok(SchurForm {
            unitary: z,
            triangular: h,
        });
    }
    let hnorm = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let budget = 30 * n;
    let mut total = 0;
    let mut since_deflation = 0;
    let mut hi = n - 1;
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let mut s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if s == 0.0 {
                s = hnorm;
            }
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * s {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        total += 1;
        since_deflation += 1;
        if total > budget {
            return Err(Error::NoConvergence { sweeps: budget });
        }
        let shift = if since_deflation % 10 == 0 {
            h[(hi, hi)] + Cmplx::new(0.75 * h[(hi, hi - 1)].norm(), 0.25 * h[(hi, hi - 1)].norm())
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        for k in lo..hi {
            let (x, y) = if k == lo {
                (h[(lo, lo)] - shift, h[(lo + 1, lo)])
            } else {
                (h[(k, k - 1)], h[(k + 1, k - 1)])
            };
            let (c, s) = givens(x, y);
            let first = if k == lo { lo } else { k - 1 };
            rotate_rows(&mut h, k, c, s, first..n);
            if k > lo {
                h[(k + 1, k - 1)] = ZERO;
            }
            rotate_cols(&mut h, k, c, s, 0..(k + 3).min(hi + 1));
            rotate_cols(&mut z, k, c, s, 0..n);
        }
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok(SchurForm {
        unitary: z,
        triangular: h,
    })
}

impl SchurForm {
    pub fn eigenvalues(&self) -> Vec<Cmplx> {
        self.triangular.diagonal()
    }

    /// Exchanges diagonal entries `k` and `k + 1` by a unitary rotation.
    pub fn swap_adjacent(&mut self, k: usize) {
        let t = &mut self.triangular;
        let n = t.rows();
        let (t11, t22) = (t[(k, k)], t[(k + 1, k + 1)]);
        let (c, s) = givens(t[(k, k + 1)], t22 - t11);
        if k + 2 < n {
            rotate_rows(t, k, c, s, k + 2..n);
        }
        rotate_cols(t, k, c, s, 0..k);
        t[(k, k)] = t22;
        t[(k + 1, k + 1)] = t11;
        rotate_cols(&mut self.unitary, k, c, s, 0..n);
    }

    /// Moves the selected diagonal positions to the leading block, keeping their relative order.
    pub fn reorder_to_front(&mut self, selected: &[usize]) {
        let n = self.triangular.rows();
        let mut position: Vec<usize> = (0..n).collect();
        let mut sorted = selected.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for (target, &original) in sorted.iter().enumerate() {
            let mut current = position[original];
            while current > target {
                self.swap_adjacent(current - 1);
                let moved = position
                    .iter()
                    .position(|&p| p == current - 1)
                    .expect("tracked");
                position[moved] = current;
                position[original] = current - 1;
                current -= 1;
            }
        }
    }

    /// Unit eigenvectors from back-substitution on the triangular factor.
    pub fn eigenvectors(&self) -> DenseMatrix {
        let t = &self.triangular;
        let n = t.rows();
        let smin = (f64::EPSILON * t.frobenius_norm()).max(f64::MIN_POSITIVE);
        let mut y = DenseMatrix::zeros(n, n);
        for k in 0..n {
            let lambda = t[(k, k)];
            let mut col = vec![ZERO; n];
            col[k] = ONE;
            for j in (0..k).rev() {
                let s: Cmplx = (j + 1..=k).map(|m| t[(j, m)] * col[m]).sum();
                let mut d = t[(j, j)] - lambda;
                if d.norm() < smin {
                    d = Cmplx::new(smin, 0.0);
                }
                col[j] = -s / d;
            }
            let v = self.unitary.mul_vec(&col).expect("square factors");
            let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            for (i, x) in v.into_iter().enumerate() {
                y[(i, k)] = x / norm;
            }
        }
        y
    }
}

/// Eigenvalues (Schur order) and, optionally, unit eigenvectors.
pub fn eig_dense(m: &DenseMatrix, want_vectors: bool) -> Result<EigenSystem> {
    let schur = schur_dense(m)?;
    let vectors = want_vectors.then(|| schur.eigenvectors());
    Ok(EigenSystem {
        values: schur.eigenvalues(),
        vectors,
    })
}
