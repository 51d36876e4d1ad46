use super::dense::DenseMatrix;
use super::scalar::{Cmplx, ONE, ZERO};
use super::tolerance::Tolerance;
use crate::error::{Error, Result};

/// LU factorization with partial pivoting: `P A = L U`, stored compactly.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: DenseMatrix,
    /// Row `i` of `P A` is row `pivots[i]` of `A`.
    pivots: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl LuFactors {
    /// Factors a square matrix; pivots not exceeding the threshold are flagged as singular
    /// instead of failing, so the determinant stays available.
    pub fn new(a: &DenseMatrix, tol: Tolerance) -> Result<Self> {
        let n = a.require_square()?;
        a.require_finite()?;
        let threshold = tol.abs.max(f64::EPSILON * n as f64 * a.max_abs());
        let mut lu = a.clone();
        let mut pivots: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for k in 0..n {
            let (p, best) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
            if best <= threshold {
                singular = true;
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                pivots.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            if pivot == ZERO {
                continue;
            }
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor == ZERO {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= factor * u;
                }
            }
        }
        Ok(Self {
            lu,
            pivots,
            sign,
            singular,
        })
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn determinant(&self) -> Cmplx {
        let n = self.lu.rows();
        (0..n)
            .map(|i| self.lu[(i, i)])
            .fold(Cmplx::new(self.sign, 0.0), |acc, d| acc * d)
    }

    /// Solves `A X = B`.
    pub fn solve(&self, b: &DenseMatrix) -> Result<DenseMatrix> {
        if self.singular {
            return Err(Error::SingularMatrix);
        }
        let n = self.lu.rows();
        if b.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} rows, expected {n}",
                b.rows()
            )));
        }
        let mut x = DenseMatrix::from_fn(n, b.cols(), |i, j| b[(self.pivots[i], j)]);
        for c in 0..b.cols() {
            for i in 0..n {
                let mut s = x[(i, c)];
                for k in 0..i {
                    s -= self.lu[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[(i, c)];
                for k in i + 1..n {
                    s -= self.lu[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = s / self.lu[(i, i)];
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<DenseMatrix> {
        self.solve(&DenseMatrix::identity(self.lu.rows()))
    }
}

/// Inverse by LU with partial pivoting.
pub fn mat_inverse(a: &DenseMatrix, tol: Tolerance) -> Result<DenseMatrix> {
    LuFactors::new(a, tol)?.inverse()
}

/// Determinant by LU; singular matrices give (near) zero rather than an error.
pub fn determinant(a: &DenseMatrix) -> Result<Cmplx> {
    if a.rows() == 0 && a.cols() == 0 {
        return Ok(ONE);
    }
    Ok(LuFactors::new(a, Tolerance::default())?.determinant())
}
