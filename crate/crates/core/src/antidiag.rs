//! Antidiagonal matrices in center-outward coefficient order.
//!
//! Coefficient `a_1` sits at the center of the antidiagonal for odd `n` and just above the
//! center for even `n`; subsequent coefficients alternate below and above, moving outward.
//! Consecutive coefficients that mirror each other across the main diagonal form a transpose
//! pair `(a_k, a_{k+1})`, with `k` odd for even `n` and even for odd `n`.

use crate::error::{Error, Result};
use crate::matcore::{
    exchange_matrix, principal_sqrt, spectrum_symmetry, Cmplx, DenseMatrix, SpectrumReport,
    Tolerance, ONE, ZERO,
};

/// Antidiagonal matrix stored by its coefficients `(a_1, ..., a_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AntidiagonalSpec {
    coeffs: Vec<Cmplx>,
}

/// Classification of a transpose pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// Both elements nonzero.
    Regular,
    /// Exactly one element zero.
    Defective,
    /// Both elements zero.
    Zero,
}

/// A transpose pair `(a_k, a_{k+1})` located in the dense matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransposePair {
    /// Position among the pairs, outward from the center.
    pub ordinal: usize,
    /// One-based index `k` of the first coefficient.
    pub k: usize,
    /// `a_k`.
    pub low: Cmplx,
    /// `a_{k+1}`.
    pub high: Cmplx,
    /// Row (zero-based) of the element above the main diagonal.
    pub upper_row: usize,
    /// Row (zero-based) of the element below the main diagonal.
    pub lower_row: usize,
    pub kind: PairKind,
}

impl TransposePair {
    pub fn defective(&self) -> bool {
        self.kind == PairKind::Defective
    }

    /// Whether `a_k` (rather than `a_{k+1}`) lies above the main diagonal.
    pub fn low_is_upper(&self) -> bool {
        self.k % 2 == 1
    }

    /// Element above the main diagonal.
    pub fn upper(&self) -> Cmplx {
        if self.low_is_upper() {
            self.low
        } else {
            self.high
        }
    }

    /// Element below the main diagonal.
    pub fn lower(&self) -> Cmplx {
        if self.low_is_upper() {
            self.high
        } else {
            self.low
        }
    }
}

/// Closed-form spectral data.
#[derive(Debug, Clone, PartialEq)]
pub struct AntidiagSpectrum {
    /// Eigenvalues: the center first (odd `n`), then `(-λ, λ)` per pair.
    pub report: SpectrumReport,
    /// `λ = sqrt(a_k) sqrt(a_{k+1})` per pair.
    pub pair_roots: Vec<Cmplx>,
    pub determinant: Cmplx,
    pub trace: Cmplx,
}

/// Number of transpose pairs of an `n x n` antidiagonal matrix.
pub fn pair_count(n: usize) -> usize {
    n / 2
}

/// Row (zero-based) holding coefficient `a_{j+1}`.
pub fn row_of_coefficient(n: usize, j: usize) -> usize {
    debug_assert!(j < n);
    match (n % 2, j % 2) {
        (0, 0) => (n - 2 - j) / 2,
        (0, _) => (j + n - 1) / 2,
        (_, 0) => (n - 1 - j) / 2,
        _ => (j + n) / 2,
    }
}

/// Zero-based coefficient index stored in row `i`.
pub fn coefficient_in_row(n: usize, i: usize) -> usize {
    debug_assert!(i < n);
    if n.is_multiple_of(2) {
        if i < n / 2 {
            n - 2 - 2 * i
        } else {
            2 * i + 1 - n
        }
    } else if i <= (n - 1) / 2 {
        n - 1 - 2 * i
    } else {
        2 * i - n
    }
}

/// Rows (upper, lower) of pair `p`.
pub fn pair_rows(n: usize, p: usize) -> (usize, usize) {
    if n.is_multiple_of(2) {
        let m = n / 2;
        (m - 1 - p, m + p)
    } else {
        let m = (n - 1) / 2;
        (m - 1 - p, m + 1 + p)
    }
}

impl AntidiagonalSpec {
    pub fn new(coeffs: Vec<Cmplx>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "an antidiagonal matrix needs at least one coefficient".into(),
            ));
        }
        if coeffs
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite);
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Cmplx::new(x, 0.0)).collect())
    }

    /// Coefficients listed top-right to bottom-left.
    pub fn from_antidiagonal(entries: &[Cmplx]) -> Result<Self> {
        let n = entries.len();
        let mut coeffs = vec![ZERO; n];
        for (i, &x) in entries.iter().enumerate() {
            coeffs[coefficient_in_row(n, i)] = x;
        }
        Self::new(coeffs)
    }

    /// Assembles from the center (odd `n` only) and the pairs as (upper, lower) elements,
    /// ordered outward.
    pub fn from_pairs(center: Option<Cmplx>, pairs: &[(Cmplx, Cmplx)]) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(2 * pairs.len() + 1);
        coeffs.extend(center);
        let odd = center.is_some();
        for &(upper, lower) in pairs {
            if odd {
                coeffs.extend([lower, upper]);
            } else {
                coeffs.extend([upper, lower]);
            }
        }
        Self::new(coeffs)
    }

    /// Reads an antidiagonal matrix; off-antidiagonal entries must be zero under the tolerance.
    pub fn from_dense(m: &DenseMatrix, tol: Tolerance) -> Result<Self> {
        let n = m.require_square()?;
        m.require_finite()?;
        if n == 0 {
            return Err(Error::InvalidInput("empty matrix".into()));
        }
        let cutoff = crate::matcore::zero_cutoff(m, tol);
        let mut worst = (0, 0, 0.0);
        for i in 0..n {
            for j in 0..n {
                if i + j + 1 != n && m[(i, j)].norm() > worst.2 {
                    worst = (i, j, m[(i, j)].norm());
                }
            }
        }
        if worst.2 > cutoff {
            return Err(Error::NotAntidiagonal {
                row: worst.0,
                col: worst.1,
                magnitude: worst.2,
            });
        }
        let entries: Vec<Cmplx> = (0..n).map(|i| m[(i, n - 1 - i)]).collect();
        Self::from_antidiagonal(&entries)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_odd(&self) -> bool {
        self.dim() % 2 == 1
    }

    pub fn coeffs(&self) -> &[Cmplx] {
        &self.coeffs
    }

    /// Entry of row `i` on the antidiagonal.
    pub fn entry_in_row(&self, i: usize) -> Cmplx {
        self.coeffs[coefficient_in_row(self.dim(), i)]
    }

    /// Antidiagonal read top-right to bottom-left.
    pub fn antidiagonal(&self) -> Vec<Cmplx> {
        (0..self.dim()).map(|i| self.entry_in_row(i)).collect()
    }

    pub fn center(&self) -> Option<Cmplx> {
        self.is_odd().then(|| self.coeffs[0])
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.dim();
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, n - 1 - i)] = self.entry_in_row(i);
        }
        m
    }

    /// Zero test `|x| <= max(abs, rel * max_j |a_j|)`.
    pub fn zero_cutoff(&self, tol: Tolerance) -> f64 {
        tol.cutoff(self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max))
    }

    /// Transpose pairs outward from the center, and the center for odd `n`.
    pub fn transpose_pairs(&self, tol: Tolerance) -> (Vec<TransposePair>, Option<Cmplx>) {
        let n = self.dim();
        let cutoff = self.zero_cutoff(tol);
        let first = usize::from(self.is_odd());
        let pairs = (0..pair_count(n))
            .map(|p| {
                let j = first + 2 * p;
                let (low, high) = (self.coeffs[j], self.coeffs[j + 1]);
                let zeros = usize::from(low.norm() <= cutoff) + usize::from(high.norm() <= cutoff);
                let kind = match zeros {
                    0 => PairKind::Regular,
                    1 => PairKind::Defective,
                    _ => PairKind::Zero,
                };
                let (upper_row, lower_row) = pair_rows(n, p);
                TransposePair {
                    ordinal: p,
                    k: j + 1,
                    low,
                    high,
                    upper_row,
                    lower_row,
                    kind,
                }
            })
            .collect();
        (pairs, self.center())
    }

    /// `A = E D` with `D` the antidiagonal read bottom to top.
    pub fn exchange_factor(&self) -> (DenseMatrix, DenseMatrix) {
        let n = self.dim();
        let d: Vec<Cmplx> = (0..n).map(|j| self.entry_in_row(n - 1 - j)).collect();
        (exchange_matrix(n), DenseMatrix::from_diag(&d))
    }

    /// Spectrum `{±sqrt(a_k) sqrt(a_{k+1})}` (plus `a_1` for odd `n`), determinant and trace.
    pub fn spectrum(&self, tol: Tolerance) -> AntidiagSpectrum {
        let n = self.dim();
        let (pairs, center) = self.transpose_pairs(tol);
        let mut eigenvalues = Vec::with_capacity(n);
        eigenvalues.extend(center);
        let pair_roots: Vec<Cmplx> = pairs
            .iter()
            .map(|p| principal_sqrt(p.low) * principal_sqrt(p.high))
            .collect();
        for &lambda in &pair_roots {
            eigenvalues.extend([-lambda, lambda]);
        }
        let sign = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        let determinant = self
            .coeffs
            .iter()
            .fold(Cmplx::new(sign, 0.0), |acc, &a| acc * a);
        let trace = center.unwrap_or(ZERO);
        let report = spectrum_symmetry(&eigenvalues, trace, tol);
        AntidiagSpectrum {
            report,
            pair_roots,
            determinant,
            trace,
        }
    }

    /// Diagonal of `A B`: entry `i` is `A[i, n-1-i] * B[n-1-i, i]`.
    pub fn product(&self, other: &Self) -> Result<DenseMatrix> {
        let n = self.dim();
        if other.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "sizes {n} and {} differ",
                other.dim()
            )));
        }
        let d: Vec<Cmplx> = (0..n)
            .map(|i| self.entry_in_row(i) * other.entry_in_row(n - 1 - i))
            .collect();
        Ok(DenseMatrix::from_diag(&d))
    }

    /// Inverse: the reciprocal of the transpose.
    pub fn inverse(&self, tol: Tolerance) -> Result<Self> {
        let cutoff = self.zero_cutoff(tol);
        if let Some(j) = self.coeffs.iter().position(|z| z.norm() <= cutoff) {
            return Err(Error::SingularAntidiagonal { index: j + 1 });
        }
        let n = self.dim();
        let entries: Vec<Cmplx> = (0..n).map(|i| ONE / self.entry_in_row(n - 1 - i)).collect();
        Self::from_antidiagonal(&entries)
    }

    /// Integer power in closed form: diagonal for even `k`, antidiagonal for odd `k`.
    pub fn power(&self, k: i32, tol: Tolerance) -> Result<DenseMatrix> {
        if k < 0 {
            return self.inverse(tol)?.power(-k, tol);
        }
        let n = self.dim();
        let k = k as u32;
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            let (own, mirror) = (self.entry_in_row(i), self.entry_in_row(n - 1 - i));
            if k.is_multiple_of(2) {
                m[(i, i)] = int_pow(own * mirror, k / 2);
            } else {
                m[(i, n - 1 - i)] = int_pow(own, k / 2 + 1) * int_pow(mirror, k / 2);
            }
        }
        Ok(m)
    }
}

fn int_pow(z: Cmplx, e: u32) -> Cmplx {
    (0..e).fold(ONE, |acc, _| acc * z)
}

/// Entrywise reciprocal of the entries above the absolute tolerance; the rest become zero.
pub fn reciprocal(m: &DenseMatrix, tol: Tolerance) -> DenseMatrix {
    m.map(|x| if x.norm() > tol.abs { ONE / x } else { ZERO })
}

pub fn from_dense(m: &DenseMatrix, tol: Tolerance) -> Result<AntidiagonalSpec> {
    AntidiagonalSpec::from_dense(m, tol)
}

pub fn to_dense(a: &AntidiagonalSpec) -> DenseMatrix {
    a.to_dense()
}

pub fn antidiag_product(a: &AntidiagonalSpec, b: &AntidiagonalSpec) -> Result<DenseMatrix> {
    a.product(b)
}

pub fn antidiag_inverse(a: &AntidiagonalSpec, tol: Tolerance) -> Result<AntidiagonalSpec> {
    a.inverse(tol)
}

pub fn antidiag_power(a: &AntidiagonalSpec, k: i32, tol: Tolerance) -> Result<DenseMatrix> {
    a.power(k, tol)
}

pub fn antidiag_spectrum(a: &AntidiagonalSpec, tol: Tolerance) -> AntidiagSpectrum {
    a.spectrum(tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{determinant, eig_dense, mat_inverse, multiset_distance};

    fn c(x: f64) -> Cmplx {
        Cmplx::new(x, 0.0)
    }

    fn spec(xs: &[f64]) -> AntidiagonalSpec {
        AntidiagonalSpec::from_real(xs).unwrap()
    }

    /// Position map written out entry by entry, one-based as in the row formulas.
    fn position_oracle(n: usize, i1: usize) -> usize {
        if n.is_multiple_of(2) {
            if i1 <= n / 2 {
                n - 2 * i1 + 1
            } else {
                2 * i1 - n
            }
        } else if i1 <= n.div_ceil(2) {
            n + 2 - 2 * i1
        } else {
            2 * i1 - n - 1
        }
    }

    #[test]
    fn position_map_matches_row_formulas() {
        for n in 1..=17 {
            for i in 0..n {
                assert_eq!(
                    coefficient_in_row(n, i) + 1,
                    position_oracle(n, i + 1),
                    "n={n} i={i}"
                );
                assert_eq!(row_of_coefficient(n, coefficient_in_row(n, i)), i);
            }
        }
    }

    #[test]
    fn reads_small_example() {
        let m = DenseMatrix::from_real(2, 2, &[0.0, 1.0, 4.0, 0.0]).unwrap();
        let a = AntidiagonalSpec::from_dense(&m, Tolerance::default()).unwrap();
        assert_eq!(a.coeffs(), &[c(1.0), c(4.0)]);
        assert_eq!(a.to_dense(), m);
    }

    #[test]
    fn reads_four_by_four_example() {
        let a = AntidiagonalSpec::from_antidiagonal(&[c(1.0), c(2.0), c(3.0), c(4.0)]).unwrap();
        assert_eq!(a.coeffs(), &[c(2.0), c(3.0), c(1.0), c(4.0)]);
    }

    #[test]
    fn zero_matrix_round_trips() {
        let a =
            AntidiagonalSpec::from_dense(&DenseMatrix::zeros(3, 3), Tolerance::default()).unwrap();
        assert_eq!(a.coeffs(), &[c(0.0); 3]);
    }

    #[test]
    fn rejects_off_antidiagonal_entries() {
        let m = DenseMatrix::from_real(2, 2, &[0.5, 1.0, 4.0, 0.0]).unwrap();
        match AntidiagonalSpec::from_dense(&m, Tolerance::default()) {
            Err(Error::NotAntidiagonal { row: 0, col: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn product_examples() {
        let e2 = spec(&[1.0, 1.0]);
        assert_eq!(e2.product(&e2).unwrap(), DenseMatrix::identity(2));
        let a = spec(&[1.0, 4.0]);
        assert_eq!(
            a.product(&a).unwrap(),
            DenseMatrix::from_diag(&[c(4.0), c(4.0)])
        );
        assert_eq!(
            a.product(&spec(&[0.0, 0.0])).unwrap(),
            DenseMatrix::zeros(2, 2)
        );
    }

    #[test]
    fn inverse_examples() {
        let tol = Tolerance::default();
        assert_eq!(spec(&[1.0; 4]).inverse(tol).unwrap(), spec(&[1.0; 4]));
        let inv = spec(&[1.0, 4.0]).inverse(tol).unwrap();
        let oracle = mat_inverse(&spec(&[1.0, 4.0]).to_dense(), tol).unwrap();
        assert!(inv.to_dense().distance(&oracle).unwrap() < 1e-15);
        assert_eq!(
            spec(&[1.0, 0.0]).inverse(tol),
            Err(Error::SingularAntidiagonal { index: 2 })
        );
    }

    #[test]
    fn power_examples() {
        let tol = Tolerance::default();
        let a = spec(&[1.0, 4.0]);
        assert_eq!(a.power(1, tol).unwrap(), a.to_dense());
        assert_eq!(
            spec(&[1.0; 3]).power(2, tol).unwrap(),
            DenseMatrix::identity(3)
        );
        let cube = DenseMatrix::from_real(2, 2, &[0.0, 4.0, 16.0, 0.0]).unwrap();
        assert_eq!(a.power(3, tol).unwrap(), cube);
        assert!(spec(&[1.0, 0.0]).power(-1, tol).is_err());
    }

    #[test]
    fn reciprocal_of_transpose_inverts() {
        let tol = Tolerance::default();
        let d = DenseMatrix::from_diag(&[c(2.0), c(0.0)]);
        assert_eq!(
            reciprocal(&d, tol),
            DenseMatrix::from_diag(&[c(0.5), c(0.0)])
        );
        let a = spec(&[2.0, -3.0, 0.5]).to_dense();
        let inv = mat_inverse(&a, tol).unwrap();
        assert!(reciprocal(&a, tol).transpose().distance(&inv).unwrap() < 1e-15);
    }

    #[test]
    fn exchange_factor_examples() {
        let (e, d) = spec(&[1.0, 1.0]).exchange_factor();
        assert_eq!(
            (e.clone(), d),
            (exchange_matrix(2), DenseMatrix::identity(2))
        );
        let a = spec(&[1.0, 4.0]);
        let (e, d) = a.exchange_factor();
        assert_eq!(d, DenseMatrix::from_diag(&[c(4.0), c(1.0)]));
        assert_eq!(&e * &d, a.to_dense());
    }

    #[test]
    fn transpose_pair_examples() {
        let tol = Tolerance::default();
        let (pairs, center) = spec(&[2.0, 3.0, 1.0, 4.0]).transpose_pairs(tol);
        assert_eq!(center, None);
        assert_eq!((pairs[0].low, pairs[0].high), (c(2.0), c(3.0)));
        assert_eq!((pairs[1].low, pairs[1].high), (c(1.0), c(4.0)));
        assert!(pairs.iter().all(|p| p.kind == PairKind::Regular));
        let (pairs, _) = spec(&[1.0, 0.0]).transpose_pairs(tol);
        assert!(pairs[0].defective());
        let (pairs, center) = spec(&[5.0, 0.0, 0.0]).transpose_pairs(tol);
        assert_eq!(pairs[0].kind, PairKind::Zero);
        assert_eq!(center, Some(c(5.0)));
    }

    #[test]
    fn pair_rows_hold_their_coefficients() {
        for n in 1..=12 {
            let a = AntidiagonalSpec::new((0..n).map(|j| c(j as f64 + 1.0)).collect()).unwrap();
            let dense = a.to_dense();
            let (pairs, _) = a.transpose_pairs(Tolerance::default());
            for p in pairs {
                assert_eq!(dense[(p.upper_row, n - 1 - p.upper_row)], p.upper());
                assert_eq!(dense[(p.lower_row, n - 1 - p.lower_row)], p.lower());
                assert!(p.upper_row < p.lower_row);
                assert_eq!(p.upper_row + p.lower_row, n - 1);
            }
        }
    }

    #[test]
    fn spectrum_examples() {
        let tol = Tolerance::default();
        let a = spec(&[2.0, 3.0, 1.0, 4.0]);
        let s = a.spectrum(tol);
        let r6 = 6f64.sqrt();
        let expected = [c(-r6), c(r6), c(-2.0), c(2.0)];
        assert!(multiset_distance(&s.report.eigenvalues, &expected).unwrap() < 1e-14);
        assert_eq!((s.determinant, s.trace), (c(24.0), c(0.0)));
        assert!(s.report.symmetric);
        let s = spec(&[1.0, 1.0]).spectrum(tol);
        assert_eq!(s.determinant, c(-1.0));
        let s = spec(&[5.0, 1.0, 1.0]).spectrum(tol);
        assert!(
            multiset_distance(&s.report.eigenvalues, &[c(5.0), c(-1.0), c(1.0)]).unwrap() < 1e-15
        );
        assert_eq!((s.determinant, s.trace), (c(-5.0), c(5.0)));
        let dense_det = determinant(&spec(&[5.0, 1.0, 1.0]).to_dense()).unwrap();
        assert!((dense_det - c(-5.0)).norm() < 1e-14);
        assert!(s.report.c_symmetric);
        assert_eq!(s.report.center, Some(c(5.0)));
    }

    #[test]
    fn spectrum_agrees_with_dense_solvers() {
        let a = AntidiagonalSpec::new(vec![
            Cmplx::new(1.0, 2.0),
            Cmplx::new(-0.5, 0.3),
            Cmplx::new(2.0, -1.0),
            Cmplx::new(0.0, 3.0),
            Cmplx::new(-1.5, 0.0),
        ])
        .unwrap();
        let s = a.spectrum(Tolerance::default());
        let e = eig_dense(&a.to_dense(), false).unwrap();
        assert!(multiset_distance(&s.report.eigenvalues, &e.values).unwrap() < 1e-12);
        assert!((s.determinant - determinant(&a.to_dense()).unwrap()).norm() < 1e-12);
    }
}
