use super::dense::{exchange_matrix, DenseMatrix};
use super::scalar::ONE;
use super::tolerance::Tolerance;
use crate::error::{Error, Result};

/// Structural flags of a square matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Predicates {
    pub is_real: bool,
    pub is_unitary: bool,
    pub is_normal: bool,
    pub is_symmetric: bool,
    pub is_antisymmetric: bool,
    pub is_hermitian: bool,
    pub is_hollow: bool,
    pub is_pseudo_hollow: bool,
    pub is_diagonal: bool,
    pub is_antidiagonal: bool,
    pub is_centrosymmetric: bool,
    pub is_permutation: bool,
}

/// Entries with modulus at most `max(abs, rel * ||M||_F / n)` count as zero.
pub fn zero_cutoff(m: &DenseMatrix, tol: Tolerance) -> f64 {
    let n = m.rows().max(1) as f64;
    tol.cutoff(m.frobenius_norm() / n)
}

/// `||A - B||_F <= max(abs, rel * max(||A||_F, ||B||_F))`.
pub fn approx_eq(a: &DenseMatrix, b: &DenseMatrix, tol: Tolerance) -> Result<bool> {
    let d = a.distance(b)?;
    Ok(d <= tol.cutoff(a.frobenius_norm().max(b.frobenius_norm())))
}

fn relative_close(diff: f64, scale: f64, tol: Tolerance) -> bool {
    diff <= tol.cutoff(scale)
}

pub fn is_real(m: &DenseMatrix, tol: Tolerance) -> bool {
    m.max_imag() <= zero_cutoff(m, tol)
}

pub fn is_symmetric(m: &DenseMatrix, tol: Tolerance) -> bool {
    m.is_square()
        && relative_close(
            m.distance(&m.transpose()).unwrap_or(f64::INFINITY),
            m.frobenius_norm(),
            tol,
        )
}

pub fn is_antisymmetric(m: &DenseMatrix, tol: Tolerance) -> bool {
    m.is_square()
        && relative_close(
            m.try_add(&m.transpose())
                .map_or(f64::INFINITY, |s| s.frobenius_norm()),
            m.frobenius_norm(),
            tol,
        )
}

pub fn is_hermitian(m: &DenseMatrix, tol: Tolerance) -> bool {
    m.is_square()
        && relative_close(
            m.distance(&m.adjoint()).unwrap_or(f64::INFINITY),
            m.frobenius_norm(),
            tol,
        )
}

/// `||M M* - M* M||_F <= max(abs, rel * ||M||_F^2)`.
pub fn is_normal(m: &DenseMatrix, tol: Tolerance) -> bool {
    if !m.is_square() {
        return false;
    }
    let a = m.adjoint();
    let comm = (m * &a).distance(&(&a * m)).expect("square");
    comm <= tol.cutoff(m.frobenius_norm().powi(2))
}

/// Distance of `U* U` from the identity.
pub fn unitarity_defect(u: &DenseMatrix) -> f64 {
    let n = u.cols();
    (&u.adjoint() * u)
        .distance(&DenseMatrix::identity(n))
        .expect("square product")
}

/// `||U* U - I||_F <= max(abs, rel * n)`.
pub fn is_unitary(u: &DenseMatrix, tol: Tolerance) -> bool {
    u.is_square() && unitarity_defect(u) <= tol.cutoff(u.rows() as f64)
}

pub fn is_orthogonal(u: &DenseMatrix, tol: Tolerance) -> bool {
    is_real(u, tol) && is_unitary(u, tol)
}

fn nonzero_diagonal_count(m: &DenseMatrix, cutoff: f64) -> usize {
    m.diagonal().iter().filter(|d| d.norm() > cutoff).count()
}

pub fn is_hollow(m: &DenseMatrix, tol: Tolerance) -> bool {
    m.is_square() && nonzero_diagonal_count(m, zero_cutoff(m, tol)) == 0
}

/// At most one nonzero diagonal entry.
pub fn is_pseudo_hollow(m: &DenseMatrix, tol: Tolerance) -> bool {
    m.is_square() && nonzero_diagonal_count(m, zero_cutoff(m, tol)) <= 1
}

pub fn is_diagonal(m: &DenseMatrix, tol: Tolerance) -> bool {
    m.is_square() && m.off_diagonal_norm() <= zero_cutoff(m, tol)
}

pub fn is_antidiagonal(m: &DenseMatrix, tol: Tolerance) -> bool {
    m.is_square() && m.off_antidiagonal_norm() <= zero_cutoff(m, tol)
}

/// `||M E - E M||_F <= max(abs, rel * ||M||_F)`.
pub fn is_centrosymmetric(m: &DenseMatrix, tol: Tolerance) -> bool {
    if !m.is_square() {
        return false;
    }
    let e = exchange_matrix(m.rows());
    let comm = (m * &e).distance(&(&e * m)).expect("square");
    relative_close(comm, m.frobenius_norm(), tol)
}

/// Exactly one entry near 1 in every row and column, all others near 0.
pub fn is_permutation(m: &DenseMatrix, tol: Tolerance) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    let cut = tol.cutoff(1.0);
    let mut col_hits = vec![0usize; n];
    for i in 0..n {
        let mut row_hits = 0;
        for j in 0..n {
            let x = m[(i, j)];
            if (x - ONE).norm() <= cut {
                row_hits += 1;
                col_hits[j] += 1;
            } else if x.norm() > cut {
                return false;
            }
        }
        if row_hits != 1 {
            return false;
        }
    }
    col_hits.iter().all(|&c| c == 1)
}

pub fn predicates(m: &DenseMatrix, tol: Tolerance) -> Result<Predicates> {
    m.require_square()?;
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(Predicates {
        is_real: is_real(m, tol),
        is_unitary: is_unitary(m, tol),
        is_normal: is_normal(m, tol),
        is_symmetric: is_symmetric(m, tol),
        is_antisymmetric: is_antisymmetric(m, tol),
        is_hermitian: is_hermitian(m, tol),
        is_hollow: is_hollow(m, tol),
        is_pseudo_hollow: is_pseudo_hollow(m, tol),
        is_diagonal: is_diagonal(m, tol),
        is_antidiagonal: is_antidiagonal(m, tol),
        is_centrosymmetric: is_centrosymmetric(m, tol),
        is_permutation: is_permutation(m, tol),
    })
}
