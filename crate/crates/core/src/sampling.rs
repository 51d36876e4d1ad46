//! Seedable generators of random instances for property tests and benchmarks.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::antidiag::AntidiagonalSpec;
use crate::matcore::{
    exchange_matrix, mat_inverse, Cmplx, DenseMatrix, PivotedQr, Tolerance, ONE, ZERO,
};

/// Uniform point of the closed unit disk.
pub fn random_disk<R: Rng + ?Sized>(rng: &mut R) -> Cmplx {
    let r: f64 = rng.gen::<f64>().sqrt();
    let theta: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    Cmplx::from_polar(r, theta)
}

/// Antidiagonal matrix with coefficients drawn from the disk of radius `scale`.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> AntidiagonalSpec {
    let coeffs = (0..n).map(|_| random_disk(rng) * scale).collect();
    AntidiagonalSpec::new(coeffs).expect("finite coefficients")
}

/// Standard complex Gaussian entry, `E|z|^2 = 1`.
pub fn random_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Cmplx {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (re, im): (f64, f64) = (rng.sample(StandardNormal), rng.sample(StandardNormal));
    Cmplx::new(re * h, im * h)
}

pub fn random_complex_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DenseMatrix {
    DenseMatrix::from_fn(n, n, |_, _| random_gaussian(rng))
}

pub fn random_real_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DenseMatrix {
    DenseMatrix::from_fn(n, n, |_, _| Cmplx::new(rng.sample(StandardNormal), 0.0))
}

/// Unitary factor of the QR decomposition of a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DenseMatrix {
    PivotedQr::new(&random_complex_matrix(rng, n)).q
}

/// Gaussian matrix with Frobenius condition number `‖V‖_F ‖V^{-1}‖_F` below `bound`, which
/// also bounds the spectral condition number.
pub fn random_well_conditioned<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: f64) -> DenseMatrix {
    loop {
        let v = random_complex_matrix(rng, n);
        if let Ok(inv) = mat_inverse(&v, Tolerance::default()) {
            if v.frobenius_norm() * inv.frobenius_norm() < bound {
                return v;
            }
        }
    }
}

/// `X + E X E` for Gaussian `X`.
pub fn random_centrosymmetric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DenseMatrix {
    let x = random_complex_matrix(rng, n);
    let e = exchange_matrix(n);
    &x + &(&(&e * &x) * &e)
}

/// `B (U_1 ⊕ U_2) B^T` with `B` the orthonormal eigenbasis of `E` (symmetric vectors first,
/// then skew ones) and `U_1`, `U_2` random unitary; every centrosymmetric unitary has this form.
pub fn random_centrosymmetric_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DenseMatrix {
    let h = Cmplx::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let half = n / 2;
    let mut basis = DenseMatrix::zeros(n, n);
    for i in 0..half {
        basis[(i, i)] = h;
        basis[(n - 1 - i, i)] = h;
    }
    let sym = n - half;
    if n % 2 == 1 {
        basis[(half, half)] = ONE;
    }
    for i in 0..half {
        basis[(i, sym + i)] = h;
        basis[(n - 1 - i, sym + i)] = -h;
    }
    let u1 = random_unitary(rng, sym);
    let u2 = random_unitary(rng, half);
    let mut block = DenseMatrix::zeros(n, n);
    for i in 0..sym {
        for j in 0..sym {
            block[(i, j)] = u1[(i, j)];
        }
    }
    for i in 0..half {
        for j in 0..half {
            block[(sym + i, sym + j)] = u2[(i, j)];
        }
    }
    &(&basis * &block) * &basis.transpose()
}

/// `X - X^T` for real Gaussian `X`.
pub fn random_real_antisymmetric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DenseMatrix {
    let x = random_real_matrix(rng, n);
    &x - &x.transpose()
}

/// Adjacency matrix of an Erdős–Rényi graph with edge probability `p`.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> DenseMatrix {
    let mut adj = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                adj[(i, j)] = ONE;
                adj[(j, i)] = ONE;
            }
        }
    }
    adj
}

/// Upper-triangular nilpotent Jordan block of size `n`.
pub fn nilpotent_jordan_block(n: usize) -> DenseMatrix {
    DenseMatrix::from_fn(n, n, |i, j| if j == i + 1 { ONE } else { ZERO })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{is_antisymmetric, is_centrosymmetric, is_real, is_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_have_their_structure() {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=7 {
            assert!(random_spec(&mut rng, n, 10.0)
                .coeffs()
                .iter()
                .all(|z| z.norm() <= 10.0));
            assert!(is_unitary(&random_unitary(&mut rng, n), tol));
            assert!(is_centrosymmetric(
                &random_centrosymmetric(&mut rng, n),
                tol
            ));
            let cu = random_centrosymmetric_unitary(&mut rng, n);
            assert!(is_centrosymmetric(&cu, tol) && is_unitary(&cu, tol));
            let k = random_real_antisymmetric(&mut rng, n);
            assert!(is_real(&k, tol) && is_antisymmetric(&k, tol));
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_complex_matrix(&mut ChaCha8Rng::seed_from_u64(3), 4);
        let b = random_complex_matrix(&mut ChaCha8Rng::seed_from_u64(3), 4);
        assert_eq!(a, b);
    }
}
