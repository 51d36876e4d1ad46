//! Permutation similarity of antidiagonal matrices to quasidiagonal direct sums, and the
//! orthogonal antidiagonalization of real antisymmetric matrices.

use crate::antidiag::{AntidiagonalSpec, TransposePair};
use crate::error::{Error, Result};
use crate::matcore::{
    determinant, is_antisymmetric, is_real, principal_sqrt, schur_dense, zero_cutoff, Cmplx,
    DenseMatrix, Tolerance, I, ONE, ZERO,
};

/// Permutation matrix stored by the row holding the 1 of each column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// `images[j]` is the row of the 1 in column `j`; must be a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidInput(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        Ok(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (j, &i) in self.images.iter().enumerate() {
            inv[i] = j;
        }
        Self { images: inv }
    }

    /// Matrix of `self` followed by `other`, i.e. `other * self`.
    pub fn then(&self, other: &Self) -> Self {
        Self {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.len();
        let mut p = DenseMatrix::zeros(n, n);
        for (j, &i) in self.images.iter().enumerate() {
            p[(i, j)] = ONE;
        }
        p
    }

    /// Determinant, from the cycle decomposition.
    pub fn sign(&self) -> i8 {
        let mut seen = vec![false; self.len()];
        let mut sign = 1;
        for start in 0..self.len() {
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j];
                len += 1;
            }
            if len > 0 && len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// `P M P^T` without arithmetic.
    pub fn conjugate(&self, m: &DenseMatrix) -> DenseMatrix {
        let n = self.len();
        let mut out = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(self.images[i], self.images[j])] = m[(i, j)];
            }
        }
        out
    }

    /// `P^T M P` without arithmetic.
    pub fn conjugate_transpose_side(&self, m: &DenseMatrix) -> DenseMatrix {
        m.permuted(&self.images)
    }
}

/// `A = P Q P^T` with `Q` the quasidiagonal direct sum of the center and the pair blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct PermQuasiDecomposition {
    pub permutation: Permutation,
    pub quasidiagonal: DenseMatrix,
    /// `(a_1)` for odd `n`, then `[[0, upper], [lower, 0]]` per pair.
    pub blocks: Vec<DenseMatrix>,
    /// `det P`.
    pub parity: i8,
}

impl PermQuasiDecomposition {
    pub fn p(&self) -> DenseMatrix {
        self.permutation.to_dense()
    }

    pub fn reconstruct(&self) -> DenseMatrix {
        self.permutation.conjugate(&self.quasidiagonal)
    }
}

/// Permutation sending quasidiagonal index to antidiagonal row: the center first (odd `n`),
/// then the (upper, lower) rows of each pair.
pub fn quasidiag_permutation(n: usize) -> Permutation {
    let mut images = Vec::with_capacity(n);
    if n % 2 == 1 {
        images.push((n - 1) / 2);
    }
    for p in 0..n / 2 {
        let (upper, lower) = crate::antidiag::pair_rows(n, p);
        images.extend([upper, lower]);
    }
    Permutation { images }
}

/// Offset of the first pair block in quasidiagonal coordinates.
pub(crate) fn pair_base(n: usize) -> usize {
    n % 2
}

pub fn perm_quasidiag(a: &AntidiagonalSpec) -> PermQuasiDecomposition {
    let n = a.dim();
    let permutation = quasidiag_permutation(n);
    let quasidiagonal = permutation.conjugate_transpose_side(&a.to_dense());
    let base = pair_base(n);
    let mut blocks = Vec::with_capacity(n - n / 2);
    if base == 1 {
        blocks.push(quasidiagonal.submatrix(0..1, 0..1));
    }
    for p in 0..n / 2 {
        let s = base + 2 * p;
        blocks.push(quasidiagonal.submatrix(s..s + 2, s..s + 2));
    }
    let parity = permutation.sign();
    PermQuasiDecomposition {
        permutation,
        quasidiagonal,
        blocks,
        parity,
    }
}

/// Quasidiagonal, pseudo-hollow, and any nonzero diagonal entry is a 1x1 block of its own.
pub fn is_q_pseudo_hollow_quasidiagonal(m: &DenseMatrix, tol: Tolerance) -> bool {
    let Ok(n) = m.require_square() else {
        return false;
    };
    let cut = zero_cutoff(m, tol);
    let nonzero = |i: usize, j: usize| m[(i, j)].norm() > cut;
    let mut block_of = vec![0usize; n];
    let mut i = 0;
    while i < n {
        block_of[i] = i;
        if i + 1 < n && (nonzero(i, i + 1) || nonzero(i + 1, i)) {
            block_of[i + 1] = i;
            i += 2;
        } else {
            i += 1;
        }
    }
    for r in 0..n {
        for c in 0..n {
            if block_of[r] != block_of[c] && nonzero(r, c) {
                return false;
            }
        }
    }
    let diag: Vec<usize> = (0..n).filter(|&i| nonzero(i, i)).collect();
    match diag.as_slice() {
        [] => true,
        [d] => (0..n).all(|k| k == *d || (!nonzero(*d, k) && !nonzero(k, *d))),
        _ => false,
    }
}

/// Reorders and optionally transposes pairs: slot `p` of the result takes pair `order[p]`,
/// with its two elements exchanged when `flips[p]`. Returns `B` and `Π` with `B = Π A Π^T`.
pub fn permute_pairs(
    a: &AntidiagonalSpec,
    order: &[usize],
    flips: &[bool],
) -> Result<(AntidiagonalSpec, Permutation)> {
    let n = a.dim();
    let count = n / 2;
    if order.len() != count || flips.len() != count {
        return Err(Error::DimensionMismatch(format!(
            "expected {count} pair slots"
        )));
    }
    Permutation::new(order.to_vec())?;
    let (pairs, center) = a.transpose_pairs(Tolerance::default());
    let base = pair_base(n);
    // sigma maps each new quasidiagonal index to its source index.
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut new_pairs = Vec::with_capacity(count);
    for (p, (&o, &flip)) in order.iter().zip(flips).enumerate() {
        let (s0, s1) = (base + 2 * o, base + 2 * o + 1);
        let (t0, t1) = (base + 2 * p, base + 2 * p + 1);
        let (u, l) = (pairs[o].upper(), pairs[o].lower());
        if flip {
            sigma[t0] = s1;
            sigma[t1] = s0;
            new_pairs.push((l, u));
        } else {
            sigma[t0] = s0;
            sigma[t1] = s1;
            new_pairs.push((u, l));
        }
    }
    let b = AntidiagonalSpec::from_pairs(center, &new_pairs)?;
    // tau = P sigma P^{-1} on antidiagonal rows; Π has its 1 in column tau(r) at row r.
    let p = quasidiag_permutation(n);
    let pinv = p.inverse();
    let mut images = vec![0; n];
    for r in 0..n {
        let tau_r = p.images()[sigma[pinv.images()[r]]];
        images[tau_r] = r;
    }
    Ok((b, Permutation::new(images)?))
}

/// Quasidiagonalization of a real antisymmetric antidiagonal matrix with the conjugate
/// eigenvalue pair of every 2x2 block.
#[derive(Debug, Clone, PartialEq)]
pub struct RealAntisymSchur {
    pub decomposition: PermQuasiDecomposition,
    /// `(-i r, i r)` per pair block, from `λ^2 = upper * lower`.
    pub block_eigenvalues: Vec<(Cmplx, Cmplx)>,
}

pub fn real_schur_antisym_antidiag(
    a: &AntidiagonalSpec,
    tol: Tolerance,
) -> Result<RealAntisymSchur> {
    let dense = a.to_dense();
    if !is_real(&dense, tol) {
        return Err(Error::NotRealAntisymmetric("entries are not real".into()));
    }
    if !is_antisymmetric(&dense, tol) {
        return Err(Error::NotRealAntisymmetric("A + A^T is not zero".into()));
    }
    let decomposition = perm_quasidiag(a);
    let (pairs, _) = a.transpose_pairs(tol);
    let cut = a.zero_cutoff(tol);
    let mut block_eigenvalues = Vec::with_capacity(pairs.len());
    for p in &pairs {
        let root = principal_sqrt(p.upper() * p.lower());
        let (minus, plus) = (-root, root);
        if (minus - plus.conj()).norm() > cut {
            return Err(Error::NotRealAntisymmetric(format!(
                "pair {} has no conjugate eigenvalue pair",
                p.ordinal
            )));
        }
        block_eigenvalues.push((minus, plus));
    }
    Ok(RealAntisymSchur {
        decomposition,
        block_eigenvalues,
    })
}

/// `M = R A R^T` with `R` real orthogonal and `A` real antisymmetric antidiagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthAntidiagonalization {
    pub orthogonal: DenseMatrix,
    pub antidiagonal: AntidiagonalSpec,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Removes the components along `basis` (twice, for stability).
fn project_out(v: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for b in basis {
            let c = dot(v, b);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
    }
}

/// Orthonormal completion of `basis` to `n` vectors, by pivoted Gram-Schmidt over the
/// standard basis.
fn orthonormal_complement(basis: &[Vec<f64>], n: usize) -> Vec<Vec<f64>> {
    let mut accepted: Vec<Vec<f64>> = basis.to_vec();
    let mut out = Vec::new();
    let mut candidates: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            e
        })
        .collect();
    while accepted.len() < n {
        for c in candidates.iter_mut() {
            project_out(c, &accepted);
        }
        let best = (0..candidates.len())
            .max_by(|&i, &j| norm(&candidates[i]).total_cmp(&norm(&candidates[j])))
            .expect("candidates remain while the basis is incomplete");
        let mut v = candidates.swap_remove(best);
        let len = norm(&v);
        v.iter_mut().for_each(|x| *x /= len);
        project_out(&mut v, &accepted);
        let len = norm(&v);
        v.iter_mut().for_each(|x| *x /= len);
        accepted.push(v.clone());
        out.push(v);
    }
    out
}

pub fn orth_antidiagonalize_real_antisym(
    m: &DenseMatrix,
    tol: Tolerance,
) -> Result<OrthAntidiagonalization> {
    let n = m.require_square()?;
    m.require_finite()?;
    if n == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    if !is_real(m, tol) {
        return Err(Error::NotRealAntisymmetric("entries are not real".into()));
    }
    if !is_antisymmetric(m, tol) {
        return Err(Error::NotRealAntisymmetric("M + M^T is not zero".into()));
    }
    let real = m.map(|z| Cmplx::new(z.re, 0.0));
    // H = -iM is Hermitian; its Schur vectors are eigenvectors.
    let schur = schur_dense(&real.scale(-I))?;
    let cutoff = tol.cutoff(m.frobenius_norm());
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut planes: Vec<(f64, Vec<f64>, Vec<f64>)> = Vec::new();
    for (j, lambda) in schur.eigenvalues().into_iter().enumerate() {
        let r = lambda.re;
        if r > cutoff {
            let z = schur.unitary.column(j);
            let u: Vec<f64> = z.iter().map(|c| sqrt2 * c.re).collect();
            let v: Vec<f64> = z.iter().map(|c| sqrt2 * c.im).collect();
            planes.push((r, u, v));
        }
    }
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (_, u, v) in &planes {
        basis.push(u.clone());
        basis.push(v.clone());
    }
    let kernel = orthonormal_complement(&basis, n);
    let odd = n % 2 == 1;
    // Columns in quasidiagonal order: center, pair planes, kernel pairs.
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut kernel_iter = kernel.into_iter();
    if odd {
        columns.push(
            kernel_iter
                .next()
                .expect("odd dimension leaves a kernel vector"),
        );
    }
    let mut blocks: Vec<(Cmplx, Cmplx)> = Vec::new();
    for (r, u, v) in planes {
        columns.push(u);
        columns.push(v);
        blocks.push((Cmplx::new(r, 0.0), Cmplx::new(-r, 0.0)));
    }
    let rest: Vec<Vec<f64>> = kernel_iter.collect();
    for chunk in rest.chunks(2) {
        columns.extend(chunk.iter().cloned());
        blocks.push((ZERO, ZERO));
    }
    let center = odd.then_some(ZERO);
    let p = quasidiag_permutation(n);
    let assemble = |columns: &[Vec<f64>]| {
        let mut r = DenseMatrix::zeros(n, n);
        for (i, col) in columns.iter().enumerate() {
            let target = p.images()[i];
            for (row, &x) in col.iter().enumerate() {
                r[(row, target)] = Cmplx::new(x, 0.0);
            }
        }
        r
    };
    let mut orthogonal = assemble(&columns);
    let wanted = if odd { -1.0 } else { 1.0 };
    if determinant(&orthogonal)?.re * wanted < 0.0 {
        let base = usize::from(odd);
        if columns.len() >= base + 2 {
            columns.swap(base, base + 1);
            let (u, l) = blocks[0];
            blocks[0] = (-u, -l);
        } else {
            columns[0].iter_mut().for_each(|x| *x = -*x);
        }
        orthogonal = assemble(&columns);
    }
    let antidiagonal = AntidiagonalSpec::from_pairs(center, &blocks)?;
    Ok(OrthAntidiagonalization {
        orthogonal,
        antidiagonal,
    })
}

/// Pairs of `a` in dense form, for callers that only hold the decomposition.
pub fn pair_blocks(pairs: &[TransposePair]) -> Vec<DenseMatrix> {
    pairs
        .iter()
        .map(|p| {
            DenseMatrix::from_rows(&[vec![ZERO, p.upper()], vec![p.lower(), ZERO]]).expect("2x2")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{eig_dense, is_orthogonal, multiset_distance};

    fn c(x: f64) -> Cmplx {
        Cmplx::new(x, 0.0)
    }

    fn spec(xs: &[f64]) -> AntidiagonalSpec {
        AntidiagonalSpec::from_real(xs).unwrap()
    }

    fn block(u: f64, l: f64) -> DenseMatrix {
        DenseMatrix::from_real(2, 2, &[0.0, u, l, 0.0]).unwrap()
    }

    #[test]
    fn two_by_two_is_its_own_quasidiagonal_form() {
        let a = spec(&[3.0, -2.0]);
        let d = perm_quasidiag(&a);
        assert_eq!(d.p(), DenseMatrix::identity(2));
        assert_eq!(d.quasidiagonal, a.to_dense());
    }

    #[test]
    fn four_by_four_blocks_and_parity() {
        let a = spec(&[2.0, 3.0, 1.0, 4.0]);
        let d = perm_quasidiag(&a);
        assert_eq!(d.blocks, vec![block(2.0, 3.0), block(1.0, 4.0)]);
        assert_eq!(d.parity, 1);
        assert_eq!(
            &(&d.p() * &d.quasidiagonal) * &d.p().transpose(),
            a.to_dense()
        );
    }

    #[test]
    fn three_by_three_blocks_and_parity() {
        let a = spec(&[5.0, 1.0, 1.0]);
        let d = perm_quasidiag(&a);
        assert_eq!(
            d.blocks,
            vec![DenseMatrix::from_diag(&[c(5.0)]), block(1.0, 1.0)]
        );
        assert_eq!(d.parity, -1);
        assert_eq!(d.reconstruct(), a.to_dense());
    }

    #[test]
    fn parity_follows_the_permutation() {
        for n in 1..=32 {
            let p = quasidiag_permutation(n);
            let det = determinant(&p.to_dense()).unwrap().re;
            assert_eq!(det, f64::from(p.sign()), "n = {n}");
        }
    }

    #[test]
    fn q_pseudo_hollow_examples() {
        let tol = Tolerance::default();
        let a = spec(&[5.0, 1.0, -2.0, 0.0, 3.0]);
        assert!(is_q_pseudo_hollow_quasidiagonal(
            &perm_quasidiag(&a).quasidiagonal,
            tol
        ));
        assert!(!is_q_pseudo_hollow_quasidiagonal(
            &DenseMatrix::identity(2),
            tol
        ));
        assert!(is_q_pseudo_hollow_quasidiagonal(&block(1.0, 0.0), tol));
        let mut bad = DenseMatrix::from_diag(&[c(1.0), c(0.0)]);
        bad[(0, 1)] = c(1.0);
        assert!(!is_q_pseudo_hollow_quasidiagonal(&bad, tol));
    }

    #[test]
    fn permute_pairs_conjugates() {
        let a = spec(&[7.0, 2.0, 3.0, 1.0, 4.0]);
        let (b, pi) = permute_pairs(&a, &[1, 0], &[true, false]).unwrap();
        assert_eq!(pi.conjugate(&a.to_dense()), b.to_dense());
        let (pairs, _) = b.transpose_pairs(Tolerance::default());
        assert_eq!((pairs[0].upper(), pairs[0].lower()), (c(1.0), c(4.0)));
    }

    #[test]
    fn real_schur_examples() {
        let tol = Tolerance::default();
        let r = real_schur_antisym_antidiag(&spec(&[1.0, -1.0]), tol).unwrap();
        assert_eq!(r.decomposition.quasidiagonal, block(1.0, -1.0));
        assert_eq!(
            r.block_eigenvalues,
            vec![(Cmplx::new(0.0, -1.0), Cmplx::new(0.0, 1.0))]
        );
        let r = real_schur_antisym_antidiag(&spec(&[2.0, -2.0, 7.0, -7.0]), tol).unwrap();
        let moduli: Vec<f64> = r.block_eigenvalues.iter().map(|e| e.1.im).collect();
        assert_eq!(moduli, vec![2.0, 7.0]);
        assert!(matches!(
            real_schur_antisym_antidiag(&spec(&[1.0, 1.0]), tol),
            Err(Error::NotRealAntisymmetric(_))
        ));
    }

    fn check_orth(m: &DenseMatrix) {
        let tol = Tolerance::default();
        let n = m.rows();
        let out = orth_antidiagonalize_real_antisym(m, tol).unwrap();
        let r = &out.orthogonal;
        assert!(is_orthogonal(r, tol));
        let a = out.antidiagonal.to_dense();
        let back = &(r * &a) * &r.transpose();
        assert!(back.distance(m).unwrap() <= 1e-9 * m.frobenius_norm().max(1.0));
        let det = determinant(r).unwrap().re;
        assert!(
            (det - if n % 2 == 1 { -1.0 } else { 1.0 }).abs() < 1e-10,
            "det {det}"
        );
        let s1 = eig_dense(m, false).unwrap().values;
        let s2 = eig_dense(&a, false).unwrap().values;
        assert!(multiset_distance(&s1, &s2).unwrap() < 1e-9 * m.frobenius_norm().max(1.0));
    }

    #[test]
    fn orth_examples() {
        check_orth(&spec(&[3.0, -3.0]).to_dense());
        check_orth(&DenseMatrix::zeros(3, 3));
        check_orth(&DenseMatrix::zeros(1, 1));
        let m = DenseMatrix::from_real(
            4,
            4,
            &[
                0.0, 1.0, -2.0, 0.5, -1.0, 0.0, 3.0, 1.5, 2.0, -3.0, 0.0, -0.7, -0.5, -1.5, 0.7,
                0.0,
            ],
        )
        .unwrap();
        check_orth(&m);
        let m5 = DenseMatrix::from_fn(5, 5, |i, j| {
            c(if i < j {
                (i + 2 * j) as f64
            } else if i > j {
                -((j + 2 * i) as f64)
            } else {
                0.0
            })
        });
        check_orth(&m5);
    }

    #[test]
    fn orth_rejects_non_antisymmetric() {
        let m = DenseMatrix::identity(2);
        assert!(matches!(
            orth_antidiagonalize_real_antisym(&m, Tolerance::default()),
            Err(Error::NotRealAntisymmetric(_))
        ));
    }
}
