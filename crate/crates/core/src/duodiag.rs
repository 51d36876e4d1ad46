//! Matrices that are both diagonalizable and antidiagonalizable: classification, unitary
//! diagonalization of normal antidiagonal matrices, symmetric and antisymmetric
//! antidiagonalizations, and transport through centrosymmetric similarities.

use std::collections::BTreeMap;

use crate::antidiag::{AntidiagonalSpec, PairKind, TransposePair};
use crate::clusters::ClusteredSchur;
use crate::eigenjordan::{modal_matrix, pair_root, regular_pair_basis, PairBasis};
use crate::error::{Error, Result};
use crate::matcore::spectrum::{
    nearest_to, pair_by_negation, spectrum_symmetry_with_cutoff, NegationPair,
};
use crate::matcore::{
    exchange_matrix, is_unitary, mat_inverse, Cmplx, DenseMatrix, Tolerance, I, ONE, ZERO,
};
use crate::permsim::{pair_base, quasidiag_permutation};

pub use crate::matcore::is_centrosymmetric;

/// `M = V D V^{-1}` with `D` in paired layout: center first for odd `n`, then `(-λ, λ)` per slot.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedDiagonalization {
    pub vectors: DenseMatrix,
    pub diagonal: DenseMatrix,
}

impl PairedDiagonalization {
    pub fn reconstruct(&self, tol: Tolerance) -> Result<DenseMatrix> {
        let inv = mat_inverse(&self.vectors, tol)?;
        Ok(&(&self.vectors * &self.diagonal) * &inv)
    }

    /// Center and per-slot `λ`, checked against the paired layout.
    pub fn paired_values(&self, tol: Tolerance) -> Result<(Option<Cmplx>, Vec<Cmplx>)> {
        let d = &self.diagonal;
        let n = d.require_square()?;
        if self.vectors.rows() != n || self.vectors.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "eigenvector matrix must be {n}x{n}"
            )));
        }
        let cut = tol.cutoff(d.frobenius_norm().max(1.0));
        if d.off_diagonal_norm() > cut {
            return Err(Error::InvalidDiagonalization("D is not diagonal".into()));
        }
        let base = pair_base(n);
        let center = (base == 1).then(|| d[(0, 0)]);
        let mut values = Vec::with_capacity(n / 2);
        for p in 0..n / 2 {
            let (minus, plus) = (
                d[(base + 2 * p, base + 2 * p)],
                d[(base + 2 * p + 1, base + 2 * p + 1)],
            );
            if (minus + plus).norm() > cut {
                return Err(Error::InvalidDiagonalization(format!(
                    "slot {p} holds {minus} and {plus}, not a ± pair"
                )));
            }
            values.push((plus - minus) * 0.5);
        }
        Ok((center, values))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Duodiagonalizability {
    pub duodiagonalizable: bool,
    pub diagonalizable: bool,
    pub balanced_spectrum: bool,
    pub diagonalization: Option<PairedDiagonalization>,
}

/// Eigenvalues snapped to their cluster means, with an orthonormal basis of each cluster's
/// invariant subspace as eigenvectors.
fn cluster_eigenvectors(clusters: &ClusteredSchur) -> (Vec<Cmplx>, Vec<Vec<Cmplx>>) {
    let n = clusters.eigenvalues.len();
    let mut values = vec![ZERO; n];
    let mut vectors = vec![Vec::new(); n];
    let groups = std::iter::once(&clusters.zero)
        .chain(clusters.nonzero.iter())
        .filter(|g| !g.is_empty());
    for (g, group) in groups.enumerate() {
        let mean = if g == 0 && !clusters.zero.is_empty() {
            ZERO
        } else {
            group
                .iter()
                .map(|&i| clusters.eigenvalues[i])
                .sum::<Cmplx>()
                / group.len() as f64
        };
        let leading = clusters.leading(group);
        for (slot, &i) in group.iter().enumerate() {
            values[i] = mean;
            vectors[i] = leading.unitary.column(slot);
        }
    }
    (values, vectors)
}

pub fn classify_duodiagonalizable(m: &DenseMatrix, tol: Tolerance) -> Result<Duodiagonalizability> {
    let clusters = ClusteredSchur::new(m, tol)?;
    let n = m.rows();
    let diagonalizable = clusters.is_diagonalizable();
    let (values, vectors) = cluster_eigenvectors(&clusters);
    let report = spectrum_symmetry_with_cutoff(&values, m.trace(), clusters.cutoff);
    let balanced_spectrum = if n.is_multiple_of(2) {
        report.symmetric
    } else {
        report.c_symmetric
    };
    let mut out = Duodiagonalizability {
        duodiagonalizable: false,
        diagonalizable,
        balanced_spectrum,
        diagonalization: None,
    };
    if !(diagonalizable && balanced_spectrum) {
        return Ok(out);
    }
    let center = (n % 2 == 1).then(|| nearest_to(&values, m.trace()).expect("nonempty"));
    let rest: Vec<usize> = (0..n).filter(|&i| Some(i) != center).collect();
    let Some(pairing) = pair_by_negation(&values, &rest, clusters.cutoff) else {
        out.balanced_spectrum = false;
        return Ok(out);
    };
    let mut columns = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    if let Some(c) = center {
        columns.push(vectors[c].clone());
        diag.push(values[c]);
    }
    for slot in pairing {
        let NegationPair::Pair(i, j) = slot else {
            out.balanced_spectrum = false;
            return Ok(out);
        };
        let root = (values[j] - values[i]) * 0.5;
        columns.push(vectors[i].clone());
        columns.push(vectors[j].clone());
        diag.extend([-root, root]);
    }
    out.duodiagonalizable = true;
    out.diagonalization = Some(PairedDiagonalization {
        vectors: DenseMatrix::from_columns(&columns)?,
        diagonal: DenseMatrix::from_diag(&diag),
    });
    Ok(out)
}

/// First pair whose two elements differ in modulus.
fn modulus_violation(a: &AntidiagonalSpec, tol: Tolerance) -> Option<TransposePair> {
    let (pairs, _) = a.transpose_pairs(tol);
    pairs.into_iter().find(|p| {
        let (u, l) = (p.low.norm(), p.high.norm());
        (u - l).abs() > tol.cutoff(u.max(l))
    })
}

/// Both elements of every transpose pair have the same modulus.
pub fn normal_antidiag_check(a: &AntidiagonalSpec, tol: Tolerance) -> bool {
    modulus_violation(a, tol).is_none()
}

fn sqrt2() -> Cmplx {
    Cmplx::new(std::f64::consts::SQRT_2, 0.0)
}

/// `(1/√2) C Λ_U`, with `C` the identity whose center is `√2` and zero pairs filled by `√2`
/// times the standard basis; unitary exactly when `A` is normal.
pub fn normal_modal_matrix(a: &AntidiagonalSpec, tol: Tolerance) -> Result<DenseMatrix> {
    let (pairs, _) = a.transpose_pairs(tol);
    let s = sqrt2();
    let scaled: PairBasis = [[s, ZERO], [ZERO, s]];
    let bases: BTreeMap<usize, PairBasis> = pairs
        .iter()
        .filter(|p| p.kind == PairKind::Zero)
        .map(|p| (p.ordinal, scaled))
        .collect();
    let modal = modal_matrix(a, &pairs, s, &bases, tol)?;
    Ok(modal.scale(ONE / s))
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryDiagonalization {
    pub unitary: DenseMatrix,
    pub diagonal: DenseMatrix,
}

impl UnitaryDiagonalization {
    pub fn reconstruct(&self) -> DenseMatrix {
        &(&self.unitary * &self.diagonal) * &self.unitary.adjoint()
    }
}

pub fn unitary_diagonalize_normal_antidiag(
    a: &AntidiagonalSpec,
    tol: Tolerance,
) -> Result<UnitaryDiagonalization> {
    if let Some(p) = modulus_violation(a, tol) {
        return Err(Error::NotNormal {
            pair: p.ordinal,
            k: p.k,
            low: p.low.norm(),
            high: p.high.norm(),
        });
    }
    let unitary = normal_modal_matrix(a, tol)?;
    let (pairs, center) = a.transpose_pairs(tol);
    let diagonal = crate::eigenjordan::paired_diagonal(center, &pairs);
    Ok(UnitaryDiagonalization { unitary, diagonal })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntidiagonalizationKind {
    Symmetric,
    AntisymmetricPlus,
    AntisymmetricMinus,
    Generic,
}

/// `M = V A V^{-1}` with `A` antidiagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Antidiagonalization {
    pub transform: DenseMatrix,
    pub target: AntidiagonalSpec,
    pub kind: AntidiagonalizationKind,
    pub unitary: bool,
}

impl Antidiagonalization {
    pub fn reconstruct(&self, tol: Tolerance) -> Result<DenseMatrix> {
        let inv = mat_inverse(&self.transform, tol)?;
        Ok(&(&self.transform * &self.target.to_dense()) * &inv)
    }
}

/// Unitary eigenvector matrix of `target` whose columns follow the paired layout of `values`.
fn paired_unitary_modal(
    target: &AntidiagonalSpec,
    values: &[Cmplx],
    tol: Tolerance,
) -> DenseMatrix {
    let n = target.dim();
    let base = pair_base(n);
    let p = quasidiag_permutation(n);
    let half = Cmplx::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut out = DenseMatrix::zeros(n, n);
    if base == 1 {
        out[((n - 1) / 2, 0)] = ONE;
    }
    let (pairs, _) = target.transpose_pairs(tol);
    for (pair, &lambda) in pairs.iter().zip(values) {
        let mut basis = match pair.kind {
            PairKind::Regular => regular_pair_basis(pair),
            _ => [[-ONE, ONE], [ONE, ONE]],
        };
        if pair.kind == PairKind::Regular
            && (pair_root(pair) + lambda).norm() < (pair_root(pair) - lambda).norm()
        {
            basis.swap(0, 1);
        }
        let slot = base + 2 * pair.ordinal;
        for (c, col) in basis.iter().enumerate() {
            out[(p.images()[slot], slot + c)] = col[0] * half;
            out[(p.images()[slot + 1], slot + c)] = col[1] * half;
        }
    }
    out
}

fn assemble(
    diagonalization: &PairedDiagonalization,
    target: AntidiagonalSpec,
    values: &[Cmplx],
    kind: AntidiagonalizationKind,
    tol: Tolerance,
) -> Antidiagonalization {
    let modal = paired_unitary_modal(&target, values, tol);
    let transform = &diagonalization.vectors * &modal.adjoint();
    let unitary = is_unitary(&transform, tol);
    Antidiagonalization {
        transform,
        target,
        kind,
        unitary,
    }
}

/// Targets `a_k = a_{k+1} = λ` per slot; the modal matrix of every such target is the same
/// constant matrix, so the transform is `V` times its adjoint.
pub fn symmetric_antidiagonalization(
    diagonalization: &PairedDiagonalization,
    tol: Tolerance,
) -> Result<Antidiagonalization> {
    let (center, values) = diagonalization.paired_values(tol)?;
    let pairs: Vec<(Cmplx, Cmplx)> = values.iter().map(|&l| (l, l)).collect();
    let target = AntidiagonalSpec::from_pairs(center, &pairs)?;
    Ok(assemble(
        diagonalization,
        target,
        &values,
        AntidiagonalizationKind::Symmetric,
        tol,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Targets `a_k = ±iλ`, `a_{k+1} = ∓iλ` per slot, antisymmetric with pair spectrum `±λ`.
pub fn antisymmetric_antidiagonalization(
    m: &DenseMatrix,
    diagonalization: &PairedDiagonalization,
    sign: Sign,
    tol: Tolerance,
) -> Result<Antidiagonalization> {
    let trace = m.trace();
    if trace.norm() > tol.cutoff(m.frobenius_norm().max(1.0)) {
        return Err(Error::NotTraceless(trace.norm()));
    }
    let (center, values) = diagonalization.paired_values(tol)?;
    let unit = match sign {
        Sign::Plus => I,
        Sign::Minus => -I,
    };
    let n = m.rows();
    let mut coeffs = vec![ZERO; n];
    let base = pair_base(n);
    for (p, &lambda) in values.iter().enumerate() {
        coeffs[base + 2 * p] = unit * lambda;
        coeffs[base + 2 * p + 1] = -unit * lambda;
    }
    // The center of a traceless odd matrix is zero.
    let _ = center;
    let target = AntidiagonalSpec::new(coeffs)?;
    let kind = match sign {
        Sign::Plus => AntidiagonalizationKind::AntisymmetricPlus,
        Sign::Minus => AntidiagonalizationKind::AntisymmetricMinus,
    };
    Ok(assemble(diagonalization, target, &values, kind, tol))
}

/// Which of the equivalent diagonal and antidiagonal forms a centrosymmetric `C` produces.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportReport {
    /// `C^{-1} E M C` is diagonal.
    pub diag_em: bool,
    /// `C^{-1} M E C` is diagonal.
    pub diag_me: bool,
    /// `C^{-1} M C` is antidiagonal.
    pub antidiag_m: bool,
    /// Both diagonal verdicts together agree with the antidiagonal one.
    pub consistency_a: bool,
    /// `C^{-1} M C` is diagonal.
    pub diag_m: bool,
    /// `C^{-1} E M C` is antidiagonal.
    pub antidiag_em: bool,
    /// `C^{-1} M E C` is antidiagonal.
    pub antidiag_me: bool,
    pub consistency_b: bool,
    /// Off-(anti)diagonal norms in the order of the six verdicts above.
    pub residuals: [f64; 6],
    pub c_unitary: bool,
}

pub fn centrosymmetric_transport(
    c: &DenseMatrix,
    m: &DenseMatrix,
    tol: Tolerance,
) -> Result<TransportReport> {
    let n = c.require_square()?;
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch(format!("M must be {n}x{n}")));
    }
    c.require_finite()?;
    m.require_finite()?;
    if !is_centrosymmetric(c, tol) {
        return Err(Error::NotCentrosymmetric);
    }
    let inv = mat_inverse(c, tol).map_err(|_| Error::SingularTransform)?;
    let e = exchange_matrix(n);
    let conj = |x: &DenseMatrix| &(&inv * x) * c;
    let x_m = conj(m);
    let x_em = conj(&(&e * m));
    let x_me = conj(&(m * &e));
    let cut = |x: &DenseMatrix| tol.cutoff(n as f64 * x.frobenius_norm());
    let diag = |x: &DenseMatrix| (x.off_diagonal_norm(), x.off_diagonal_norm() <= cut(x));
    let anti = |x: &DenseMatrix| {
        (
            x.off_antidiagonal_norm(),
            x.off_antidiagonal_norm() <= cut(x),
        )
    };
    let (r_em, diag_em) = diag(&x_em);
    let (r_me, diag_me) = diag(&x_me);
    let (r_m, antidiag_m) = anti(&x_m);
    let (r_dm, diag_m) = diag(&x_m);
    let (r_aem, antidiag_em) = anti(&x_em);
    let (r_ame, antidiag_me) = anti(&x_me);
    Ok(TransportReport {
        diag_em,
        diag_me,
        antidiag_m,
        consistency_a: (diag_em && diag_me) == antidiag_m,
        diag_m,
        antidiag_em,
        antidiag_me,
        consistency_b: diag_m == (antidiag_em && antidiag_me),
        residuals: [r_em, r_me, r_m, r_dm, r_aem, r_ame],
        c_unitary: is_unitary(c, tol),
    })
}
