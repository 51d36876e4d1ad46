//! Explicit eigendecompositions and Jordan forms of antidiagonal matrices, and the
//! antidiagonalizability classifier for general matrices.

use std::collections::BTreeMap;
use std::fmt;

use crate::antidiag::{AntidiagonalSpec, PairKind, TransposePair};
use crate::clusters::ClusteredSchur;
use crate::error::{Error, Result};
use crate::matcore::spectrum::{
    nearest_to, pair_by_negation, spectrum_symmetry_with_cutoff, NegationPair,
};
use crate::matcore::{
    mat_inverse, numerical_rank, principal_sqrt, Cmplx, DenseMatrix, Tolerance, ONE, ZERO,
};
use crate::permsim::pair_base;

/// A pair of 2-vectors in (upper row, lower row) coordinates, used as two columns of a modal block.
pub type PairBasis = [[Cmplx; 2]; 2];

pub const STANDARD_PAIR_BASIS: PairBasis = [[ONE, ZERO], [ZERO, ONE]];

#[derive(Debug, Clone, PartialEq)]
pub struct EigenOptions {
    /// Center entry of the modal matrix for odd dimensions; must be nonzero.
    pub omega: Cmplx,
    /// Eigenvector pairs for all-zero transpose pairs, keyed by pair ordinal.
    pub zero_pair_bases: BTreeMap<usize, PairBasis>,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            omega: ONE,
            zero_pair_bases: BTreeMap::new(),
        }
    }
}

/// `A = Λ D Λ^{-1}` with `D` laid out center first, then `(-λ, λ)` per pair.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub modal: DenseMatrix,
    pub diagonal: DenseMatrix,
    /// Ordinals of the all-zero pairs whose eigenvectors were free choices.
    pub free_vector_slots: Vec<usize>,
}

impl EigenDecomposition {
    pub fn reconstruct(&self, tol: Tolerance) -> Result<DenseMatrix> {
        let inv = mat_inverse(&self.modal, tol)?;
        Ok(&(&self.modal * &self.diagonal) * &inv)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EigenOutcome {
    Diagonalizable(EigenDecomposition),
    /// Ordinals of the defective transpose pairs.
    Defective(Vec<usize>),
}

/// Writes a pair block's two columns into quasidiagonal slots `base + 2p`, `base + 2p + 1`.
fn place_pair(out: &mut DenseMatrix, pair: &TransposePair, base: usize, columns: PairBasis) {
    let slot = base + 2 * pair.ordinal;
    for (c, col) in columns.iter().enumerate() {
        out[(pair.upper_row, slot + c)] = col[0];
        out[(pair.lower_row, slot + c)] = col[1];
    }
}

/// Columns `(-ρ, 1)`, `(ρ, 1)` with `ρ = √upper / √lower`, eigenvectors for `-λ` and `λ`.
pub(crate) fn regular_pair_basis(pair: &TransposePair) -> PairBasis {
    let ratio = principal_sqrt(pair.upper()) / principal_sqrt(pair.lower());
    [[-ratio, ONE], [ratio, ONE]]
}

/// `√upper · √lower`, the positive-slot eigenvalue of a pair.
pub(crate) fn pair_root(pair: &TransposePair) -> Cmplx {
    principal_sqrt(pair.upper()) * principal_sqrt(pair.lower())
}

fn require_nonzero_omega(omega: Cmplx) -> Result<()> {
    if omega == ZERO || !omega.is_finite() {
        return Err(Error::InvalidInput(
            "omega must be finite and nonzero".into(),
        ));
    }
    Ok(())
}

fn check_independent(pair: usize, basis: &PairBasis, tol: Tolerance) -> Result<()> {
    let [w1, w2] = basis;
    let det = w1[0] * w2[1] - w1[1] * w2[0];
    let norm = |w: &[Cmplx; 2]| (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
    if !det.is_finite() || det.norm() <= tol.cutoff(norm(w1) * norm(w2)) {
        return Err(Error::LinearlyDependentChoice { pair });
    }
    Ok(())
}

/// Modal matrix `P (ω ⊕ L_1 ⊕ ...)` for an antidiagonal matrix without defective pairs.
pub(crate) fn modal_matrix(
    a: &AntidiagonalSpec,
    pairs: &[TransposePair],
    omega: Cmplx,
    zero_bases: &BTreeMap<usize, PairBasis>,
    tol: Tolerance,
) -> Result<DenseMatrix> {
    let n = a.dim();
    let base = pair_base(n);
    let mut modal = DenseMatrix::zeros(n, n);
    if base == 1 {
        modal[((n - 1) / 2, 0)] = omega;
    }
    for pair in pairs {
        let columns = match pair.kind {
            PairKind::Regular => regular_pair_basis(pair),
            PairKind::Zero => {
                let basis = zero_bases
                    .get(&pair.ordinal)
                    .copied()
                    .unwrap_or(STANDARD_PAIR_BASIS);
                check_independent(pair.ordinal, &basis, tol)?;
                basis
            }
            PairKind::Defective => {
                return Err(Error::PrecondViolated(format!(
                    "pair {} is defective",
                    pair.ordinal
                )));
            }
        };
        place_pair(&mut modal, pair, base, columns);
    }
    Ok(modal)
}

/// Diagonal `c ⊕ diag(-λ, λ) ⊕ ...`, with zero for zero pairs.
pub(crate) fn paired_diagonal(center: Option<Cmplx>, pairs: &[TransposePair]) -> DenseMatrix {
    let mut d = Vec::with_capacity(2 * pairs.len() + 1);
    d.extend(center);
    for pair in pairs {
        let root = if pair.kind == PairKind::Regular {
            pair_root(pair)
        } else {
            ZERO
        };
        d.extend([-root, root]);
    }
    DenseMatrix::from_diag(&d)
}

pub fn antidiag_eigendecomposition(
    a: &AntidiagonalSpec,
    options: &EigenOptions,
    tol: Tolerance,
) -> Result<EigenOutcome> {
    require_nonzero_omega(options.omega)?;
    let (pairs, center) = a.transpose_pairs(tol);
    let defective: Vec<usize> = pairs
        .iter()
        .filter(|p| p.kind == PairKind::Defective)
        .map(|p| p.ordinal)
        .collect();
    if !defective.is_empty() {
        return Ok(EigenOutcome::Defective(defective));
    }
    let modal = modal_matrix(a, &pairs, options.omega, &options.zero_pair_bases, tol)?;
    let diagonal = paired_diagonal(center, &pairs);
    let free_vector_slots = pairs
        .iter()
        .filter(|p| p.kind == PairKind::Zero)
        .map(|p| p.ordinal)
        .collect();
    Ok(EigenOutcome::Diagonalizable(EigenDecomposition {
        modal,
        diagonal,
        free_vector_slots,
    }))
}

/// Inverse of a modal matrix as half the entrywise reciprocal of its transpose, with the odd
/// center entry taken as `1/ω` (the halving applies to 2x2 pair blocks only).
pub fn lambda_inverse_shortcut(
    modal: &DenseMatrix,
    a: &AntidiagonalSpec,
    tol: Tolerance,
) -> Result<DenseMatrix> {
    let n = a.dim();
    if modal.rows() != n || modal.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "modal matrix must be {n}x{n}"
        )));
    }
    let (pairs, _) = a.transpose_pairs(tol);
    if let Some(p) = pairs.iter().find(|p| p.kind != PairKind::Regular) {
        return Err(Error::PrecondViolated(format!(
            "pair {} is zero or defective",
            p.ordinal
        )));
    }
    let half = Cmplx::new(0.5, 0.0);
    let mut inv = DenseMatrix::from_fn(n, n, |i, j| {
        let x = modal[(j, i)];
        if x == ZERO {
            ZERO
        } else {
            half / x
        }
    });
    if n % 2 == 1 {
        let row = (n - 1) / 2;
        inv[(0, row)] = ONE / modal[(row, 0)];
    }
    Ok(inv)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JordanOptions {
    /// Scale of the generalized eigenvector chain; must be nonzero.
    pub x: Cmplx,
    /// Free component added to the chain's second vector.
    pub y: Cmplx,
}

impl Default for JordanOptions {
    fn default() -> Self {
        Self { x: ONE, y: ZERO }
    }
}

/// What occupies a position of the Jordan form, in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JordanSlot {
    /// 2x2 nilpotent block of a defective pair; `zero_on_upper` marks the orientation whose
    /// chain was mirrored back onto the original rows.
    Nilpotent {
        pair: usize,
        zero_on_upper: bool,
    },
    Center,
    /// `(-λ, λ)` of a nondefective pair.
    Diagonal {
        pair: usize,
    },
}

/// `A = Λ_G J Λ_G^{-1}`: nilpotent 2x2 blocks first, then the center, then the paired diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanDecomposition {
    pub basis: DenseMatrix,
    pub jordan: DenseMatrix,
    pub nilpotent_blocks: usize,
    /// `(-λ, λ)` per nondefective pair.
    pub diag_part: Vec<(Cmplx, Cmplx)>,
    pub nil_part_size: usize,
    pub slots: Vec<JordanSlot>,
}

impl JordanDecomposition {
    pub fn reconstruct(&self, tol: Tolerance) -> Result<DenseMatrix> {
        let inv = mat_inverse(&self.basis, tol)?;
        Ok(&(&self.basis * &self.jordan) * &inv)
    }
}

/// Generalized eigenvector chain `(g1, g2)` with `N g1 = 0`, `N g2 = g1`.
fn defective_chain(pair: &TransposePair, options: JordanOptions) -> (PairBasis, bool) {
    let JordanOptions { x, y } = options;
    if pair.lower() == ZERO {
        ([[x, ZERO], [y, x / pair.upper()]], false)
    } else {
        ([[ZERO, x], [x / pair.lower(), y]], true)
    }
}

pub fn antidiag_jordan(
    a: &AntidiagonalSpec,
    options: JordanOptions,
    tol: Tolerance,
) -> Result<JordanDecomposition> {
    if options.x == ZERO || !options.x.is_finite() || !options.y.is_finite() {
        return Err(Error::InvalidInput(
            "x must be finite and nonzero, y finite".into(),
        ));
    }
    let n = a.dim();
    let (pairs, center) = a.transpose_pairs(tol);
    let mut slots = Vec::with_capacity(n);
    let mut columns: Vec<Vec<Cmplx>> = Vec::with_capacity(n);
    let mut jordan_diag: Vec<Cmplx> = Vec::with_capacity(n);
    let column_of = |pair: &TransposePair, v: [Cmplx; 2]| {
        let mut col = vec![ZERO; n];
        col[pair.upper_row] = v[0];
        col[pair.lower_row] = v[1];
        col
    };
    let defective: Vec<&TransposePair> = pairs
        .iter()
        .filter(|p| p.kind == PairKind::Defective)
        .collect();
    for pair in &defective {
        let (chain, zero_on_upper) = defective_chain(pair, options);
        columns.push(column_of(pair, chain[0]));
        columns.push(column_of(pair, chain[1]));
        jordan_diag.extend([ZERO, ZERO]);
        slots.push(JordanSlot::Nilpotent {
            pair: pair.ordinal,
            zero_on_upper,
        });
    }
    if let Some(c) = center {
        let mut col = vec![ZERO; n];
        col[(n - 1) / 2] = ONE;
        columns.push(col);
        jordan_diag.push(c);
        slots.push(JordanSlot::Center);
    }
    let mut diag_part = Vec::new();
    for pair in pairs.iter().filter(|p| p.kind != PairKind::Defective) {
        let (basis, root) = match pair.kind {
            PairKind::Regular => (regular_pair_basis(pair), pair_root(pair)),
            _ => (STANDARD_PAIR_BASIS, ZERO),
        };
        columns.push(column_of(pair, basis[0]));
        columns.push(column_of(pair, basis[1]));
        jordan_diag.extend([-root, root]);
        diag_part.push((-root, root));
        slots.push(JordanSlot::Diagonal { pair: pair.ordinal });
    }
    let basis = DenseMatrix::from_columns(&columns)?;
    let mut jordan = DenseMatrix::from_diag(&jordan_diag);
    for b in 0..defective.len() {
        jordan[(2 * b, 2 * b + 1)] = ONE;
    }
    Ok(JordanDecomposition {
        basis,
        jordan,
        nilpotent_blocks: defective.len(),
        diag_part,
        nil_part_size: 2 * defective.len(),
        slots,
    })
}

/// Nilpotent part, diagonal part and center of the similarity direct sum.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityDirectSum {
    /// One `[[0, 1], [0, 0]]` per defective pair.
    pub nilpotent: Vec<DenseMatrix>,
    /// `λ diag(1, -1)` per nondefective pair.
    pub diagonal: Vec<DenseMatrix>,
    pub center: Option<Cmplx>,
}

impl SimilarityDirectSum {
    /// Blocks in the order nilpotent, center, diagonal.
    pub fn to_dense(&self) -> DenseMatrix {
        let mut blocks: Vec<&DenseMatrix> = self.nilpotent.iter().collect();
        let center = self.center.map(|c| DenseMatrix::from_diag(&[c]));
        blocks.extend(center.as_ref());
        blocks.extend(self.diagonal.iter());
        direct_sum(&blocks)
    }
}

pub fn direct_sum(blocks: &[&DenseMatrix]) -> DenseMatrix {
    let n = blocks.iter().map(|b| b.rows()).sum();
    let mut out = DenseMatrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out[(at + i, at + j)] = b[(i, j)];
            }
        }
        at += b.rows();
    }
    out
}

pub fn similarity_direct_sum(a: &AntidiagonalSpec, tol: Tolerance) -> SimilarityDirectSum {
    let (pairs, center) = a.transpose_pairs(tol);
    let mut nilpotent = Vec::new();
    let mut diagonal = Vec::new();
    for pair in &pairs {
        if pair.kind == PairKind::Defective {
            nilpotent
                .push(DenseMatrix::from_rows(&[vec![ZERO, ONE], vec![ZERO, ZERO]]).expect("2x2"));
        } else {
            let root = if pair.kind == PairKind::Regular {
                pair_root(pair)
            } else {
                ZERO
            };
            diagonal.push(DenseMatrix::from_diag(&[root, -root]));
        }
    }
    SimilarityDirectSum {
        nilpotent,
        diagonal,
        center,
    }
}

/// Why a matrix fails to be antidiagonalizable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    AsymmetricSpectrum,
    LongNilpotentChain,
    NonSemisimple,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::AsymmetricSpectrum => "spectrum not symmetric",
            Self::LongNilpotentChain => "rank-3 nilpotent chain",
            Self::NonSemisimple => "nonzero eigenvalue not semisimple",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Antidiagonalizability {
    pub antidiagonalizable: bool,
    pub reason: Option<Obstruction>,
    /// Antidiagonal matrix similar to the input.
    pub witness: Option<AntidiagonalSpec>,
}

impl Antidiagonalizability {
    fn rejected(reason: Obstruction) -> Self {
        Self {
            antidiagonalizable: false,
            reason: Some(reason),
            witness: None,
        }
    }
}

/// Nullities of `N`, `N^2`, `N^3` for the nilpotent part of the zero cluster.
fn zero_chain_nullities(clusters: &ClusteredSchur, tol: Tolerance) -> [usize; 3] {
    let m0 = clusters.zero.len();
    if m0 == 0 {
        return [0; 3];
    }
    let n1 = clusters.nilpotent_part(&clusters.zero);
    let n2 = &n1 * &n1;
    let n3 = &n2 * &n1;
    let scale = clusters.scale;
    [(n1, 1), (n2, 2), (n3, 3)]
        .map(|(p, k)| m0 - numerical_rank(&p, tol.spectral_cutoff(scale.powi(k))))
}

pub fn classify_antidiagonalizable(
    m: &DenseMatrix,
    tol: Tolerance,
) -> Result<Antidiagonalizability> {
    let clusters = ClusteredSchur::new(m, tol)?;
    let n = m.rows();
    let values = clusters.snapped();
    let report = spectrum_symmetry_with_cutoff(&values, m.trace(), clusters.cutoff);
    let balanced = if n.is_multiple_of(2) {
        report.symmetric
    } else {
        report.c_symmetric
    };
    if !balanced {
        return Ok(Antidiagonalizability::rejected(
            Obstruction::AsymmetricSpectrum,
        ));
    }
    let m0 = clusters.zero.len();
    let [k1, k2, k3] = zero_chain_nullities(&clusters, tol);
    // N^2 = 0 forces rank(N) <= nullity(N).
    if k3 != k2 || k2 != m0 || 2 * k1 < m0 {
        return Ok(Antidiagonalizability::rejected(
            Obstruction::LongNilpotentChain,
        ));
    }
    if !clusters.nonzero.iter().all(|c| clusters.is_semisimple(c)) {
        return Ok(Antidiagonalizability::rejected(Obstruction::NonSemisimple));
    }
    let center_index = (n % 2 == 1).then(|| nearest_to(&values, m.trace()).expect("nonempty"));
    let rest: Vec<usize> = (0..n)
        .filter(|&i| Some(i) != center_index && values[i] != ZERO)
        .collect();
    let Some(pairing) = pair_by_negation(&values, &rest, clusters.cutoff) else {
        return Ok(Antidiagonalizability::rejected(
            Obstruction::AsymmetricSpectrum,
        ));
    };
    let nilpotent_blocks = m0 - k1;
    let center_is_zero = center_index.is_some_and(|c| values[c] == ZERO);
    let semisimple_zeros = m0 - 2 * nilpotent_blocks - usize::from(center_is_zero);
    let mut pairs = vec![(ONE, ZERO); nilpotent_blocks];
    pairs.extend(std::iter::repeat_n((ZERO, ZERO), semisimple_zeros / 2));
    for slot in pairing {
        if let NegationPair::Pair(i, j) = slot {
            let root = (values[j] - values[i]) * 0.5;
            pairs.push((root, root));
        }
    }
    let witness = AntidiagonalSpec::from_pairs(center_index.map(|c| values[c]), &pairs)?;
    Ok(Antidiagonalizability {
        antidiagonalizable: true,
        reason: None,
        witness: Some(witness),
    })
}

pub fn is_diagonalizable(m: &DenseMatrix, tol: Tolerance) -> Result<bool> {
    Ok(ClusteredSchur::new(m, tol)?.is_diagonalizable())
}

/// Diagonalizability of `M^2`, with entries below the product's rounding level `rel ‖M‖_F^2`
/// treated as zero.
pub fn square_is_diagonalizable(m: &DenseMatrix, tol: Tolerance) -> Result<bool> {
    m.require_square()?;
    let square = m * m;
    let floor = tol.cutoff(m.frobenius_norm().powi(2));
    Ok(ClusteredSchur::with_noise_floor(&square, floor, tol)?.is_diagonalizable())
}

/// Three flags of which any two imply the third, with the implication checked on this instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NilpotencyTriad {
    pub antidiagonalizable: bool,
    pub nilpotent: bool,
    /// Every generalized eigenvector has rank 2: `M^2 = 0` and `nullity(M) = n/2`.
    pub all_rank2: bool,
    pub consistent: bool,
}

pub fn nilpotency_triad(m: &DenseMatrix, tol: Tolerance) -> Result<NilpotencyTriad> {
    let n = m.require_square()?;
    let antidiagonalizable = classify_antidiagonalizable(m, tol)?.antidiagonalizable;
    let scale = m.frobenius_norm();
    let cut = |k: i32| tol.cutoff(scale.powi(k) * n as f64);
    let square = m * m;
    let square_vanishes = square.frobenius_norm() <= cut(2);
    let mut nilpotent = square_vanishes || m.frobenius_norm() <= cut(1);
    let mut power = square;
    for k in 3..=n as i32 {
        if nilpotent {
            break;
        }
        power = &power * m;
        nilpotent = power.frobenius_norm() <= cut(k);
    }
    let all_rank2 = n % 2 == 0 && square_vanishes && n - numerical_rank(m, cut(1)) == n / 2;
    let count = [antidiagonalizable, nilpotent, all_rank2]
        .iter()
        .filter(|&&f| f)
        .count();
    let consistent = count != 2;
    Ok(NilpotencyTriad {
        antidiagonalizable,
        nilpotent,
        all_rank2,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{eig_dense, multiset_distance};

    fn c(x: f64) -> Cmplx {
        Cmplx::new(x, 0.0)
    }

    fn spec(xs: &[f64]) -> AntidiagonalSpec {
        AntidiagonalSpec::from_real(xs).unwrap()
    }

    fn real(n: usize, data: &[f64]) -> DenseMatrix {
        DenseMatrix::from_real(n, n, data).unwrap()
    }

    fn eigen(a: &AntidiagonalSpec) -> EigenDecomposition {
        match antidiag_eigendecomposition(a, &EigenOptions::default(), Tolerance::default())
            .unwrap()
        {
            EigenOutcome::Diagonalizable(d) => d,
            EigenOutcome::Defective(p) => panic!("defective pairs {p:?}"),
        }
    }

    fn assert_close(a: &DenseMatrix, b: &DenseMatrix, eps: f64) {
        let d = a.distance(b).unwrap();
        assert!(
            d <= eps * b.frobenius_norm().max(1.0),
            "distance {d}\n{a:?}\n{b:?}"
        );
    }

    #[test]
    fn two_by_two_eigendecomposition() {
        let a = spec(&[1.0, 4.0]);
        let d = eigen(&a);
        assert_eq!(d.modal, real(2, &[-0.5, 0.5, 1.0, 1.0]));
        assert_eq!(d.diagonal, DenseMatrix::from_diag(&[c(-2.0), c(2.0)]));
        assert_close(
            &d.reconstruct(Tolerance::default()).unwrap(),
            &a.to_dense(),
            1e-14,
        );
    }

    #[test]
    fn zero_pair_uses_standard_basis() {
        let d = eigen(&spec(&[0.0, 0.0]));
        assert_eq!(d.modal, DenseMatrix::identity(2));
        assert_eq!(d.diagonal, DenseMatrix::zeros(2, 2));
        assert_eq!(d.free_vector_slots, vec![0]);
    }

    #[test]
    fn defective_pair_is_reported() {
        let out = antidiag_eigendecomposition(
            &spec(&[0.0, 1.0]),
            &EigenOptions::default(),
            Tolerance::default(),
        );
        assert_eq!(out.unwrap(), EigenOutcome::Defective(vec![0]));
    }

    #[test]
    fn dependent_zero_pair_choice_is_rejected() {
        let mut options = EigenOptions::default();
        options
            .zero_pair_bases
            .insert(0, [[ONE, ONE], [c(2.0), c(2.0)]]);
        let out = antidiag_eigendecomposition(&spec(&[0.0, 0.0]), &options, Tolerance::default());
        assert!(matches!(
            out,
            Err(Error::LinearlyDependentChoice { pair: 0 })
        ));
    }

    #[test]
    fn odd_dimension_with_omega() {
        let a = spec(&[5.0, 1.0, 4.0, 2.0, -3.0]);
        let options = EigenOptions {
            omega: Cmplx::new(0.0, 3.0),
            ..EigenOptions::default()
        };
        let EigenOutcome::Diagonalizable(d) =
            antidiag_eigendecomposition(&a, &options, Tolerance::default()).unwrap()
        else {
            panic!("not defective")
        };
        assert_close(
            &d.reconstruct(Tolerance::default()).unwrap(),
            &a.to_dense(),
            1e-13,
        );
        assert_eq!(d.diagonal[(0, 0)], c(5.0));
    }

    #[test]
    fn inverse_shortcut_examples() {
        let tol = Tolerance::default();
        let a = spec(&[1.0, 4.0]);
        let inv = lambda_inverse_shortcut(&eigen(&a).modal, &a, tol).unwrap();
        assert_eq!(inv, real(2, &[-1.0, 0.5, 1.0, 0.5]));
        let e2 = spec(&[1.0, 1.0]);
        let modal = eigen(&e2).modal;
        assert_eq!(modal, real(2, &[-1.0, 1.0, 1.0, 1.0]));
        assert_eq!(
            lambda_inverse_shortcut(&modal, &e2, tol).unwrap(),
            real(2, &[-0.5, 0.5, 0.5, 0.5])
        );
        let bad = spec(&[0.0, 1.0]);
        assert!(matches!(
            lambda_inverse_shortcut(&modal, &bad, tol),
            Err(Error::PrecondViolated(_))
        ));
    }

    #[test]
    fn inverse_shortcut_matches_lu_for_odd_dimensions() {
        let tol = Tolerance::default();
        for xs in [
            &[2.0][..],
            &[3.0, 1.0, -2.0],
            &[-1.0, 2.0, 3.0, 0.5, 7.0],
            &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
        ] {
            let a = spec(xs);
            let modal = eigen(&a).modal;
            let inv = lambda_inverse_shortcut(&modal, &a, tol).unwrap();
            assert_close(&inv, &mat_inverse(&modal, tol).unwrap(), 1e-14);
        }
    }

    #[test]
    fn jordan_examples() {
        let tol = Tolerance::default();
        let a = spec(&[0.0, 1.0]);
        let j = antidiag_jordan(&a, JordanOptions::default(), tol).unwrap();
        assert_eq!(j.jordan, real(2, &[0.0, 1.0, 0.0, 0.0]));
        assert_eq!(j.basis, real(2, &[0.0, 1.0, 1.0, 0.0]));
        assert_eq!(
            j.slots,
            vec![JordanSlot::Nilpotent {
                pair: 0,
                zero_on_upper: true
            }]
        );
        assert_close(&j.reconstruct(tol).unwrap(), &a.to_dense(), 1e-15);

        let flipped = spec(&[1.0, 0.0]);
        let j = antidiag_jordan(&flipped, JordanOptions::default(), tol).unwrap();
        assert_eq!(j.basis, DenseMatrix::identity(2));

        let j = antidiag_jordan(&spec(&[1.0, 4.0]), JordanOptions::default(), tol).unwrap();
        assert_eq!(j.jordan, DenseMatrix::from_diag(&[c(-2.0), c(2.0)]));
        assert_eq!(j.nilpotent_blocks, 0);

        let a = spec(&[5.0, 0.0, 2.0]);
        let j = antidiag_jordan(
            &a,
            JordanOptions {
                x: c(2.0),
                y: c(-1.5),
            },
            tol,
        )
        .unwrap();
        assert_eq!(j.nilpotent_blocks, 1);
        assert_eq!(j.jordan.diagonal(), vec![c(0.0), c(0.0), c(5.0)]);
        assert_close(&j.reconstruct(tol).unwrap(), &a.to_dense(), 1e-14);
    }

    #[test]
    fn jordan_agrees_with_eigendecomposition() {
        let a = spec(&[3.0, -1.0, 2.0, 0.0, 0.0, 4.0, 1.0]);
        let j = antidiag_jordan(&a, JordanOptions::default(), Tolerance::default()).unwrap();
        let d = eigen(&a);
        assert_eq!(j.basis, d.modal);
        assert_eq!(j.jordan, d.diagonal);
    }

    #[test]
    fn direct_sum_examples() {
        let tol = Tolerance::default();
        let s = similarity_direct_sum(&spec(&[2.0, 3.0, 1.0, 4.0]), tol);
        assert!(s.nilpotent.is_empty());
        let r6 = 6f64.sqrt();
        assert_eq!(s.diagonal.len(), 2);
        assert_close(
            &s.diagonal[0],
            &DenseMatrix::from_diag(&[c(r6), c(-r6)]),
            1e-15,
        );
        assert_eq!(s.diagonal[1], DenseMatrix::from_diag(&[c(2.0), c(-2.0)]));
        let s = similarity_direct_sum(&spec(&[0.0, 1.0]), tol);
        assert_eq!((s.nilpotent.len(), s.diagonal.len()), (1, 0));
        let s = similarity_direct_sum(&spec(&[7.0]), tol);
        assert_eq!(s.center, Some(c(7.0)));
        assert_eq!(s.to_dense(), DenseMatrix::from_diag(&[c(7.0)]));
    }

    fn classify(m: &DenseMatrix) -> Antidiagonalizability {
        classify_antidiagonalizable(m, Tolerance::default()).unwrap()
    }

    fn check_witness(m: &DenseMatrix, verdict: &Antidiagonalizability) {
        let w = verdict.witness.as_ref().expect("witness");
        let s1 = eig_dense(m, false).unwrap().values;
        let s2 = eig_dense(&w.to_dense(), false).unwrap().values;
        assert!(
            multiset_distance(&s1, &s2).unwrap() < 1e-6,
            "{s1:?} vs {s2:?}"
        );
    }

    #[test]
    fn classifier_examples() {
        let nil = real(2, &[0.0, 1.0, 0.0, 0.0]);
        let v = classify(&nil);
        assert!(v.antidiagonalizable);
        assert_eq!(
            v.witness,
            Some(AntidiagonalSpec::from_pairs(None, &[(ONE, ZERO)]).unwrap())
        );

        let j3 = real(3, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(classify(&j3).reason, Some(Obstruction::LongNilpotentChain));

        let d = DenseMatrix::from_diag(&[c(1.0), c(-1.0), c(0.0)]);
        let v = classify(&d);
        assert!(v.antidiagonalizable);
        check_witness(&d, &v);

        assert_eq!(
            classify(&DenseMatrix::identity(2)).reason,
            Some(Obstruction::AsymmetricSpectrum)
        );
    }

    #[test]
    fn classifier_rejects_nonsemisimple_pairs() {
        let m = real(
            4,
            &[
                1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 1.0, 0.0, 0.0, 0.0, -1.0,
            ],
        );
        assert_eq!(classify(&m).reason, Some(Obstruction::NonSemisimple));
    }

    #[test]
    fn classifier_accepts_odd_center_and_zero_pairs() {
        let a = spec(&[4.0, 0.0, 0.0, 2.0, 3.0, 1.0, 0.0]);
        let m = a.to_dense();
        let v = classify(&m);
        assert!(v.antidiagonalizable);
        check_witness(&m, &v);
    }

    #[test]
    fn diagonalizability() {
        let tol = Tolerance::default();
        assert!(is_diagonalizable(&spec(&[1.0, 4.0]).to_dense(), tol).unwrap());
        assert!(!is_diagonalizable(&spec(&[0.0, 1.0]).to_dense(), tol).unwrap());
        assert!(is_diagonalizable(&DenseMatrix::zeros(3, 3), tol).unwrap());
    }

    #[test]
    fn triad_examples() {
        let tol = Tolerance::default();
        let t = nilpotency_triad(&real(2, &[0.0, 1.0, 0.0, 0.0]), tol).unwrap();
        assert_eq!(
            (t.antidiagonalizable, t.nilpotent, t.all_rank2, t.consistent),
            (true, true, true, true)
        );
        let t = nilpotency_triad(&DenseMatrix::from_diag(&[c(1.0), c(-1.0)]), tol).unwrap();
        assert_eq!(
            (t.antidiagonalizable, t.nilpotent, t.all_rank2, t.consistent),
            (true, false, false, true)
        );
        let j3 = real(3, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let t = nilpotency_triad(&j3, tol).unwrap();
        assert_eq!(
            (t.antidiagonalizable, t.nilpotent, t.all_rank2, t.consistent),
            (false, true, false, true)
        );
    }

    #[test]
    fn triad_is_inconsistent_on_the_zero_matrix() {
        let t = nilpotency_triad(&DenseMatrix::zeros(2, 2), Tolerance::default()).unwrap();
        assert_eq!(
            (t.antidiagonalizable, t.nilpotent, t.all_rank2, t.consistent),
            (true, true, false, false)
        );
    }
}
