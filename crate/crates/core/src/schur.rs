//! Closed-form Schur decompositions of 2x2 antidiagonal blocks and of antidiagonal matrices.

use std::collections::BTreeMap;

use crate::antidiag::{AntidiagonalSpec, PairKind};
use crate::error::{Error, Result};
use crate::matcore::{
    cis, is_unitary, mat_inverse, principal_arg, principal_sqrt, unitarity_defect, Cmplx,
    DenseMatrix, Tolerance, ONE, ZERO,
};
use crate::permsim::{pair_base, quasidiag_permutation};

/// `Γ A₂ Γ* = T` for `A₂ = [[0, a1], [a2, 0]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurBlock2 {
    pub a1: Cmplx,
    pub a2: Cmplx,
    pub phi: f64,
    pub t: f64,
    pub unitary: DenseMatrix,
    pub triangular: DenseMatrix,
}

fn block(a: Cmplx, b: Cmplx, c: Cmplx, d: Cmplx) -> DenseMatrix {
    DenseMatrix::from_vec(2, 2, vec![a, b, c, d]).expect("2x2")
}

pub fn schur_2x2(a1: Cmplx, a2: Cmplx, phi: f64, t: f64) -> Result<SchurBlock2> {
    if !(a1.is_finite() && a2.is_finite() && phi.is_finite() && t.is_finite()) {
        return Err(Error::NonFinite);
    }
    let (r1, r2) = (a1.norm(), a2.norm());
    if r1 == 0.0 && r2 == 0.0 {
        return Err(Error::BothZero);
    }
    let (th1, th2) = (principal_arg(a1), principal_arg(a2));
    let s = r1 + r2;
    let (p, q) = ((r1 / s).sqrt(), (r2 / s).sqrt());
    let half = (th1 - th2) / 2.0;
    let unitary = block(
        -cis(phi) * p,
        cis(phi + half) * q,
        cis(t - phi - half) * q,
        cis(t - phi) * p,
    );
    let root = principal_sqrt(a1) * principal_sqrt(a2);
    let triangular = block(-root, cis(2.0 * phi + th1 - t) * (r2 - r1), ZERO, root);
    Ok(SchurBlock2 {
        a1,
        a2,
        phi,
        t,
        unitary,
        triangular,
    })
}

impl SchurBlock2 {
    pub fn antidiagonal(&self) -> DenseMatrix {
        block(ZERO, self.a1, self.a2, ZERO)
    }

    /// `‖Γ A₂ Γ* - T‖_F`.
    pub fn residual(&self) -> f64 {
        let g = &self.unitary;
        let lhs = &(g * &self.antidiagonal()) * &g.adjoint();
        lhs.distance(&self.triangular).expect("2x2")
    }

    /// `Γ A₂ Γ^{-1} = Γ^{-1} A₂ Γ`.
    pub fn conjugations_agree(&self, tol: Tolerance) -> bool {
        let g = &self.unitary;
        let a = self.antidiagonal();
        let forward = &(g * &a) * &g.adjoint();
        let backward = &(&g.adjoint() * &a) * g;
        forward.distance(&backward).expect("2x2") <= tol.cutoff(a.frobenius_norm())
    }

    /// `Γ² = I`.
    pub fn is_involution(&self, tol: Tolerance) -> bool {
        (&self.unitary * &self.unitary)
            .distance(&DenseMatrix::identity(2))
            .expect("2x2")
            <= tol.cutoff(2.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchurOptions {
    /// Phase of each pair block's off-diagonal entry; missing entries are 0.
    pub t_params: Vec<f64>,
    /// Center entry of the block-diagonal factor for odd dimensions; must be nonzero.
    pub omega: Cmplx,
    /// Nonsingular factors for all-zero pairs, keyed by pair ordinal; the default is `I₂`.
    pub free_blocks: BTreeMap<usize, DenseMatrix>,
}

impl Default for SchurOptions {
    fn default() -> Self {
        Self {
            t_params: Vec::new(),
            omega: ONE,
            free_blocks: BTreeMap::new(),
        }
    }
}

/// `A = Υ S Υ^{-1}` with `S` quasidiagonal upper triangular: the center, then per pair
/// `[[-√a_k√a_{k+1}, (r_{k+1} - r_k) e^{i t_k}], [0, √a_k√a_{k+1}]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiSchurDecomposition {
    pub unitary: DenseMatrix,
    pub unitary_inverse: DenseMatrix,
    pub triangular: DenseMatrix,
    pub t_params: Vec<f64>,
    pub omega: Cmplx,
}

impl QuasiSchurDecomposition {
    pub fn reconstruct(&self) -> DenseMatrix {
        &(&self.unitary * &self.triangular) * &self.unitary_inverse
    }

    /// 2x2 pair blocks of `S`, preceded by the 1x1 center for odd dimensions.
    pub fn blocks(&self) -> Vec<DenseMatrix> {
        let n = self.triangular.rows();
        let base = pair_base(n);
        let mut out = Vec::with_capacity(n - n / 2);
        if base == 1 {
            out.push(self.triangular.submatrix(0..1, 0..1));
        }
        for p in 0..n / 2 {
            let s = base + 2 * p;
            out.push(self.triangular.submatrix(s..s + 2, s..s + 2));
        }
        out
    }
}

/// `φ` that turns the block's off-diagonal phase into `e^{i t}` with sign `r_{k+1} - r_k`.
fn aligned_phi(t: f64, upper: Cmplx, odd: bool) -> f64 {
    let flip = if odd { std::f64::consts::PI } else { 0.0 };
    (2.0 * t + flip - principal_arg(upper)) / 2.0
}

fn write_block(out: &mut DenseMatrix, at: usize, b: &DenseMatrix) {
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            out[(at + i, at + j)] = b[(i, j)];
        }
    }
}

pub fn quasidiag_schur(
    a: &AntidiagonalSpec,
    options: &SchurOptions,
    tol: Tolerance,
) -> Result<QuasiSchurDecomposition> {
    let n = a.dim();
    let odd = a.is_odd();
    if options.omega == ZERO || !options.omega.is_finite() {
        return Err(Error::InvalidInput(
            "omega must be finite and nonzero".into(),
        ));
    }
    let (pairs, center) = a.transpose_pairs(tol);
    let t_params: Vec<f64> = (0..pairs.len())
        .map(|p| options.t_params.get(p).copied().unwrap_or(0.0))
        .collect();
    if t_params.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFinite);
    }
    let base = pair_base(n);
    // Block-diagonal factor and its inverse in quasidiagonal coordinates.
    let mut omega_factor = DenseMatrix::zeros(n, n);
    let mut omega_inverse = DenseMatrix::zeros(n, n);
    let mut triangular = DenseMatrix::zeros(n, n);
    if let Some(c) = center {
        omega_factor[(0, 0)] = options.omega;
        omega_inverse[(0, 0)] = ONE / options.omega;
        triangular[(0, 0)] = c;
    }
    for (pair, &t) in pairs.iter().zip(&t_params) {
        let at = base + 2 * pair.ordinal;
        if pair.kind == PairKind::Zero {
            let free = options
                .free_blocks
                .get(&pair.ordinal)
                .cloned()
                .unwrap_or_else(|| DenseMatrix::identity(2));
            if free.rows() != 2 || free.cols() != 2 {
                return Err(Error::DimensionMismatch(format!(
                    "free block {} must be 2x2",
                    pair.ordinal
                )));
            }
            let inverse = mat_inverse(&free, tol)
                .map_err(|_| Error::SingularFreeBlock { pair: pair.ordinal })?;
            write_block(&mut omega_factor, at, &free);
            write_block(&mut omega_inverse, at, &inverse);
            continue;
        }
        let phi = aligned_phi(t, pair.upper(), odd);
        let b = schur_2x2(pair.upper(), pair.lower(), phi, t)?;
        write_block(&mut omega_factor, at, &b.unitary);
        write_block(&mut omega_inverse, at, &b.unitary.adjoint());
        write_block(&mut triangular, at, &b.triangular);
    }
    // Υ = P Ω^{-1}, Υ^{-1} = Ω P^T.
    let p = quasidiag_permutation(n).to_dense();
    let unitary = &p * &omega_inverse;
    let unitary_inverse = &omega_factor * &p.transpose();
    Ok(QuasiSchurDecomposition {
        unitary,
        unitary_inverse,
        triangular,
        t_params,
        omega: options.omega,
    })
}

/// Blocks unitarily similar to `A`: the center, then
/// `[[-√τ₁√τ₂, (|τ₂| - |τ₁|) e^{i t_τ}], [0, √τ₁√τ₂]]` per pair.
pub fn unitary_direct_sum(
    a: &AntidiagonalSpec,
    t_per_pair: &[f64],
    tol: Tolerance,
) -> Result<Vec<DenseMatrix>> {
    let options = SchurOptions {
        t_params: t_per_pair.to_vec(),
        ..SchurOptions::default()
    };
    Ok(quasidiag_schur(a, &options, tol)?.blocks())
}

/// Stage-by-stage check that `M = U A U*` and that `U Υ` brings `M` to quasidiagonal Schur form.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurFormReport {
    pub unitarity_defect: f64,
    pub u_unitary: bool,
    /// `‖M - U A U*‖_F`.
    pub antidiagonalization_residual: f64,
    pub antidiagonalization_holds: bool,
    /// `U Υ`.
    pub composed_unitary: Option<DenseMatrix>,
    pub triangular: Option<DenseMatrix>,
    /// `‖M - (U Υ) S (U Υ)*‖_F`.
    pub schur_residual: Option<f64>,
    pub passed: bool,
}

pub fn verify_quasidiag_schur_form(
    m: &DenseMatrix,
    u: &DenseMatrix,
    a: &AntidiagonalSpec,
    tol: Tolerance,
) -> SchurFormReport {
    let n = a.dim();
    let shapes_ok = m.rows() == n && m.cols() == n && u.rows() == n && u.cols() == n;
    if !shapes_ok {
        return SchurFormReport {
            unitarity_defect: f64::INFINITY,
            u_unitary: false,
            antidiagonalization_residual: f64::INFINITY,
            antidiagonalization_holds: false,
            composed_unitary: None,
            triangular: None,
            schur_residual: None,
            passed: false,
        };
    }
    let scale = m.frobenius_norm().max(1.0);
    let defect = unitarity_defect(u);
    let u_unitary = is_unitary(u, tol);
    let target = a.to_dense();
    let residual = m
        .distance(&(&(u * &target) * &u.adjoint()))
        .expect("shapes checked");
    let holds = residual <= tol.cutoff(scale) * n as f64;
    let mut report = SchurFormReport {
        unitarity_defect: defect,
        u_unitary,
        antidiagonalization_residual: residual,
        antidiagonalization_holds: holds,
        composed_unitary: None,
        triangular: None,
        schur_residual: None,
        passed: false,
    };
    if let Ok(schur) = quasidiag_schur(a, &SchurOptions::default(), tol) {
        let composed = u * &schur.unitary;
        let back = &(&composed * &schur.triangular) * &composed.adjoint();
        let schur_residual = m.distance(&back).expect("shapes checked");
        report.passed = u_unitary && holds && schur_residual <= tol.cutoff(scale) * n as f64;
        report.schur_residual = Some(schur_residual);
        report.composed_unitary = Some(composed);
        report.triangular = Some(schur.triangular);
    }
    report
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

    fn close(a: &DenseMatrix, b: &DenseMatrix, eps: f64) -> bool {
        a.distance(b).unwrap() <= eps * b.frobenius_norm().max(1.0)
    }

    fn generic() -> [(Cmplx, Cmplx); 3] {
        [
            (Cmplx::new(1.3, -0.4), Cmplx::new(-0.7, 2.1)),
            (Cmplx::new(-2.0, 0.5), Cmplx::new(0.3, 0.9)),
            (Cmplx::new(0.2, 0.0), Cmplx::new(-5.0, -1.0)),
        ]
    }

    #[test]
    fn exchange_block() {
        let b = schur_2x2(ZERO, ONE, 0.0, 0.0).unwrap();
        assert_eq!(b.unitary, block(ZERO, ONE, ONE, ZERO));
        assert_eq!(b.triangular, block(ZERO, ONE, ZERO, ZERO));
    }

    #[test]
    fn one_four_block() {
        let b = schur_2x2(ONE, c(4.0), 0.0, 0.0).unwrap();
        let r5 = 5f64.sqrt();
        assert!(close(
            &b.unitary,
            &block(c(-1.0 / r5), c(2.0 / r5), c(2.0 / r5), c(1.0 / r5)),
            1e-15
        ));
        assert_eq!(b.triangular, block(c(-2.0), c(3.0), ZERO, c(2.0)));
        assert!(b.residual() < 1e-14);
    }

    #[test]
    fn equal_moduli_block_is_diagonal() {
        let b = schur_2x2(c(3.0), c(3.0), 0.4, 1.1).unwrap();
        assert_eq!(b.triangular[(0, 1)], ZERO);
        assert!(close(
            &b.triangular,
            &DenseMatrix::from_diag(&[c(-3.0), c(3.0)]),
            1e-15
        ));
    }

    #[test]
    fn both_zero_is_rejected() {
        assert!(matches!(
            schur_2x2(ZERO, ZERO, 0.0, 0.0),
            Err(Error::BothZero)
        ));
    }

    #[test]
    fn block_is_unitary_and_triangularizes() {
        let tol = Tolerance::default();
        for (a1, a2) in generic() {
            for phi in [-2.0, 0.0, 0.9, 3.0] {
                for t in [-1.0, 0.0, 2.5] {
                    let b = schur_2x2(a1, a2, phi, t).unwrap();
                    assert!(unitarity_defect(&b.unitary) < 1e-14);
                    assert!(
                        b.residual() < 1e-13 * (a1.norm() + a2.norm()),
                        "residual {}",
                        b.residual()
                    );
                    assert!(is_unitary(&b.unitary, tol));
                }
            }
        }
    }

    #[test]
    fn conjugations_agree_exactly_on_the_half_phase_slice() {
        let tol = Tolerance::default();
        for (a1, a2) in generic() {
            for t in [-1.7, 0.0, 0.6, 2.4] {
                assert!(schur_2x2(a1, a2, t / 2.0, t)
                    .unwrap()
                    .conjugations_agree(tol));
                assert!(!schur_2x2(a1, a2, t / 2.0 + 0.3, t)
                    .unwrap()
                    .conjugations_agree(tol));
            }
        }
    }

    #[test]
    fn involution_on_the_grid() {
        let tol = Tolerance::default();
        let grid = [-2.0, -1.3, -0.6, 0.0, 0.7, 1.4, 2.1];
        for (a1, a2) in generic() {
            for phi in grid {
                for t in grid {
                    let inv = schur_2x2(a1, a2, phi, t).unwrap().is_involution(tol);
                    assert_eq!(inv, phi == 0.0 && t == 0.0, "phi {phi} t {t}");
                }
            }
        }
    }

    #[test]
    fn involution_also_at_half_turn() {
        let tol = Tolerance::default();
        let (a1, a2) = generic()[0];
        assert!(schur_2x2(a1, a2, std::f64::consts::PI, 0.0)
            .unwrap()
            .is_involution(tol));
        assert!(schur_2x2(ZERO, a2, 0.8, 0.0).unwrap().is_involution(tol));
    }

    #[test]
    fn quasidiag_examples() {
        let tol = Tolerance::default();
        let s = quasidiag_schur(&spec(&[1.0, 4.0]), &SchurOptions::default(), tol).unwrap();
        assert!(close(
            &s.triangular,
            &block(c(-2.0), c(3.0), ZERO, c(2.0)),
            1e-15
        ));

        let s = quasidiag_schur(&spec(&[1.0; 4]), &SchurOptions::default(), tol).unwrap();
        assert!(close(
            &s.triangular,
            &DenseMatrix::from_diag(&[c(-1.0), c(1.0), c(-1.0), c(1.0)]),
            1e-15
        ));

        let a = spec(&[5.0, 1.0, 4.0]);
        let s = quasidiag_schur(&a, &SchurOptions::default(), tol).unwrap();
        let blocks = s.blocks();
        assert_eq!(blocks[0], DenseMatrix::from_diag(&[c(5.0)]));
        assert!(close(
            &blocks[1],
            &block(c(-2.0), c(3.0), ZERO, c(2.0)),
            1e-14
        ));
        assert!(close(&s.reconstruct(), &a.to_dense(), 1e-14));
        assert!(unitarity_defect(&s.unitary) < 1e-14);
    }

    #[test]
    fn quasidiag_complex_phases_and_zero_pairs() {
        let tol = Tolerance::default();
        let coeffs = vec![
            Cmplx::new(0.5, 2.0),
            Cmplx::new(-1.0, 0.3),
            Cmplx::new(2.0, -2.0),
            ZERO,
            ZERO,
            Cmplx::new(0.0, 1.5),
            ZERO,
        ];
        let a = AntidiagonalSpec::new(coeffs.clone()).unwrap();
        let t = vec![0.3, -1.2, 2.0];
        let options = SchurOptions {
            t_params: t.clone(),
            ..SchurOptions::default()
        };
        let s = quasidiag_schur(&a, &options, tol).unwrap();
        assert!(close(&s.reconstruct(), &a.to_dense(), 1e-13));
        assert!(unitarity_defect(&s.unitary) < 1e-13);
        assert!(s.triangular.lower_norm() == 0.0);
        for (p, blk) in s.blocks().iter().skip(1).enumerate() {
            let (lo, hi) = (coeffs[1 + 2 * p], coeffs[2 + 2 * p]);
            let expected = cis(t[p]) * (hi.norm() - lo.norm());
            assert!((blk[(0, 1)] - expected).norm() < 1e-13, "pair {p}");
        }
        let eigs = eig_dense(&a.to_dense(), false).unwrap().values;
        assert!(multiset_distance(&s.triangular.diagonal(), &eigs).unwrap() < 1e-10);
    }

    #[test]
    fn singular_free_block_is_rejected() {
        let mut options = SchurOptions::default();
        options.free_blocks.insert(
            0,
            DenseMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 4.0]).unwrap(),
        );
        let out = quasidiag_schur(&spec(&[0.0, 0.0]), &options, Tolerance::default());
        assert!(matches!(out, Err(Error::SingularFreeBlock { pair: 0 })));
    }

    #[test]
    fn direct_sum_examples() {
        let tol = Tolerance::default();
        let blocks = unitary_direct_sum(&spec(&[1.0, -1.0]), &[0.0], tol).unwrap();
        assert!(close(
            &blocks[0],
            &block(Cmplx::new(0.0, -1.0), ZERO, ZERO, Cmplx::new(0.0, 1.0)),
            1e-15
        ));
        let blocks = unitary_direct_sum(&spec(&[0.0, 1.0]), &[0.0], tol).unwrap();
        assert!(close(&blocks[0], &block(ZERO, ONE, ZERO, ZERO), 1e-15));
        let blocks = unitary_direct_sum(&spec(&[2.0, 3.0, 1.0, 4.0]), &[0.0, 0.0], tol).unwrap();
        assert!(
            (blocks[0][(0, 1)] - ONE).norm() < 1e-14 && (blocks[1][(0, 1)] - c(3.0)).norm() < 1e-14
        );
        assert!((blocks[0][(1, 1)] - c(6f64.sqrt())).norm() < 1e-14);
    }

    #[test]
    fn verify_examples() {
        let tol = Tolerance::default();
        let a = spec(&[2.0, -1.0, 3.0, 0.5, 4.0]);
        let m = a.to_dense();
        assert!(verify_quasidiag_schur_form(&m, &DenseMatrix::identity(5), &a, tol).passed);
        let p = quasidiag_permutation(5).to_dense();
        let pm = &(&p * &m) * &p.transpose();
        assert!(verify_quasidiag_schur_form(&pm, &p, &a, tol).passed);
        let skewed = DenseMatrix::identity(5).scale(c(2.0));
        let report = verify_quasidiag_schur_form(&m, &skewed, &a, tol);
        assert!(!report.u_unitary && !report.passed);
    }
}
