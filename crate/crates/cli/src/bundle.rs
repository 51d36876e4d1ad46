//! Decomposition bundles: factor matrices with the residual they reproduce, and their
//! independent re-verification.

use antidiag_core::antidiag::AntidiagonalSpec;
use antidiag_core::duodiag::{
    antisymmetric_antidiagonalization, classify_duodiagonalizable, symmetric_antidiagonalization,
    unitary_diagonalize_normal_antidiag, Sign,
};
use antidiag_core::eigenjordan::{
    antidiag_eigendecomposition, antidiag_jordan, EigenOptions, EigenOutcome, JordanOptions,
};
use antidiag_core::matcore::{
    is_antidiagonal, is_antisymmetric, is_diagonal, is_orthogonal, is_permutation, is_real,
    is_symmetric, is_unitary, mat_inverse, unitarity_defect, zero_cutoff, DenseMatrix, Tolerance,
};
use antidiag_core::permsim::{
    is_q_pseudo_hollow_quasidiagonal, orth_antidiagonalize_real_antisym, perm_quasidiag,
};
use antidiag_core::schur::{quasidiag_schur, SchurOptions};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::io::MatrixFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Kind {
    PermQuasidiag,
    Eigen,
    Jordan,
    UnitaryDiag,
    Schur,
    SymAntidiag,
    AntisymAntidiag,
    OrthAntisym,
}

impl Kind {
    /// Names of the transform and of the middle factor.
    pub fn factor_names(self) -> [&'static str; 2] {
        match self {
            Self::PermQuasidiag => ["P", "Q"],
            Self::Eigen => ["Lambda", "D"],
            Self::Jordan => ["LambdaG", "J"],
            Self::UnitaryDiag => ["U", "D"],
            Self::Schur => ["Upsilon", "S"],
            Self::SymAntidiag | Self::AntisymAntidiag => ["V", "A"],
            Self::OrthAntisym => ["R", "A"],
        }
    }

    pub fn anchor(self) -> &'static str {
        match self {
            Self::PermQuasidiag => "permutation similarity of an antidiagonal matrix to a direct sum of 2x2 antidiagonal blocks",
            Self::Eigen => "explicit eigendecomposition of an antidiagonal matrix without defective transpose pairs",
            Self::Jordan => "Jordan decomposition of an antidiagonal matrix with 2x2 nilpotent blocks first",
            Self::UnitaryDiag => "unitary diagonalization of a normal antidiagonal matrix",
            Self::Schur => "quasidiagonal Schur decomposition of an antidiagonal matrix",
            Self::SymAntidiag => "similarity of a duodiagonalizable matrix to a symmetric antidiagonal matrix",
            Self::AntisymAntidiag => "similarity of a traceless duodiagonalizable matrix to an antisymmetric antidiagonal matrix",
            Self::OrthAntisym => "real orthogonal similarity of a real antisymmetric matrix to an antidiagonal one",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    pub name: String,
    #[serde(flatten)]
    pub matrix: MatrixFile,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceRecord {
    pub rel: f64,
    pub abs: f64,
}

/// `M = V X V^{-1}` stored as `[V, X]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bundle {
    pub kind: Kind,
    pub factors: Vec<Factor>,
    /// `‖V X V^{-1} - M‖_F / max(1, ‖M‖_F)`.
    pub residual: f64,
    pub tolerance: ToleranceRecord,
    pub anchor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Relative similarity residual `‖V X V^{-1} - M‖_F / max(1, ‖M‖_F)`.
pub fn similarity_residual(
    transform: &DenseMatrix,
    middle: &DenseMatrix,
    m: &DenseMatrix,
    tol: Tolerance,
) -> Result<f64, CliError> {
    let n = m.rows();
    for f in [transform, middle] {
        if f.rows() != n || f.cols() != n {
            return Err(CliError::Precondition(format!(
                "factor is {}x{}, matrix is {n}x{n}",
                f.rows(),
                f.cols()
            )));
        }
    }
    let inv = mat_inverse(transform, tol)?;
    let back = &(transform * middle) * &inv;
    Ok(back.distance(m).expect("shapes checked") / m.frobenius_norm().max(1.0))
}

/// Residual at or below which a bundle passes.
pub fn residual_threshold(n: usize, tol: Tolerance) -> f64 {
    tol.cutoff(n.max(1) as f64)
}

fn antidiagonal_input(m: &DenseMatrix, tol: Tolerance) -> Result<AntidiagonalSpec, CliError> {
    AntidiagonalSpec::from_dense(m, tol).map_err(CliError::from)
}

fn transform_pair(
    kind: Kind,
    m: &DenseMatrix,
    tol: Tolerance,
) -> Result<(DenseMatrix, DenseMatrix), CliError> {
    m.require_square().map_err(CliError::from)?;
    Ok(match kind {
        Kind::PermQuasidiag => {
            let d = perm_quasidiag(&antidiagonal_input(m, tol)?);
            (d.p(), d.quasidiagonal)
        }
        Kind::Eigen => match antidiag_eigendecomposition(&antidiagonal_input(m, tol)?, &EigenOptions::default(), tol)? {
            EigenOutcome::Diagonalizable(d) => (d.modal, d.diagonal),
            EigenOutcome::Defective(pairs) => {
                return Err(CliError::Precondition(format!(
                    "defective transpose pairs {pairs:?}: exactly one element of each is zero, so the matrix is not diagonalizable"
                )))
            }
        },
        Kind::Jordan => {
            let j = antidiag_jordan(&antidiagonal_input(m, tol)?, JordanOptions::default(), tol)?;
            (j.basis, j.jordan)
        }
        Kind::UnitaryDiag => {
            let u = unitary_diagonalize_normal_antidiag(&antidiagonal_input(m, tol)?, tol)?;
            (u.unitary, u.diagonal)
        }
        Kind::Schur => {
            let s = quasidiag_schur(&antidiagonal_input(m, tol)?, &SchurOptions::default(), tol)?;
            (s.unitary, s.triangular)
        }
        Kind::SymAntidiag | Kind::AntisymAntidiag => {
            let verdict = classify_duodiagonalizable(m, tol)?;
            let Some(d) = verdict.diagonalization else {
                let why = if verdict.diagonalizable { "spectrum is not symmetric" } else { "matrix is not diagonalizable" };
                return Err(CliError::Precondition(format!("not duodiagonalizable: {why}")));
            };
            let out = if kind == Kind::SymAntidiag {
                symmetric_antidiagonalization(&d, tol)?
            } else {
                antisymmetric_antidiagonalization(m, &d, Sign::Plus, tol)?
            };
            (out.transform, out.target.to_dense())
        }
        Kind::OrthAntisym => {
            let o = orth_antidiagonalize_real_antisym(m, tol)?;
            (o.orthogonal, o.antidiagonal.to_dense())
        }
    })
}

pub fn decompose(
    m: &DenseMatrix,
    kind: Kind,
    tol: Tolerance,
    seed: Option<u64>,
) -> Result<Bundle, CliError> {
    let (transform, middle) = transform_pair(kind, m, tol)?;
    let residual = similarity_residual(&transform, &middle, m, tol)?;
    let [vn, xn] = kind.factor_names();
    Ok(Bundle {
        kind,
        factors: vec![
            Factor {
                name: vn.into(),
                matrix: MatrixFile::from_matrix(&transform),
            },
            Factor {
                name: xn.into(),
                matrix: MatrixFile::from_matrix(&middle),
            },
        ],
        residual,
        tolerance: ToleranceRecord {
            rel: tol.rel,
            abs: tol.abs,
        },
        anchor: kind.anchor().into(),
        seed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub kind: Kind,
    pub recorded_residual: f64,
    pub residual: Option<f64>,
    pub threshold: f64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Zero outside the diagonal and first superdiagonal, superdiagonal entries 0 or 1.
fn is_upper_bidiagonal_jordan(j: &DenseMatrix, tol: Tolerance) -> bool {
    let cut = zero_cutoff(j, tol).max(tol.abs);
    let n = j.rows();
    (0..n).all(|r| {
        (0..n).all(|c| {
            let z = j[(r, c)];
            match c as isize - r as isize {
                0 => true,
                1 => z.norm() <= cut || (z - antidiag_core::matcore::ONE).norm() <= cut,
                _ => z.norm() <= cut,
            }
        })
    })
}

/// Upper triangular with 1x1 and 2x2 diagonal blocks in the layout of the quasidiagonal form.
fn is_quasidiagonal_upper(s: &DenseMatrix, tol: Tolerance) -> bool {
    let cut = zero_cutoff(s, tol).max(tol.abs);
    let n = s.rows();
    let base = n % 2;
    (0..n).all(|r| {
        (0..n).all(|c| {
            let inside = c == r || (c == r + 1 && r >= base && (r - base).is_multiple_of(2));
            inside || s[(r, c)].norm() <= cut
        })
    })
}

fn structural_checks(
    kind: Kind,
    transform: &DenseMatrix,
    middle: &DenseMatrix,
    tol: Tolerance,
) -> Vec<Check> {
    let unitary = |name: &str| {
        Check::new(
            name,
            is_unitary(transform, tol),
            format!("unitarity defect {:.3e}", unitarity_defect(transform)),
        )
    };
    let nonsingular = || {
        let ok = mat_inverse(transform, tol).is_ok();
        Check::new(
            "transform nonsingular",
            ok,
            if ok { "" } else { "singular" },
        )
    };
    let diagonal = || {
        Check::new(
            "middle factor diagonal",
            is_diagonal(middle, tol),
            format!("off-diagonal norm {:.3e}", middle.off_diagonal_norm()),
        )
    };
    let antidiagonal = || {
        Check::new(
            "middle factor antidiagonal",
            is_antidiagonal(middle, tol),
            format!(
                "off-antidiagonal norm {:.3e}",
                middle.off_antidiagonal_norm()
            ),
        )
    };
    match kind {
        Kind::PermQuasidiag => vec![
            Check::new("P is a permutation", is_permutation(transform, tol), ""),
            Check::new(
                "Q quasidiagonal and pseudo-hollow",
                is_q_pseudo_hollow_quasidiagonal(middle, tol),
                "",
            ),
        ],
        Kind::Eigen => vec![nonsingular(), diagonal()],
        Kind::Jordan => vec![
            nonsingular(),
            Check::new(
                "J upper bidiagonal Jordan form",
                is_upper_bidiagonal_jordan(middle, tol),
                "",
            ),
        ],
        Kind::UnitaryDiag => vec![unitary("U unitary"), diagonal()],
        Kind::Schur => vec![
            unitary("Upsilon unitary"),
            Check::new(
                "S quasidiagonal upper triangular",
                is_quasidiagonal_upper(middle, tol),
                format!("lower norm {:.3e}", middle.lower_norm()),
            ),
        ],
        Kind::SymAntidiag => vec![
            nonsingular(),
            antidiagonal(),
            Check::new("A symmetric", is_symmetric(middle, tol), ""),
        ],
        Kind::AntisymAntidiag => vec![
            nonsingular(),
            antidiagonal(),
            Check::new("A antisymmetric", is_antisymmetric(middle, tol), ""),
        ],
        Kind::OrthAntisym => vec![
            Check::new(
                "R real orthogonal",
                is_orthogonal(transform, tol),
                format!("unitarity defect {:.3e}", unitarity_defect(transform)),
            ),
            antidiagonal(),
            Check::new(
                "A real antisymmetric",
                is_real(middle, tol) && is_antisymmetric(middle, tol),
                "",
            ),
        ],
    }
}

pub fn verify(bundle: &Bundle, m: &DenseMatrix, tol: Tolerance) -> Result<VerifyReport, CliError> {
    let n = m.require_square().map_err(CliError::from)?;
    let threshold = residual_threshold(n, tol);
    let mut report = VerifyReport {
        kind: bundle.kind,
        recorded_residual: bundle.residual,
        residual: None,
        threshold,
        checks: Vec::new(),
        passed: false,
    };
    let expected = bundle.kind.factor_names();
    let names: Vec<&str> = bundle.factors.iter().map(|f| f.name.as_str()).collect();
    let names_ok = names == expected;
    report.checks.push(Check::new(
        "factor names match kind",
        names_ok,
        format!("expected {expected:?}, found {names:?}"),
    ));
    if !names_ok {
        return Ok(report);
    }
    let transform = bundle.factors[0].matrix.to_matrix()?;
    let middle = bundle.factors[1].matrix.to_matrix()?;
    let shapes_ok = [&transform, &middle]
        .iter()
        .all(|f| f.rows() == n && f.cols() == n);
    report.checks.push(Check::new(
        "factor shapes",
        shapes_ok,
        format!("matrix is {n}x{n}"),
    ));
    if !shapes_ok {
        return Ok(report);
    }
    report
        .checks
        .extend(structural_checks(bundle.kind, &transform, &middle, tol));
    match similarity_residual(&transform, &middle, m, tol) {
        Ok(residual) => {
            report.residual = Some(residual);
            report.checks.push(Check::new(
                "residual under threshold",
                residual <= threshold,
                format!("{residual:.3e} <= {threshold:.3e}"),
            ));
            let reproducible = residual <= 2.0 * bundle.residual + threshold;
            report.checks.push(Check::new(
                "residual reproduces recorded value",
                reproducible,
                format!("{residual:.3e} <= 2 x {:.3e} + threshold", bundle.residual),
            ));
        }
        Err(e) => report
            .checks
            .push(Check::new("residual computable", false, e.to_string())),
    }
    report.passed = report.checks.iter().all(|c| c.passed);
    Ok(report)
}
