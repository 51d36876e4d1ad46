//! Structural, spectral and classification report for one matrix.

use std::fmt::Write as _;

use antidiag_core::antidiag::{AntidiagonalSpec, PairKind};
use antidiag_core::duodiag::{classify_duodiagonalizable, normal_antidiag_check};
use antidiag_core::eigenjordan::classify_antidiagonalizable;
use antidiag_core::matcore::spectrum::spectrum_symmetry_with_cutoff;
use antidiag_core::matcore::{eig_dense, lex_cmp, predicates, Cmplx, DenseMatrix, Tolerance};
use serde::Serialize;

use crate::error::CliError;
use crate::io::format_complex;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Cmplx> for ComplexValue {
    fn from(z: Cmplx) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSummary {
    /// Sorted lexicographically.
    pub eigenvalues: Vec<ComplexValue>,
    pub symmetric: bool,
    pub c_symmetric: bool,
    pub center: Option<ComplexValue>,
    /// `closed_form` for antidiagonal input, `eigensolver` otherwise.
    pub source: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntidiagonalSummary {
    /// Coefficients `a_1..a_n`, numbered from the center outward.
    pub coefficients: Vec<ComplexValue>,
    pub regular_pairs: usize,
    pub defective_pairs: usize,
    pub zero_pairs: usize,
    pub diagonalizable: bool,
    pub normal: bool,
    pub determinant: ComplexValue,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    /// Names of the structural predicates that hold.
    pub structure: Vec<&'static str>,
    pub spectrum: SpectrumSummary,
    pub antidiagonal: Option<AntidiagonalSummary>,
    pub antidiagonalizable: bool,
    pub antidiagonalizable_reason: Option<String>,
    /// Antidiagonal coefficients of a similar antidiagonal matrix.
    pub witness: Option<Vec<ComplexValue>>,
    pub diagonalizable: bool,
    pub duodiagonalizable: bool,
}

impl AnalysisReport {
    /// `antidiagonalizable` or `not antidiagonalizable: <reason>`.
    pub fn verdict(&self) -> String {
        match &self.antidiagonalizable_reason {
            None => "antidiagonalizable".into(),
            Some(reason) => format!("not antidiagonalizable: {reason}"),
        }
    }

    pub fn to_text(&self) -> String {
        let list = |values: &[ComplexValue]| {
            values
                .iter()
                .map(|z| format_complex(Cmplx::new(z.re, z.im)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        let mut out = String::new();
        let _ = writeln!(out, "size: {0}x{0}", self.n);
        let structure = if self.structure.is_empty() {
            "none".into()
        } else {
            self.structure.join(", ")
        };
        let _ = writeln!(out, "structure: {structure}");
        let _ = writeln!(
            out,
            "eigenvalues ({}): {{{}}}",
            self.spectrum.source,
            list(&self.spectrum.eigenvalues)
        );
        let symmetry = match (
            self.spectrum.symmetric,
            self.spectrum.c_symmetric,
            self.spectrum.center,
        ) {
            (true, _, _) => "symmetric".to_string(),
            (false, true, Some(c)) => format!(
                "c-symmetric with center {}",
                format_complex(Cmplx::new(c.re, c.im))
            ),
            _ => "not symmetric".to_string(),
        };
        let _ = writeln!(out, "spectrum: {symmetry}");
        if let Some(a) = &self.antidiagonal {
            let _ = writeln!(out, "antidiagonal coefficients: {}", list(&a.coefficients));
            let _ = writeln!(
                out,
                "transpose pairs: {} regular, {} defective, {} zero",
                a.regular_pairs, a.defective_pairs, a.zero_pairs
            );
            let _ = writeln!(out, "normal (equal pair moduli): {}", yes_no(a.normal));
            let _ = writeln!(
                out,
                "determinant: {}",
                format_complex(Cmplx::new(a.determinant.re, a.determinant.im))
            );
        }
        let _ = writeln!(out, "{}", self.verdict());
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "similar antidiagonal coefficients: {}", list(w));
        }
        let _ = writeln!(out, "diagonalizable: {}", yes_no(self.diagonalizable));
        let _ = writeln!(out, "duodiagonalizable: {}", yes_no(self.duodiagonalizable));
        out
    }
}

fn sorted(values: &[Cmplx]) -> Vec<ComplexValue> {
    let mut v = values.to_vec();
    v.sort_by(lex_cmp);
    v.into_iter().map(ComplexValue::from).collect()
}

fn antidiagonal_summary(a: &AntidiagonalSpec, tol: Tolerance) -> AntidiagonalSummary {
    let (pairs, _) = a.transpose_pairs(tol);
    let count = |kind: PairKind| pairs.iter().filter(|p| p.kind == kind).count();
    let defective_pairs = count(PairKind::Defective);
    AntidiagonalSummary {
        coefficients: a.coeffs().iter().map(|&z| z.into()).collect(),
        regular_pairs: count(PairKind::Regular),
        defective_pairs,
        zero_pairs: count(PairKind::Zero),
        diagonalizable: defective_pairs == 0,
        normal: normal_antidiag_check(a, tol),
        determinant: a.spectrum(tol).determinant.into(),
    }
}

pub fn analyze(m: &DenseMatrix, tol: Tolerance) -> Result<AnalysisReport, CliError> {
    let n = m.require_square()?;
    let flags = predicates(m, tol)?;
    let structure: Vec<&'static str> = [
        ("real", flags.is_real),
        ("symmetric", flags.is_symmetric),
        ("antisymmetric", flags.is_antisymmetric),
        ("hermitian", flags.is_hermitian),
        ("normal", flags.is_normal),
        ("unitary", flags.is_unitary),
        ("permutation", flags.is_permutation),
        ("diagonal", flags.is_diagonal),
        ("antidiagonal", flags.is_antidiagonal),
        ("hollow", flags.is_hollow),
        ("pseudo-hollow", flags.is_pseudo_hollow),
        ("centrosymmetric", flags.is_centrosymmetric),
    ]
    .into_iter()
    .filter_map(|(name, holds)| holds.then_some(name))
    .collect();

    let spec = if flags.is_antidiagonal {
        Some(AntidiagonalSpec::from_dense(m, tol)?)
    } else {
        None
    };
    let (values, source) = match &spec {
        Some(a) => (a.spectrum(tol).report.eigenvalues, "closed_form"),
        None => (eig_dense(m, false)?.values, "eigensolver"),
    };
    let cutoff = tol.spectral_cutoff(m.frobenius_norm());
    let symmetry = spectrum_symmetry_with_cutoff(&values, m.trace(), cutoff);
    let verdict = classify_antidiagonalizable(m, tol)?;
    let duo = classify_duodiagonalizable(m, tol)?;
    Ok(AnalysisReport {
        n,
        structure,
        spectrum: SpectrumSummary {
            eigenvalues: sorted(&values),
            symmetric: symmetry.symmetric,
            c_symmetric: symmetry.c_symmetric,
            center: symmetry.center.map(Into::into),
            source,
        },
        antidiagonal: spec.as_ref().map(|a| antidiagonal_summary(a, tol)),
        antidiagonalizable: verdict.antidiagonalizable,
        antidiagonalizable_reason: verdict.reason.map(|r| r.to_string()),
        witness: verdict
            .witness
            .map(|w| w.coeffs().iter().map(|&z| z.into()).collect()),
        diagonalizable: duo.diagonalizable,
        duodiagonalizable: duo.duodiagonalizable,
    })
}

/// Analyzes every matrix concurrently; results keep the input order.
pub fn analyze_batch(
    matrices: Vec<Result<DenseMatrix, CliError>>,
    tol: Tolerance,
) -> Vec<Result<AnalysisReport, CliError>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = matrices
            .into_iter()
            .map(|m| scope.spawn(move || m.and_then(|m| analyze(&m, tol))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("analysis thread panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use antidiag_core::sampling::nilpotent_jordan_block;

    #[test]
    fn antidiagonal_example_has_symmetric_closed_form_spectrum() {
        let m = AntidiagonalSpec::from_real(&[2.0, 3.0, 1.0, 4.0])
            .unwrap()
            .to_dense();
        let r = analyze(&m, Tolerance::default()).unwrap();
        assert!(r.structure.contains(&"antidiagonal"));
        assert!(r.spectrum.symmetric && r.antidiagonalizable);
        assert_eq!(r.spectrum.source, "closed_form");
        let mut moduli: Vec<f64> = r.spectrum.eigenvalues.iter().map(|z| z.re.abs()).collect();
        moduli.sort_by(f64::total_cmp);
        let wanted = [2.0, 2.0, 6f64.sqrt(), 6f64.sqrt()];
        assert!(moduli
            .iter()
            .zip(wanted)
            .all(|(a, b)| (a - b).abs() < 1e-12));
        assert!(r.to_text().contains("\nantidiagonalizable\n"));
    }

    #[test]
    fn rejections_name_their_reason() {
        let tol = Tolerance::default();
        let j3 = analyze(&nilpotent_jordan_block(3), tol).unwrap();
        assert_eq!(
            j3.verdict(),
            "not antidiagonalizable: rank-3 nilpotent chain"
        );
        let id = analyze(&DenseMatrix::identity(2), tol).unwrap();
        assert_eq!(
            id.verdict(),
            "not antidiagonalizable: spectrum not symmetric"
        );
        assert!(id.diagonalizable && !id.duodiagonalizable);
    }

    #[test]
    fn batch_keeps_input_order() {
        let tol = Tolerance::default();
        let inputs = vec![
            Ok(DenseMatrix::identity(2)),
            Err(CliError::Parse("bad".into())),
            Ok(nilpotent_jordan_block(2)),
        ];
        let out = analyze_batch(inputs, tol);
        assert!(!out[0].as_ref().unwrap().antidiagonalizable);
        assert!(out[1].is_err());
        assert!(out[2].as_ref().unwrap().antidiagonalizable);
    }
}
