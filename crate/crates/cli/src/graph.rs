//! Bipartiteness of a graph read off the symmetry of its adjacency spectrum.

use std::collections::VecDeque;
use std::fmt::Write as _;

use antidiag_core::eigenjordan::classify_antidiagonalizable;
use antidiag_core::matcore::spectrum::spectrum_symmetry_with_cutoff;
use antidiag_core::matcore::{
    eig_dense, is_real, is_symmetric, lex_cmp, zero_cutoff, DenseMatrix, Tolerance,
};
use serde::Serialize;

use crate::analyze::ComplexValue;
use crate::error::CliError;
use crate::io::format_complex;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphReport {
    pub n: usize,
    pub symmetric_matrix: bool,
    pub warning: Option<String>,
    /// Sorted lexicographically.
    pub eigenvalues: Vec<ComplexValue>,
    pub symmetric_spectrum: bool,
    /// Spectral verdict; absent for directed graphs.
    pub bipartite: Option<bool>,
    pub antidiagonalizable: bool,
    /// Two-coloring verdict; absent for directed graphs.
    pub bipartite_by_coloring: Option<bool>,
    /// The spectral and coloring verdicts coincide (vacuous for directed graphs).
    pub verdicts_agree: bool,
}

impl GraphReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(w) = &self.warning {
            let _ = writeln!(out, "warning: {w}");
        }
        let values: Vec<String> = self
            .eigenvalues
            .iter()
            .map(|z| format_complex(antidiag_core::matcore::Cmplx::new(z.re, z.im)))
            .collect();
        let _ = writeln!(out, "vertices: {}", self.n);
        let _ = writeln!(out, "spectrum: {{{}}}", values.join(", "));
        let _ = writeln!(
            out,
            "symmetric spectrum: {}",
            if self.symmetric_spectrum { "yes" } else { "no" }
        );
        match self.bipartite {
            Some(true) => out.push_str("bipartite\n"),
            Some(false) => out.push_str("not bipartite\n"),
            None => out.push_str("bipartite: undetermined for a directed graph\n"),
        }
        let _ = writeln!(
            out,
            "{}",
            if self.antidiagonalizable {
                "antidiagonalizable"
            } else {
                "not antidiagonalizable"
            }
        );
        if !self.verdicts_agree {
            out.push_str("error: spectral verdict disagrees with two-coloring\n");
        }
        out
    }
}

/// Two-coloring by breadth-first search over the edges `w_ij > cutoff`; a loop is an odd cycle.
pub fn bipartite_by_coloring(adjacency: &DenseMatrix, cutoff: f64) -> bool {
    let n = adjacency.rows();
    let edge =
        |i: usize, j: usize| adjacency[(i, j)].norm() > cutoff || adjacency[(j, i)].norm() > cutoff;
    let mut color: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let ci = color[i].expect("queued vertices are colored");
            for j in (0..n).filter(|&j| edge(i, j)) {
                match color[j] {
                    None => {
                        color[j] = Some(!ci);
                        queue.push_back(j);
                    }
                    Some(cj) if cj == ci => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

pub fn graph_report(adjacency: &DenseMatrix, tol: Tolerance) -> Result<GraphReport, CliError> {
    let n = adjacency.require_square()?;
    let cutoff = zero_cutoff(adjacency, tol);
    if !is_real(adjacency, tol) {
        return Err(CliError::Precondition(
            "adjacency matrix must be real".into(),
        ));
    }
    if adjacency.as_slice().iter().any(|z| z.re < -cutoff) {
        return Err(CliError::Precondition(
            "adjacency matrix must be nonnegative".into(),
        ));
    }
    let symmetric_matrix = is_symmetric(adjacency, tol);
    let values = eig_dense(adjacency, false)?.values;
    let spectral = tol.cutoff(adjacency.frobenius_norm().max(1.0));
    let symmetry = spectrum_symmetry_with_cutoff(&values, adjacency.trace(), spectral);
    let mut sorted = values.clone();
    sorted.sort_by(lex_cmp);
    let eigenvalues = sorted.into_iter().map(ComplexValue::from).collect();
    if !symmetric_matrix {
        let antidiagonalizable = classify_antidiagonalizable(adjacency, tol)?.antidiagonalizable;
        return Ok(GraphReport {
            n,
            symmetric_matrix,
            warning: Some(
                "adjacency matrix is not symmetric; verdict limited to spectrum symmetry".into(),
            ),
            eigenvalues,
            symmetric_spectrum: symmetry.symmetric,
            bipartite: None,
            antidiagonalizable,
            bipartite_by_coloring: None,
            verdicts_agree: true,
        });
    }
    // Real symmetric matrices are diagonalizable, so a balanced spectrum suffices.
    let antidiagonalizable = if n % 2 == 0 {
        symmetry.symmetric
    } else {
        symmetry.c_symmetric
    };
    let coloring = bipartite_by_coloring(adjacency, cutoff);
    Ok(GraphReport {
        n,
        symmetric_matrix,
        warning: None,
        eigenvalues,
        symmetric_spectrum: symmetry.symmetric,
        bipartite: Some(symmetry.symmetric),
        antidiagonalizable,
        bipartite_by_coloring: Some(coloring),
        verdicts_agree: coloring == symmetry.symmetric,
    })
}
