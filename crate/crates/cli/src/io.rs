//! JSON matrix encoding: `{"rows": n, "cols": m, "data": [[[re, im] or x, ...], ...]}`.

use std::path::Path;

use antidiag_core::matcore::{Cmplx, DenseMatrix};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Complex([f64; 2]),
    Real(f64),
}

impl From<Entry> for Cmplx {
    fn from(e: Entry) -> Self {
        match e {
            Entry::Complex([re, im]) => Cmplx::new(re, im),
            Entry::Real(x) => Cmplx::new(x, 0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Entry>>,
}

impl MatrixFile {
    /// Always emits `[re, im]` pairs.
    pub fn from_matrix(m: &DenseMatrix) -> Self {
        let data = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|z| Entry::Complex([z.re, z.im]))
                    .collect()
            })
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data,
        }
    }

    pub fn to_matrix(&self) -> Result<DenseMatrix, CliError> {
        if self.data.len() != self.rows {
            return Err(CliError::Parse(format!(
                "expected {} rows, found {}",
                self.rows,
                self.data.len()
            )));
        }
        let mut flat = Vec::with_capacity(self.rows * self.cols);
        for (i, row) in self.data.iter().enumerate() {
            if row.len() != self.cols {
                return Err(CliError::Parse(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    self.cols
                )));
            }
            flat.extend(row.iter().map(|&e| Cmplx::from(e)));
        }
        if flat.iter().any(|z| !z.is_finite()) {
            return Err(CliError::Parse("non-finite entry".into()));
        }
        DenseMatrix::from_vec(self.rows, self.cols, flat)
            .map_err(|e| CliError::Parse(e.to_string()))
    }
}

pub fn parse_matrix(text: &str) -> Result<DenseMatrix, CliError> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    file.to_matrix()
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_matrix(path: &Path) -> Result<DenseMatrix, CliError> {
    parse_matrix(&read_text(path)?).map_err(|e| match e {
        CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Square matrix or a precondition error.
pub fn require_square(m: &DenseMatrix) -> Result<usize, CliError> {
    m.require_square().map_err(CliError::from)
}

pub fn format_complex(z: Cmplx) -> String {
    let clean = |x: f64| if x == 0.0 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.6}")
    } else if re == 0.0 {
        format!("{im:.6}i")
    } else {
        format!(
            "{re:.6}{}{:.6}i",
            if im < 0.0 { "-" } else { "+" },
            im.abs()
        )
    }
}
