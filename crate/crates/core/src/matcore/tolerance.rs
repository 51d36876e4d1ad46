use crate::error::{Error, Result};

/// Relative and absolute thresholds shared by every numerical decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: 1e-9,
            abs: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        let valid = |x: f64| x.is_finite() && x >= 0.0;
        if !valid(rel) || !valid(abs) {
            return Err(Error::InvalidInput(format!(
                "tolerances must be finite and nonnegative (rel = {rel}, abs = {abs})"
            )));
        }
        Ok(Self { rel, abs })
    }

    /// Same absolute floor, new relative threshold.
    pub fn with_rel(self, rel: f64) -> Result<Self> {
        Self::new(rel, self.abs)
    }

    /// `max(abs, rel * scale)`.
    pub fn cutoff(&self, scale: f64) -> f64 {
        self.abs.max(self.rel * scale)
    }

    /// `max(abs, sqrt(rel) * scale)`: the looser threshold used for Jordan-structure decisions,
    /// where perturbed defective eigenvalues move by the square root of the rounding error.
    pub fn spectral_cutoff(&self, scale: f64) -> f64 {
        self.abs.max(self.rel.sqrt() * scale)
    }
}
