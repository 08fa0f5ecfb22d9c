use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::embedding::Embedding;

/// Residual statistics of one identity check over a point sample.
///
/// `pass` holds iff at least one point was evaluated and
/// `max_rel_residual <= tolerance`.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub check: String,
    pub family: String,
    pub params: Vec<(String, f64)>,
    pub n_points: usize,
    pub seed: u64,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    pub tolerance: f64,
    /// Non-gating checks are exploratory and never decide the overall verdict.
    pub gating: bool,
    pub pass: bool,
    pub worst_point: Vec<f64>,
    /// Set when the sample was empty.
    pub no_samples: bool,
}

impl VerificationReport {
    pub fn with_param(mut self, name: &str, value: f64) -> Self {
        self.params.push((name.to_string(), value));
        self
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    /// Re-evaluates `pass` after the residual fields were edited.
    pub fn recompute_pass(&mut self) {
        self.pass = !self.no_samples && self.max_rel_residual <= self.tolerance;
    }
}

/// Running maxima of absolute and relative residuals.
#[derive(Clone, Debug, Default)]
pub struct Residuals {
    count: usize,
    max_abs: f64,
    max_rel: f64,
    worst: Vec<f64>,
}

impl Residuals {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs
    }

    pub fn max_rel(&self) -> f64 {
        self.max_rel
    }

    /// NaN residuals count as infinitely bad.
    pub fn record(&mut self, abs: f64, rel: f64, point: Vec<f64>) {
        let abs = if abs.is_nan() { f64::INFINITY } else { abs };
        let rel = if rel.is_nan() { f64::INFINITY } else { rel };
        if self.count == 0 || rel > self.max_rel {
            self.max_rel = rel;
            self.worst = point;
        }
        self.max_abs = self.max_abs.max(abs);
        self.count += 1;
    }

    pub fn finish(
        self,
        check: &str,
        f: &Embedding,
        seed: u64,
        tolerance: f64,
        gating: bool,
    ) -> VerificationReport {
        self.finish_named(
            check,
            f.family().name(),
            f.params(),
            seed,
            tolerance,
            gating,
        )
    }

    pub fn finish_named(
        self,
        check: &str,
        family: &str,
        params: Vec<(String, f64)>,
        seed: u64,
        tolerance: f64,
        gating: bool,
    ) -> VerificationReport {
        let no_samples = self.count == 0;
        let mut report = VerificationReport {
            check: check.to_string(),
            family: family.to_string(),
            params,
            n_points: self.count,
            seed,
            max_abs_residual: self.max_abs,
            max_rel_residual: self.max_rel,
            tolerance,
            gating,
            pass: false,
            worst_point: self.worst,
            no_samples,
        };
        report.recompute_pass();
        report
    }
}

/// `max(|lhs|, |rhs|, 1)`, the scale used for relative identity residuals.
pub fn residual_scale(lhs: f64, rhs: f64) -> f64 {
    crate::math::abs(lhs).max(crate::math::abs(rhs)).max(1.0)
}
