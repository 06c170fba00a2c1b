//! The embedded statistical battery.
//!
//! Three frequency/runs tests follow the NIST SP 800-22 formulas and are
//! aggregated over many sequences through the p-value uniformity rule
//! (pass iff P-value_T >= 0.0001). The two DieHARD-style tests consume the
//! pooled 32-bit word stream and fail individually when their p-value leaves
//! [0.0001, 0.9999] (the classical rule is one-sided at 0.9999; the low side
//! is applied as well, which is stricter).

mod battery;
mod diehard;
mod nist;
pub mod special;

pub use battery::{run_battery, BatteryConfig, BatteryReport, TestId};
pub use diehard::{
    count_the_ones_test, gf2_rank, matrix_rank_test, rank_category_probabilities,
    COUNT_ONES_LETTERS, COUNT_ONES_WORDS, MATRIX_RANK_MATRICES,
};
pub use nist::{
    block_frequency_test, monobit_test, proportion_threshold, pvalue_uniformity, runs_test,
    UniformityResult,
};

use serde::Serialize;
use thiserror::Error;

/// Significance level for a single-sequence NIST-style decision.
pub const ALPHA: f64 = 0.01;
/// Pass threshold for the P-value_T uniformity decision.
pub const P_VALUE_T_THRESHOLD: f64 = 0.0001;
/// Two-sided individual rejection band for DieHARD-style p-values.
pub const DIEHARD_LOW: f64 = 0.0001;
pub const DIEHARD_HIGH: f64 = 0.9999;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TestError {
    #[error("sequence too short: need at least {needed} bits, got {got}")]
    SequenceTooShort { needed: usize, got: usize },
    #[error("bad block length: {reason}")]
    BadBlockLength { reason: String },
    #[error("insufficient data: need {needed} {unit}, got {got}")]
    InsufficientData {
        needed: usize,
        got: usize,
        unit: &'static str,
    },
    #[error("too few sequences for the uniformity rule: need at least {needed}, got {got}")]
    TooFewSequences { needed: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Result of one statistical test: the statistic, the p-value(s) it
/// produced, and the verdict of the decision rule that applies to it.
#[derive(Debug, Clone, Serialize)]
pub struct TestOutcome {
    pub test: String,
    pub statistic: f64,
    pub p_values: Vec<f64>,
    #[serde(rename = "p_value_T", skip_serializing_if = "Option::is_none")]
    pub p_value_t: Option<f64>,
    /// Proportion of sequences passing at [`ALPHA`] with its binomial
    /// confidence threshold; informational extra, not part of the verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proportion_extra: Option<ProportionExtra>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProportionExtra {
    pub passing: usize,
    pub total: usize,
    pub threshold: f64,
    pub ok: bool,
}

impl TestOutcome {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub(crate) fn single(test: &str, statistic: f64, pml: f64, verdict: Verdict) -> Self {
        TestOutcome {
            test: test.to_string(),
            statistic,
            p_values: vec![p_clamp(pml)],
            p_value_t: None,
            proportion_extra: None,
            verdict,
            reason: None,
        }
    }
}

/// Clamp floating noise into [0, 1]; p-values are probabilities.
pub(crate) fn p_clamp(p: f64) -> f64 {
    p.clamp(0.0, 1.0)
}
