//! The NIST SP 800-22 style tests: frequency (monobit), frequency within a
//! block, runs, and the p-value uniformity aggregation.

use super::special::{erfc, igamc};
use super::{p_clamp, TestError, TestOutcome, Verdict, ALPHA, P_VALUE_T_THRESHOLD};
use crate::bitstream::BitSequence;

fn verdict_at_alpha(p: f64) -> Verdict {
    if p >= ALPHA {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Frequency (monobit) test: p = erfc(|#ones - #zeros| / sqrt(2n)).
///
/// The handbook recommends n >= 100; its own worked examples use n = 10,
/// which is the minimum accepted here.
pub fn monobit_test(seq: &BitSequence) -> Result<TestOutcome, TestError> {
    let n = seq.len();
    if n < 10 {
        return Err(TestError::SequenceTooShort { needed: 10, got: n });
    }
    let ones = seq.ones() as i64;
    let s = 2 * ones - n as i64;
    let statistic = s.unsigned_abs() as f64 / (n as f64).sqrt();
    let p = erfc(statistic / std::f64::consts::SQRT_2);
    Ok(TestOutcome::single("monobit", statistic, p, verdict_at_alpha(p)))
}

/// Frequency within a block: chi-square of per-block one-proportions over
/// `floor(n / m)` blocks, p = igamc(N/2, chi^2/2). Requires n >= m >= 20.
pub fn block_frequency_test(seq: &BitSequence, m: usize) -> Result<TestOutcome, TestError> {
    let n = seq.len();
    if m < 20 {
        return Err(TestError::BadBlockLength {
            reason: format!("block length {m} must be at least 20"),
        });
    }
    if n < m {
        return Err(TestError::BadBlockLength {
            reason: format!("sequence of {n} bits cannot fill one {m}-bit block"),
        });
    }
    let blocks = n / m;
    let mut chi2 = 0.0;
    for b in 0..blocks {
        let ones = seq.ones_in_range(b * m, (b + 1) * m);
        let pi = ones as f64 / m as f64;
        chi2 += (pi - 0.5) * (pi - 0.5);
    }
    chi2 *= 4.0 * m as f64;
    let p = igamc(blocks as f64 / 2.0, chi2 / 2.0);
    Ok(TestOutcome::single("block_frequency", chi2, p, verdict_at_alpha(p)))
}

/// Runs test: total number of runs against its expectation under the
/// observed one-proportion. When the monobit precondition |pi - 1/2| >=
/// 2/sqrt(n) fails, p is 0 by convention.
pub fn runs_test(seq: &BitSequence) -> Result<TestOutcome, TestError> {
    let n = seq.len();
    if n < 10 {
        return Err(TestError::SequenceTooShort { needed: 10, got: n });
    }
    let pi = seq.ones() as f64 / n as f64;
    let tau = 2.0 / (n as f64).sqrt();
    if (pi - 0.5).abs() >= tau {
        let mut outcome = TestOutcome::single("runs", f64::INFINITY, 0.0, Verdict::Fail);
        outcome.reason = Some("monobit precondition failed".to_string());
        return Ok(outcome);
    }
    let v = seq.transitions() as f64 + 1.0;
    let arg = (v - 2.0 * n as f64 * pi * (1.0 - pi)).abs()
        / (2.0 * (2.0 * n as f64).sqrt() * pi * (1.0 - pi));
    let p = erfc(arg);
    Ok(TestOutcome::single("runs", v, p, verdict_at_alpha(p)))
}

/// Result of the uniformity rule over a set of per-sequence p-values.
#[derive(Debug, Clone, Copy)]
pub struct UniformityResult {
    pub chi_square: f64,
    pub p_value_t: f64,
}

impl UniformityResult {
    pub fn passed(&self) -> bool {
        self.p_value_t >= P_VALUE_T_THRESHOLD
    }
}

/// Distribution check over the p-values of `s >= 10` sequences: chi-square
/// of the counts in ten equal sub-intervals of [0, 1], with
/// P-value_T = igamc(9/2, chi^2/2).
pub fn pvalue_uniformity(p_values: &[f64]) -> Result<UniformityResult, TestError> {
    let s = p_values.len();
    if s < 10 {
        return Err(TestError::TooFewSequences { needed: 10, got: s });
    }
    let mut counts = [0usize; 10];
    for &p in p_values {
        let bin = ((p * 10.0) as usize).min(9);
        counts[bin] += 1;
    }
    let expected = s as f64 / 10.0;
    let chi_square: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let p_value_t = p_clamp(igamc(4.5, chi_square / 2.0));
    Ok(UniformityResult { chi_square, p_value_t })
}

/// Minimum passing proportion at significance `alpha` over `s` sequences:
/// (1 - alpha) - 3 sqrt(alpha (1 - alpha) / s). Informational; the official
/// suite reports it alongside the uniformity rule.
pub fn proportion_threshold(s: usize, alpha: f64) -> f64 {
    (1.0 - alpha) - 3.0 * (alpha * (1.0 - alpha) / s as f64).sqrt()
}
