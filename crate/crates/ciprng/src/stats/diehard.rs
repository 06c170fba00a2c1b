//! The two DieHARD-style tests: 32x32 binary matrix rank and COUNT-THE-1's.
//!
//! Both consume a stream of 32-bit words (p = F(X), the fitted distribution
//! evaluated at the sample statistic) and fail individually when p leaves
//! [0.0001, 0.9999].

use super::special::{erfc, igamc};
use super::{p_clamp, TestError, TestOutcome, Verdict, DIEHARD_HIGH, DIEHARD_LOW};

/// Matrices per rank test run.
pub const MATRIX_RANK_MATRICES: usize = 40_000;
/// Overlapping 5-letter words per COUNT-THE-1's run.
pub const COUNT_ONES_WORDS: usize = 256_000;
/// Letters (bytes) needed to form them.
pub const COUNT_ONES_LETTERS: usize = COUNT_ONES_WORDS + 4;

fn diehard_verdict(p: f64) -> Verdict {
    if !(DIEHARD_LOW..=DIEHARD_HIGH).contains(&p) {
        Verdict::Fail
    } else {
        Verdict::Pass
    }
}

/// Rank of a binary matrix over GF(2); each row is one 32-bit word.
pub fn gf2_rank(rows: &[u32]) -> u32 {
    let mut rows: Vec<u32> = rows.to_vec();
    let mut rank = 0;
    for col in (0..32).rev() {
        let bit = 1u32 << col;
        if let Some(pivot) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) {
            rows.swap(rank, pivot);
            let pivot_row = rows[rank];
            for row in rows.iter_mut().skip(rank + 1) {
                if *row & bit != 0 {
                    *row ^= pivot_row;
                }
            }
            rank += 1;
        }
    }
    rank as u32
}

/// Probabilities of a random 32x32 GF(2) matrix having rank 32, 31, 30 and
/// <= 29, in that order, from the exact product formula.
pub fn rank_category_probabilities() -> [f64; 4] {
    let p = |r: i32| -> f64 {
        let mn = 32 * 32;
        let mut acc = 2f64.powi(r * (32 + 32 - r) - mn);
        for i in 0..r {
            let num = (1.0 - 2f64.powi(i - 32)) * (1.0 - 2f64.powi(i - 32));
            let den = 1.0 - 2f64.powi(i - r);
            acc *= num / den;
        }
        acc
    };
    let p32 = p(32);
    let p31 = p(31);
    let p30 = p(30);
    [p32, p31, p30, 1.0 - p32 - p31 - p30]
}

/// DieHARD Matrix Rank 32x32: ranks of 40,000 matrices built from
/// consecutive words, chi-square over the categories {32, 31, 30, <=29}
/// with 3 degrees of freedom.
pub fn matrix_rank_test(words: &[u32]) -> Result<TestOutcome, TestError> {
    let needed = MATRIX_RANK_MATRICES * 32;
    if words.len() < needed {
        return Err(TestError::InsufficientData {
            needed,
            got: words.len(),
            unit: "32-bit words",
        });
    }
    let mut counts = [0u64; 4];
    for m in 0..MATRIX_RANK_MATRICES {
        let rank = gf2_rank(&words[m * 32..(m + 1) * 32]);
        let cat = match rank {
            32 => 0,
            31 => 1,
            30 => 2,
            _ => 3, // ranks below 29 are pooled with 29
        };
        counts[cat] += 1;
    }
    let probs = rank_category_probabilities();
    let n = MATRIX_RANK_MATRICES as f64;
    let chi2: f64 = counts
        .iter()
        .zip(probs.iter())
        .map(|(&o, &p)| {
            let e = n * p;
            let d = o as f64 - e;
            d * d / e
        })
        .sum();
    // p = F(chi2) with 3 degrees of freedom.
    let p = p_clamp(1.0 - igamc(1.5, chi2 / 2.0));
    let mut outcome = TestOutcome::single("matrix_rank", chi2, p, diehard_verdict(p));
    outcome.reason = Some(format!(
        "rank counts [32, 31, 30, <=29] = {counts:?} over {MATRIX_RANK_MATRICES} matrices"
    ));
    Ok(outcome)
}

/// Letter class of a byte: popcounts 0-2 map to A, 3 to B, 4 to C, 5 to D,
/// 6-8 to E, hit with probabilities (37, 56, 70, 56, 37)/256 on uniform
/// bytes.
fn letter(byte: u8) -> usize {
    match byte.count_ones() {
        0..=2 => 0,
        3 => 1,
        4 => 2,
        5 => 3,
        _ => 4,
    }
}

/// Letter probabilities for uniform bytes.
fn letter_probabilities() -> [f64; 5] {
    // Binomial(8, 1/2) masses pooled per class: (1+8+28, 56, 70, 56, 28+8+1).
    [37.0, 56.0, 70.0, 56.0, 37.0].map(|c| c / 256.0)
}

/// DieHARD COUNT-THE-1's on a byte stream: frequencies of 256,000
/// overlapping 5-letter words against 5^5 expected cell counts, as the
/// difference of naive Pearson sums Q5 - Q4 with 5^5 - 5^4 = 2500 degrees of
/// freedom, treated as normal with variance 2 * 2500.
pub fn count_the_ones_test(bytes: &[u8]) -> Result<TestOutcome, TestError> {
    if bytes.len() < COUNT_ONES_LETTERS {
        return Err(TestError::InsufficientData {
            needed: COUNT_ONES_LETTERS,
            got: bytes.len(),
            unit: "bytes",
        });
    }
    let letters: Vec<usize> = bytes[..COUNT_ONES_LETTERS].iter().map(|&b| letter(b)).collect();
    let mut counts5 = vec![0u32; 5 * 5 * 5 * 5 * 5];
    let mut counts4 = vec![0u32; 5 * 5 * 5 * 5];
    for i in 0..COUNT_ONES_WORDS {
        let w4 = letters[i] * 125 + letters[i + 1] * 25 + letters[i + 2] * 5 + letters[i + 3];
        counts4[w4] += 1;
        counts5[w4 * 5 + letters[i + 4]] += 1;
    }
    let probs = letter_probabilities();
    let n = COUNT_ONES_WORDS as f64;
    let mut q5 = 0.0;
    let mut q4 = 0.0;
    for (cell, &count) in counts4.iter().enumerate() {
        let expected = n * cell_probability(cell, 4, &probs);
        let d = count as f64 - expected;
        q4 += d * d / expected;
    }
    for (cell, &count) in counts5.iter().enumerate() {
        let expected = n * cell_probability(cell, 5, &probs);
        let d = count as f64 - expected;
        q5 += d * d / expected;
    }
    let df = 2500.0;
    let z = (q5 - q4 - df) / (2.0 * df).sqrt();
    // p = Phi(z), the normal CDF of the standardized statistic.
    let p = p_clamp(0.5 * erfc(-z / std::f64::consts::SQRT_2));
    let mut outcome = TestOutcome::single("count_the_ones", z, p, diehard_verdict(p));
    outcome.reason = Some(format!("Q5 = {q5:.2}, Q4 = {q4:.2}"));
    Ok(outcome)
}

fn cell_probability(mut cell: usize, len: u32, probs: &[f64; 5]) -> f64 {
    let mut p = 1.0;
    for _ in 0..len {
        p *= probs[cell % 5];
        cell /= 5;
    }
    p
}
