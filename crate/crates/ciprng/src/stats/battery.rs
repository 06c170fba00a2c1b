//! Battery orchestration: apply the enabled tests to a corpus and aggregate
//! the per-test decisions into a scored report.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::nist::{block_frequency_test, monobit_test, pvalue_uniformity, runs_test};
use super::{
    count_the_ones_test, matrix_rank_test, proportion_threshold, ProportionExtra, TestError,
    TestOutcome, Verdict, ALPHA, COUNT_ONES_LETTERS,
};
use crate::bitstream::{BitCorpus, BitSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestId {
    Monobit,
    BlockFrequency,
    Runs,
    MatrixRank,
    CountTheOnes,
}

impl TestId {
    pub fn name(&self) -> &'static str {
        match self {
            TestId::Monobit => "monobit",
            TestId::BlockFrequency => "block_frequency",
            TestId::Runs => "runs",
            TestId::MatrixRank => "matrix_rank",
            TestId::CountTheOnes => "count_the_ones",
        }
    }

    /// NIST-style tests run per sequence and aggregate through the
    /// uniformity rule; the others consume the pooled word stream.
    pub fn is_nist_style(&self) -> bool {
        matches!(self, TestId::Monobit | TestId::BlockFrequency | TestId::Runs)
    }

    pub fn all() -> Vec<TestId> {
        vec![
            TestId::Monobit,
            TestId::BlockFrequency,
            TestId::Runs,
            TestId::MatrixRank,
            TestId::CountTheOnes,
        ]
    }

    pub fn nist_subset() -> Vec<TestId> {
        vec![TestId::Monobit, TestId::BlockFrequency, TestId::Runs]
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatteryConfig {
    /// Tests to run, in report order.
    pub tests: Vec<TestId>,
    /// Block length for the block-frequency test.
    pub block_len: usize,
    /// Cap on worker threads; None uses the process default.
    pub threads: Option<usize>,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            tests: TestId::all(),
            block_len: 128,
            threads: None,
        }
    }
}

/// Scored result of one battery run.
#[derive(Debug, Clone, Serialize)]
pub struct BatteryReport {
    pub tests: BTreeMap<String, TestOutcome>,
    pub passed: usize,
    pub total: usize,
    /// "passed/total", mirroring the usual battery score notation.
    pub score: String,
}

impl BatteryReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }

    pub fn outcome(&self, id: TestId) -> Option<&TestOutcome> {
        self.tests.get(id.name())
    }
}

/// Run the enabled tests.
///
/// NIST-style tests score every corpus sequence and aggregate via the
/// p-value uniformity rule. DieHARD-style tests consume `words` when given,
/// else the corpus pooled back into 32-bit words. Per-test data shortfalls
/// are recorded as failing outcomes with a reason; an empty corpus is an
/// error.
pub fn run_battery(
    corpus: &BitCorpus,
    words: Option<&[u32]>,
    config: &BatteryConfig,
) -> Result<BatteryReport, TestError> {
    if corpus.num_sequences() == 0 || corpus.bits_per_sequence() == 0 {
        return Err(TestError::InsufficientData {
            needed: 1,
            got: 0,
            unit: "corpus bits",
        });
    }
    let run = || run_battery_inner(corpus, words, config);
    match config.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool construction")
            .install(run),
        None => run(),
    }
}

fn run_battery_inner(
    corpus: &BitCorpus,
    words: Option<&[u32]>,
    config: &BatteryConfig,
) -> Result<BatteryReport, TestError> {
    let pooled: Vec<u32>;
    let word_stream: &[u32] = match words {
        Some(w) => w,
        None => {
            pooled = corpus.pooled_words();
            &pooled
        }
    };
    let mut tests = BTreeMap::new();
    let mut passed = 0;
    for &id in &config.tests {
        let outcome = if id.is_nist_style() {
            nist_aggregate(id, &corpus.sequences, config.block_len)
        } else {
            diehard_outcome(id, word_stream)
        };
        if outcome.passed() {
            passed += 1;
        }
        tests.insert(id.name().to_string(), outcome);
    }
    let total = config.tests.len();
    Ok(BatteryReport {
        tests,
        passed,
        total,
        score: format!("{passed}/{total}"),
    })
}

fn apply_nist(id: TestId, seq: &BitSequence, block_len: usize) -> Result<TestOutcome, TestError> {
    match id {
        TestId::Monobit => monobit_test(seq),
        TestId::BlockFrequency => block_frequency_test(seq, block_len),
        TestId::Runs => runs_test(seq),
        _ => unreachable!("not a NIST-style test"),
    }
}

fn nist_aggregate(id: TestId, sequences: &[BitSequence], block_len: usize) -> TestOutcome {
    let per_seq: Vec<Result<TestOutcome, TestError>> = sequences
        .par_iter()
        .map(|seq| apply_nist(id, seq, block_len))
        .collect();
    let mut p_values = Vec::with_capacity(per_seq.len());
    for res in per_seq {
        match res {
            Ok(out) => p_values.push(out.p_values[0]),
            Err(err) => {
                return failed_outcome(id, format!("sequence error: {err}"));
            }
        }
    }
    match pvalue_uniformity(&p_values) {
        Ok(uniformity) => {
            let passing = p_values.iter().filter(|&&p| p >= ALPHA).count();
            let threshold = proportion_threshold(p_values.len(), ALPHA);
            let proportion_ok = passing as f64 / p_values.len() as f64 >= threshold;
            TestOutcome {
                test: id.name().to_string(),
                statistic: uniformity.chi_square,
                p_values,
                p_value_t: Some(uniformity.p_value_t),
                proportion_extra: Some(ProportionExtra {
                    passing,
                    total: sequences.len(),
                    threshold,
                    ok: proportion_ok,
                }),
                verdict: if uniformity.passed() {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
                reason: None,
            }
        }
        Err(err) => failed_outcome(id, err.to_string()),
    }
}

fn diehard_outcome(id: TestId, words: &[u32]) -> TestOutcome {
    let result = match id {
        TestId::MatrixRank => matrix_rank_test(words),
        TestId::CountTheOnes => {
            let needed_words = COUNT_ONES_LETTERS.div_ceil(4);
            if words.len() < needed_words {
                Err(TestError::InsufficientData {
                    needed: needed_words,
                    got: words.len(),
                    unit: "32-bit words",
                })
            } else {
                // Bytes in little-endian word order, the dieharder file layout.
                let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
                count_the_ones_test(&bytes)
            }
        }
        _ => unreachable!("not a word-stream test"),
    };
    result.unwrap_or_else(|err| failed_outcome(id, err.to_string()))
}

fn failed_outcome(id: TestId, reason: String) -> TestOutcome {
    TestOutcome {
        test: id.name().to_string(),
        statistic: f64::NAN,
        p_values: Vec::new(),
        p_value_t: None,
        proportion_extra: None,
        verdict: Verdict::Fail,
        reason: Some(reason),
    }
}
