//! The run-config JSON file: source spec tree, battery settings, packing,
//! and the scan range. Unknown fields anywhere are configuration errors.

use std::path::Path;

use serde::{Deserialize, Serialize};

use ciprng::config::{GeneratorConfig, PackingConfig, SourceConfig};
use ciprng::splitmix64 as derive_seed;
use ciprng::stats::TestId;

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub source: SourceConfig,
    #[serde(default)]
    pub battery: BatterySettings,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub packing: Option<PackingConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanRange>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatterySettings {
    /// s: number of sequences.
    #[serde(default = "default_sequences")]
    pub sequences: usize,
    /// n: bits per sequence.
    #[serde(default = "default_bits")]
    pub bits_per_sequence: usize,
    /// Enabled tests; defaults to the full implemented set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tests: Option<Vec<TestId>>,
    #[serde(default = "default_block_len")]
    pub block_len: usize,
    /// 32-bit words fed to the DieHARD-style tests.
    #[serde(default = "default_diehard_words")]
    pub diehard_words: usize,
}

fn default_sequences() -> usize {
    100
}

fn default_bits() -> usize {
    1_000_000
}

fn default_block_len() -> usize {
    128
}

fn default_diehard_words() -> usize {
    1 << 23
}

impl Default for BatterySettings {
    fn default() -> Self {
        BatterySettings {
            sequences: default_sequences(),
            bits_per_sequence: default_bits(),
            tests: None,
            block_len: default_block_len(),
            diehard_words: default_diehard_words(),
        }
    }
}

/// Inclusive functional-power range.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanRange {
    pub from: usize,
    pub to: usize,
}

impl ScanRange {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let (lo, hi) = text
            .split_once("..")
            .ok_or_else(|| CliError::Config(format!("scan range `{text}` must look like LO..HI")))?;
        let from = lo
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("bad scan bound `{lo}`")))?;
        let to = hi
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("bad scan bound `{hi}`")))?;
        Ok(ScanRange { from, to })
    }

    pub fn values(&self) -> Result<Vec<usize>, CliError> {
        if self.from == 0 || self.from > self.to {
            return Err(CliError::Config(format!(
                "scan range {}..{} is empty or starts at zero",
                self.from, self.to
            )));
        }
        Ok((self.from..=self.to).collect())
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        let config: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Ok(config)
    }

    pub fn enabled_tests(&self, flag: Option<&str>) -> Result<Vec<TestId>, CliError> {
        if let Some(list) = flag {
            return list
                .split(',')
                .map(|name| {
                    serde_json::from_value(serde_json::Value::String(name.trim().to_string()))
                        .map_err(|_| CliError::Config(format!("unknown test `{name}`")))
                })
                .collect();
        }
        Ok(self.battery.tests.clone().unwrap_or_else(TestId::all))
    }

    /// Replace every seed in the source tree with values derived from
    /// `seed`; distinct generator positions get distinct derived seeds.
    pub fn apply_seed_override(&mut self, seed: u64) {
        let mut counter = seed;
        match &mut self.source {
            SourceConfig::Generator(g) => override_seed(g, &mut counter),
            SourceConfig::Combinator(c) => {
                override_seed(&mut c.prng1, &mut counter);
                if let Some(p2) = c.prng2.as_mut() {
                    override_seed(p2, &mut counter);
                }
            }
        }
    }
}

fn override_seed(config: &mut GeneratorConfig, counter: &mut u64) {
    config.seed = None;
    config.seed_from = Some(derive_seed(counter));
}
