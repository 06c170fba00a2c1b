//! Irregular decimation: the binomial quantile g1.

/// Cumulative binomial thresholds `T_k = sum_{i=0}^{k} C(32, i)`, held as
/// u64 so the wrap value `T_32 = 2^32` is representable.
#[derive(Debug, Clone)]
pub struct DecimationTable {
    thresholds: [u64; 33],
}

impl DecimationTable {
    pub fn new() -> Self {
        let mut thresholds = [0u64; 33];
        let mut binom: u64 = 1; // C(32, 0)
        let mut acc: u64 = 0;
        for (k, slot) in thresholds.iter_mut().enumerate() {
            acc += binom;
            *slot = acc;
            binom = binom * (32 - k as u64) / (k as u64 + 1);
        }
        debug_assert_eq!(thresholds[32], 1 << 32);
        DecimationTable { thresholds }
    }

    /// Flip count for a raw 32-bit draw: the least `m` with `y < T_m`, i.e.
    /// the Binomial(32, 1/2) quantile of `y / 2^32`.
    pub fn quantile(&self, y: u32) -> u32 {
        self.thresholds.partition_point(|&t| t <= y as u64) as u32
    }

    pub fn threshold(&self, k: usize) -> u64 {
        self.thresholds[k]
    }
}

impl Default for DecimationTable {
    fn default() -> Self {
        Self::new()
    }
}

/// `m = g1(y)`: how many distinct cells the round will negate.
pub fn g1(y: u32) -> u32 {
    use std::sync::OnceLock;
    static TABLE: OnceLock<DecimationTable> = OnceLock::new();
    TABLE.get_or_init(DecimationTable::new).quantile(y)
}
