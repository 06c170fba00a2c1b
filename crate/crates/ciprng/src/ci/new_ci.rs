//! The New CIPRNG: decimated chaotic iterations over a 32-cell state.

use super::decimation::g1;
use crate::WordSource;

/// Per-round record of which cells were already negated.
#[derive(Debug, Clone, Copy, Default)]
pub struct FlipFlags(u32);

impl FlipFlags {
    pub fn new() -> Self {
        FlipFlags(0)
    }

    pub fn is_set(&self, cell: u32) -> bool {
        self.0 >> cell & 1 == 1
    }

    pub fn set(&mut self, cell: u32) {
        self.0 |= 1 << cell;
    }

    /// Number of cells negated so far this round.
    pub fn count(&self) -> u32 {
        self.0.count_ones()
    }
}

/// One round over the persisted 32-bit state.
///
/// `m = g1(y)` where `y` is the next output of `prng1` interpreted as a
/// 32-bit word (a narrower generator's output is scaled by `<< (32 - width)`,
/// the usual GetBits normalization; feeding, say, raw 31-bit words would
/// halve the decimation range and skew the flip counts). Cells `b mod 32`
/// are then drawn from `prng2` until exactly `m` distinct cells have been
/// negated once each; repeated draws are discarded and extend the loop.
pub fn new_ci_round(
    x: &mut u32,
    prng1: &mut impl WordSource,
    prng2: &mut impl WordSource,
) -> u32 {
    let y = scale_to_32(prng1.next_word(), prng1.width());
    let m = g1(y);
    let mut flags = FlipFlags::new();
    while flags.count() < m {
        let cell = (prng2.next_word() % 32) as u32;
        if !flags.is_set(cell) {
            *x ^= 1u32 << cell;
            flags.set(cell);
        }
    }
    *x
}

pub(crate) fn scale_to_32(raw: u64, width: u32) -> u32 {
    if width >= 32 {
        (raw >> (width - 32)) as u32
    } else {
        (raw << (32 - width)) as u32
    }
}

/// New CIPRNG handle: every round emits the full 32-bit state, including
/// rounds where `m = 0` changed nothing.
#[derive(Debug, Clone)]
pub struct NewCi<P1, P2> {
    x: u32,
    prng1: P1,
    prng2: P2,
}

impl<P1: WordSource, P2: WordSource> NewCi<P1, P2> {
    pub fn new(x0: u32, prng1: P1, prng2: P2) -> Self {
        NewCi { x: x0, prng1, prng2 }
    }

    pub fn state(&self) -> u32 {
        self.x
    }
}

impl<P1: WordSource, P2: WordSource> WordSource for NewCi<P1, P2> {
    fn next_word(&mut self) -> u64 {
        new_ci_round(&mut self.x, &mut self.prng1, &mut self.prng2) as u64
    }

    fn width(&self) -> u32 {
        32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ci::test_support::Scripted;

    #[test]
    fn zero_flip_round_emits_unchanged_state() {
        // y = 0 gives m = 0: no draws from prng2 at all.
        let mut x = 0xDEAD_BEEFu32;
        let mut p1 = Scripted::new(vec![0], 32);
        let mut p2 = Scripted::new(vec![], 32);
        assert_eq!(new_ci_round(&mut x, &mut p1, &mut p2), 0xDEAD_BEEF);
        assert_eq!(p2.consumed(), 0);
    }

    #[test]
    fn duplicate_draw_is_discarded() {
        // Force m = 2 (threshold for 2 is the first y with quantile 2: T_1 = 33).
        let mut x = 0u32;
        let mut p1 = Scripted::new(vec![33], 32);
        let mut p2 = Scripted::new(vec![5, 5, 9], 32);
        let out = new_ci_round(&mut x, &mut p1, &mut p2);
        assert_eq!(out, (1 << 5) | (1 << 9));
        assert_eq!(p2.consumed(), 3);
    }

    #[test]
    fn full_flip_round_is_complement() {
        // y = 2^32 - 1 gives m = 32: every cell negated exactly once.
        let mut x = 0x1234_5678u32;
        let mut p1 = Scripted::new(vec![u32::MAX as u64], 32);
        let mut p2 = Scripted::new((0..32).collect(), 32);
        assert_eq!(new_ci_round(&mut x, &mut p1, &mut p2), !0x1234_5678u32);
    }

    #[test]
    fn narrow_prng1_outputs_are_scaled() {
        assert_eq!(scale_to_32(1 << 30, 31), 1 << 31);
        assert_eq!(scale_to_32(0, 31), 0);
        assert_eq!(scale_to_32(0xF, 4), 0xF000_0000);
        assert_eq!(scale_to_32(0xFFFF_FFFF, 32), 0xFFFF_FFFF);
    }

    #[test]
    fn hamming_distance_equals_decimation_count() {
        // popcount(x_before ^ x_after) = g1(y) for every round, with real
        // generators driving both inputs.
        use crate::generators::{defaults, Generator};
        let mut prng1 = Generator::from_single_seed(defaults::minstd(), 11).unwrap();
        let mut prng2 = Generator::from_single_seed(defaults::gfsr(), 22).unwrap();
        let mut probe1 = Generator::from_single_seed(defaults::minstd(), 11).unwrap();
        let mut x = 0u32;
        for _ in 0..10_000 {
            let before = x;
            new_ci_round(&mut x, &mut prng1, &mut prng2);
            let y = scale_to_32(probe1.next_word(), probe1.width());
            assert_eq!((before ^ x).count_ones(), g1(y));
        }
    }
}
