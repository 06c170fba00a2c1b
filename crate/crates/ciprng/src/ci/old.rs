//! The Old CIPRNG: chaotic iterations over a 4-cell state.

use crate::WordSource;

/// One round over the persisted 4-bit state.
///
/// Draws `a` from `prng1`, sets `m = (a mod 2) + 13`, then performs exactly
/// `m` negations at cells `b mod 4` drawn from `prng2`. The round's output is
/// the final state.
pub fn old_ci_round(
    x: &mut u8,
    prng1: &mut impl WordSource,
    prng2: &mut impl WordSource,
) -> u8 {
    let a = prng1.next_word();
    let m = a % 2 + 13;
    for _ in 0..m {
        let b = prng2.next_word();
        *x ^= 1u8 << (b % 4);
    }
    *x
}

/// Old CIPRNG handle: every round emits the full 4-bit state. Consecutive
/// nibbles are meant to be packed little-end-first into bytes (width 4,
/// lsb-first in the packing layer).
#[derive(Debug, Clone)]
pub struct OldCi<P1, P2> {
    x: u8,
    prng1: P1,
    prng2: P2,
}

impl<P1: WordSource, P2: WordSource> OldCi<P1, P2> {
    pub fn new(x0: u8, prng1: P1, prng2: P2) -> Self {
        OldCi { x: x0 & 0xF, prng1, prng2 }
    }

    pub fn state(&self) -> u8 {
        self.x
    }
}

impl<P1: WordSource, P2: WordSource> WordSource for OldCi<P1, P2> {
    fn next_word(&mut self) -> u64 {
        old_ci_round(&mut self.x, &mut self.prng1, &mut self.prng2) as u64
    }

    fn width(&self) -> u32 {
        4
    }
}
