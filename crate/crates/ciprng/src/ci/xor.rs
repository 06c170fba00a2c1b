//! The Xor-family CIPRNGs: state updates collapse to bitwise xor when the
//! iteration function is the vectorial negation.

use super::chaotic::CiError;
use crate::WordSource;

/// Single Xor CI step: `x^n = x^{n-1} ^ S^n`.
pub fn xor_ci_next(x: u32, s: u32) -> u32 {
    x ^ s
}

/// Mixed Xor CI step: `x^n = x^{n-1} ^ PRNG_1 ^ PRNG_2`.
pub fn mixed_xor_next(
    x: u32,
    prng1: &mut impl WordSource,
    prng2: &mut impl WordSource,
) -> u32 {
    x ^ prng1.next_word() as u32 ^ prng2.next_word() as u32
}

/// Multiple Xor CI step: absorbs `m` consecutive strategy words per output,
/// `m` being the functional power.
pub fn multiple_xor_next(x: u32, strategy_words: &[u32]) -> Result<u32, CiError> {
    if strategy_words.is_empty() {
        return Err(CiError::ZeroPower);
    }
    Ok(strategy_words.iter().fold(x, |acc, &w| acc ^ w))
}

/// Xor CIPRNG over one strategy generator.
#[derive(Debug, Clone)]
pub struct XorCi<P> {
    x: u32,
    prng: P,
}

impl<P: WordSource> XorCi<P> {
    pub fn new(x0: u32, prng: P) -> Self {
        XorCi { x: x0, prng }
    }

    pub fn state(&self) -> u32 {
        self.x
    }
}

impl<P: WordSource> WordSource for XorCi<P> {
    fn next_word(&mut self) -> u64 {
        self.x = xor_ci_next(self.x, self.prng.next_word() as u32);
        self.x as u64
    }

    fn width(&self) -> u32 {
        32
    }
}

/// Mixed Xor CIPRNG over two input generators.
#[derive(Debug, Clone)]
pub struct MixedXorCi<P1, P2> {
    x: u32,
    prng1: P1,
    prng2: P2,
}

impl<P1: WordSource, P2: WordSource> MixedXorCi<P1, P2> {
    pub fn new(x0: u32, prng1: P1, prng2: P2) -> Self {
        MixedXorCi { x: x0, prng1, prng2 }
    }

    pub fn state(&self) -> u32 {
        self.x
    }
}

impl<P1: WordSource, P2: WordSource> WordSource for MixedXorCi<P1, P2> {
    fn next_word(&mut self) -> u64 {
        self.x = mixed_xor_next(self.x, &mut self.prng1, &mut self.prng2);
        self.x as u64
    }

    fn width(&self) -> u32 {
        32
    }
}

/// Multiple Xor CIPRNG with functional power `m >= 1`.
#[derive(Debug, Clone)]
pub struct MultipleXorCi<P> {
    x: u32,
    power: usize,
    prng: P,
}

impl<P: WordSource> MultipleXorCi<P> {
    pub fn new(x0: u32, power: usize, prng: P) -> Result<Self, CiError> {
        if power == 0 {
            return Err(CiError::ZeroPower);
        }
        Ok(MultipleXorCi { x: x0, power, prng })
    }

    pub fn state(&self) -> u32 {
        self.x
    }
}

impl<P: WordSource> WordSource for MultipleXorCi<P> {
    fn next_word(&mut self) -> u64 {
        for _ in 0..self.power {
            self.x ^= self.prng.next_word() as u32;
        }
        self.x as u64
    }

    fn width(&self) -> u32 {
        32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ci::test_support::Scripted;
    use crate::splitmix64;

    #[test]
    fn xor_identity_and_self_inverse() {
        assert_eq!(xor_ci_next(0, 0xDEAD_BEEF), 0xDEAD_BEEF);
        assert_eq!(xor_ci_next(0x1234_5678, 0x1234_5678), 0);
    }

    #[test]
    fn two_steps_compose_by_xor() {
        let (x0, s1, s2) = (0xABCD_EF01u32, 0x1111_2222u32, 0x3333_4444u32);
        let x2 = xor_ci_next(xor_ci_next(x0, s1), s2);
        assert_eq!(x2, x0 ^ s1 ^ s2);
    }

    #[test]
    fn identical_inputs_freeze_mixed_xor() {
        // prng1 == prng2 (same family, same seed): a ^ a = 0 every step.
        use crate::generators::{defaults, Generator};
        let g1 = Generator::from_single_seed(defaults::minstd(), 9).unwrap();
        let g2 = Generator::from_single_seed(defaults::minstd(), 9).unwrap();
        let mut ci = MixedXorCi::new(0x5555_AAAA, g1, g2);
        for _ in 0..100 {
            assert_eq!(ci.next_word(), 0x5555_AAAA);
        }
    }

    #[test]
    fn zero_second_input_reduces_to_single_xor() {
        let script: Vec<u64> = (0..50).map(|i| i * 2654435761 % (1 << 31)).collect();
        let mut mixed = MixedXorCi::new(
            7,
            Scripted::new(script.clone(), 31),
            Scripted::new(vec![0; 50], 31),
        );
        let mut single = XorCi::new(7, Scripted::new(script, 31));
        for _ in 0..50 {
            assert_eq!(mixed.next_word(), single.next_word());
        }
    }

    #[test]
    fn zero_power_rejected() {
        assert_eq!(multiple_xor_next(5, &[]), Err(CiError::ZeroPower));
        assert!(MultipleXorCi::new(0, 0, Scripted::new(vec![], 32)).is_err());
    }

    #[test]
    fn power_one_is_single_xor() {
        let script: Vec<u64> = (1..100).map(|i| i * 40503 % (1 << 31)).collect();
        let mut multi = MultipleXorCi::new(3, 1, Scripted::new(script.clone(), 31)).unwrap();
        let mut single = XorCi::new(3, Scripted::new(script, 31));
        for _ in 0..99 {
            assert_eq!(multi.next_word(), single.next_word());
        }
    }

    #[test]
    fn paired_words_cancel() {
        assert_eq!(multiple_xor_next(0x0F0F, &[0x1234, 0x1234]).unwrap(), 0x0F0F);
    }

    #[test]
    fn power_three_equals_three_chained_steps() {
        let mut seed = 99u64;
        for _ in 0..1_000 {
            let x = splitmix64(&mut seed) as u32;
            let w: Vec<u32> = (0..3).map(|_| splitmix64(&mut seed) as u32).collect();
            let direct = multiple_xor_next(x, &w).unwrap();
            let chained = xor_ci_next(xor_ci_next(xor_ci_next(x, w[0]), w[1]), w[2]);
            assert_eq!(direct, chained);
        }
    }
}
