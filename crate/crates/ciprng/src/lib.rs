//! Chaotic-iteration post-processing for classical pseudorandom generators.
//!
//! The crate has four parts:
//!
//! - [`generators`]: the classical PRNG families (LCG, MRG, AWC, SWB, SWC,
//!   GFSR, INV and xor-combined variants), each a deterministic step function
//!   over explicit state.
//! - [`ci`]: the chaotic-iteration combinators (Old, New, Xor, Mixed-Xor and
//!   Multiple-Xor CIPRNGs) that post-process one or two inputted generators,
//!   plus cycle detection for period measurements.
//! - [`stats`]: the embedded battery subset: monobit, block frequency and
//!   runs with the p-value uniformity decision rule, the 32x32 binary matrix
//!   rank and count-the-1s tests with the two-sided DieHARD rule, and the
//!   special functions they need.
//! - [`bitstream`]: packing generator output into bit corpora and the ASCII /
//!   little-endian binary file formats consumed by the external test suites.
//!
//! Everything is deterministic: all randomness flows from explicit seeds, and
//! identical configurations produce byte-identical corpora and reports.

pub mod bitstream;
pub mod ci;
pub mod config;
pub mod generators;
pub mod stats;

/// A deterministic stream of fixed-width unsigned words.
///
/// Classical generators and CI combinators both implement this; it is the
/// interface corpus generation and the combinators consume.
pub trait WordSource {
    /// Advance the stream by one step and return the next word.
    fn next_word(&mut self) -> u64;

    /// Number of significant bits in every produced word. Words are always
    /// `< 2^width()`.
    fn width(&self) -> u32;
}

impl<S: WordSource + ?Sized> WordSource for Box<S> {
    fn next_word(&mut self) -> u64 {
        (**self).next_word()
    }

    fn width(&self) -> u32 {
        (**self).width()
    }
}

/// Number of bits needed to represent every value in `[0, m)`.
pub(crate) fn bits_for_modulus(m: u64) -> u32 {
    if m <= 1 {
        1
    } else {
        64 - (m - 1).leading_zeros()
    }
}

/// SplitMix64 step, used for documented seed-material expansion and seed
/// derivation.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}
