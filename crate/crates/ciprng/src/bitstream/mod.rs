//! Bit corpora: packing word sources into bit sequences and back.
//!
//! Packing choices matter here: the default zero-extends each family's
//! natural word to 32 bits, which deliberately preserves the 31-bit defect
//! of the linear families (a stuck most-significant bit in every word). A
//! truncating packing at the source's natural width is available for
//! contrast experiments.

mod files;

pub use files::{
    read_ascii, read_binary, read_corpus, write_ascii, write_binary, write_corpus_ascii,
    write_corpus_binary, CorpusFormat,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::WordSource;

#[derive(Debug, Error)]
pub enum BitstreamError {
    #[error("invalid packing: {0}")]
    InvalidPacking(String),
    #[error("corpus dimensions must be positive (s = {s}, n = {n})")]
    EmptyCorpus { s: usize, n: usize },
    #[error("malformed file {path}: unexpected byte 0x{byte:02x} at position {position}")]
    Malformed {
        path: String,
        position: u64,
        byte: u8,
    },
    #[error("file {path} has {bits} bits, not a whole number of 32-bit words")]
    RaggedWords { path: String, bits: usize },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Order in which a packed word's bits enter the stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BitOrder {
    MsbFirst,
    LsbFirst,
}

/// How source words become stream bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingSpec {
    /// Bits emitted per source word. Wider than the source zero-extends
    /// (stuck high bits), narrower truncates to the low bits.
    pub width: u32,
    pub bit_order: BitOrder,
    /// Must be set explicitly when `width` exceeds the source's natural
    /// width; guards against zero-extending by accident.
    pub zero_extend: bool,
}

impl PackingSpec {
    pub fn new(width: u32, bit_order: BitOrder, zero_extend: bool) -> Self {
        PackingSpec { width, bit_order, zero_extend }
    }

    /// The default for a source: sub-byte words (the Old CI nibbles) pack at
    /// natural width little-end-first; everything else zero-extends to the
    /// 32-bit test-battery word, most significant bit first.
    pub fn default_for(source_width: u32) -> Self {
        if source_width < 8 {
            PackingSpec::new(source_width, BitOrder::LsbFirst, false)
        } else if source_width <= 32 {
            PackingSpec::new(32, BitOrder::MsbFirst, true)
        } else {
            PackingSpec::new(source_width, BitOrder::MsbFirst, false)
        }
    }

    /// Natural-width packing: exactly the source's significant bits, no
    /// stuck positions.
    pub fn natural_for(source_width: u32) -> Self {
        let order = if source_width < 8 {
            BitOrder::LsbFirst
        } else {
            BitOrder::MsbFirst
        };
        PackingSpec::new(source_width, order, false)
    }

    pub fn validate_against(&self, source_width: u32) -> Result<(), BitstreamError> {
        if !(1..=64).contains(&self.width) {
            return Err(BitstreamError::InvalidPacking(format!(
                "width {} must be in [1, 64]",
                self.width
            )));
        }
        if self.width > source_width && !self.zero_extend {
            return Err(BitstreamError::InvalidPacking(format!(
                "width {} exceeds source width {} and zero_extend is not set",
                self.width, source_width
            )));
        }
        Ok(())
    }
}

/// A fixed-length bit string. Bit `j` lives in byte `j / 8` at position
/// `7 - j % 8` (stream order = most significant bit first within a byte);
/// padding bits in the final byte are always zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSequence {
    bytes: Vec<u8>,
    len: usize,
}

impl BitSequence {
    pub fn with_capacity(bits: usize) -> Self {
        BitSequence {
            bytes: Vec::with_capacity(bits.div_ceil(8)),
            len: 0,
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut seq = BitSequence::with_capacity(0);
        for b in bits {
            seq.push(b);
        }
        seq
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            self.bytes[self.len / 8] |= 1 << (7 - self.len % 8);
        }
        self.len += 1;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, j: usize) -> bool {
        debug_assert!(j < self.len);
        self.bytes[j / 8] >> (7 - j % 8) & 1 == 1
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Count of one bits.
    pub fn ones(&self) -> u64 {
        self.bytes.iter().map(|b| b.count_ones() as u64).sum()
    }

    /// Count of one bits among positions `start..end`.
    pub fn ones_in_range(&self, start: usize, end: usize) -> u64 {
        debug_assert!(start <= end && end <= self.len);
        if start == end {
            return 0;
        }
        let sb = start / 8;
        let eb = (end - 1) / 8;
        let first_mask = 0xFFu8 >> (start % 8);
        let last_mask = 0xFFu8 << (7 - (end - 1) % 8);
        if sb == eb {
            return (self.bytes[sb] & first_mask & last_mask).count_ones() as u64;
        }
        (self.bytes[sb] & first_mask).count_ones() as u64
            + (self.bytes[eb] & last_mask).count_ones() as u64
            + self.bytes[sb + 1..eb]
                .iter()
                .map(|b| b.count_ones() as u64)
                .sum::<u64>()
    }

    /// Count of positions j where bit j != bit j+1.
    pub fn transitions(&self) -> u64 {
        if self.len < 2 {
            return 0;
        }
        let mut total = 0u64;
        for (i, &b) in self.bytes.iter().enumerate() {
            // Pairs inside the byte: xor with the left-shifted copy aligns
            // each bit with its successor in stream order.
            let within = (b ^ (b << 1)) & 0xFE;
            let byte_bits = (self.len - i * 8).min(8);
            // Only the first byte_bits-1 pairs are real.
            let mask = 0xFEu8 << (8 - byte_bits as u8);
            total += (within & mask).count_ones() as u64;
            // Pair across the byte boundary.
            let next_start = (i + 1) * 8;
            if next_start < self.len {
                let last = b & 1;
                let first = self.bytes[i + 1] >> 7;
                total += (last ^ first) as u64;
            }
        }
        total
    }

    /// Iterate the bits in stream order.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |j| self.bit(j))
    }

    /// Re-chunk into words of `width <= 32` bits, stream order, most
    /// significant bit first; a trailing partial word is dropped.
    pub fn words(&self, width: u32) -> Vec<u32> {
        assert!((1..=32).contains(&width));
        let w = width as usize;
        let count = self.len / w;
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            let mut word = 0u32;
            for j in 0..w {
                word = word << 1 | self.bit(k * w + j) as u32;
            }
            out.push(word);
        }
        out
    }
}

/// A set of `s` equal-length sequences carved contiguously from one stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitCorpus {
    pub sequences: Vec<BitSequence>,
    pub packing: PackingSpec,
}

impl BitCorpus {
    pub fn num_sequences(&self) -> usize {
        self.sequences.len()
    }

    pub fn bits_per_sequence(&self) -> usize {
        self.sequences.first().map_or(0, |s| s.len())
    }

    pub fn total_bits(&self) -> usize {
        self.sequences.iter().map(|s| s.len()).sum()
    }

    /// All sequences pooled back into the original stream and re-chunked as
    /// 32-bit words (the DieHARD-style input).
    pub fn pooled_words(&self) -> Vec<u32> {
        self.pooled().words(32)
    }

    /// All sequences pooled and re-chunked as bytes.
    pub fn pooled_bytes(&self) -> Vec<u8> {
        let pooled = self.pooled();
        let full = pooled.len() / 8;
        pooled.as_bytes()[..full].to_vec()
    }

    fn pooled(&self) -> BitSequence {
        let mut all = BitSequence::with_capacity(self.total_bits());
        for seq in &self.sequences {
            for bit in seq.iter() {
                all.push(bit);
            }
        }
        all
    }
}

/// Emit words from `source` under `packing` into `s` sequences of `n` bits.
///
/// The stream is continuous: sequence boundaries never drop or realign bits,
/// and later sequences continue exactly where earlier ones stopped.
pub fn generate_corpus(
    source: &mut dyn WordSource,
    s: usize,
    n: usize,
    packing: &PackingSpec,
) -> Result<BitCorpus, BitstreamError> {
    if s == 0 || n == 0 {
        return Err(BitstreamError::EmptyCorpus { s, n });
    }
    packing.validate_against(source.width())?;
    let mut packer = Packer::new(*packing);
    let mut sequences = Vec::with_capacity(s);
    for _ in 0..s {
        let mut seq = BitSequence::with_capacity(n);
        for _ in 0..n {
            seq.push(packer.next_bit(source));
        }
        sequences.push(seq);
    }
    Ok(BitCorpus { sequences, packing: *packing })
}

/// Convenience: the first `count` 32-bit words of the packed stream.
pub fn word_stream(
    source: &mut dyn WordSource,
    count: usize,
    packing: &PackingSpec,
) -> Result<Vec<u32>, BitstreamError> {
    let corpus = generate_corpus(source, 1, count * 32, packing)?;
    Ok(corpus.sequences[0].words(32))
}

/// Streams packed bits, carrying leftovers across calls.
struct Packer {
    packing: PackingSpec,
    pending: u64,
    pending_len: u32,
}

impl Packer {
    fn new(packing: PackingSpec) -> Self {
        Packer { packing, pending: 0, pending_len: 0 }
    }

    fn next_bit(&mut self, source: &mut dyn WordSource) -> bool {
        if self.pending_len == 0 {
            let raw = source.next_word();
            let w = self.packing.width;
            let word = if w >= 64 { raw } else { raw & ((1u64 << w) - 1) };
            // Normalize to msb-first emission order in `pending`.
            self.pending = match self.packing.bit_order {
                BitOrder::MsbFirst => word,
                BitOrder::LsbFirst => word.reverse_bits() >> (64 - w),
            };
            self.pending_len = w;
        }
        self.pending_len -= 1;
        self.pending >> self.pending_len & 1 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Constant(u64, u32);
    impl WordSource for Constant {
        fn next_word(&mut self) -> u64 {
            self.0
        }
        fn width(&self) -> u32 {
            self.1
        }
    }

    struct Counter(u64, u32);
    impl WordSource for Counter {
        fn next_word(&mut self) -> u64 {
            self.0 += 1;
            self.0
        }
        fn width(&self) -> u32 {
            self.1
        }
    }

    fn seq_to_string(seq: &BitSequence) -> String {
        seq.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    #[test]
    fn constant_all_ones_source() {
        let mut src = Constant(0xFFFF_FFFF, 32);
        let packing = PackingSpec::new(32, BitOrder::MsbFirst, false);
        let corpus = generate_corpus(&mut src, 3, 40, &packing).unwrap();
        assert_eq!(corpus.total_bits(), 120);
        assert!(corpus.sequences.iter().all(|s| s.ones() as usize == s.len()));
    }

    #[test]
    fn zero_extended_31_bit_words_have_stuck_msb() {
        // A 31-bit source packed at width 32: every 32nd stream bit (the MSB
        // position) is zero.
        let mut src = Counter(0, 31);
        let packing = PackingSpec::new(32, BitOrder::MsbFirst, true);
        let corpus = generate_corpus(&mut src, 1, 32 * 100, &packing).unwrap();
        let seq = &corpus.sequences[0];
        for k in 0..100 {
            assert!(!seq.bit(32 * k), "MSB of word {k} should be stuck at 0");
        }
    }

    #[test]
    fn counter_packs_lsb_first() {
        // Counter 1, 2, 3, 4 at width 8, lsb-first; hand-packed oracle.
        let mut src = Counter(0, 8);
        let packing = PackingSpec::new(8, BitOrder::LsbFirst, false);
        let corpus = generate_corpus(&mut src, 2, 16, &packing).unwrap();
        assert_eq!(seq_to_string(&corpus.sequences[0]), "1000000001000000");
        assert_eq!(seq_to_string(&corpus.sequences[1]), "1100000000100000");
    }

    #[test]
    fn sequences_continue_the_stream_without_dropping_bits() {
        // 12-bit words across 8-bit sequence boundaries: pooling the corpus
        // must reproduce the uninterrupted packed stream.
        let packing = PackingSpec::new(12, BitOrder::MsbFirst, false);
        let mut src = Counter(100, 12);
        let corpus = generate_corpus(&mut src, 5, 8, &packing).unwrap();
        let mut reference = Counter(100, 12);
        let flat = generate_corpus(&mut reference, 1, 40, &packing).unwrap();
        let pooled: Vec<bool> = corpus.sequences.iter().flat_map(|s| s.iter().collect::<Vec<_>>()).collect();
        let expect: Vec<bool> = flat.sequences[0].iter().collect();
        assert_eq!(pooled, expect);
        assert_eq!(corpus.total_bits(), 40);
    }

    #[test]
    fn packing_determinism() {
        let packing = PackingSpec::default_for(31);
        let mut a = Counter(7, 31);
        let mut b = Counter(7, 31);
        let ca = generate_corpus(&mut a, 3, 1000, &packing).unwrap();
        let cb = generate_corpus(&mut b, 3, 1000, &packing).unwrap();
        assert_eq!(ca, cb);
    }

    #[test]
    fn zero_extension_must_be_explicit() {
        let mut src = Counter(0, 31);
        let packing = PackingSpec::new(32, BitOrder::MsbFirst, false);
        assert!(generate_corpus(&mut src, 1, 32, &packing).is_err());
    }

    #[test]
    fn empty_corpus_rejected() {
        let mut src = Counter(0, 8);
        let packing = PackingSpec::natural_for(8);
        assert!(generate_corpus(&mut src, 0, 8, &packing).is_err());
        assert!(generate_corpus(&mut src, 1, 0, &packing).is_err());
    }

    #[test]
    fn words_roundtrip_width_32() {
        let packing = PackingSpec::new(32, BitOrder::MsbFirst, false);
        let mut src = Counter(0xABCD, 32);
        let corpus = generate_corpus(&mut src, 1, 32 * 50, &packing).unwrap();
        let words = corpus.sequences[0].words(32);
        let expect: Vec<u32> = (1..=50).map(|i| 0xABCDu32 + i).collect();
        assert_eq!(words, expect);
    }

    #[test]
    fn range_popcount_matches_naive() {
        let mut state = 0xc0ffeeu64;
        let bits: Vec<bool> = (0..300).map(|_| crate::splitmix64(&mut state) & 1 == 1).collect();
        let seq = BitSequence::from_bits(bits.clone());
        for &(a, b) in &[(0usize, 300usize), (0, 1), (3, 11), (7, 8), (8, 16), (5, 5), (13, 299), (250, 300)] {
            let naive = bits[a..b].iter().filter(|&&x| x).count() as u64;
            assert_eq!(seq.ones_in_range(a, b), naive, "range {a}..{b}");
        }
    }

    #[test]
    fn transitions_matches_naive_count() {
        let mut state = 0x1357_9bdfu64;
        for len in [1usize, 2, 7, 8, 9, 63, 64, 65, 1000] {
            let bits: Vec<bool> = (0..len)
                .map(|_| crate::splitmix64(&mut state) & 1 == 1)
                .collect();
            let seq = BitSequence::from_bits(bits.clone());
            let naive = bits.windows(2).filter(|w| w[0] != w[1]).count() as u64;
            assert_eq!(seq.transitions(), naive, "len={len}");
            assert_eq!(seq.ones(), bits.iter().filter(|&&b| b).count() as u64);
        }
    }
}
