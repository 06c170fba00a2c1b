//! On-disk formats for external test suites.
//!
//! ASCII: one '0'/'1' character per bit, nothing else; the NIST STS input
//! convention, byte-count-exact. Binary: the stream re-chunked into 32-bit
//! words written little-endian, the dieharder raw-input convention.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::{BitCorpus, BitSequence, BitstreamError, PackingSpec};

fn io_err(path: &Path, source: std::io::Error) -> BitstreamError {
    BitstreamError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Write one sequence as ASCII bits. The file holds exactly `seq.len()`
/// bytes.
pub fn write_ascii(path: &Path, seq: &BitSequence) -> Result<(), BitstreamError> {
    let mut buf = Vec::with_capacity(seq.len());
    buf.extend(seq.iter().map(|b| if b { b'1' } else { b'0' }));
    fs::write(path, buf).map_err(|e| io_err(path, e))
}

/// Read an ASCII bit file back. Any byte other than '0' or '1' is malformed
/// and reported with its position.
pub fn read_ascii(path: &Path) -> Result<BitSequence, BitstreamError> {
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    let mut seq = BitSequence::with_capacity(bytes.len());
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'0' => seq.push(false),
            b'1' => seq.push(true),
            other => {
                return Err(BitstreamError::Malformed {
                    path: path.display().to_string(),
                    position: i as u64,
                    byte: other,
                })
            }
        }
    }
    Ok(seq)
}

/// Write one sequence as little-endian 32-bit words. The bit count must be a
/// multiple of 32.
pub fn write_binary(path: &Path, seq: &BitSequence) -> Result<(), BitstreamError> {
    if !seq.len().is_multiple_of(32) {
        return Err(BitstreamError::RaggedWords {
            path: path.display().to_string(),
            bits: seq.len(),
        });
    }
    let mut file = fs::File::create(path).map_err(|e| io_err(path, e))?;
    let mut buf = Vec::with_capacity(seq.len() / 8);
    for word in seq.words(32) {
        buf.extend_from_slice(&word.to_le_bytes());
    }
    file.write_all(&buf).map_err(|e| io_err(path, e))
}

/// Read a little-endian word file back into a bit sequence. A file length
/// that is not a multiple of 4 bytes is malformed at the first ragged byte.
pub fn read_binary(path: &Path) -> Result<BitSequence, BitstreamError> {
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    if bytes.len() % 4 != 0 {
        let position = (bytes.len() / 4 * 4) as u64;
        return Err(BitstreamError::Malformed {
            path: path.display().to_string(),
            position,
            byte: bytes[position as usize],
        });
    }
    let mut seq = BitSequence::with_capacity(bytes.len() * 8);
    for chunk in bytes.chunks_exact(4) {
        let word = u32::from_le_bytes(chunk.try_into().unwrap());
        for j in (0..32).rev() {
            seq.push(word >> j & 1 == 1);
        }
    }
    Ok(seq)
}

/// One ASCII file per sequence, named `seq_000.txt`, `seq_001.txt`, ...
/// Returns the paths written.
pub fn write_corpus_ascii(dir: &Path, corpus: &BitCorpus) -> Result<Vec<PathBuf>, BitstreamError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mut paths = Vec::with_capacity(corpus.num_sequences());
    for (i, seq) in corpus.sequences.iter().enumerate() {
        let path = dir.join(format!("seq_{i:03}.txt"));
        write_ascii(&path, seq)?;
        paths.push(path);
    }
    Ok(paths)
}

/// One binary word file per sequence, named `seq_000.bin`, ...
pub fn write_corpus_binary(dir: &Path, corpus: &BitCorpus) -> Result<Vec<PathBuf>, BitstreamError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mut paths = Vec::with_capacity(corpus.num_sequences());
    for (i, seq) in corpus.sequences.iter().enumerate() {
        let path = dir.join(format!("seq_{i:03}.bin"));
        write_binary(&path, seq)?;
        paths.push(path);
    }
    Ok(paths)
}

/// File format selector for [`read_corpus`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    Ascii,
    Binary,
}

/// Read previously exported sequence files back into a corpus. `packing` is
/// recorded as metadata on the result.
pub fn read_corpus(
    paths: &[PathBuf],
    format: CorpusFormat,
    packing: PackingSpec,
) -> Result<BitCorpus, BitstreamError> {
    let sequences = paths
        .iter()
        .map(|p| match format {
            CorpusFormat::Ascii => read_ascii(p),
            CorpusFormat::Binary => read_binary(p),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BitCorpus { sequences, packing })
}
