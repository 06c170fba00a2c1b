//! The elementary chaotic-iteration step.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CiError {
    #[error("cell index {index} out of range for an {n}-cell state")]
    CellOutOfRange { index: u32, n: u32 },
    #[error("functional power must be at least 1")]
    ZeroPower,
}

/// An N-cell Boolean state vector, cell `i` stored as bit `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BooleanState {
    bits: u64,
    n: u32,
}

impl BooleanState {
    /// All-zero state of `n` cells (`1 <= n <= 64`).
    pub fn zero(n: u32) -> Self {
        assert!((1..=64).contains(&n));
        BooleanState { bits: 0, n }
    }

    /// State from the low `n` bits of a word.
    pub fn from_word(bits: u64, n: u32) -> Self {
        assert!((1..=64).contains(&n));
        BooleanState { bits: bits & Self::mask(n), n }
    }

    pub fn word(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cell(&self, i: u32) -> bool {
        debug_assert!(i < self.n);
        self.bits >> i & 1 == 1
    }

    fn mask(n: u32) -> u64 {
        if n >= 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }
}

/// One chaotic iteration: every cell keeps its value except cell `s`, which
/// becomes component `s` of `f` applied to the whole previous state.
///
/// `f` receives and returns states encoded as words (cell `i` = bit `i`);
/// only bit `s` of its result is consulted.
pub fn chaotic_iterate<F>(f: F, x: &BooleanState, s: u32) -> Result<BooleanState, CiError>
where
    F: Fn(u64) -> u64,
{
    if s >= x.n {
        return Err(CiError::CellOutOfRange { index: s, n: x.n });
    }
    let fx = f(x.bits) & BooleanState::mask(x.n);
    let bit = 1u64 << s;
    Ok(BooleanState {
        bits: (x.bits & !bit) | (fx & bit),
        n: x.n,
    })
}

/// The vectorial Boolean negation, the iteration function of all shipped
/// CIPRNGs.
pub fn vectorial_negation(x: u64) -> u64 {
    !x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation_flips_only_selected_cell() {
        let x = BooleanState::from_word(0b0000, 4);
        let y = chaotic_iterate(vectorial_negation, &x, 2).unwrap();
        assert_eq!(y.word(), 0b0100);
    }

    #[test]
    fn identity_function_changes_nothing() {
        for word in 0..16u64 {
            let x = BooleanState::from_word(word, 4);
            for s in 0..4 {
                assert_eq!(chaotic_iterate(|v| v, &x, s).unwrap(), x);
            }
        }
    }

    #[test]
    fn negation_twice_at_same_cell_is_involution() {
        for word in 0..16u64 {
            let x = BooleanState::from_word(word, 4);
            for s in 0..4 {
                let once = chaotic_iterate(vectorial_negation, &x, s).unwrap();
                let twice = chaotic_iterate(vectorial_negation, &once, s).unwrap();
                assert_eq!(twice, x);
            }
        }
    }

    #[test]
    fn out_of_range_cell_rejected() {
        let x = BooleanState::zero(4);
        assert_eq!(
            chaotic_iterate(vectorial_negation, &x, 4),
            Err(CiError::CellOutOfRange { index: 4, n: 4 })
        );
    }

    #[test]
    fn single_cell_locality_exhaustive_n4() {
        // For every function of a small pool, state, and cell, the result
        // differs from the input in at most the selected position.
        let fns: Vec<fn(u64) -> u64> = vec![
            vectorial_negation,
            |v| v,
            |v| v.rotate_left(1),
            |v| v ^ 0b1010,
            |_| 0b1111,
        ];
        for f in fns {
            for word in 0..16u64 {
                let x = BooleanState::from_word(word, 4);
                for s in 0..4 {
                    let y = chaotic_iterate(f, &x, s).unwrap();
                    let delta = x.word() ^ y.word();
                    assert!(delta == 0 || delta == 1 << s);
                }
            }
        }
    }
}
