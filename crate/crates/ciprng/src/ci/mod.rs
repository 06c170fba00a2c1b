//! Chaotic-iteration combinators.
//!
//! The discrete dynamical system iterated here lives on Boolean vectors: at
//! each step only the cell named by the strategy sequence is updated through
//! the iteration function (always the vectorial negation for the shipped
//! generators). Feeding the strategy from one classical PRNG and the
//! round/decimation control from another yields the Old, New, Xor, Mixed-Xor
//! and Multiple-Xor CIPRNG constructions.

mod chaotic;
mod decimation;
mod new_ci;
mod old;
mod period;
mod xor;

pub use chaotic::{chaotic_iterate, vectorial_negation, BooleanState, CiError};
pub use decimation::{g1, DecimationTable};
pub use new_ci::{new_ci_round, FlipFlags, NewCi};
pub use old::{old_ci_round, OldCi};
pub use period::{find_period, PeriodInfo, PeriodNotFound};
pub use xor::{mixed_xor_next, multiple_xor_next, xor_ci_next, MixedXorCi, MultipleXorCi, XorCi};

#[cfg(test)]
pub(crate) mod test_support {
    use crate::WordSource;

    /// Fixed output script for driving combinator rounds in tests.
    pub struct Scripted {
        script: Vec<u64>,
        i: usize,
        width: u32,
    }

    impl Scripted {
        pub fn new(script: Vec<u64>, width: u32) -> Self {
            Scripted { script, i: 0, width }
        }

        pub fn consumed(&self) -> usize {
            self.i
        }
    }

    impl WordSource for Scripted {
        fn next_word(&mut self) -> u64 {
            let v = self.script[self.i];
            self.i += 1;
            v
        }

        fn width(&self) -> u32 {
            self.width
        }
    }
}
