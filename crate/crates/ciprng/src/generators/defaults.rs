//! Default parameter sets for each family.
//!
//! Every choice here is a published, well-studied parameterization so runs
//! are comparable across implementations; all of them can be overridden in
//! the JSON config.

use super::GeneratorSpec;

pub const M31: u64 = (1 << 31) - 1;

/// MINSTD: a = 16807, c = 0, m = 2^31 - 1. Outputs are 31-bit, which is
/// exactly the defect the zero-extended packing preserves.
pub fn minstd() -> GeneratorSpec {
    GeneratorSpec::Lcg { a: 16807, c: 0, m: M31 }
}

/// Order-5 MRG mod 2^31 - 1 with (a1, a5) = (107374182, 104480), from the
/// L'Ecuyer-Blouin-Couture search tables.
pub fn mrg5() -> GeneratorSpec {
    GeneratorSpec::Mrg {
        a: vec![107374182, 0, 0, 0, 104480],
        m: M31,
    }
}

/// Add-with-carry with the classical Marsaglia lags (r, s) = (24, 10),
/// base 2^32.
pub fn awc() -> GeneratorSpec {
    GeneratorSpec::Awc { m: 1 << 32, r: 24, s: 10 }
}

/// Subtract-with-borrow, same lags and base as [`awc`].
pub fn swb() -> GeneratorSpec {
    GeneratorSpec::Swb { m: 1 << 32, r: 24, s: 10 }
}

/// Shift-with-carry over 32-bit words, order 2, shift-style coefficients
/// a = (2^13, 2^17) so the xor-of-products recurrence reduces to shifted
/// copies plus carry feedback.
pub fn swc() -> GeneratorSpec {
    GeneratorSpec::Swc { w: 32, a: vec![1 << 13, 1 << 17] }
}

/// R250: the classic GFSR with (r, k) = (250, 103) over 32-bit words.
pub fn gfsr() -> GeneratorSpec {
    GeneratorSpec::Gfsr { r: 250, k: 103, w: 32 }
}

/// Nonlinear inversive generator mod 2^31 - 1 with a1 = a2 = 1.
pub fn inv() -> GeneratorSpec {
    GeneratorSpec::Inv { a1: 1, a2: 1, m: M31 }
}

/// Two xored LCGs: the first two components of L'Ecuyer's CLCG4.
pub fn lcg2() -> GeneratorSpec {
    GeneratorSpec::Combined(vec![
        GeneratorSpec::Lcg { a: 45991, c: 0, m: 2147483647 },
        GeneratorSpec::Lcg { a: 207707, c: 0, m: 2147483543 },
    ])
}

/// Three xored LCGs: the first three components of L'Ecuyer's CLCG4.
pub fn lcg3() -> GeneratorSpec {
    GeneratorSpec::Combined(vec![
        GeneratorSpec::Lcg { a: 45991, c: 0, m: 2147483647 },
        GeneratorSpec::Lcg { a: 207707, c: 0, m: 2147483543 },
        GeneratorSpec::Lcg { a: 138556, c: 0, m: 2147483423 },
    ])
}

/// Two xored order-3 MRGs: the MRG31k3p components (moduli 2^31 - 1 and
/// 2^31 - 21069, power-of-two multipliers). Both stay below 2^31, so the
/// combination keeps the 31-bit output range.
pub fn mrg2() -> GeneratorSpec {
    GeneratorSpec::Combined(vec![
        GeneratorSpec::Mrg {
            a: vec![0, 1 << 22, (1 << 7) + 1],
            m: M31,
        },
        GeneratorSpec::Mrg {
            a: vec![1 << 15, 0, (1 << 15) + 1],
            m: 2147462579,
        },
    ])
}

/// One default instance of every family, for range/determinism sweeps.
pub fn all_families() -> Vec<GeneratorSpec> {
    vec![
        minstd(),
        mrg5(),
        awc(),
        swb(),
        swc(),
        gfsr(),
        inv(),
        lcg2(),
        lcg3(),
        mrg2(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_defaults_validate() {
        for spec in all_families() {
            spec.validate().unwrap();
        }
    }

    #[test]
    fn linear_families_are_31_bit() {
        assert_eq!(minstd().output_width(), 31);
        assert_eq!(mrg5().output_width(), 31);
        assert_eq!(lcg2().output_width(), 31);
        assert_eq!(lcg3().output_width(), 31);
        assert_eq!(mrg2().output_width(), 31);
        assert_eq!(inv().output_width(), 31);
        assert_eq!(gfsr().output_width(), 32);
        assert_eq!(awc().output_width(), 32);
        assert_eq!(swb().output_width(), 32);
        assert_eq!(swc().output_width(), 32);
    }
}
