//! Fractional-bit rate estimation from CDF tables.
//!
//! Costs are reported in 1/512-bit fixed point. The logarithm is
//! computed with an integer shift-and-square routine, so estimates are
//! identical on every platform.

use super::{CdfTable, EcError, PROB_BITS};

/// One bit in the fixed-point cost unit (Q9).
pub const BIT_FRAC_ONE: u32 = 512;

const FRAC_BITS: u32 = 9;

/// `floor(log2(x) * 512)` for `x >= 1`, by shift-and-square on a Q24
/// mantissa (wide enough that truncation never costs a whole step).
pub fn log2_q9(x: u32) -> u32 {
    debug_assert!(x >= 1);
    let int_part = 31 - x.leading_zeros();
    // Normalize to [1, 2) in Q24.
    let mut m = ((x as u64) << (32 - int_part)) >> 8;
    let mut frac = 0u32;
    for _ in 0..FRAC_BITS {
        m = (m * m) >> 24;
        frac <<= 1;
        if m >= 2 << 24 {
            frac |= 1;
            m >>= 1;
        }
    }
    (int_part << FRAC_BITS) | frac
}

/// Cost of coding `symbol` under the current table, `-log2(p)` in
/// 1/512-bit units. Monotone decreasing in the symbol's probability.
pub fn estimate_rate_bits(cdf: &CdfTable, symbol: usize) -> Result<u32, EcError> {
    cdf.check_symbol(symbol)?;
    let freq = cdf.freq(symbol);
    Ok(PROB_BITS * BIT_FRAC_ONE - log2_q9(freq))
}
