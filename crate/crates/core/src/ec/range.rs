//! Byte-oriented range coder.
//!
//! Classic 32-bit low/range arithmetic with lazy carry propagation
//! (cache byte plus a pending-0xFF count). The interval leftover from
//! the 15-bit probability scaling is folded into the top symbol of
//! each table. Streams are defined by this implementation alone and
//! are identical across platforms.

use super::{CdfTable, EcError, PROB_BITS};

const RENORM_LIMIT: u32 = 1 << 24;

#[derive(Debug, Clone)]
pub struct RangeEncoder {
    low: u64,
    range: u32,
    cache: u8,
    pending: u64,
    /// First shift-out produces the conventional leading byte; the
    /// decoder discards it.
    primed: bool,
    out: Vec<u8>,
}

impl Default for RangeEncoder {
    fn default() -> Self {
        Self::new()
    }
}

impl RangeEncoder {
    pub fn new() -> RangeEncoder {
        RangeEncoder {
            low: 0,
            range: u32::MAX,
            cache: 0,
            pending: 0,
            primed: false,
            out: Vec::new(),
        }
    }

    /// Encodes `symbol` and adapts the table toward it.
    pub fn encode_symbol(&mut self, cdf: &mut CdfTable, symbol: usize) -> Result<(), EcError> {
        cdf.check_symbol(symbol)?;
        self.encode_frozen(cdf, symbol)?;
        cdf.update(symbol);
        Ok(())
    }

    /// Encodes `symbol` without touching the table.
    pub fn encode_frozen(&mut self, cdf: &CdfTable, symbol: usize) -> Result<(), EcError> {
        cdf.check_symbol(symbol)?;
        let (lo, hi) = cdf.bounds(symbol);
        let unit = self.range >> PROB_BITS;
        self.low += (unit as u64) * (lo as u64);
        self.range = if symbol == cdf.alphabet_size() - 1 {
            self.range - unit * lo
        } else {
            unit * (hi - lo)
        };
        while self.range < RENORM_LIMIT {
            self.shift_low();
            self.range <<= 8;
        }
        Ok(())
    }

    fn shift_low(&mut self) {
        // Emit once the byte can no longer be bumped by a future carry,
        // or once the carry has already landed.
        let settled = (self.low as u32) < 0xFF00_0000;
        if settled || self.low > u32::MAX as u64 {
            let carry = (self.low >> 32) as u8;
            if self.primed {
                self.out.push(self.cache.wrapping_add(carry));
            } else {
                // Leading placeholder byte.
                self.out.push(carry);
                self.primed = true;
            }
            while self.pending > 0 {
                self.out.push(0xFFu8.wrapping_add(carry));
                self.pending -= 1;
            }
            self.cache = (self.low >> 24) as u8;
        } else {
            self.pending += 1;
        }
        self.low = (self.low << 8) & u32::MAX as u64;
    }

    /// Flushes the remaining state and returns the coded bytes.
    pub fn finish(mut self) -> Vec<u8> {
        for _ in 0..5 {
            self.shift_low();
        }
        self.out
    }

    /// Bytes emitted so far (grows lazily; exact only after `finish`).
    pub fn bytes_written(&self) -> usize {
        self.out.len()
    }
}

#[derive(Debug, Clone)]
pub struct RangeDecoder<'a> {
    code: u32,
    range: u32,
    input: &'a [u8],
    pos: usize,
}

impl<'a> RangeDecoder<'a> {
    pub fn new(input: &'a [u8]) -> Result<RangeDecoder<'a>, EcError> {
        let mut dec = RangeDecoder {
            code: 0,
            range: u32::MAX,
            input,
            pos: 0,
        };
        // Skip the placeholder byte, then fill the 32-bit window.
        dec.next_byte()?;
        for _ in 0..4 {
            let b = dec.next_byte()?;
            dec.code = (dec.code << 8) | b as u32;
        }
        Ok(dec)
    }

    fn next_byte(&mut self) -> Result<u8, EcError> {
        match self.input.get(self.pos) {
            Some(&b) => {
                self.pos += 1;
                Ok(b)
            }
            None => Err(EcError::TruncatedStream),
        }
    }

    /// Decodes one symbol and adapts the table, mirroring
    /// [`RangeEncoder::encode_symbol`].
    pub fn decode_symbol(&mut self, cdf: &mut CdfTable) -> Result<usize, EcError> {
        let symbol = self.decode_frozen(cdf)?;
        cdf.update(symbol);
        Ok(symbol)
    }

    /// Decodes one symbol without touching the table.
    pub fn decode_frozen(&mut self, cdf: &CdfTable) -> Result<usize, EcError> {
        let unit = self.range >> PROB_BITS;
        let value = (self.code / unit).min((1 << PROB_BITS) - 1);
        let mut symbol = 0;
        while cdf.bounds(symbol).1 <= value {
            symbol += 1;
        }
        let (lo, hi) = cdf.bounds(symbol);
        self.code -= unit * lo;
        self.range = if symbol == cdf.alphabet_size() - 1 {
            self.range - unit * lo
        } else {
            unit * (hi - lo)
        };
        while self.range < RENORM_LIMIT {
            let b = self.next_byte()?;
            self.code = (self.code << 8) | b as u32;
            self.range <<= 8;
        }
        Ok(symbol)
    }
}
