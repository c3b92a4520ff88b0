//! Signaling of the CfL scaling parameters: one 8-ary joint-sign
//! symbol for the (Cb, Cr) sign pair, then a 16-ary magnitude symbol
//! per non-zero plane. The magnitude tables are conditioned on the
//! plane's sign (two contexts per plane).

use super::{estimate_rate_bits, CdfTable, EcError, RangeDecoder, RangeEncoder};

/// Sign of one plane's scaling parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaSign {
    Zero,
    Neg,
    Pos,
}

impl AlphaSign {
    #[inline]
    fn index(self) -> usize {
        match self {
            AlphaSign::Zero => 0,
            AlphaSign::Neg => 1,
            AlphaSign::Pos => 2,
        }
    }

    fn from_index(i: usize) -> AlphaSign {
        match i {
            0 => AlphaSign::Zero,
            1 => AlphaSign::Neg,
            _ => AlphaSign::Pos,
        }
    }

    pub fn of_alpha_q3(alpha_q3: i32) -> AlphaSign {
        match alpha_q3 {
            0 => AlphaSign::Zero,
            a if a < 0 => AlphaSign::Neg,
            _ => AlphaSign::Pos,
        }
    }
}

/// Coded CfL parameters for one prediction unit.
///
/// Magnitude indices map to `alpha = (index + 1) / 8`; the (zero, zero)
/// sign pair is excluded because that case is coded as plain DC mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CflParams {
    sign_cb: AlphaSign,
    sign_cr: AlphaSign,
    mag_cb: u8,
    mag_cr: u8,
}

impl CflParams {
    pub fn new(
        sign_cb: AlphaSign,
        mag_cb: u8,
        sign_cr: AlphaSign,
        mag_cr: u8,
    ) -> Result<CflParams, EcError> {
        if sign_cb == AlphaSign::Zero && sign_cr == AlphaSign::Zero {
            return Err(EcError::InvalidParams("joint sign (zero, zero)"));
        }
        if (sign_cb != AlphaSign::Zero && mag_cb > 15) || (sign_cr != AlphaSign::Zero && mag_cr > 15)
        {
            return Err(EcError::InvalidParams("magnitude index above 15"));
        }
        Ok(CflParams {
            sign_cb,
            sign_cr,
            mag_cb: if sign_cb == AlphaSign::Zero { 0 } else { mag_cb },
            mag_cr: if sign_cr == AlphaSign::Zero { 0 } else { mag_cr },
        })
    }

    /// Builds params from per-plane Q3 alphas; `(0, 0)` is rejected.
    pub fn from_alpha_q3(cb: i32, cr: i32) -> Result<CflParams, EcError> {
        if !(-16..=16).contains(&cb) || !(-16..=16).contains(&cr) {
            return Err(EcError::InvalidParams("alpha_q3 outside [-16, 16]"));
        }
        CflParams::new(
            AlphaSign::of_alpha_q3(cb),
            (cb.unsigned_abs().max(1) - 1) as u8,
            AlphaSign::of_alpha_q3(cr),
            (cr.unsigned_abs().max(1) - 1) as u8,
        )
    }

    /// Joint sign symbol in 0..8: `3 * sign_cb + sign_cr - 1`.
    #[inline]
    pub fn joint_sign(self) -> usize {
        3 * self.sign_cb.index() + self.sign_cr.index() - 1
    }

    pub fn from_joint_sign(joint: usize, mag_cb: u8, mag_cr: u8) -> Result<CflParams, EcError> {
        if joint >= 8 {
            return Err(EcError::InvalidParams("joint sign above 7"));
        }
        let sign_cb = AlphaSign::from_index((joint + 1) / 3);
        let sign_cr = AlphaSign::from_index((joint + 1) % 3);
        CflParams::new(sign_cb, mag_cb, sign_cr, mag_cr)
    }

    #[inline]
    pub fn sign_cb(self) -> AlphaSign {
        self.sign_cb
    }

    #[inline]
    pub fn sign_cr(self) -> AlphaSign {
        self.sign_cr
    }

    /// Magnitude index of the Cb plane, when its sign is non-zero.
    #[inline]
    pub fn mag_cb(self) -> Option<u8> {
        (self.sign_cb != AlphaSign::Zero).then_some(self.mag_cb)
    }

    #[inline]
    pub fn mag_cr(self) -> Option<u8> {
        (self.sign_cr != AlphaSign::Zero).then_some(self.mag_cr)
    }

    #[inline]
    pub fn alpha_q3_cb(self) -> i32 {
        Self::alpha_q3(self.sign_cb, self.mag_cb)
    }

    #[inline]
    pub fn alpha_q3_cr(self) -> i32 {
        Self::alpha_q3(self.sign_cr, self.mag_cr)
    }

    fn alpha_q3(sign: AlphaSign, mag: u8) -> i32 {
        match sign {
            AlphaSign::Zero => 0,
            AlphaSign::Neg => -(mag as i32 + 1),
            AlphaSign::Pos => mag as i32 + 1,
        }
    }
}

/// Adaptive tables for CfL signaling: the joint sign and one magnitude
/// table per (plane, sign) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CflContexts {
    pub joint_sign: CdfTable,
    /// `[plane][sign]` with plane 0 = Cb, 1 = Cr; sign 0 = Neg, 1 = Pos.
    pub magnitude: [[CdfTable; 2]; 2],
}

impl Default for CflContexts {
    fn default() -> Self {
        Self::new()
    }
}

impl CflContexts {
    pub fn new() -> CflContexts {
        CflContexts {
            joint_sign: CdfTable::new_uniform(8),
            magnitude: [
                [CdfTable::new_uniform(16), CdfTable::new_uniform(16)],
                [CdfTable::new_uniform(16), CdfTable::new_uniform(16)],
            ],
        }
    }

    fn mag_table(&mut self, plane: usize, sign: AlphaSign) -> &mut CdfTable {
        let s = match sign {
            AlphaSign::Neg => 0,
            AlphaSign::Pos => 1,
            AlphaSign::Zero => unreachable!("zero sign codes no magnitude"),
        };
        &mut self.magnitude[plane][s]
    }

    fn mag_table_ref(&self, plane: usize, sign: AlphaSign) -> &CdfTable {
        let s = match sign {
            AlphaSign::Neg => 0,
            AlphaSign::Pos => 1,
            AlphaSign::Zero => unreachable!("zero sign codes no magnitude"),
        };
        &self.magnitude[plane][s]
    }
}

/// Codes the joint sign, then each non-zero plane's magnitude.
pub fn encode_cfl_params(
    enc: &mut RangeEncoder,
    ctx: &mut CflContexts,
    params: CflParams,
) -> Result<(), EcError> {
    enc.encode_symbol(&mut ctx.joint_sign, params.joint_sign())?;
    if params.sign_cb != AlphaSign::Zero {
        enc.encode_symbol(ctx.mag_table(0, params.sign_cb), params.mag_cb as usize)?;
    }
    if params.sign_cr != AlphaSign::Zero {
        enc.encode_symbol(ctx.mag_table(1, params.sign_cr), params.mag_cr as usize)?;
    }
    Ok(())
}

/// Exact inverse of [`encode_cfl_params`].
pub fn decode_cfl_params(
    dec: &mut RangeDecoder,
    ctx: &mut CflContexts,
) -> Result<CflParams, EcError> {
    let joint = dec.decode_symbol(&mut ctx.joint_sign)?;
    let sign_cb = AlphaSign::from_index((joint + 1) / 3);
    let sign_cr = AlphaSign::from_index((joint + 1) % 3);
    let mag_cb = if sign_cb != AlphaSign::Zero {
        dec.decode_symbol(ctx.mag_table(0, sign_cb))? as u8
    } else {
        0
    };
    let mag_cr = if sign_cr != AlphaSign::Zero {
        dec.decode_symbol(ctx.mag_table(1, sign_cr))? as u8
    } else {
        0
    };
    CflParams::new(sign_cb, mag_cb, sign_cr, mag_cr)
}

/// Signaling cost of `params` under a frozen context snapshot, in
/// 1/512-bit units.
pub fn estimate_cfl_params_bits(ctx: &CflContexts, params: CflParams) -> Result<u32, EcError> {
    let mut bits = estimate_rate_bits(&ctx.joint_sign, params.joint_sign())?;
    if params.sign_cb != AlphaSign::Zero {
        bits += estimate_rate_bits(ctx.mag_table_ref(0, params.sign_cb), params.mag_cb as usize)?;
    }
    if params.sign_cr != AlphaSign::Zero {
        bits += estimate_rate_bits(ctx.mag_table_ref(1, params.sign_cr), params.mag_cr as usize)?;
    }
    Ok(bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ec::BIT_FRAC_ONE;

    #[test]
    fn rejects_zero_zero() {
        assert!(matches!(
            CflParams::new(AlphaSign::Zero, 0, AlphaSign::Zero, 0),
            Err(EcError::InvalidParams(_))
        ));
        assert!(CflParams::from_alpha_q3(0, 0).is_err());
    }

    #[test]
    fn joint_sign_covers_all_eight() {
        let mut seen = [false; 8];
        for cb in [AlphaSign::Zero, AlphaSign::Neg, AlphaSign::Pos] {
            for cr in [AlphaSign::Zero, AlphaSign::Neg, AlphaSign::Pos] {
                if cb == AlphaSign::Zero && cr == AlphaSign::Zero {
                    continue;
                }
                let p = CflParams::new(cb, 3, cr, 5).unwrap();
                let j = p.joint_sign();
                assert!(!seen[j], "duplicate joint sign {j}");
                seen[j] = true;
                let q = CflParams::from_joint_sign(j, 3, 5).unwrap();
                assert_eq!(q.sign_cb(), cb);
                assert_eq!(q.sign_cr(), cr);
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn alpha_q3_mapping() {
        let p = CflParams::from_alpha_q3(8, -16).unwrap();
        assert_eq!(p.alpha_q3_cb(), 8);
        assert_eq!(p.alpha_q3_cr(), -16);
        assert_eq!(p.mag_cb(), Some(7));
        assert_eq!(p.mag_cr(), Some(15));

        let p = CflParams::from_alpha_q3(0, 1).unwrap();
        assert_eq!(p.alpha_q3_cb(), 0);
        assert_eq!(p.mag_cb(), None);
        assert_eq!(p.alpha_q3_cr(), 1);
    }

    #[test]
    fn one_sided_params_emit_two_symbols() {
        // (+, 0) with mag 7: joint sign + one magnitude. Compare coded
        // length against coding the joint sign alone; the second stream
        // must not be shorter once the magnitude is added.
        let p = CflParams::new(AlphaSign::Pos, 7, AlphaSign::Zero, 0).unwrap();
        assert_eq!(p.mag_cr(), None);
        let bits = estimate_cfl_params_bits(&CflContexts::new(), p).unwrap();
        // Uniform tables: 3 bits joint sign + 4 bits magnitude.
        assert_eq!(bits, 7 * BIT_FRAC_ONE);
    }

    #[test]
    fn roundtrip_all_reachable_params() {
        let mut enc = RangeEncoder::new();
        let mut ctx = CflContexts::new();
        let mut sent = Vec::new();
        for joint in 0..8 {
            for mag_cb in 0..16 {
                for mag_cr in 0..16 {
                    let p = CflParams::from_joint_sign(joint, mag_cb, mag_cr).unwrap();
                    encode_cfl_params(&mut enc, &mut ctx, p).unwrap();
                    sent.push(p);
                }
            }
        }
        let bytes = enc.finish();
        let mut dec = RangeDecoder::new(&bytes).unwrap();
        let mut ctx = CflContexts::new();
        for want in sent {
            let got = decode_cfl_params(&mut dec, &mut ctx).unwrap();
            assert_eq!(got.joint_sign(), want.joint_sign());
            assert_eq!(got.alpha_q3_cb(), want.alpha_q3_cb());
            assert_eq!(got.alpha_q3_cr(), want.alpha_q3_cr());
        }
    }

    #[test]
    fn signaling_cost_bounded_under_uniform_tables() {
        let ctx = CflContexts::new();
        for joint in 0..8 {
            for mag_cb in 0..16 {
                for mag_cr in 0..16 {
                    let p = CflParams::from_joint_sign(joint, mag_cb, mag_cr).unwrap();
                    let bits = estimate_cfl_params_bits(&ctx, p).unwrap();
                    assert!(bits <= (3 + 4 + 4) * BIT_FRAC_ONE);
                }
            }
        }
    }
}
