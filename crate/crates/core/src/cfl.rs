//! The chroma-from-luma predictor: integer subsample-sum, Q3 zero-mean
//! AC extraction, DC prediction, and prediction synthesis.
//!
//! The luma pipeline folds the subsampling box-filter division into the
//! 1/8th fixed-point scaling. Summing the coincident luma samples and
//! shifting by `3 - log2(s_x * s_y)` yields the Q3 value exactly, so
//! the only integer division left is the block-average subtraction.

use std::fmt;

use crate::frame::{BitDepth, ChromaFormat, Plane};

/// Chroma block sizes the predictor operates on.
pub const BLOCK_SIZES: [usize; 4] = [4, 8, 16, 32];

#[inline]
pub fn valid_block_dim(n: usize) -> bool {
    n.is_power_of_two() && (4..=32).contains(&n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CflError {
    /// Chroma index outside the addressed block or plane.
    OutOfBounds { u: usize, v: usize },
    /// Block dimension not a power of two in 4..=32.
    InvalidBlockSize { m: usize, n: usize },
    /// Scaling parameter outside the signalable grid.
    AlphaOutOfRange(i32),
    /// Analysis requested over an empty frame set.
    EmptyCorpus,
}

impl fmt::Display for CflError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CflError::OutOfBounds { u, v } => write!(f, "chroma index ({u}, {v}) out of bounds"),
            CflError::InvalidBlockSize { m, n } => write!(f, "invalid block size {m}x{n}"),
            CflError::AlphaOutOfRange(a) => write!(f, "alpha_q3 {a} outside [-16, 16]"),
            CflError::EmptyCorpus => write!(f, "empty corpus"),
        }
    }
}

impl std::error::Error for CflError {}

/// Zero-mean subsampled luma in 1/8-pixel signed fixed point.
///
/// Every value fits a signed 16-bit integer for any 12-bit input, and
/// the values sum to at most `width * height / 2` in magnitude (exactly
/// zero when the average divides evenly).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q3AcBlock {
    width: usize,
    height: usize,
    values: Vec<i16>,
}

impl Q3AcBlock {
    pub fn from_values(width: usize, height: usize, values: Vec<i16>) -> Result<Q3AcBlock, CflError> {
        if !valid_block_dim(width) || !valid_block_dim(height) {
            return Err(CflError::InvalidBlockSize { m: width, n: height });
        }
        assert_eq!(values.len(), width * height);
        Ok(Q3AcBlock { width, height, values })
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn values(&self) -> &[i16] {
        &self.values
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> i16 {
        self.values[v * self.width + u]
    }
}

/// Which neighbors fed a DC prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeighborAvailability {
    Both,
    Above,
    Left,
    None,
}

/// Pixel-domain DC prediction for a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DcPrediction {
    pub value: u16,
    pub neighbors: NeighborAvailability,
}

/// Sums the `s_x * s_y` reconstructed luma samples coincident with
/// chroma position `(u, v)`. Samples outside the plane are supplied by
/// edge replication. The chroma index itself must lie on the plane's
/// chroma grid.
pub fn subsample_sum(
    recon_luma: &Plane,
    fmt: ChromaFormat,
    u: usize,
    v: usize,
) -> Result<u32, CflError> {
    let (cw, ch) = fmt.chroma_dims(recon_luma.width(), recon_luma.height());
    if u >= cw || v >= ch {
        return Err(CflError::OutOfBounds { u, v });
    }
    Ok(subsample_sum_unchecked(recon_luma, fmt, u, v))
}

#[inline]
fn subsample_sum_unchecked(recon_luma: &Plane, fmt: ChromaFormat, u: usize, v: usize) -> u32 {
    let sx = fmt.step_x();
    let sy = fmt.step_y();
    let mut sum = 0u32;
    for dy in 0..sy {
        for dx in 0..sx {
            sum += recon_luma.get_clamped(u * sx + dx, v * sy + dy) as u32;
        }
    }
    sum
}

/// Extracts the Q3 "AC" contribution of the reconstructed luma block
/// whose chroma-grid origin is `(cx0, cy0)` and size is `m x n` chroma
/// pixels.
///
/// Per position: `q = subsample_sum << (3 - log2(s_x*s_y))`, then the
/// rounded Q3 average of the block is subtracted. The shift realizes
/// the 8/(s_x*s_y) scaling without any per-pixel division, so the only
/// rounding in the pipeline is the single average division.
pub fn luma_to_q3_ac(
    recon_luma: &Plane,
    fmt: ChromaFormat,
    cx0: usize,
    cy0: usize,
    m: usize,
    n: usize,
) -> Result<Q3AcBlock, CflError> {
    if !valid_block_dim(m) || !valid_block_dim(n) {
        return Err(CflError::InvalidBlockSize { m, n });
    }
    let shift = 3 - fmt.log2_coincident();
    let count = (m * n) as u32;
    let mut q = Vec::with_capacity(m * n);
    let mut total = 0u32;
    for v in 0..n {
        for u in 0..m {
            let s = subsample_sum_unchecked(recon_luma, fmt, cx0 + u, cy0 + v) << shift;
            total += s;
            q.push(s as i32);
        }
    }
    // Round-to-nearest average; the sole division of the pipeline.
    let avg = ((total + count / 2) / count) as i32;
    let values = q.into_iter().map(|s| (s - avg) as i16).collect();
    Ok(Q3AcBlock {
        width: m,
        height: n,
        values,
    })
}

/// DC prediction from the above row and/or left column of neighboring
/// reconstructed samples, rounded to nearest. With no neighbors the
/// bit-depth midpoint is used.
pub fn dc_predict(above: Option<&[u16]>, left: Option<&[u16]>, depth: BitDepth) -> DcPrediction {
    let mean = |sum: u64, len: u64| ((sum + len / 2) / len) as u16;
    match (above, left) {
        (Some(a), Some(l)) => {
            let sum: u64 = a.iter().chain(l.iter()).map(|&s| s as u64).sum();
            DcPrediction {
                value: mean(sum, (a.len() + l.len()) as u64),
                neighbors: NeighborAvailability::Both,
            }
        }
        (Some(a), None) => DcPrediction {
            value: mean(a.iter().map(|&s| s as u64).sum(), a.len() as u64),
            neighbors: NeighborAvailability::Above,
        },
        (None, Some(l)) => DcPrediction {
            value: mean(l.iter().map(|&s| s as u64).sum(), l.len() as u64),
            neighbors: NeighborAvailability::Left,
        },
        (None, None) => DcPrediction {
            value: depth.midpoint(),
            neighbors: NeighborAvailability::None,
        },
    }
}

/// Scales one Q3 AC value by a Q3 alpha and rounds the Q6 product back
/// to pixel domain, half away from zero.
#[inline]
pub fn scale_q3_value(alpha_q3: i32, ac: i16) -> i32 {
    let prod = alpha_q3 * ac as i32;
    if prod >= 0 {
        (prod + 32) >> 6
    } else {
        -((-prod + 32) >> 6)
    }
}

/// Builds the chroma prediction `clamp(dc + alpha * ac)` for the whole
/// block. `alpha_q3` is the signed scaling parameter in 1/8th units.
pub fn cfl_predict(
    ac: &Q3AcBlock,
    alpha_q3: i32,
    dc: DcPrediction,
    depth: BitDepth,
) -> Result<Vec<u16>, CflError> {
    if !(-16..=16).contains(&alpha_q3) {
        return Err(CflError::AlphaOutOfRange(alpha_q3));
    }
    let max = depth.max_value() as i32;
    let dc = dc.value as i32;
    Ok(ac
        .values
        .iter()
        .map(|&v| (dc + scale_q3_value(alpha_q3, v)).clamp(0, max) as u16)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn plane_from(w: usize, h: usize, vals: &[u16]) -> Plane {
        Plane::from_samples(w, h, vals.to_vec())
    }

    #[test]
    fn subsample_sums_by_format() {
        let p420 = plane_from(2, 2, &[10, 12, 14, 16]);
        assert_eq!(subsample_sum(&p420, ChromaFormat::Cf420, 0, 0).unwrap(), 52);

        let p444 = plane_from(1, 1, &[99]);
        assert_eq!(subsample_sum(&p444, ChromaFormat::Cf444, 0, 0).unwrap(), 99);

        let p422 = plane_from(2, 1, &[10, 12]);
        assert_eq!(subsample_sum(&p422, ChromaFormat::Cf422, 0, 0).unwrap(), 22);
    }

    #[test]
    fn subsample_sum_out_of_bounds() {
        let p = plane_from(2, 2, &[1, 2, 3, 4]);
        assert!(matches!(
            subsample_sum(&p, ChromaFormat::Cf420, 1, 0),
            Err(CflError::OutOfBounds { .. })
        ));
    }

    #[test]
    fn constant_luma_has_zero_ac() {
        for fmt in [
            ChromaFormat::Cf420,
            ChromaFormat::Cf422,
            ChromaFormat::Cf440,
            ChromaFormat::Cf444,
        ] {
            let p = Plane::filled(4 * fmt.step_x(), 4 * fmt.step_y(), 100);
            let ac = luma_to_q3_ac(&p, fmt, 0, 0, 4, 4).unwrap();
            assert!(ac.values().iter().all(|&v| v == 0), "{fmt:?}");
        }
    }

    // Exact rational evaluation of the two-step formulation: per-pixel
    // box filter average scaled to Q3, minus the Q3 block mean, with the
    // final value produced by the same integer steps the pipeline pins
    // (shift-exact scaling, one round-to-nearest division).
    fn q3_ac_oracle(sums: &[u32], m: usize, n: usize, coincident: u32) -> Vec<i32> {
        let eight = BigRational::from_integer(BigInt::from(8));
        let cnt = BigRational::from_integer(BigInt::from(coincident));
        let q: Vec<BigRational> = sums
            .iter()
            .map(|&s| eight.clone() * BigRational::from_integer(BigInt::from(s)) / cnt.clone())
            .collect();
        // Q3 scaling by 8/coincident is exact (shift), so q is integral.
        let total: BigRational = q.iter().cloned().sum();
        let mn = BigInt::from((m * n) as u32);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let avg = (total / BigRational::from_integer(mn) + half).floor();
        q.iter()
            .map(|v| {
                let d = v - &avg;
                assert!(d.is_integer());
                d.to_integer().try_into().unwrap()
            })
            .collect()
    }

    #[test]
    fn q3_ac_matches_rational_oracle_on_spec_case() {
        // 2x2 chroma block, 4:2:0. One position sums to 412, others to 100 each.
        // (Block dims below predictor minimum, so drive the oracle and the
        // arithmetic core directly at 4x4 with the same structure.)
        let mut luma = Plane::filled(8, 8, 100);
        // Make the (0,0) quad sum 412: 103 each.
        for y in 0..2 {
            for x in 0..2 {
                luma.set(x, y, 103);
            }
        }
        let ac = luma_to_q3_ac(&luma, ChromaFormat::Cf420, 0, 0, 4, 4).unwrap();
        let sums: Vec<u32> = (0..16)
            .map(|i| subsample_sum(&luma, ChromaFormat::Cf420, i % 4, i / 4).unwrap())
            .collect();
        let expect = q3_ac_oracle(&sums, 4, 4, 4);
        for (got, want) in ac.values().iter().zip(expect.iter()) {
            assert_eq!(*got as i32, *want);
        }
    }

    #[test]
    fn q3_ac_spec_numbers() {
        // The documented 2x2 example: sums {412, 400, 400, 400} =>
        // q {824, 800, 800, 800}, avg 806, AC {18, -6, -6, -6}.
        // Reproduced via the oracle since 2x2 is below the block minimum.
        let expect = q3_ac_oracle(&[412, 400, 400, 400], 2, 2, 4);
        assert_eq!(expect, vec![18, -6, -6, -6]);
    }

    #[test]
    fn q3_ac_12bit_max_fits_i16() {
        let p = Plane::filled(32, 32, 4095);
        let ac = luma_to_q3_ac(&p, ChromaFormat::Cf444, 0, 0, 32, 32).unwrap();
        // q = 4095 << 3 = 32760 everywhere: representable, and AC is zero.
        assert!(ac.values().iter().all(|&v| v == 0));
        assert!(4095u32 << 3 <= i16::MAX as u32);
    }

    #[test]
    fn q3_ac_rejects_bad_sizes() {
        let p = Plane::filled(8, 8, 1);
        assert!(matches!(
            luma_to_q3_ac(&p, ChromaFormat::Cf444, 0, 0, 6, 4),
            Err(CflError::InvalidBlockSize { .. })
        ));
        assert!(matches!(
            luma_to_q3_ac(&p, ChromaFormat::Cf444, 0, 0, 4, 64),
            Err(CflError::InvalidBlockSize { .. })
        ));
    }

    #[test]
    fn dc_predict_cases() {
        let above = [10u16, 10];
        let left = [20u16, 20];
        assert_eq!(
            dc_predict(Some(&above), Some(&left), BitDepth::Eight).value,
            15
        );
        assert_eq!(dc_predict(None, None, BitDepth::Eight).value, 128);
        assert_eq!(dc_predict(Some(&[7]), None, BitDepth::Eight).value, 7);
        assert_eq!(dc_predict(None, Some(&[3, 4]), BitDepth::Eight).value, 4);
    }

    #[test]
    fn cfl_predict_spec_cases() {
        let ac = Q3AcBlock::from_values(4, 4, {
            let mut v = vec![0i16; 16];
            v[0] = 16;
            v
        })
        .unwrap();
        let dc = DcPrediction {
            value: 100,
            neighbors: NeighborAvailability::Both,
        };
        let zero = cfl_predict(&ac, 0, dc, BitDepth::Eight).unwrap();
        assert!(zero.iter().all(|&p| p == 100));
        let pos = cfl_predict(&ac, 8, dc, BitDepth::Eight).unwrap();
        assert_eq!(pos[0], 102);
        let neg = cfl_predict(&ac, -8, dc, BitDepth::Eight).unwrap();
        assert_eq!(neg[0], 98);
    }

    #[test]
    fn cfl_predict_rejects_out_of_range_alpha() {
        let ac = Q3AcBlock::from_values(4, 4, vec![0; 16]).unwrap();
        let dc = DcPrediction {
            value: 0,
            neighbors: NeighborAvailability::None,
        };
        assert!(matches!(
            cfl_predict(&ac, 17, dc, BitDepth::Eight),
            Err(CflError::AlphaOutOfRange(17))
        ));
    }

    #[test]
    fn scale_rounds_half_away_from_zero() {
        // 1 * 32 = 32 Q6 = 0.5 px -> 1; mirrored for the negative side.
        assert_eq!(scale_q3_value(1, 32), 1);
        assert_eq!(scale_q3_value(-1, 32), -1);
        assert_eq!(scale_q3_value(1, 31), 0);
        assert_eq!(scale_q3_value(-1, 31), 0);
    }
}
