//! Rate-distortion optimal CfL parameter selection and the DC-vs-CfL
//! chroma mode decision.
//!
//! The candidate space (8 joint signs with conditional 16-level
//! magnitudes, plus DC) is small enough to search exhaustively, which
//! keeps the selection exactly equal to brute force over the grid.

use std::fmt;

use crate::cfl::{cfl_predict, scale_q3_value, DcPrediction, Q3AcBlock};
use crate::ec::{
    estimate_cfl_params_bits, estimate_rate_bits, AlphaSign, CdfTable, CflContexts, CflParams,
    BIT_FRAC_ONE,
};
use crate::frame::BitDepth;

#[derive(Debug, Clone, PartialEq)]
pub enum RdError {
    DimensionMismatch { left: usize, right: usize },
    InvalidLambda(f64),
}

impl fmt::Display for RdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RdError::DimensionMismatch { left, right } => {
                write!(f, "block lengths differ: {left} vs {right}")
            }
            RdError::InvalidLambda(l) => write!(f, "lambda must be nonnegative, got {l}"),
        }
    }
}

impl std::error::Error for RdError {}

/// Search configuration. `lambda` weighs fractional rate bits against
/// SSE distortion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RdConfig {
    pub lambda: f64,
}

impl RdConfig {
    pub fn new(lambda: f64) -> Result<RdConfig, RdError> {
        if !(lambda >= 0.0) {
            return Err(RdError::InvalidLambda(lambda));
        }
        Ok(RdConfig { lambda })
    }
}

/// Frozen snapshot of the entropy state used for rate estimation
/// during a search. Estimating never mutates tables.
#[derive(Debug, Clone)]
pub struct RateModel {
    /// 2-ary chroma mode flag: 0 = DC, 1 = CfL.
    pub mode: CdfTable,
    pub cfl: CflContexts,
}

impl Default for RateModel {
    fn default() -> Self {
        RateModel {
            mode: CdfTable::new_uniform(2),
            cfl: CflContexts::new(),
        }
    }
}

/// Chroma prediction mode for one unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChromaMode {
    Dc,
    Cfl(CflParams),
}

/// Outcome of a parameter search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RdDecision {
    pub mode: ChromaMode,
    /// Summed SSE of both chroma planes, in squared sample units.
    pub distortion: u64,
    /// Signaling rate in 1/512-bit units (mode flag plus parameters).
    pub rate_bits: u32,
    /// `distortion + lambda * rate_bits`, with rate in bits.
    pub cost: f64,
}

#[inline]
pub fn rd_cost(lambda: f64, distortion: u64, rate_bits: u32) -> f64 {
    distortion as f64 + lambda * (rate_bits as f64 / BIT_FRAC_ONE as f64)
}

/// Sum of squared differences between two equally-sized blocks.
pub fn sse(a: &[u16], b: &[u16]) -> Result<u64, RdError> {
    if a.len() != b.len() {
        return Err(RdError::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.iter()
        .zip(b.iter())
        .map(|(&x, &y)| {
            let d = x as i64 - y as i64;
            (d * d) as u64
        })
        .sum())
}

/// Fast-path SSE of a CfL candidate, evaluated against `ref - dc`
/// without materializing the prediction block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Q3Distortion {
    pub sse: u64,
    /// Set when some pixel would clamp; the value is then an upper
    /// bound and the exact path must be consulted.
    pub saturated: bool,
}

/// Evaluates `sum((ref - dc - round(alpha * ac)) ^ 2)`. Exactly equal
/// to materializing the prediction whenever no pixel clamps.
pub fn distortion_in_q3_domain(
    ac: &Q3AcBlock,
    alpha_q3: i32,
    ref_minus_dc: &[i32],
    dc: DcPrediction,
    depth: BitDepth,
) -> Result<Q3Distortion, RdError> {
    if ac.values().len() != ref_minus_dc.len() {
        return Err(RdError::DimensionMismatch {
            left: ac.values().len(),
            right: ref_minus_dc.len(),
        });
    }
    let lo = -(dc.value as i32);
    let hi = depth.max_value() as i32 - dc.value as i32;
    let mut acc = 0u64;
    let mut saturated = false;
    for (&a, &r) in ac.values().iter().zip(ref_minus_dc.iter()) {
        let d = scale_q3_value(alpha_q3, a);
        saturated |= d < lo || d > hi;
        let e = (r - d) as i64;
        acc += (e * e) as u64;
    }
    Ok(Q3Distortion {
        sse: acc,
        saturated,
    })
}

// Exact per-plane SSE for every alpha in [-16, 16], indexed by
// alpha + 16. Uses the fast path and falls back to the materialized
// prediction when clamping occurs, so results are exact everywhere.
fn plane_distortions(
    ac: &Q3AcBlock,
    reference: &[u16],
    dc: DcPrediction,
    depth: BitDepth,
) -> Result<[u64; 33], RdError> {
    if ac.values().len() != reference.len() {
        return Err(RdError::DimensionMismatch {
            left: ac.values().len(),
            right: reference.len(),
        });
    }
    let ref_minus_dc: Vec<i32> = reference
        .iter()
        .map(|&r| r as i32 - dc.value as i32)
        .collect();
    let mut out = [0u64; 33];
    for alpha in -16..=16i32 {
        let fast = distortion_in_q3_domain(ac, alpha, &ref_minus_dc, dc, depth)?;
        out[(alpha + 16) as usize] = if fast.saturated {
            let pred = cfl_predict(ac, alpha, dc, depth).expect("alpha within grid");
            sse(&pred, reference)?
        } else {
            fast.sse
        };
    }
    Ok(out)
}

// Candidate ordering below cost: DC first, then smaller total |alpha|,
// then canonical parameter order.
#[derive(PartialEq, PartialOrd)]
struct TieKey(u8, u32, u8, u8, u8);

fn tie_key(mode: &ChromaMode) -> TieKey {
    match mode {
        ChromaMode::Dc => TieKey(0, 0, 0, 0, 0),
        ChromaMode::Cfl(p) => TieKey(
            1,
            p.alpha_q3_cb().unsigned_abs() + p.alpha_q3_cr().unsigned_abs(),
            p.joint_sign() as u8,
            p.mag_cb().unwrap_or(0),
            p.mag_cr().unwrap_or(0),
        ),
    }
}

fn better(cost: f64, key: &TieKey, best_cost: f64, best_key: &TieKey) -> bool {
    match cost.total_cmp(&best_cost) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => key < best_key,
    }
}

/// Exhaustive RD-optimal selection between DC and every signalable CfL
/// parameter pair for one chroma unit.
#[allow(clippy::too_many_arguments)]
pub fn rd_select(
    ac_cb: &Q3AcBlock,
    ac_cr: &Q3AcBlock,
    ref_cb: &[u16],
    ref_cr: &[u16],
    dc_cb: DcPrediction,
    dc_cr: DcPrediction,
    depth: BitDepth,
    cfg: RdConfig,
    rate_model: &RateModel,
) -> Result<RdDecision, RdError> {
    let dist_cb = plane_distortions(ac_cb, ref_cb, dc_cb, depth)?;
    let dist_cr = plane_distortions(ac_cr, ref_cr, dc_cr, depth)?;
    let mode_bits = |is_cfl: bool| {
        estimate_rate_bits(&rate_model.mode, is_cfl as usize).expect("2-ary mode table")
    };

    // DC candidate.
    let dc_dist = dist_cb[16] + dist_cr[16];
    let dc_rate = mode_bits(false);
    let mut best = RdDecision {
        mode: ChromaMode::Dc,
        distortion: dc_dist,
        rate_bits: dc_rate,
        cost: rd_cost(cfg.lambda, dc_dist, dc_rate),
    };
    let mut best_key = tie_key(&best.mode);

    let cfl_mode_bits = mode_bits(true);
    for joint in 0..8 {
        let probe = CflParams::from_joint_sign(joint, 0, 0).expect("joint in range");
        let cb_mags: &[u8] = if probe.sign_cb() == AlphaSign::Zero {
            &[0]
        } else {
            &MAG_RANGE
        };
        let cr_mags: &[u8] = if probe.sign_cr() == AlphaSign::Zero {
            &[0]
        } else {
            &MAG_RANGE
        };
        for &mcb in cb_mags {
            for &mcr in cr_mags {
                let params = CflParams::from_joint_sign(joint, mcb, mcr).expect("valid params");
                let d = dist_cb[(params.alpha_q3_cb() + 16) as usize]
                    + dist_cr[(params.alpha_q3_cr() + 16) as usize];
                let r = cfl_mode_bits
                    + estimate_cfl_params_bits(&rate_model.cfl, params)
                        .expect("params validated");
                let cost = rd_cost(cfg.lambda, d, r);
                let mode = ChromaMode::Cfl(params);
                let key = tie_key(&mode);
                if better(cost, &key, best.cost, &best_key) {
                    best = RdDecision {
                        mode,
                        distortion: d,
                        rate_bits: r,
                        cost,
                    };
                    best_key = key;
                }
            }
        }
    }
    Ok(best)
}

const MAG_RANGE: [u8; 16] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15];
