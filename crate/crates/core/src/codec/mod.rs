//! Minimal still-image coding harness. Luma is coded with DC intra
//! prediction plus transform residuals; chroma chooses between DC and
//! CfL per prediction unit. Prediction always consumes reconstructed
//! samples, and decoding replays the payload to a bit-identical
//! reconstruction.

mod coeffs;
mod dct;
pub mod sweep;

pub use coeffs::{
    decode_coeffs, encode_coeffs, estimate_coeff_bits, zigzag_scan, CoeffContexts, MAX_LEVEL,
};
pub use dct::{dct2d, dct_basis, idct2d, TRANSFORM_SIZES};
pub use sweep::{aggregate_point, measure_frame, rd_points_csv, sweep, FrameMeasure, RdPoint, SweepError, RD_CSV_HEADER};

use std::fmt;

use crate::cfl::{cfl_predict, dc_predict, luma_to_q3_ac, CflError, DcPrediction, Q3AcBlock};
use crate::ec::{
    decode_cfl_params, encode_cfl_params, estimate_cfl_params_bits, estimate_rate_bits, read_blob,
    write_blob, BlobError, BlobHeader, CdfTable, CflContexts, CflParams, EcError, RangeDecoder,
    RangeEncoder,
};
use crate::frame::{BitDepth, Frame, Plane};
use crate::rdo::{rd_cost, rd_select, ChromaMode, RateModel, RdConfig, RdError};

/// Block size used by both the luma and chroma coding grids.
pub const BLOCK: usize = 8;

#[derive(Debug)]
pub enum CodecError {
    UnsupportedBlockSize(usize),
    Entropy(EcError),
    Blob(BlobError),
    Rd(RdError),
    Cfl(CflError),
    /// Decoder replay produced a different reconstruction.
    ClosureMismatch,
}

impl fmt::Display for CodecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodecError::UnsupportedBlockSize(n) => write!(f, "unsupported block size {n}"),
            CodecError::Entropy(e) => write!(f, "entropy error: {e}"),
            CodecError::Blob(e) => write!(f, "container error: {e}"),
            CodecError::Rd(e) => write!(f, "rd error: {e}"),
            CodecError::Cfl(e) => write!(f, "predictor error: {e}"),
            CodecError::ClosureMismatch => write!(f, "decoder replay mismatch"),
        }
    }
}

impl std::error::Error for CodecError {}

impl From<EcError> for CodecError {
    fn from(e: EcError) -> Self {
        CodecError::Entropy(e)
    }
}

impl From<BlobError> for CodecError {
    fn from(e: BlobError) -> Self {
        CodecError::Blob(e)
    }
}

impl From<RdError> for CodecError {
    fn from(e: RdError) -> Self {
        CodecError::Rd(e)
    }
}

impl From<CflError> for CodecError {
    fn from(e: CflError) -> Self {
        CodecError::Cfl(e)
    }
}

// 2^(k/12) for k in 0..12; the quantizer step table octave.
const STEP_TWELFTH: [f64; 12] = [
    1.0,
    1.0594630943592953,
    1.122462048309373,
    1.189207115002721,
    1.2599210498948732,
    1.3348398541700344,
    1.4142135623730951,
    1.4983070768766815,
    1.5874010519681996,
    1.681792830507429,
    1.7817974362806785,
    1.887748625363387,
];

/// Quantizer selection. The step grows geometrically with the index
/// (one octave per 12 steps) and scales with bit depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantizerConfig {
    pub q_index: u8,
}

impl QuantizerConfig {
    pub fn new(q_index: u8) -> QuantizerConfig {
        QuantizerConfig { q_index }
    }

    /// Quantizer step in coefficient units: `2^(q/12) * 2^(depth-8)`.
    pub fn step(&self, depth: BitDepth) -> f64 {
        let q = self.q_index as u32;
        let octave = 1u64 << (q / 12);
        let depth_scale = 1u64 << (depth.bits() - 8);
        STEP_TWELFTH[(q % 12) as usize] * (octave * depth_scale) as f64
    }
}

/// How candidate CfL parameters are ranked during the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateRanking {
    /// Rank candidates by parameter signaling rate only; residual rate
    /// enters the final DC-vs-CfL comparison.
    ParamOnly,
    /// Rank every candidate by full rate (parameters plus residual).
    Full,
}

/// Encoder tool configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodecTools {
    pub cfl_enabled: bool,
    pub rate_ranking: RateRanking,
    /// `lambda = lambda_const * q_index^2`.
    pub lambda_const: f64,
}

impl Default for CodecTools {
    fn default() -> Self {
        CodecTools {
            cfl_enabled: true,
            rate_ranking: RateRanking::ParamOnly,
            lambda_const: 0.057,
        }
    }
}

impl CodecTools {
    pub fn lambda(&self, q: QuantizerConfig) -> f64 {
        self.lambda_const * (q.q_index as f64) * (q.q_index as f64)
    }
}

/// Result of transforming, quantizing and rate-estimating one residual
/// block.
#[derive(Debug, Clone)]
pub struct TransformedBlock {
    pub coeffs: Vec<i32>,
    /// Estimated coefficient rate under the supplied (frozen) contexts,
    /// in 1/512-bit units.
    pub rate_bits: u32,
    pub recon_residual: Vec<i32>,
}

// Dead-zone offset of the uniform quantizer: indices round down by an
// extra quarter step, widening the zero bin.
const DEAD_ZONE_OFFSET: f64 = 0.25;

/// Forward DCT, dead-zone quantization, estimated coefficient rate and
/// the dequantized, inverse-transformed reconstruction.
pub fn transform_quantize_block(
    residual: &[i32],
    n: usize,
    step: f64,
    ctx: &CoeffContexts,
) -> Result<TransformedBlock, CodecError> {
    let block: Vec<f64> = residual.iter().map(|&v| v as f64).collect();
    let freq = dct2d(&block, n)?;
    let coeffs: Vec<i32> = freq
        .iter()
        .map(|&t| {
            let q = (t.abs() / step + DEAD_ZONE_OFFSET).floor() as u32;
            let q = q.min(MAX_LEVEL) as i32;
            if t < 0.0 {
                -q
            } else {
                q
            }
        })
        .collect();
    let scan = zigzag_scan(n);
    let rate_bits = estimate_coeff_bits(ctx, &coeffs, &scan)?;
    let dequant: Vec<f64> = coeffs.iter().map(|&q| q as f64 * step).collect();
    let spatial = idct2d(&dequant, n)?;
    let recon_residual: Vec<i32> = spatial.iter().map(|&v| v.round() as i32).collect();
    Ok(TransformedBlock {
        coeffs,
        rate_bits,
        recon_residual,
    })
}

/// Per-unit decision record for the trace output.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockTrace {
    /// Chroma-grid block coordinates.
    pub bx: usize,
    pub by: usize,
    pub mode: ChromaMode,
    /// Chroma SSE of the chosen mode over the visible pixels.
    pub distortion: u64,
    /// Full estimated rate of the unit (mode, parameters, residual).
    pub rate_bits: u32,
    pub cost: f64,
}

/// Aggregate encoder statistics for one frame.
#[derive(Debug, Clone)]
pub struct CodedFrameStats {
    /// Length of the emitted blob in bits.
    pub total_bits: u64,
    pub dist_y: u64,
    pub dist_cb: u64,
    pub dist_cr: u64,
    pub dc_blocks: usize,
    pub cfl_blocks: usize,
    pub traces: Vec<BlockTrace>,
}

// Entropy contexts shared by encoder and decoder; the update
// trajectories must match exactly.
struct CodecState {
    luma_coeffs: CoeffContexts,
    chroma_coeffs: CoeffContexts,
    /// 2-ary chroma mode flag, coded only when CfL is enabled.
    mode: CdfTable,
    cfl: CflContexts,
}

impl CodecState {
    fn new() -> CodecState {
        CodecState {
            luma_coeffs: CoeffContexts::new(),
            chroma_coeffs: CoeffContexts::new(),
            mode: CdfTable::new_uniform(2),
            cfl: CflContexts::new(),
        }
    }
}

fn pad_to_blocks(p: &Plane) -> Plane {
    let w = p.width().div_ceil(BLOCK) * BLOCK;
    let h = p.height().div_ceil(BLOCK) * BLOCK;
    p.padded(w, h)
}

fn block_region(p: &Plane, bx: usize, by: usize) -> Vec<u16> {
    p.region(bx * BLOCK, by * BLOCK, BLOCK, BLOCK)
}

fn write_block(p: &mut Plane, bx: usize, by: usize, values: &[u16]) {
    for y in 0..BLOCK {
        for x in 0..BLOCK {
            p.set(bx * BLOCK + x, by * BLOCK + y, values[y * BLOCK + x]);
        }
    }
}

fn dc_neighbors(recon: &Plane, bx: usize, by: usize, depth: BitDepth) -> DcPrediction {
    let above: Option<Vec<u16>> = (by > 0)
        .then(|| (0..BLOCK).map(|x| recon.get(bx * BLOCK + x, by * BLOCK - 1)).collect());
    let left: Option<Vec<u16>> = (bx > 0)
        .then(|| (0..BLOCK).map(|y| recon.get(bx * BLOCK - 1, by * BLOCK + y)).collect());
    dc_predict(above.as_deref(), left.as_deref(), depth)
}

fn reconstruct(pred: &[u16], residual: &[i32], depth: BitDepth) -> Vec<u16> {
    let max = depth.max_value() as i32;
    pred.iter()
        .zip(residual.iter())
        .map(|(&p, &r)| (p as i32 + r).clamp(0, max) as u16)
        .collect()
}

// SSE restricted to the pixels of a padded block that fall inside the
// visible plane area.
fn visible_sse(
    a: &[u16],
    b: &[u16],
    bx: usize,
    by: usize,
    visible_w: usize,
    visible_h: usize,
) -> u64 {
    let mut acc = 0u64;
    for y in 0..BLOCK {
        for x in 0..BLOCK {
            let px = bx * BLOCK + x;
            let py = by * BLOCK + y;
            if px < visible_w && py < visible_h {
                let d = a[y * BLOCK + x] as i64 - b[y * BLOCK + x] as i64;
                acc += (d * d) as u64;
            }
        }
    }
    acc
}

struct ChromaTrial {
    tq_cb: TransformedBlock,
    tq_cr: TransformedBlock,
    recon_cb: Vec<u16>,
    recon_cr: Vec<u16>,
    rate_bits: u32,
    cost: f64,
}

#[allow(clippy::too_many_arguments)]
fn trial_mode(
    mode: &ChromaMode,
    ac: &Q3AcBlock,
    dc_cb: DcPrediction,
    dc_cr: DcPrediction,
    ref_cb: &[u16],
    ref_cr: &[u16],
    state: &CodecState,
    depth: BitDepth,
    step: f64,
    lambda: f64,
    cfl_enabled: bool,
) -> Result<ChromaTrial, CodecError> {
    let (alpha_cb, alpha_cr) = match mode {
        ChromaMode::Dc => (0, 0),
        ChromaMode::Cfl(p) => (p.alpha_q3_cb(), p.alpha_q3_cr()),
    };
    let pred_cb = cfl_predict(ac, alpha_cb, dc_cb, depth)?;
    let pred_cr = cfl_predict(ac, alpha_cr, dc_cr, depth)?;
    let res_cb: Vec<i32> = ref_cb
        .iter()
        .zip(pred_cb.iter())
        .map(|(&r, &p)| r as i32 - p as i32)
        .collect();
    let res_cr: Vec<i32> = ref_cr
        .iter()
        .zip(pred_cr.iter())
        .map(|(&r, &p)| r as i32 - p as i32)
        .collect();
    let tq_cb = transform_quantize_block(&res_cb, BLOCK, step, &state.chroma_coeffs)?;
    let tq_cr = transform_quantize_block(&res_cr, BLOCK, step, &state.chroma_coeffs)?;
    let recon_cb = reconstruct(&pred_cb, &tq_cb.recon_residual, depth);
    let recon_cr = reconstruct(&pred_cr, &tq_cr.recon_residual, depth);
    let distortion = crate::rdo::sse(&recon_cb, ref_cb)? + crate::rdo::sse(&recon_cr, ref_cr)?;

    let mut rate_bits = tq_cb.rate_bits + tq_cr.rate_bits;
    if cfl_enabled {
        let is_cfl = matches!(mode, ChromaMode::Cfl(_));
        rate_bits += estimate_rate_bits(&state.mode, is_cfl as usize)?;
        if let ChromaMode::Cfl(p) = mode {
            rate_bits += estimate_cfl_params_bits(&state.cfl, *p)?;
        }
    }
    let cost = rd_cost(lambda, distortion, rate_bits);
    Ok(ChromaTrial {
        tq_cb,
        tq_cr,
        recon_cb,
        recon_cr,
        rate_bits,
        cost,
    })
}

// All signalable CfL parameter pairs, in canonical order.
fn all_cfl_params() -> Vec<CflParams> {
    let mut out = Vec::with_capacity(1088);
    for joint in 0..8 {
        let probe = CflParams::from_joint_sign(joint, 0, 0).expect("joint in range");
        let cb_mags: Vec<u8> = if probe.mag_cb().is_some() {
            (0..16).collect()
        } else {
            vec![0]
        };
        let cr_mags: Vec<u8> = if probe.mag_cr().is_some() {
            (0..16).collect()
        } else {
            vec![0]
        };
        for &mcb in &cb_mags {
            for &mcr in &cr_mags {
                out.push(CflParams::from_joint_sign(joint, mcb, mcr).expect("valid params"));
            }
        }
    }
    out
}

/// Encodes one frame. Returns the self-framed payload, the stats, and
/// the encoder-side reconstruction (which the decoder reproduces
/// bit-exactly).
pub fn encode_frame(
    frame: &Frame,
    q: QuantizerConfig,
    tools: &CodecTools,
) -> Result<(Vec<u8>, CodedFrameStats, Frame), CodecError> {
    let depth = frame.depth;
    let step = q.step(depth);
    let lambda = tools.lambda(q);

    let src_y = pad_to_blocks(&frame.y);
    let src_cb = pad_to_blocks(&frame.cb);
    let src_cr = pad_to_blocks(&frame.cr);
    let mut recon_y = Plane::new(src_y.width(), src_y.height());
    let mut recon_cb = Plane::new(src_cb.width(), src_cb.height());
    let mut recon_cr = Plane::new(src_cr.width(), src_cr.height());

    let mut state = CodecState::new();
    let mut enc = RangeEncoder::new();
    let scan = zigzag_scan(BLOCK);

    // Luma pass: DC intra plus coded residual, raster order.
    for by in 0..src_y.height() / BLOCK {
        for bx in 0..src_y.width() / BLOCK {
            let dc = dc_neighbors(&recon_y, bx, by, depth);
            let src = block_region(&src_y, bx, by);
            let residual: Vec<i32> = src.iter().map(|&s| s as i32 - dc.value as i32).collect();
            let tq = transform_quantize_block(&residual, BLOCK, step, &state.luma_coeffs)?;
            encode_coeffs(&mut enc, &mut state.luma_coeffs, &tq.coeffs, &scan)?;
            let pred = vec![dc.value; BLOCK * BLOCK];
            let recon = reconstruct(&pred, &tq.recon_residual, depth);
            write_block(&mut recon_y, bx, by, &recon);
        }
    }

    // Chroma pass: joint Cb/Cr units with the DC-vs-CfL decision.
    let mut dc_blocks = 0usize;
    let mut cfl_blocks = 0usize;
    let mut traces = Vec::new();
    for by in 0..src_cb.height() / BLOCK {
        for bx in 0..src_cb.width() / BLOCK {
            let ac = luma_to_q3_ac(&recon_y, frame.format, bx * BLOCK, by * BLOCK, BLOCK, BLOCK)?;
            let dc_cb = dc_neighbors(&recon_cb, bx, by, depth);
            let dc_cr = dc_neighbors(&recon_cr, bx, by, depth);
            let ref_cb = block_region(&src_cb, bx, by);
            let ref_cr = block_region(&src_cr, bx, by);

            let chosen: ChromaMode = if !tools.cfl_enabled {
                ChromaMode::Dc
            } else {
                match tools.rate_ranking {
                    RateRanking::ParamOnly => {
                        // Parameter-rate candidate ranking, then a
                        // full-rate DC-vs-CfL comparison.
                        let model = RateModel {
                            mode: state.mode.clone(),
                            cfl: state.cfl.clone(),
                        };
                        let decision = rd_select(
                            &ac,
                            &ac,
                            &ref_cb,
                            &ref_cr,
                            dc_cb,
                            dc_cr,
                            depth,
                            RdConfig { lambda },
                            &model,
                        )?;
                        match decision.mode {
                            ChromaMode::Dc => ChromaMode::Dc,
                            cfl_mode => {
                                let dc_trial = trial_mode(
                                    &ChromaMode::Dc,
                                    &ac,
                                    dc_cb,
                                    dc_cr,
                                    &ref_cb,
                                    &ref_cr,
                                    &state,
                                    depth,
                                    step,
                                    lambda,
                                    true,
                                )?;
                                let cfl_trial = trial_mode(
                                    &cfl_mode, &ac, dc_cb, dc_cr, &ref_cb, &ref_cr, &state,
                                    depth, step, lambda, true,
                                )?;
                                if cfl_trial.cost < dc_trial.cost {
                                    cfl_mode
                                } else {
                                    ChromaMode::Dc
                                }
                            }
                        }
                    }
                    RateRanking::Full => {
                        // Rank every candidate (and DC) by full rate.
                        let mut best_mode = ChromaMode::Dc;
                        let mut best_cost = trial_mode(
                            &ChromaMode::Dc,
                            &ac,
                            dc_cb,
                            dc_cr,
                            &ref_cb,
                            &ref_cr,
                            &state,
                            depth,
                            step,
                            lambda,
                            true,
                        )?
                        .cost;
                        for params in all_cfl_params() {
                            let mode = ChromaMode::Cfl(params);
                            let t = trial_mode(
                                &mode, &ac, dc_cb, dc_cr, &ref_cb, &ref_cr, &state, depth,
                                step, lambda, true,
                            )?;
                            if t.cost < best_cost {
                                best_cost = t.cost;
                                best_mode = mode;
                            }
                        }
                        best_mode
                    }
                }
            };

            // Final trial of the chosen mode provides the coded data.
            let trial = trial_mode(
                &chosen,
                &ac,
                dc_cb,
                dc_cr,
                &ref_cb,
                &ref_cr,
                &state,
                depth,
                step,
                lambda,
                tools.cfl_enabled,
            )?;

            if tools.cfl_enabled {
                let is_cfl = matches!(chosen, ChromaMode::Cfl(_));
                enc.encode_symbol(&mut state.mode, is_cfl as usize)?;
                if let ChromaMode::Cfl(p) = chosen {
                    encode_cfl_params(&mut enc, &mut state.cfl, p)?;
                }
            }
            encode_coeffs(&mut enc, &mut state.chroma_coeffs, &trial.tq_cb.coeffs, &scan)?;
            encode_coeffs(&mut enc, &mut state.chroma_coeffs, &trial.tq_cr.coeffs, &scan)?;
            write_block(&mut recon_cb, bx, by, &trial.recon_cb);
            write_block(&mut recon_cr, bx, by, &trial.recon_cr);

            match chosen {
                ChromaMode::Dc => dc_blocks += 1,
                ChromaMode::Cfl(_) => cfl_blocks += 1,
            }
            let visible_d = visible_sse(
                &trial.recon_cb,
                &ref_cb,
                bx,
                by,
                frame.cb.width(),
                frame.cb.height(),
            ) + visible_sse(
                &trial.recon_cr,
                &ref_cr,
                bx,
                by,
                frame.cr.width(),
                frame.cr.height(),
            );
            traces.push(BlockTrace {
                bx,
                by,
                mode: chosen,
                distortion: visible_d,
                rate_bits: trial.rate_bits,
                cost: trial.cost,
            });
        }
    }

    let payload = enc.finish();
    let header = BlobHeader {
        width: frame.width() as u32,
        height: frame.height() as u32,
        format: frame.format,
        depth,
        q_index: q.q_index,
        cfl_enabled: tools.cfl_enabled,
    };
    let blob = write_blob(&header, &payload);

    let recon = Frame {
        y: recon_y.cropped(frame.y.width(), frame.y.height()),
        cb: recon_cb.cropped(frame.cb.width(), frame.cb.height()),
        cr: recon_cr.cropped(frame.cr.width(), frame.cr.height()),
        format: frame.format,
        depth,
    };
    let stats = CodedFrameStats {
        total_bits: blob.len() as u64 * 8,
        dist_y: crate::metrics::plane_sse(&frame.y, &recon.y).expect("same dims").0,
        dist_cb: crate::metrics::plane_sse(&frame.cb, &recon.cb).expect("same dims").0,
        dist_cr: crate::metrics::plane_sse(&frame.cr, &recon.cr).expect("same dims").0,
        dc_blocks,
        cfl_blocks,
        traces,
    };
    Ok((blob, stats, recon))
}

/// Decodes a coded-frame blob back to the reconstruction.
pub fn decode_frame(blob: &[u8]) -> Result<Frame, CodecError> {
    let (header, payload) = read_blob(blob)?;
    let width = header.width as usize;
    let height = header.height as usize;
    let depth = header.depth;
    let format = header.format;
    let q = QuantizerConfig::new(header.q_index);
    let step = q.step(depth);

    let (cw, ch) = format.chroma_dims(width, height);
    let plw = width.div_ceil(BLOCK) * BLOCK;
    let plh = height.div_ceil(BLOCK) * BLOCK;
    let pcw = cw.div_ceil(BLOCK) * BLOCK;
    let pch = ch.div_ceil(BLOCK) * BLOCK;

    let mut recon_y = Plane::new(plw, plh);
    let mut recon_cb = Plane::new(pcw, pch);
    let mut recon_cr = Plane::new(pcw, pch);

    let mut state = CodecState::new();
    let mut dec = RangeDecoder::new(payload)?;
    let scan = zigzag_scan(BLOCK);

    for by in 0..plh / BLOCK {
        for bx in 0..plw / BLOCK {
            let dc = dc_neighbors(&recon_y, bx, by, depth);
            let coeffs = decode_coeffs(&mut dec, &mut state.luma_coeffs, &scan)?;
            let dequant: Vec<f64> = coeffs.iter().map(|&c| c as f64 * step).collect();
            let spatial = idct2d(&dequant, BLOCK)?;
            let residual: Vec<i32> = spatial.iter().map(|&v| v.round() as i32).collect();
            let pred = vec![dc.value; BLOCK * BLOCK];
            let recon = reconstruct(&pred, &residual, depth);
            write_block(&mut recon_y, bx, by, &recon);
        }
    }

    for by in 0..pch / BLOCK {
        for bx in 0..pcw / BLOCK {
            let ac = luma_to_q3_ac(&recon_y, format, bx * BLOCK, by * BLOCK, BLOCK, BLOCK)?;
            let dc_cb = dc_neighbors(&recon_cb, bx, by, depth);
            let dc_cr = dc_neighbors(&recon_cr, bx, by, depth);

            let mode = if header.cfl_enabled {
                let is_cfl = dec.decode_symbol(&mut state.mode)? == 1;
                if is_cfl {
                    ChromaMode::Cfl(decode_cfl_params(&mut dec, &mut state.cfl)?)
                } else {
                    ChromaMode::Dc
                }
            } else {
                ChromaMode::Dc
            };
            let (alpha_cb, alpha_cr) = match mode {
                ChromaMode::Dc => (0, 0),
                ChromaMode::Cfl(p) => (p.alpha_q3_cb(), p.alpha_q3_cr()),
            };
            let pred_cb = cfl_predict(&ac, alpha_cb, dc_cb, depth)?;
            let pred_cr = cfl_predict(&ac, alpha_cr, dc_cr, depth)?;

            for (pred, plane) in [(pred_cb, &mut recon_cb), (pred_cr, &mut recon_cr)] {
                let coeffs = decode_coeffs(&mut dec, &mut state.chroma_coeffs, &scan)?;
                let dequant: Vec<f64> = coeffs.iter().map(|&c| c as f64 * step).collect();
                let spatial = idct2d(&dequant, BLOCK)?;
                let residual: Vec<i32> = spatial.iter().map(|&v| v.round() as i32).collect();
                let recon = reconstruct(&pred, &residual, depth);
                write_block(plane, bx, by, &recon);
            }
        }
    }

    Ok(Frame {
        y: recon_y.cropped(width, height),
        cb: recon_cb.cropped(cw, ch),
        cr: recon_cr.cropped(cw, ch),
        format,
        depth,
    })
}
