//! Quantizer sweeps: encode a corpus at each quantizer, verify decoder
//! closure, and aggregate one RD point per quantizer.

use std::fmt;
use std::fmt::Write as _;

use super::{decode_frame, encode_frame, CodecError, CodecTools, QuantizerConfig};
use crate::frame::{BitDepth, Frame};
use crate::metrics::{ciede2000_frames, plane_sse, psnr_from_sse};

#[derive(Debug)]
pub enum SweepError {
    EmptyCorpus,
    EmptyQuantizerSet,
    Codec(CodecError),
}

impl fmt::Display for SweepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepError::EmptyCorpus => write!(f, "empty corpus"),
            SweepError::EmptyQuantizerSet => write!(f, "empty quantizer set"),
            SweepError::Codec(e) => write!(f, "codec error: {e}"),
        }
    }
}

impl std::error::Error for SweepError {}

impl From<CodecError> for SweepError {
    fn from(e: CodecError) -> Self {
        SweepError::Codec(e)
    }
}

/// One aggregated rate/quality point for a quantizer.
#[derive(Debug, Clone, PartialEq)]
pub struct RdPoint {
    pub q_index: u8,
    /// Total coded bits across the corpus.
    pub total_bits: u64,
    /// Pooled-MSE PSNR over all three planes.
    pub psnr: f64,
    pub psnr_y: f64,
    pub psnr_cb: f64,
    pub psnr_cr: f64,
    /// Mean frame CIEDE2000 against the sources (lower is better).
    pub ciede2000: f64,
    pub dc_blocks: usize,
    pub cfl_blocks: usize,
}

/// Per-frame measurement: coded size, plane errors, CIEDE2000, and
/// mode counts, with the decoder-closure check applied.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameMeasure {
    pub bits: u64,
    pub sse: [u64; 3],
    pub samples: [usize; 3],
    pub ciede2000: f64,
    pub dc_blocks: usize,
    pub cfl_blocks: usize,
}

/// Encodes one frame, replays the payload, verifies the replay is
/// bit-identical to the encoder reconstruction, and measures quality
/// against the source.
pub fn measure_frame(
    frame: &Frame,
    q: QuantizerConfig,
    tools: &CodecTools,
) -> Result<FrameMeasure, SweepError> {
    let (blob, stats, recon) = encode_frame(frame, q, tools)?;
    let decoded = decode_frame(&blob)?;
    if decoded != recon {
        return Err(SweepError::Codec(CodecError::ClosureMismatch));
    }
    let mut sse = [0u64; 3];
    let mut samples = [0usize; 3];
    for (i, (a, b)) in [
        (&frame.y, &decoded.y),
        (&frame.cb, &decoded.cb),
        (&frame.cr, &decoded.cr),
    ]
    .into_iter()
    .enumerate()
    {
        let (s, n) = plane_sse(a, b).expect("same dims");
        sse[i] = s;
        samples[i] = n;
    }
    Ok(FrameMeasure {
        bits: stats.total_bits,
        sse,
        samples,
        ciede2000: ciede2000_frames(frame, &decoded).expect("same geometry"),
        dc_blocks: stats.dc_blocks,
        cfl_blocks: stats.cfl_blocks,
    })
}

/// Pools per-frame measurements into one RD point.
pub fn aggregate_point(q_index: u8, depth: BitDepth, measures: &[FrameMeasure]) -> RdPoint {
    let mut total_bits = 0u64;
    let mut sse = [0u64; 3];
    let mut samples = [0usize; 3];
    let mut ciede_sum = 0f64;
    let mut dc_blocks = 0usize;
    let mut cfl_blocks = 0usize;
    for m in measures {
        total_bits += m.bits;
        ciede_sum += m.ciede2000;
        dc_blocks += m.dc_blocks;
        cfl_blocks += m.cfl_blocks;
        for i in 0..3 {
            sse[i] += m.sse[i];
            samples[i] += m.samples[i];
        }
    }
    RdPoint {
        q_index,
        total_bits,
        psnr: psnr_from_sse(sse.iter().sum(), samples.iter().sum(), depth),
        psnr_y: psnr_from_sse(sse[0], samples[0], depth),
        psnr_cb: psnr_from_sse(sse[1], samples[1], depth),
        psnr_cr: psnr_from_sse(sse[2], samples[2], depth),
        ciede2000: ciede_sum / measures.len() as f64,
        dc_blocks,
        cfl_blocks,
    }
}

/// Encodes every frame at every quantizer. Decoder replay is checked
/// against the encoder reconstruction for each payload; a mismatch is
/// an error, never a silent deviation.
pub fn sweep(
    frames: &[Frame],
    quantizers: &[u8],
    tools: &CodecTools,
) -> Result<Vec<RdPoint>, SweepError> {
    if frames.is_empty() {
        return Err(SweepError::EmptyCorpus);
    }
    if quantizers.is_empty() {
        return Err(SweepError::EmptyQuantizerSet);
    }
    let depth = frames[0].depth;
    let mut points = Vec::with_capacity(quantizers.len());
    for &qi in quantizers {
        let q = QuantizerConfig::new(qi);
        let measures = frames
            .iter()
            .map(|f| measure_frame(f, q, tools))
            .collect::<Result<Vec<_>, _>>()?;
        points.push(aggregate_point(qi, depth, &measures));
    }
    Ok(points)
}

pub const RD_CSV_HEADER: &str =
    "config,q_index,rate_bits,psnr,psnr_y,psnr_cb,psnr_cr,ciede2000,dc_blocks,cfl_blocks";

/// Serializes sweep points as CSV under a stable schema.
pub fn rd_points_csv(config: &str, points: &[RdPoint]) -> String {
    let mut out = String::from(RD_CSV_HEADER);
    out.push('\n');
    for p in points {
        writeln!(
            out,
            "{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{},{}",
            config,
            p.q_index,
            p.total_bits,
            p.psnr,
            p.psnr_y,
            p.psnr_cb,
            p.psnr_cr,
            p.ciede2000,
            p.dc_blocks,
            p.cfl_blocks
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{BitDepth, ChromaFormat};

    fn gradient_frame(w: usize, h: usize) -> Frame {
        let mut f = Frame::new(w, h, ChromaFormat::Cf420, BitDepth::Eight);
        for y in 0..h {
            for x in 0..w {
                f.y.set(x, y, ((x * 3 + y * 2) % 256) as u16);
            }
        }
        let (cw, ch) = f.format.chroma_dims(w, h);
        for y in 0..ch {
            for x in 0..cw {
                f.cb.set(x, y, ((128 + x * 2) % 256) as u16);
                f.cr.set(x, y, ((128 + y * 3) % 256) as u16);
            }
        }
        f
    }

    #[test]
    fn empty_inputs_rejected() {
        assert!(matches!(
            sweep(&[], &[20], &CodecTools::default()),
            Err(SweepError::EmptyCorpus)
        ));
        let f = gradient_frame(16, 16);
        assert!(matches!(
            sweep(&[f], &[], &CodecTools::default()),
            Err(SweepError::EmptyQuantizerSet)
        ));
    }

    #[test]
    fn four_quantizers_give_decreasing_rates() {
        let frames = vec![gradient_frame(32, 32)];
        let points = sweep(&frames, &[20, 32, 43, 55], &CodecTools::default()).unwrap();
        assert_eq!(points.len(), 4);
        for w in points.windows(2) {
            assert!(
                w[1].total_bits < w[0].total_bits,
                "rate must fall as q rises"
            );
        }
    }

    #[test]
    fn rerun_is_bit_identical() {
        let frames = vec![gradient_frame(24, 16)];
        let a = sweep(&frames, &[32, 43], &CodecTools::default()).unwrap();
        let b = sweep(&frames, &[32, 43], &CodecTools::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(rd_points_csv("cfl-on", &a), rd_points_csv("cfl-on", &b));
    }

    #[test]
    fn csv_schema_stays_stable() {
        let frames = vec![gradient_frame(16, 16)];
        let points = sweep(&frames, &[32], &CodecTools::default()).unwrap();
        let csv = rd_points_csv("cfl-on", &points);
        assert!(csv.starts_with(RD_CSV_HEADER));
        assert_eq!(csv.lines().count(), 2);
    }
}
