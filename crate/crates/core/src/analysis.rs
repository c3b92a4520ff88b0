//! Distribution analysis of the DC predictor's error against the true
//! chroma block mean, reported as box-plot statistics per block size.

use std::fmt::Write as _;

use crate::cfl::{dc_predict, CflError, BLOCK_SIZES};
use crate::frame::{Frame, Plane};

/// Box-plot summary of squared DC prediction errors for one block size.
/// Whiskers use the 1.5 IQR convention; data beyond them are treated
/// as outliers and excluded from the reported range.
#[derive(Debug, Clone, PartialEq)]
pub struct DcErrorStats {
    pub block_size: usize,
    pub count: usize,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub lo_whisker: f64,
    pub hi_whisker: f64,
}

/// Linear-interpolated quantile of sorted data (position `(n-1) * q`).
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let pos = (n - 1) as f64 * q;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

fn summarize(block_size: usize, mut errors: Vec<f64>) -> DcErrorStats {
    errors.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q1 = quantile(&errors, 0.25);
    let median = quantile(&errors, 0.5);
    let q3 = quantile(&errors, 0.75);
    let iqr = q3 - q1;
    let lo_fence = q1 - 1.5 * iqr;
    let hi_fence = q3 + 1.5 * iqr;
    let lo_whisker = errors
        .iter()
        .copied()
        .find(|&e| e >= lo_fence)
        .unwrap_or(q1);
    let hi_whisker = errors
        .iter()
        .rev()
        .copied()
        .find(|&e| e <= hi_fence)
        .unwrap_or(q3);
    DcErrorStats {
        block_size,
        count: errors.len(),
        q1,
        median,
        q3,
        lo_whisker,
        hi_whisker,
    }
}

/// Squared error between the true mean of each `size x size` block of
/// `plane` and the DC prediction from its source-sample neighbors
/// (a proxy for reconstructed neighbors). Only whole blocks are used,
/// and the top-left block is skipped: with no neighbors there is no
/// prediction to analyze, only the midpoint fallback.
fn plane_block_errors(plane: &Plane, size: usize, depth: crate::frame::BitDepth, out: &mut Vec<f64>) {
    let bw = plane.width() / size;
    let bh = plane.height() / size;
    for by in 0..bh {
        for bx in 0..bw {
            if bx == 0 && by == 0 {
                continue;
            }
            let x0 = bx * size;
            let y0 = by * size;
            let mut sum = 0u64;
            for y in 0..size {
                for x in 0..size {
                    sum += plane.get(x0 + x, y0 + y) as u64;
                }
            }
            let true_mean = sum as f64 / (size * size) as f64;

            let above: Option<Vec<u16>> = (y0 > 0)
                .then(|| (0..size).map(|x| plane.get(x0 + x, y0 - 1)).collect());
            let left: Option<Vec<u16>> = (x0 > 0)
                .then(|| (0..size).map(|y| plane.get(x0 - 1, y0 + y)).collect());
            let dc = dc_predict(above.as_deref(), left.as_deref(), depth);
            let err = true_mean - dc.value as f64;
            out.push(err * err);
        }
    }
}

/// Runs the DC error analysis over both chroma planes of a corpus for
/// each chroma block size in {4, 8, 16, 32}.
pub fn dc_error_analysis(frames: &[Frame]) -> Result<Vec<DcErrorStats>, CflError> {
    if frames.is_empty() {
        return Err(CflError::EmptyCorpus);
    }
    let mut stats = Vec::new();
    for &size in BLOCK_SIZES.iter() {
        let mut errors = Vec::new();
        for frame in frames {
            plane_block_errors(&frame.cb, size, frame.depth, &mut errors);
            plane_block_errors(&frame.cr, size, frame.depth, &mut errors);
        }
        if errors.is_empty() {
            continue;
        }
        stats.push(summarize(size, errors));
    }
    Ok(stats)
}

/// Renders the analysis as CSV with the documented column schema.
pub fn dc_error_csv(stats: &[DcErrorStats]) -> String {
    let mut out = String::from("size,q1,median,q3,lo_whisker,hi_whisker\n");
    for s in stats {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            s.block_size, s.q1, s.median, s.q3, s.lo_whisker, s.hi_whisker
        )
        .unwrap();
    }
    out
}
