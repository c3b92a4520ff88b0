//! Color conversion and chroma resampling.
//!
//! RGB <-> YCbCr uses BT.601 full-range coefficients in 16-bit fixed
//! point, with round half up. The coefficient triples sum to exactly
//! 2^16 (luma) and 0 (chroma), so achromatic inputs land on Cb=Cr=128
//! for every gray level.

use std::fmt;

use crate::frame::{BitDepth, ChromaFormat, Frame, Plane};
use crate::ppm::RgbImage;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionMismatch {
    pub expected: (usize, usize),
    pub actual: (usize, usize),
}

impl fmt::Display for DimensionMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "plane dimensions {}x{} do not match {}x{}",
            self.actual.0, self.actual.1, self.expected.0, self.expected.1
        )
    }
}

impl std::error::Error for DimensionMismatch {}

// BT.601 full-range, Q16. Rows sum to 65536 / 0 / 0 exactly.
const Y_R: i32 = 19595; // 0.299
const Y_G: i32 = 38470; // 0.587
const Y_B: i32 = 7471; // 0.114
const CB_R: i32 = -11059; // -0.168736
const CB_G: i32 = -21709; // -0.331264
const CB_B: i32 = 32768; // 0.5
const CR_R: i32 = 32768; // 0.5
const CR_G: i32 = -27439; // -0.418688
const CR_B: i32 = -5329; // -0.081312

#[inline]
fn q16_round(v: i32) -> i32 {
    // floor((v + 2^15) / 2^16): round half up for both signs.
    (v + 32768) >> 16
}

/// Converts one 8-bit RGB triplet to full-range YCbCr.
#[inline]
pub fn rgb_pixel_to_ycbcr(r: u8, g: u8, b: u8) -> (u8, u8, u8) {
    let (r, g, b) = (r as i32, g as i32, b as i32);
    let y = q16_round(Y_R * r + Y_G * g + Y_B * b);
    let cb = 128 + q16_round(CB_R * r + CB_G * g + CB_B * b);
    let cr = 128 + q16_round(CR_R * r + CR_G * g + CR_B * b);
    (
        y.clamp(0, 255) as u8,
        cb.clamp(0, 255) as u8,
        cr.clamp(0, 255) as u8,
    )
}

/// Converts an RGB image to an 8-bit 4:4:4 YCbCr frame.
pub fn rgb_to_ycbcr(img: &RgbImage) -> Frame {
    let mut frame = Frame::new(img.width, img.height, ChromaFormat::Cf444, BitDepth::Eight);
    for y in 0..img.height {
        for x in 0..img.width {
            let (r, g, b) = img.pixel(x, y);
            let (yy, cb, cr) = rgb_pixel_to_ycbcr(r, g, b);
            frame.y.set(x, y, yy as u16);
            frame.cb.set(x, y, cb as u16);
            frame.cr.set(x, y, cr as u16);
        }
    }
    frame
}

/// Inverse conversion for metric computation, in floating point.
/// `max` is the peak sample value for the frame's bit depth; output is
/// normalized RGB in [0, 1].
#[inline]
pub fn ycbcr_pixel_to_rgb_f64(y: f64, cb: f64, cr: f64, max: f64) -> (f64, f64, f64) {
    let mid = (max + 1.0) / 2.0;
    let y = y / max;
    let cb = (cb - mid) / max;
    let cr = (cr - mid) / max;
    let r = y + 1.402 * cr;
    let g = y - 0.344136 * cb - 0.714136 * cr;
    let b = y + 1.772 * cb;
    (r.clamp(0.0, 1.0), g.clamp(0.0, 1.0), b.clamp(0.0, 1.0))
}

fn downsample_plane(src: &Plane, target: ChromaFormat) -> Plane {
    let sx = target.step_x();
    let sy = target.step_y();
    let n = (sx * sy) as u32;
    let (cw, ch) = target.chroma_dims(src.width(), src.height());
    let mut out = Plane::new(cw, ch);
    for v in 0..ch {
        for u in 0..cw {
            let mut sum = 0u32;
            for dy in 0..sy {
                for dx in 0..sx {
                    // Edge replication covers odd source dimensions.
                    sum += src.get_clamped(u * sx + dx, v * sy + dy) as u32;
                }
            }
            out.set(u, v, ((sum + n / 2) / n) as u16);
        }
    }
    out
}

/// Downsamples the chroma planes of a 4:4:4 frame to `target` geometry
/// by box averaging the coincident samples (round to nearest).
/// The luma plane is untouched; 4:4:4 -> 4:4:4 is the identity.
pub fn chroma_downsample(frame: &Frame, target: ChromaFormat) -> Frame {
    assert_eq!(
        frame.format,
        ChromaFormat::Cf444,
        "downsample source must be 4:4:4"
    );
    if target == ChromaFormat::Cf444 {
        return frame.clone();
    }
    Frame {
        y: frame.y.clone(),
        cb: downsample_plane(&frame.cb, target),
        cr: downsample_plane(&frame.cr, target),
        format: target,
        depth: frame.depth,
    }
}

/// Upsamples a chroma plane back to luma dimensions by sample
/// replication (nearest neighbor). Used before full-resolution metrics.
pub fn chroma_upsample_replicate(src: &Plane, fmt: ChromaFormat, width: usize, height: usize) -> Plane {
    let sx = fmt.step_x();
    let sy = fmt.step_y();
    let mut out = Plane::new(width, height);
    for y in 0..height {
        for x in 0..width {
            out.set(x, y, src.get_clamped(x / sx, y / sy));
        }
    }
    out
}
