//! Deterministic synthetic test content.
//!
//! The evaluation corpus is generated, not loaded: `kodak_like`
//! produces photographic-character stills (smooth shading, colored
//! regions whose chroma tracks luma, fine texture), `affine_chroma`
//! produces content where chroma is an exact per-block linear function
//! of luma. Everything derives from a seed through a fixed-width
//! integer generator, so corpora are identical across platforms.

use crate::frame::{BitDepth, ChromaFormat, Frame};
use crate::ppm::RgbImage;

/// SplitMix64: tiny, seedable, platform-independent.
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, n)`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Uniform in `[lo, hi)`.
    pub fn range_f64(&mut self, lo: f64, hi: f64) -> f64 {
        let unit = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + unit * (hi - lo)
    }
}

struct Ellipse {
    cx: f64,
    cy: f64,
    rx: f64,
    ry: f64,
    /// Base color of the region.
    rgb: (f64, f64, f64),
    /// Extra brightness offset.
    lift: f64,
}

impl Ellipse {
    fn contains(&self, x: f64, y: f64) -> bool {
        let dx = (x - self.cx) / self.rx;
        let dy = (y - self.cy) / self.ry;
        dx * dx + dy * dy <= 1.0
    }
}

// Smooth 2D field: a few low-frequency cosines.
struct Waves {
    waves: Vec<(f64, f64, f64, f64)>, // (fx, fy, phase, amplitude)
}

impl Waves {
    fn new(rng: &mut Rng, w: f64, h: f64, amp_lo: f64, amp_hi: f64) -> Waves {
        let mut waves = Vec::new();
        for _ in 0..4 {
            let fx = rng.range_f64(0.3, 1.4) / w;
            let fy = rng.range_f64(0.3, 1.4) / h;
            let phase = rng.range_f64(0.0, std::f64::consts::TAU);
            let amp = rng.range_f64(amp_lo, amp_hi);
            waves.push((fx, fy, phase, amp));
        }
        Waves { waves }
    }

    fn at(&self, x: f64, y: f64) -> f64 {
        let mut s = 0.0;
        for &(fx, fy, phase, amp) in &self.waves {
            s += amp * (std::f64::consts::TAU * (fx * x + fy * y) + phase).cos();
        }
        s
    }
}

/// A photographic-style synthetic RGB still: smooth mostly-achromatic
/// illumination, a handful of colored elliptical regions, a touch of
/// multiplicative shading and fine achromatic grain. Chroma is flat
/// inside regions (as in real photographs) and steps at region edges
/// coincide with luma steps, which is where a chroma-from-luma model
/// earns its keep.
pub fn kodak_like_rgb(seed: u64, width: usize, height: usize) -> RgbImage {
    let mut rng = Rng::new(seed);
    // Brightness field: achromatic, moderate.
    let ambient = Waves::new(&mut rng, width as f64, height as f64, 0.025, 0.055);
    // Multiplicative shading: scales colors, kept small so chroma
    // drifts gently the way lightly shaded real surfaces do.
    let shading = Waves::new(&mut rng, width as f64, height as f64, 0.008, 0.022);

    let background = (
        rng.range_f64(0.42, 0.58),
        rng.range_f64(0.42, 0.58),
        rng.range_f64(0.40, 0.56),
    );
    // Regions stay inside a central horizontal band, leaving wide flat
    // areas (sky/wall style) above and below.
    let mut regions = Vec::new();
    let n_regions = 5 + rng.below(4) as usize;
    for i in 0..n_regions {
        // Alternate saturated and muted regions.
        let spread = if i % 2 == 0 { 0.34 } else { 0.10 };
        let base = rng.range_f64(0.32, 0.60);
        let cy = rng.range_f64(0.34, 0.66);
        let max_ry = (cy - 0.26).min(0.74 - cy);
        regions.push(Ellipse {
            cx: rng.range_f64(0.0, width as f64),
            cy: cy * height as f64,
            rx: rng.range_f64(0.07, 0.28) * width as f64,
            ry: rng.range_f64(0.05, max_ry.max(0.06)) * height as f64,
            rgb: (
                (base + rng.range_f64(-spread, spread)).clamp(0.10, 0.92),
                (base + rng.range_f64(-spread, spread)).clamp(0.10, 0.92),
                (base + rng.range_f64(-spread, spread)).clamp(0.10, 0.92),
            ),
            lift: rng.range_f64(-0.08, 0.08),
        });
    }

    let mut img = RgbImage::new(width, height);
    for y in 0..height {
        for x in 0..width {
            let (fx, fy) = (x as f64, y as f64);
            let mut color = background;
            let mut lift = 0.0;
            // Later regions paint over earlier ones.
            for e in &regions {
                if e.contains(fx, fy) {
                    color = e.rgb;
                    lift = e.lift;
                }
            }
            let mult = (0.90 + shading.at(fx, fy)).clamp(0.75, 1.05);
            let add = lift + ambient.at(fx, fy);
            let grain = rng.range_f64(-0.013, 0.013);
            let px = |c: f64| ((c * mult + add + grain).clamp(0.0, 1.0) * 255.0).round() as u8;
            img.set_pixel(x, y, (px(color.0), px(color.1), px(color.2)));
        }
    }
    img
}

/// Converts an RGB test image into a YCbCr frame at the given chroma
/// geometry (via BT.601 and box downsampling).
pub fn rgb_to_frame(img: &RgbImage, format: ChromaFormat) -> Frame {
    let full = crate::color::rgb_to_ycbcr(img);
    crate::color::chroma_downsample(&full, format)
}

/// One Kodak-class synthetic still in 4:2:0.
pub fn kodak_like(seed: u64, width: usize, height: usize) -> Frame {
    rgb_to_frame(&kodak_like_rgb(seed, width, height), ChromaFormat::Cf420)
}

/// Content where each chroma block is exactly `alpha * luma_ac + beta`
/// on the chroma grid, with `alpha` drawn from the signalable grid.
/// Built directly in YCbCr.
pub fn affine_chroma(seed: u64, width: usize, height: usize, format: ChromaFormat) -> Frame {
    let mut rng = Rng::new(seed);
    let mut frame = Frame::new(width, height, format, BitDepth::Eight);
    let sx = format.step_x();
    let sy = format.step_y();

    // Textured luma: slow ramp plus noise, so blocks carry real AC.
    for y in 0..height {
        for x in 0..width {
            let base = 90.0 + 70.0 * (x as f64 / width as f64)
                + 30.0 * ((y as f64) * 0.05).sin();
            let v = (base + rng.range_f64(-22.0, 22.0)).clamp(20.0, 235.0);
            frame.y.set(x, y, v.round() as u16);
        }
    }

    let (cw, ch) = format.chroma_dims(width, height);
    let unit = 8usize; // matches the harness prediction unit
    for by in 0..ch.div_ceil(unit) {
        for bx in 0..cw.div_ceil(unit) {
            // Per-block model parameters on the signalable grid.
            let alpha_cb = (rng.below(9) as i32 - 4) * 2; // -8..8 step 2 (q3)
            let alpha_cr = (rng.below(9) as i32 - 4) * 2;
            let beta_cb = 96.0 + rng.range_f64(0.0, 64.0);
            let beta_cr = 96.0 + rng.range_f64(0.0, 64.0);

            // Mean of the subsampled luma over the visible block.
            let mut sum = 0f64;
            let mut count = 0f64;
            let x1 = ((bx + 1) * unit).min(cw);
            let y1 = ((by + 1) * unit).min(ch);
            for v in by * unit..y1 {
                for u in bx * unit..x1 {
                    sum += luma_box(&frame, u, v, sx, sy);
                    count += 1.0;
                }
            }
            let mean = sum / count;

            for v in by * unit..y1 {
                for u in bx * unit..x1 {
                    let ac = luma_box(&frame, u, v, sx, sy) - mean;
                    let cb = (beta_cb + alpha_cb as f64 / 8.0 * ac).clamp(0.0, 255.0);
                    let cr = (beta_cr + alpha_cr as f64 / 8.0 * ac).clamp(0.0, 255.0);
                    frame.cb.set(u, v, cb.round() as u16);
                    frame.cr.set(u, v, cr.round() as u16);
                }
            }
        }
    }
    frame
}

fn luma_box(frame: &Frame, u: usize, v: usize, sx: usize, sy: usize) -> f64 {
    let mut sum = 0f64;
    for dy in 0..sy {
        for dx in 0..sx {
            sum += frame.y.get_clamped(u * sx + dx, v * sy + dy) as f64;
        }
    }
    sum / (sx * sy) as f64
}

/// The default evaluation corpus: `count` seeded stills.
pub fn kodak_corpus(count: usize, width: usize, height: usize) -> Vec<Frame> {
    (0..count)
        .map(|i| kodak_like(0xC0DEC + i as u64, width, height))
        .collect()
}
