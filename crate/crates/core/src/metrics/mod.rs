//! Quality metrics and RD-curve comparison.

mod bd;
mod ciede;

pub use bd::{bd_rate, bd_rate_classic, BdError, RdCurve};
pub use ciede::{ciede2000_frames, delta_e_2000, lab_from_linear_rgb, srgb_linearize, LabColor};

use std::fmt;

use crate::frame::{BitDepth, Plane};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricDimensionMismatch {
    pub left: (usize, usize),
    pub right: (usize, usize),
}

impl fmt::Display for MetricDimensionMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "plane dimensions {}x{} vs {}x{}",
            self.left.0, self.left.1, self.right.0, self.right.1
        )
    }
}

impl std::error::Error for MetricDimensionMismatch {}

/// PSNR cap applied when the planes are identical (MSE of zero).
pub const PSNR_CAP_DB: f64 = 100.0;

/// Sum of squared errors and sample count for one plane pair.
pub fn plane_sse(a: &Plane, b: &Plane) -> Result<(u64, usize), MetricDimensionMismatch> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(MetricDimensionMismatch {
            left: (a.width(), a.height()),
            right: (b.width(), b.height()),
        });
    }
    let mut acc = 0u64;
    for y in 0..a.height() {
        for (&x, &z) in a.row(y).iter().zip(b.row(y).iter()) {
            let d = x as i64 - z as i64;
            acc += (d * d) as u64;
        }
    }
    Ok((acc, a.width() * a.height()))
}

/// PSNR from a pooled SSE over `samples` values.
pub fn psnr_from_sse(sse: u64, samples: usize, depth: BitDepth) -> f64 {
    if sse == 0 {
        return PSNR_CAP_DB;
    }
    let max = depth.max_value() as f64;
    let mse = sse as f64 / samples as f64;
    10.0 * (max * max / mse).log10()
}

/// Peak signal-to-noise ratio between two planes, in dB. Identical
/// planes report the 100 dB cap.
pub fn psnr(a: &Plane, b: &Plane, depth: BitDepth) -> Result<f64, MetricDimensionMismatch> {
    let (sse, n) = plane_sse(a, b)?;
    Ok(psnr_from_sse(sse, n, depth))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_planes_hit_cap() {
        let p = Plane::filled(16, 16, 77);
        assert_eq!(psnr(&p, &p, BitDepth::Eight).unwrap(), PSNR_CAP_DB);
    }

    #[test]
    fn unit_mse_is_48_13_db() {
        let a = Plane::filled(16, 16, 100);
        let b = Plane::filled(16, 16, 101);
        let got = psnr(&a, &b, BitDepth::Eight).unwrap();
        assert!((got - 48.130803608679344).abs() < 1e-9, "{got}");
    }

    #[test]
    fn matches_direct_summation() {
        let mut a = Plane::new(8, 8);
        let mut b = Plane::new(8, 8);
        let mut acc = 0f64;
        for y in 0..8 {
            for x in 0..8 {
                let va = ((x * 31 + y * 17) % 256) as u16;
                let vb = ((x * 13 + y * 41 + 7) % 256) as u16;
                a.set(x, y, va);
                b.set(x, y, vb);
                let d = va as f64 - vb as f64;
                acc += d * d;
            }
        }
        let want = 10.0 * (255.0f64 * 255.0 / (acc / 64.0)).log10();
        let got = psnr(&a, &b, BitDepth::Eight).unwrap();
        assert!((got - want).abs() < 1e-9);
    }

    #[test]
    fn decreases_with_noise_amplitude() {
        let a = Plane::filled(16, 16, 100);
        let mut prev = f64::INFINITY;
        for amp in [1u16, 2, 4, 8] {
            let mut b = a.clone();
            for y in 0..16 {
                for x in 0..16 {
                    let sign = (x + y) % 2 == 0;
                    let v = if sign { 100 + amp } else { 100 - amp };
                    b.set(x, y, v);
                }
            }
            let p = psnr(&a, &b, BitDepth::Eight).unwrap();
            assert!(p < prev);
            prev = p;
        }
    }

    #[test]
    fn dimension_mismatch() {
        let a = Plane::new(4, 4);
        let b = Plane::new(4, 5);
        assert!(psnr(&a, &b, BitDepth::Eight).is_err());
    }
}
