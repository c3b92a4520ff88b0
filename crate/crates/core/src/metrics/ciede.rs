//! CIEDE2000 color difference over decoded frames.
//!
//! Pixels travel YCbCr -> RGB -> linear RGB -> XYZ (D65) -> Lab, then
//! the full Delta-E 2000 formula with the hue-rotation term. Chroma
//! planes are upsampled to 4:4:4 by replication before conversion.
//! The color math is generic over the float type; frames use `f64`.

use num_traits::Float;

use crate::color::{chroma_upsample_replicate, ycbcr_pixel_to_rgb_f64};
use crate::frame::Frame;

use super::MetricDimensionMismatch;

/// CIE 1976 L*a*b* color.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabColor<T> {
    pub l: T,
    pub a: T,
    pub b: T,
}

/// sRGB inverse companding to linear light, input in [0, 1].
pub fn srgb_linearize<T: Float>(c: T) -> T {
    let threshold = T::from(0.04045).unwrap();
    if c > threshold {
        ((c + T::from(0.055).unwrap()) / T::from(1.055).unwrap()).powf(T::from(2.4).unwrap())
    } else {
        c / T::from(12.92).unwrap()
    }
}

/// Linear RGB to Lab via XYZ with the D65 white point.
pub fn lab_from_linear_rgb<T: Float>(r: T, g: T, b: T) -> LabColor<T> {
    let x = T::from(0.4124564).unwrap() * r
        + T::from(0.3575761).unwrap() * g
        + T::from(0.1804375).unwrap() * b;
    let y = T::from(0.2126729).unwrap() * r
        + T::from(0.7151522).unwrap() * g
        + T::from(0.0721750).unwrap() * b;
    let z = T::from(0.0193339).unwrap() * r
        + T::from(0.1191920).unwrap() * g
        + T::from(0.9503041).unwrap() * b;

    let xn = T::from(0.95047).unwrap();
    let zn = T::from(1.08883).unwrap();
    let fx = lab_f(x / xn);
    let fy = lab_f(y);
    let fz = lab_f(z / zn);
    LabColor {
        l: T::from(116.0).unwrap() * fy - T::from(16.0).unwrap(),
        a: T::from(500.0).unwrap() * (fx - fy),
        b: T::from(200.0).unwrap() * (fy - fz),
    }
}

fn lab_f<T: Float>(t: T) -> T {
    let eps = T::from(216.0 / 24389.0).unwrap();
    if t > eps {
        t.cbrt()
    } else {
        let kappa = T::from(24389.0 / 27.0).unwrap();
        (kappa * t + T::from(16.0).unwrap()) / T::from(116.0).unwrap()
    }
}

/// The CIEDE2000 color difference between two Lab colors, including
/// the chroma-dependent lightness/chroma/hue weights and the rotation
/// term.
pub fn delta_e_2000<T: Float>(c1: LabColor<T>, c2: LabColor<T>) -> T {
    let two = T::from(2.0).unwrap();
    let half = T::from(0.5).unwrap();
    let deg180 = T::from(180.0).unwrap();
    let deg360 = T::from(360.0).unwrap();
    let pow7 = |v: T| v * v * v * v * v * v * v;
    let v25_7 = pow7(T::from(25.0).unwrap());

    let cab1 = (c1.a * c1.a + c1.b * c1.b).sqrt();
    let cab2 = (c2.a * c2.a + c2.b * c2.b).sqrt();
    let cab = (cab1 + cab2) * half;

    let g = half * (T::one() - (pow7(cab) / (pow7(cab) + v25_7)).sqrt());
    let ap1 = (T::one() + g) * c1.a;
    let ap2 = (T::one() + g) * c2.a;
    let cp1 = (ap1 * ap1 + c1.b * c1.b).sqrt();
    let cp2 = (ap2 * ap2 + c2.b * c2.b).sqrt();

    let hp = |ap: T, b: T| -> T {
        if ap == T::zero() && b == T::zero() {
            T::zero()
        } else {
            let h = b.atan2(ap).to_degrees();
            if h < T::zero() {
                h + deg360
            } else {
                h
            }
        }
    };
    let hp1 = hp(ap1, c1.b);
    let hp2 = hp(ap2, c2.b);

    let dl = c2.l - c1.l;
    let dc = cp2 - cp1;
    let prod = cp1 * cp2;
    let dhp = if prod == T::zero() {
        T::zero()
    } else {
        let mut d = hp2 - hp1;
        if d > deg180 {
            d = d - deg360;
        } else if d < -deg180 {
            d = d + deg360;
        }
        d
    };
    let dh = two * prod.sqrt() * (dhp * half).to_radians().sin();

    let lbar = (c1.l + c2.l) * half;
    let cbar = (cp1 + cp2) * half;
    let hbar = if prod == T::zero() {
        hp1 + hp2
    } else {
        let sum = hp1 + hp2;
        let diff = (hp1 - hp2).abs();
        if diff <= deg180 {
            sum * half
        } else if sum < deg360 {
            (sum + deg360) * half
        } else {
            (sum - deg360) * half
        }
    };

    let t = T::one() - T::from(0.17).unwrap() * (hbar - T::from(30.0).unwrap()).to_radians().cos()
        + T::from(0.24).unwrap() * (two * hbar).to_radians().cos()
        + T::from(0.32).unwrap()
            * (T::from(3.0).unwrap() * hbar + T::from(6.0).unwrap())
                .to_radians()
                .cos()
        - T::from(0.20).unwrap()
            * (T::from(4.0).unwrap() * hbar - T::from(63.0).unwrap())
                .to_radians()
                .cos();

    let lterm = lbar - T::from(50.0).unwrap();
    let sl = T::one()
        + T::from(0.015).unwrap() * lterm * lterm
            / (T::from(20.0).unwrap() + lterm * lterm).sqrt();
    let sc = T::one() + T::from(0.045).unwrap() * cbar;
    let sh = T::one() + T::from(0.015).unwrap() * cbar * t;

    let dtheta = T::from(30.0).unwrap()
        * (-((hbar - T::from(275.0).unwrap()) / T::from(25.0).unwrap())
            * ((hbar - T::from(275.0).unwrap()) / T::from(25.0).unwrap()))
        .exp();
    let rc = two * (pow7(cbar) / (pow7(cbar) + v25_7)).sqrt();
    let rt = -(two * dtheta).to_radians().sin() * rc;

    let tl = dl / sl;
    let tc = dc / sc;
    let th = dh / sh;
    (tl * tl + tc * tc + th * th + rt * tc * th).sqrt()
}

/// Mean Delta-E 2000 over two frames of identical geometry. Chroma is
/// replicated to full resolution; samples are normalized by bit depth
/// and converted through full-range BT.601 and sRGB.
pub fn ciede2000_frames(reference: &Frame, test: &Frame) -> Result<f64, MetricDimensionMismatch> {
    if reference.width() != test.width()
        || reference.height() != test.height()
        || reference.format != test.format
        || reference.depth != test.depth
    {
        return Err(MetricDimensionMismatch {
            left: (reference.width(), reference.height()),
            right: (test.width(), test.height()),
        });
    }
    let w = reference.width();
    let h = reference.height();
    let max = reference.depth.max_value() as f64;

    let up = |f: &Frame| {
        (
            chroma_upsample_replicate(&f.cb, f.format, w, h),
            chroma_upsample_replicate(&f.cr, f.format, w, h),
        )
    };
    let (rcb, rcr) = up(reference);
    let (tcb, tcr) = up(test);

    let mut acc = 0f64;
    for y in 0..h {
        for x in 0..w {
            let lab_of = |yv: u16, cbv: u16, crv: u16| {
                let (r, g, b) = ycbcr_pixel_to_rgb_f64(yv as f64, cbv as f64, crv as f64, max);
                lab_from_linear_rgb(srgb_linearize(r), srgb_linearize(g), srgb_linearize(b))
            };
            let l1 = lab_of(reference.y.get(x, y), rcb.get(x, y), rcr.get(x, y));
            let l2 = lab_of(test.y.get(x, y), tcb.get(x, y), tcr.get(x, y));
            acc += delta_e_2000(l1, l2);
        }
    }
    Ok(acc / (w * h) as f64)
}
