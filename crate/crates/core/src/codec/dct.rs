//! Orthonormal 2D DCT-II for the residual path.
//!
//! The basis is built from literal cosine constants rather than libm
//! calls, so forward/inverse transforms evaluate identically on every
//! platform; that keeps coded payloads bit-exact across builds.

use num_traits::Float;

use super::CodecError;

/// Transform sizes the residual path supports.
pub const TRANSFORM_SIZES: [usize; 2] = [4, 8];

// cos(j * pi / 32) for j in 0..=32; covers every angle used by the
// 4- and 8-point orthonormal bases.
const COS_PI_32: [f64; 33] = [
    1.0,
    0.9951847266721969,
    0.9807852804032304,
    0.9569403357322088,
    0.9238795325112867,
    0.881921264348355,
    0.8314696123025452,
    0.773010453362737,
    0.7071067811865476,
    0.6343932841636455,
    0.5555702330196022,
    0.47139673682599764,
    0.3826834323650898,
    0.2902846772544624,
    0.19509032201612828,
    0.0980171403295606,
    0.0,
    -0.0980171403295606,
    -0.19509032201612828,
    -0.2902846772544624,
    -0.3826834323650898,
    -0.47139673682599764,
    -0.5555702330196022,
    -0.6343932841636455,
    -0.7071067811865476,
    -0.773010453362737,
    -0.8314696123025452,
    -0.881921264348355,
    -0.9238795325112867,
    -0.9569403357322088,
    -0.9807852804032304,
    -0.9951847266721969,
    -1.0,
];

const SQRT1_8: f64 = 0.3535533905932738; // sqrt(1/8)
const SQRT1_2: f64 = 0.7071067811865476; // sqrt(1/2)

fn cos_units(units: usize) -> f64 {
    // cos has period 64 in pi/32 units and cos(x) = cos(64 - x).
    let m = units % 64;
    let m = m.min(64 - m);
    COS_PI_32[m]
}

/// Row-major `n x n` orthonormal DCT-II basis: `basis[k][j]` is the
/// weight of input `j` in output `k`.
pub fn dct_basis<T: Float>(n: usize) -> Result<Vec<T>, CodecError> {
    if !TRANSFORM_SIZES.contains(&n) {
        return Err(CodecError::UnsupportedBlockSize(n));
    }
    // Angle (2j+1) * k * pi / (2n) expressed in pi/32 units.
    let unit_scale = 16 / n;
    let (dc_scale, ac_scale) = match n {
        4 => (0.5, SQRT1_2),
        _ => (SQRT1_8, 0.5),
    };
    let mut basis = Vec::with_capacity(n * n);
    for k in 0..n {
        let scale = if k == 0 { dc_scale } else { ac_scale };
        for j in 0..n {
            let units = (2 * j + 1) * k * unit_scale;
            basis.push(T::from(scale * cos_units(units)).unwrap());
        }
    }
    Ok(basis)
}

fn apply_rows<T: Float>(basis: &[T], src: &[T], dst: &mut [T], n: usize, transpose_basis: bool) {
    for r in 0..n {
        for k in 0..n {
            let mut acc = T::zero();
            for j in 0..n {
                let b = if transpose_basis {
                    basis[j * n + k]
                } else {
                    basis[k * n + j]
                };
                acc = acc + b * src[r * n + j];
            }
            dst[r * n + k] = acc;
        }
    }
}

fn apply_cols<T: Float>(basis: &[T], src: &[T], dst: &mut [T], n: usize, transpose_basis: bool) {
    for c in 0..n {
        for k in 0..n {
            let mut acc = T::zero();
            for j in 0..n {
                let b = if transpose_basis {
                    basis[j * n + k]
                } else {
                    basis[k * n + j]
                };
                acc = acc + b * src[j * n + c];
            }
            dst[k * n + c] = acc;
        }
    }
}

/// Forward 2D DCT-II of an `n x n` block.
pub fn dct2d<T: Float>(block: &[T], n: usize) -> Result<Vec<T>, CodecError> {
    let basis = dct_basis::<T>(n)?;
    let mut tmp = vec![T::zero(); n * n];
    let mut out = vec![T::zero(); n * n];
    apply_rows(&basis, block, &mut tmp, n, false);
    apply_cols(&basis, &tmp, &mut out, n, false);
    Ok(out)
}

/// Inverse 2D DCT-II (the transpose of the orthonormal forward).
pub fn idct2d<T: Float>(coeffs: &[T], n: usize) -> Result<Vec<T>, CodecError> {
    let basis = dct_basis::<T>(n)?;
    let mut tmp = vec![T::zero(); n * n];
    let mut out = vec![T::zero(); n * n];
    apply_cols(&basis, coeffs, &mut tmp, n, true);
    apply_rows(&basis, &tmp, &mut out, n, true);
    Ok(out)
}
