//! Linear model fitting for the predictor: full least squares, the
//! zero-mean simplification, and the neighbor-based implicit variant.
//!
//! All routines are generic over the scalar type. Instantiated with
//! [`ExactScalar`] (arbitrary-precision rationals) the results are
//! exact, which is what the equivalence and optimality properties rely
//! on; `f64` works for quick approximate fits.

use std::fmt;

use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

/// Scalar requirements for the fitting math: a signed field with
/// exact equality on zero (used for degeneracy detection).
pub trait FitScalar: Num + Signed + Clone + PartialOrd {}
impl<T: Num + Signed + Clone + PartialOrd> FitScalar for T {}

/// Exact rational scalar used by the reference fits.
pub type ExactScalar = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitError {
    DimensionMismatch { left: usize, right: usize },
    /// Fewer than two neighbor pairs for the implicit fit.
    InsufficientNeighbors(usize),
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::DimensionMismatch { left, right } => {
                write!(f, "block lengths differ: {left} vs {right}")
            }
            FitError::InsufficientNeighbors(n) => {
                write!(f, "implicit fit needs at least 2 neighbor pairs, got {n}")
            }
        }
    }
}

impl std::error::Error for FitError {}

/// Least-squares model `chroma ~ alpha * luma + beta`.
///
/// `degenerate` is set when the normal-equation denominator is zero
/// (constant luma); the fallback is then `alpha = 0`, `beta = mean(chroma)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult<T> {
    pub alpha: T,
    pub beta: T,
    pub degenerate: bool,
}

/// Converts integer samples to a scalar block.
pub fn samples_to_scalars(samples: &[u16]) -> Vec<ExactScalar> {
    samples
        .iter()
        .map(|&s| BigRational::from_integer(s.into()))
        .collect()
}

/// Converts Q3 fixed-point values to pixel-unit scalars (value / 8).
pub fn q3_to_scalars(values: &[i16]) -> Vec<ExactScalar> {
    let eight = BigRational::from_integer(8.into());
    values
        .iter()
        .map(|&v| BigRational::from_integer(v.into()) / eight.clone())
        .collect()
}

fn from_usize<T: FitScalar>(n: usize) -> T {
    let mut acc = T::zero();
    for _ in 0..n {
        acc = acc + T::one();
    }
    acc
}

/// Full least-squares fit of `chroma = alpha * luma + beta` over two
/// equally-sized blocks, via the closed-form normal equations.
pub fn fit_ls<T: FitScalar>(luma: &[T], chroma: &[T]) -> Result<FitResult<T>, FitError> {
    if luma.len() != chroma.len() {
        return Err(FitError::DimensionMismatch {
            left: luma.len(),
            right: chroma.len(),
        });
    }
    let n = from_usize::<T>(luma.len());
    let mut sum_l = T::zero();
    let mut sum_c = T::zero();
    let mut sum_ll = T::zero();
    let mut sum_lc = T::zero();
    for (l, c) in luma.iter().zip(chroma.iter()) {
        sum_l = sum_l + l.clone();
        sum_c = sum_c + c.clone();
        sum_ll = sum_ll + l.clone() * l.clone();
        sum_lc = sum_lc + l.clone() * c.clone();
    }
    let denom = n.clone() * sum_ll - sum_l.clone() * sum_l.clone();
    if denom.is_zero() {
        return Ok(FitResult {
            alpha: T::zero(),
            beta: sum_c / n,
            degenerate: true,
        });
    }
    let alpha = (n.clone() * sum_lc - sum_l.clone() * sum_c.clone()) / denom;
    let beta = (sum_c - alpha.clone() * sum_l) / n;
    Ok(FitResult {
        alpha,
        beta,
        degenerate: false,
    })
}

/// Simplified fit for zero-mean luma input: `alpha = sum(ac * c) /
/// sum(ac^2)`, `beta = mean(c)`. The caller supplies exactly zero-mean
/// `ac` values (exact rationals, not the rounded Q3 block).
pub fn fit_ls_zero_mean<T: FitScalar>(ac: &[T], chroma: &[T]) -> Result<FitResult<T>, FitError> {
    if ac.len() != chroma.len() {
        return Err(FitError::DimensionMismatch {
            left: ac.len(),
            right: chroma.len(),
        });
    }
    let n = from_usize::<T>(ac.len());
    let mut sum_c = T::zero();
    let mut sum_aa = T::zero();
    let mut sum_ac = T::zero();
    for (a, c) in ac.iter().zip(chroma.iter()) {
        sum_c = sum_c + c.clone();
        sum_aa = sum_aa + a.clone() * a.clone();
        sum_ac = sum_ac + a.clone() * c.clone();
    }
    let beta = sum_c / n;
    if sum_aa.is_zero() {
        return Ok(FitResult {
            alpha: T::zero(),
            beta,
            degenerate: true,
        });
    }
    Ok(FitResult {
        alpha: sum_ac / sum_aa,
        beta,
        degenerate: false,
    })
}

/// Zero-mean chroma prediction: `alpha * ac + beta` evaluated
/// elementwise over a zero-mean luma block.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroMeanPrediction<T> {
    values: Vec<T>,
}

impl<T: FitScalar> ZeroMeanPrediction<T> {
    pub fn from_fit(fit: &FitResult<T>, ac: &[T]) -> ZeroMeanPrediction<T> {
        ZeroMeanPrediction {
            values: ac
                .iter()
                .map(|a| fit.alpha.clone() * a.clone() + fit.beta.clone())
                .collect(),
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Sum of squared prediction errors against a chroma block.
    pub fn sse(&self, chroma: &[T]) -> T {
        self.values
            .iter()
            .zip(chroma.iter())
            .map(|(p, c)| {
                let e = c.clone() - p.clone();
                e.clone() * e
            })
            .fold(T::zero(), |acc, e| acc + e)
    }
}

/// Decoder-style fit from border samples only; requires at least two
/// neighbor pairs. Used by the implicit-vs-explicit comparison mode.
pub fn implicit_fit<T: FitScalar>(
    neighbor_luma: &[T],
    neighbor_chroma: &[T],
) -> Result<FitResult<T>, FitError> {
    if neighbor_luma.len() != neighbor_chroma.len() {
        return Err(FitError::DimensionMismatch {
            left: neighbor_luma.len(),
            right: neighbor_chroma.len(),
        });
    }
    if neighbor_luma.len() < 2 {
        return Err(FitError::InsufficientNeighbors(neighbor_luma.len()));
    }
    fit_ls(neighbor_luma, neighbor_chroma)
}

/// Snaps an alpha value to the signalable grid: sign in {-, 0, +} and
/// magnitudes {1/8, ..., 16/8}. Returns the quantized alpha in Q3
/// units (`0` means the zero sign). Values beyond +-2 saturate to the
/// boundary; exact ties round toward the smaller magnitude.
pub fn quantize_alpha(alpha: &BigRational) -> i32 {
    let eight = BigRational::from_integer(8.into());
    let half = Ratio::new(1.into(), 2.into());
    let scaled = alpha.abs() * eight;
    // Round to nearest with ties toward zero magnitude.
    let mut mag = (&scaled + &half).floor();
    if (&mag - &scaled) == half {
        mag -= BigRational::from_integer(1.into());
    }
    let mag: i32 = if mag > BigRational::from_integer(16.into()) {
        16
    } else {
        mag.to_integer().try_into().unwrap()
    };
    if alpha.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Convenience for `f64` alphas: converts exactly (every finite f64 is
/// a binary rational) and quantizes on the exact grid.
pub fn quantize_alpha_f64(alpha: f64) -> i32 {
    match BigRational::from_float(alpha) {
        Some(r) => quantize_alpha(&r),
        // NaN / infinities: treat like the zero slope.
        None => {
            if alpha == f64::INFINITY {
                16
            } else if alpha == f64::NEG_INFINITY {
                -16
            } else {
                0
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratf(n: i64, d: i64) -> BigRational {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn exact_linear_data_recovers_model() {
        let luma: Vec<BigRational> = (0..16).map(rat).collect();
        let chroma: Vec<BigRational> = (0..16).map(|l| rat(2 * l + 3)).collect();
        let fit = fit_ls(&luma, &chroma).unwrap();
        assert!(!fit.degenerate);
        assert_eq!(fit.alpha, rat(2));
        assert_eq!(fit.beta, rat(3));
    }

    #[test]
    fn constant_luma_is_degenerate() {
        let luma = vec![rat(7); 8];
        let chroma: Vec<BigRational> = (0..8).map(rat).collect();
        let fit = fit_ls(&luma, &chroma).unwrap();
        assert!(fit.degenerate);
        assert_eq!(fit.alpha, rat(0));
        assert_eq!(fit.beta, ratf(28, 8));
    }

    #[test]
    fn dimension_mismatch() {
        let a = vec![rat(1); 4];
        let b = vec![rat(1); 5];
        assert!(matches!(
            fit_ls(&a, &b),
            Err(FitError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn zero_mean_two_point_slope() {
        let ac = vec![rat(-1), rat(1)];
        let chroma = vec![rat(10), rat(14)];
        let fit = fit_ls_zero_mean(&ac, &chroma).unwrap();
        assert_eq!(fit.alpha, rat(2));
        assert_eq!(fit.beta, rat(12));
    }

    #[test]
    fn zero_mean_all_zero_ac_is_degenerate() {
        let ac = vec![rat(0); 4];
        let chroma = vec![rat(1), rat(2), rat(3), rat(6)];
        let fit = fit_ls_zero_mean(&ac, &chroma).unwrap();
        assert!(fit.degenerate);
        assert_eq!(fit.beta, rat(3));
    }

    #[test]
    fn implicit_fit_needs_two_pairs() {
        let one = vec![rat(5)];
        assert!(matches!(
            implicit_fit(&one, &one),
            Err(FitError::InsufficientNeighbors(1))
        ));
        let luma = vec![rat(0), rat(2), rat(4)];
        let chroma = vec![rat(1), rat(5), rat(9)];
        let fit = implicit_fit(&luma, &chroma).unwrap();
        assert_eq!(fit.alpha, rat(2));
        assert_eq!(fit.beta, rat(1));
    }

    #[test]
    fn f64_instantiation_works() {
        let luma: Vec<f64> = (0..8).map(|v| v as f64).collect();
        let chroma: Vec<f64> = luma.iter().map(|l| 0.5 * l - 1.0).collect();
        let fit = fit_ls(&luma, &chroma).unwrap();
        assert!((fit.alpha - 0.5).abs() < 1e-12);
        assert!((fit.beta + 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_mean_prediction_matches_model() {
        let ac = vec![rat(-2), rat(-1), rat(1), rat(2)];
        let chroma = vec![rat(6), rat(8), rat(12), rat(14)];
        let fit = fit_ls_zero_mean(&ac, &chroma).unwrap();
        let pred = ZeroMeanPrediction::from_fit(&fit, &ac);
        // Noiseless linear data: the prediction reproduces it exactly.
        assert_eq!(pred.values(), &chroma[..]);
        assert_eq!(pred.sse(&chroma), rat(0));
    }

    #[test]
    fn quantize_grid_points() {
        assert_eq!(quantize_alpha(&ratf(99, 100)), 8); // 0.99 -> 1.0
        assert_eq!(quantize_alpha(&ratf(-7, 2)), -16); // -3.5 saturates to -2.0
        assert_eq!(quantize_alpha(&ratf(1, 16)), 0); // tie 0 vs 1/8 -> smaller
        assert_eq!(quantize_alpha(&ratf(3, 16)), 1); // tie 1/8 vs 2/8 -> smaller
        assert_eq!(quantize_alpha(&ratf(-3, 16)), -1);
        assert_eq!(quantize_alpha(&rat(2)), 16);
        assert_eq!(quantize_alpha(&rat(0)), 0);
        assert_eq!(quantize_alpha_f64(1.0), 8);
        assert_eq!(quantize_alpha_f64(0.0625), 0);
    }
}
