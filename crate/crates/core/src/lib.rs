//! Chroma-from-luma intra prediction with a still-image coding
//! harness.
//!
//! The predictor models chroma as a scaled zero-mean luma contribution
//! on top of a DC prediction: reconstructed luma is subsampled to the
//! chroma grid by integer sums, scaled into 1/8th-pel fixed point with
//! a shift, zero-meaned with a single rounded division, multiplied by
//! a signaled Q3 scaling parameter and added to the DC predictor.
//! Scaling parameters are chosen by exhaustive rate-distortion search
//! and signaled with an adaptive multi-symbol range coder (one 8-ary
//! joint-sign symbol, 16-ary magnitudes for the non-zero planes).
//!
//! Around the predictor sits a minimal still-image chroma coding
//! harness (DC-predicted luma, DCT residuals, dead-zone quantizer)
//! that produces real rate-distortion points, plus PSNR / CIEDE2000
//! metrics and BD-rate curve comparison.
//!
//! Numeric conventions: pixel pipelines are integer and bit-exact;
//! model fitting is generic over the scalar type (exact rationals for
//! the reference fits), and the floating-point metric/transform math
//! is generic over `num_traits::Float` with `f64` as the concrete
//! type used by the codec (see [`Real`]).

pub mod analysis;
pub mod cfl;
pub mod codec;
pub mod color;
pub mod ec;
pub mod fit;
pub mod frame;
pub mod metrics;
pub mod ppm;
pub mod rdo;
pub mod synth;
pub mod y4m;

/// Floating-point scalar used by the codec's transforms and metrics.
pub type Real = f64;

/// Exact rational scalar used by the reference model fits.
pub type Exact = num_rational::BigRational;

pub use cfl::{cfl_predict, dc_predict, luma_to_q3_ac, subsample_sum, DcPrediction, Q3AcBlock};
pub use codec::{decode_frame, encode_frame, sweep, CodecTools, QuantizerConfig};
pub use frame::{BitDepth, ChromaFormat, Frame, Plane};
pub use metrics::{bd_rate, ciede2000_frames, psnr, RdCurve};
pub use rdo::{rd_select, RdConfig, RdDecision};
