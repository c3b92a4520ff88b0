//! Acceptance suite. Each test evaluates one gate criterion and prints
//! a single PASS/FAIL line (visible with `--nocapture`).
//!
//! Run: `cargo test --test acceptance -- --nocapture`

use cfl_core::analysis::dc_error_analysis;
use cfl_core::cfl::{cfl_predict, dc_predict, luma_to_q3_ac, DcPrediction, NeighborAvailability};
use cfl_core::codec::{sweep, CodecTools};
use cfl_core::ec::{
    estimate_rate_bits, CdfTable, RangeDecoder, RangeEncoder, BIT_FRAC_ONE,
};
use cfl_core::fit::{fit_ls, fit_ls_zero_mean};
use cfl_core::frame::{BitDepth, ChromaFormat, Plane};
use cfl_core::metrics::{bd_rate, delta_e_2000, LabColor, RdCurve};
use cfl_core::rdo::{rd_cost, rd_select, ChromaMode, RateModel, RdConfig};
use cfl_core::synth::{affine_chroma, kodak_corpus, Rng};
use num_rational::BigRational;

fn report(name: &str, ok: bool, details: &str) {
    println!(
        "ACCEPTANCE {name}: {} ({details})",
        if ok { "PASS" } else { "FAIL" }
    );
}

const ALL_FORMATS: [ChromaFormat; 4] = [
    ChromaFormat::Cf420,
    ChromaFormat::Cf422,
    ChromaFormat::Cf440,
    ChromaFormat::Cf444,
];
const ALL_DEPTHS: [BitDepth; 3] = [BitDepth::Eight, BitDepth::Ten, BitDepth::Twelve];
const ALL_SIZES: [usize; 4] = [4, 8, 16, 32];

#[test]
fn c01_fixed_point_containment() {
    // 10^6 random blocks over every depth, format and block size;
    // every Q3 intermediate must fit a signed 16-bit integer. The
    // intermediates are recomputed here in wide arithmetic rather than
    // trusting the pipeline's own types.
    let mut rng = Rng::new(0x16b17);
    let mut worst: i64 = 0;
    for i in 0..1_000_000u32 {
        let fmt = ALL_FORMATS[(i % 4) as usize];
        let depth = ALL_DEPTHS[(i % 3) as usize];
        let m = ALL_SIZES[rng.below(4) as usize];
        let n = ALL_SIZES[rng.below(4) as usize];
        let lw = m * fmt.step_x();
        let lh = n * fmt.step_y();
        let maxv = depth.max_value() as u64;
        let luma = Plane::from_samples(
            lw,
            lh,
            (0..lw * lh).map(|_| (rng.below(maxv + 1)) as u16).collect(),
        );
        let ac = luma_to_q3_ac(&luma, fmt, 0, 0, m, n).unwrap();

        // Wide-arithmetic reference of every intermediate.
        let shift = 3 - fmt.log2_coincident();
        let mut total: i64 = 0;
        let mut qs = Vec::with_capacity(m * n);
        for v in 0..n {
            for u in 0..m {
                let mut s: i64 = 0;
                for dy in 0..fmt.step_y() {
                    for dx in 0..fmt.step_x() {
                        s += luma.get(u * fmt.step_x() + dx, v * fmt.step_y() + dy) as i64;
                    }
                }
                let q = s << shift;
                assert!(q <= i16::MAX as i64, "q intermediate {q} exceeds i16");
                worst = worst.max(q);
                total += q;
                qs.push(q);
            }
        }
        let avg = (total + (m * n) as i64 / 2) / (m * n) as i64;
        assert!((i16::MIN as i64..=i16::MAX as i64).contains(&avg));
        for (idx, &q) in qs.iter().enumerate() {
            let val = q - avg;
            assert!(
                (i16::MIN as i64..=i16::MAX as i64).contains(&val),
                "ac value {val} exceeds i16"
            );
            assert_eq!(val, ac.values()[idx] as i64, "pipeline disagrees");
        }
    }
    report(
        "fixed-point-containment",
        true,
        &format!("10^6 blocks, worst q intermediate {worst} <= {}", i16::MAX),
    );
}

#[test]
fn c02_cfl_zero_alpha_is_dc() {
    // CfL(0) must be bit-identical to a DC fill on random blocks.
    let mut rng = Rng::new(0xDC0);
    let mut checked = 0u32;
    for _ in 0..10_000 {
        let fmt = ALL_FORMATS[rng.below(4) as usize];
        let depth = ALL_DEPTHS[rng.below(3) as usize];
        let m = ALL_SIZES[rng.below(4) as usize];
        let n = ALL_SIZES[rng.below(4) as usize];
        let lw = m * fmt.step_x();
        let lh = n * fmt.step_y();
        let maxv = depth.max_value() as u64;
        let luma = Plane::from_samples(
            lw,
            lh,
            (0..lw * lh).map(|_| rng.below(maxv + 1) as u16).collect(),
        );
        let ac = luma_to_q3_ac(&luma, fmt, 0, 0, m, n).unwrap();
        let dc = DcPrediction {
            value: rng.below(maxv + 1) as u16,
            neighbors: NeighborAvailability::Both,
        };
        let pred = cfl_predict(&ac, 0, dc, depth).unwrap();
        assert!(pred.iter().all(|&p| p == dc.value), "CfL(0) != DC fill");
        checked += 1;
    }
    report(
        "cfl-zero-equals-dc",
        true,
        &format!("{checked} random blocks bit-exact"),
    );
}

#[test]
fn c03_least_squares_equivalence() {
    // Full least squares on (L, C) and the zero-mean form on
    // (L - mean(L), C) must produce identical alphas in exact rational
    // arithmetic, and the zero-mean beta must equal mean(C).
    let mut rng = Rng::new(0x15e0);
    let mut checked = 0u32;
    for _ in 0..10_000 {
        let m = [2usize, 4, 8][rng.below(3) as usize];
        let n = [2usize, 4, 8][rng.below(3) as usize];
        let count = m * n;
        let luma: Vec<BigRational> = (0..count)
            .map(|_| BigRational::from_integer((rng.below(4096) as i64).into()))
            .collect();
        let chroma: Vec<BigRational> = (0..count)
            .map(|_| BigRational::from_integer((rng.below(4096) as i64).into()))
            .collect();
        let full = fit_ls(&luma, &chroma).unwrap();

        let mean: BigRational = luma.iter().sum::<BigRational>()
            / BigRational::from_integer((count as i64).into());
        let ac: Vec<BigRational> = luma.iter().map(|l| l - &mean).collect();
        let zm = fit_ls_zero_mean(&ac, &chroma).unwrap();

        assert_eq!(full.alpha, zm.alpha, "alpha mismatch");
        assert_eq!(full.degenerate, zm.degenerate);
        let mean_c: BigRational = chroma.iter().sum::<BigRational>()
            / BigRational::from_integer((count as i64).into());
        assert_eq!(zm.beta, mean_c, "zero-mean beta must be mean(C)");
        checked += 1;
    }
    report(
        "least-squares-equivalence",
        true,
        &format!("{checked} random blocks, exact rational equality"),
    );
}

mod rd_brute {
    use super::*;
    use cfl_core::ec::{estimate_cfl_params_bits, CflParams};
    use cfl_core::rdo::{sse, RdDecision};

    // Independent exhaustive search: DC plus all 8*16*16 parameter
    // tuples with materialized predictions.
    #[allow(clippy::too_many_arguments)]
    pub fn brute_force(
        ac_cb: &cfl_core::Q3AcBlock,
        ac_cr: &cfl_core::Q3AcBlock,
        ref_cb: &[u16],
        ref_cr: &[u16],
        dc_cb: DcPrediction,
        dc_cr: DcPrediction,
        depth: BitDepth,
        lambda: f64,
        model: &RateModel,
    ) -> RdDecision {
        let mode_bits =
            |is_cfl: bool| estimate_rate_bits(&model.mode, is_cfl as usize).unwrap();
        let key = |mode: &ChromaMode| -> (u8, u32, u8, u8, u8) {
            match mode {
                ChromaMode::Dc => (0, 0, 0, 0, 0),
                ChromaMode::Cfl(p) => (
                    1,
                    p.alpha_q3_cb().unsigned_abs() + p.alpha_q3_cr().unsigned_abs(),
                    p.joint_sign() as u8,
                    p.mag_cb().unwrap_or(0),
                    p.mag_cr().unwrap_or(0),
                ),
            }
        };
        let fill_cb = vec![dc_cb.value; ref_cb.len()];
        let fill_cr = vec![dc_cr.value; ref_cr.len()];
        let d0 = sse(&fill_cb, ref_cb).unwrap() + sse(&fill_cr, ref_cr).unwrap();
        let r0 = mode_bits(false);
        let mut best = RdDecision {
            mode: ChromaMode::Dc,
            distortion: d0,
            rate_bits: r0,
            cost: rd_cost(lambda, d0, r0),
        };
        let mut best_key = key(&best.mode);
        let mut candidates = 1usize;
        for joint in 0..8 {
            for mcb in 0..16u8 {
                for mcr in 0..16u8 {
                    let p = CflParams::from_joint_sign(joint, mcb, mcr).unwrap();
                    let pcb = cfl_predict(ac_cb, p.alpha_q3_cb(), dc_cb, depth).unwrap();
                    let pcr = cfl_predict(ac_cr, p.alpha_q3_cr(), dc_cr, depth).unwrap();
                    let d = sse(&pcb, ref_cb).unwrap() + sse(&pcr, ref_cr).unwrap();
                    let r =
                        mode_bits(true) + estimate_cfl_params_bits(&model.cfl, p).unwrap();
                    let cost = rd_cost(lambda, d, r);
                    let mode = ChromaMode::Cfl(p);
                    let k = key(&mode);
                    candidates += 1;
                    if cost < best.cost || (cost == best.cost && k < best_key) {
                        best = RdDecision {
                            mode,
                            distortion: d,
                            rate_bits: r,
                            cost,
                        };
                        best_key = k;
                    }
                }
            }
        }
        assert_eq!(candidates, 2049);
        best
    }
}

#[test]
fn c04_rd_search_exactness() {
    // 500 random cases, blocks up to 8x8, lambda in {0, 10, 100}:
    // rd_select must equal the independent brute force bit for bit.
    let mut rng = Rng::new(0xD5EA);
    let mut mismatches = 0u32;
    let mut cases = 0u32;
    for case in 0..500 {
        let m = [4usize, 8][rng.below(2) as usize];
        let n = [4usize, 8][rng.below(2) as usize];
        let depth = BitDepth::Eight;
        let maxv = depth.max_value() as u64;
        let make = |rng: &mut Rng| {
            let luma = Plane::from_samples(
                m,
                n,
                (0..m * n).map(|_| rng.below(maxv + 1) as u16).collect(),
            );
            let ac = luma_to_q3_ac(&luma, ChromaFormat::Cf444, 0, 0, m, n).unwrap();
            let reference: Vec<u16> = (0..m * n).map(|_| rng.below(maxv + 1) as u16).collect();
            let above: Vec<u16> = (0..m).map(|_| rng.below(maxv + 1) as u16).collect();
            let dc = dc_predict(Some(&above), None, depth);
            (ac, reference, dc)
        };
        let (ac_cb, ref_cb, dc_cb) = make(&mut rng);
        let (ac_cr, ref_cr, dc_cr) = make(&mut rng);

        // Exercise adapted tables too, not just the uniform start.
        let mut model = RateModel::default();
        for _ in 0..rng.below(50) {
            model.cfl.joint_sign.update(rng.below(8) as usize);
            model.mode.update(rng.below(2) as usize);
        }

        for lambda in [0.0, 10.0, 100.0] {
            let got = rd_select(
                &ac_cb,
                &ac_cr,
                &ref_cb,
                &ref_cr,
                dc_cb,
                dc_cr,
                depth,
                RdConfig { lambda },
                &model,
            )
            .unwrap();
            let want = rd_brute::brute_force(
                &ac_cb, &ac_cr, &ref_cb, &ref_cr, dc_cb, dc_cr, depth, lambda, &model,
            );
            if got != want {
                mismatches += 1;
                eprintln!("case {case} lambda {lambda}: {got:?} vs {want:?}");
            }
            cases += 1;
        }
    }
    report(
        "rd-search-exactness",
        mismatches == 0,
        &format!("{cases} searches vs 2049-candidate brute force, {mismatches} mismatches"),
    );
    assert_eq!(mismatches, 0);
}

#[test]
fn c05_entropy_coder() {
    // Roundtrip 10^5-symbol random and adversarial streams; actual
    // length within 1% + 32 bits of the estimate total; uniform 16-ary
    // rate inside [3.99, 4.10] bits/symbol.
    let mut rng = Rng::new(0xEC);

    // Random stream with a drifting skew plus adversarial sections.
    let mut symbols: Vec<usize> = Vec::with_capacity(100_000);
    for i in 0..60_000usize {
        let bias = (i / 10_000) % 16;
        symbols.push(if rng.below(4) == 0 {
            bias
        } else {
            rng.below(16) as usize
        });
    }
    symbols.extend(std::iter::repeat(0).take(10_000));
    symbols.extend(std::iter::repeat(15).take(10_000));
    symbols.extend((0..10_000).map(|i| i % 16));
    symbols.extend((0..10_000).map(|i| if i % 97 == 0 { 7 } else { 3 }));

    let mut enc = RangeEncoder::new();
    let mut cdf = CdfTable::new_uniform(16);
    let mut estimate_q9: u64 = 0;
    for &s in &symbols {
        estimate_q9 += estimate_rate_bits(&cdf, s).unwrap() as u64;
        enc.encode_symbol(&mut cdf, s).unwrap();
    }
    let bytes = enc.finish();
    let mut dec = RangeDecoder::new(&bytes).unwrap();
    let mut cdf = CdfTable::new_uniform(16);
    for (i, &s) in symbols.iter().enumerate() {
        assert_eq!(dec.decode_symbol(&mut cdf).unwrap(), s, "symbol {i}");
    }

    let actual_bits = bytes.len() as f64 * 8.0;
    let estimate_bits = estimate_q9 as f64 / BIT_FRAC_ONE as f64;
    let tolerance = 0.01 * actual_bits + 32.0;
    let rate_ok = (actual_bits - estimate_bits).abs() <= tolerance;

    // Uniform 16-ary source, 10^4 symbols.
    let mut enc = RangeEncoder::new();
    let mut cdf = CdfTable::new_uniform(16);
    let uni: Vec<usize> = (0..10_000).map(|_| rng.below(16) as usize).collect();
    for &s in &uni {
        enc.encode_symbol(&mut cdf, s).unwrap();
    }
    let uni_bytes = enc.finish();
    let mut dec = RangeDecoder::new(&uni_bytes).unwrap();
    let mut cdf = CdfTable::new_uniform(16);
    for &s in &uni {
        assert_eq!(dec.decode_symbol(&mut cdf).unwrap(), s);
    }
    let per_symbol = uni_bytes.len() as f64 * 8.0 / uni.len() as f64;
    let uniform_ok = (3.99..=4.10).contains(&per_symbol);

    report(
        "entropy-coder",
        rate_ok && uniform_ok,
        &format!(
            "10^5-symbol roundtrip ok; actual {actual_bits:.0}b vs estimate \
             {estimate_bits:.0}b (tol {tolerance:.0}b); uniform 16-ary {per_symbol:.4} b/sym"
        ),
    );
    assert!(rate_ok, "rate consistency violated");
    assert!(uniform_ok, "uniform 16-ary rate {per_symbol} outside [3.99, 4.10]");
}

#[test]
fn c06_ciede2000_reference_vectors() {
    // The published 34-pair verification dataset, each within 1e-4.
    let pairs: [(f64, f64, f64, f64, f64, f64, f64); 34] = [
        (50.0, 2.6772, -79.7751, 50.0, 0.0, -82.7485, 2.0425),
        (50.0, 3.1571, -77.2803, 50.0, 0.0, -82.7485, 2.8615),
        (50.0, 2.8361, -74.0200, 50.0, 0.0, -82.7485, 3.4412),
        (50.0, -1.3802, -84.2814, 50.0, 0.0, -82.7485, 1.0000),
        (50.0, -1.1848, -84.8006, 50.0, 0.0, -82.7485, 1.0000),
        (50.0, -0.9009, -85.5211, 50.0, 0.0, -82.7485, 1.0000),
        (50.0, 0.0, 0.0, 50.0, -1.0, 2.0, 2.3669),
        (50.0, -1.0, 2.0, 50.0, 0.0, 0.0, 2.3669),
        (50.0, 2.49, -0.001, 50.0, -2.49, 0.0009, 7.1792),
        (50.0, 2.49, -0.001, 50.0, -2.49, 0.0010, 7.1792),
        (50.0, 2.49, -0.001, 50.0, -2.49, 0.0011, 7.2195),
        (50.0, 2.49, -0.001, 50.0, -2.49, 0.0012, 7.2195),
        (50.0, -0.001, 2.49, 50.0, 0.0009, -2.49, 4.8045),
        (50.0, -0.001, 2.49, 50.0, 0.0010, -2.49, 4.8045),
        (50.0, -0.001, 2.49, 50.0, 0.0011, -2.49, 4.7461),
        (50.0, 2.5, 0.0, 50.0, 0.0, -2.5, 4.3065),
        (50.0, 2.5, 0.0, 73.0, 25.0, -18.0, 27.1492),
        (50.0, 2.5, 0.0, 61.0, -5.0, 29.0, 22.8977),
        (50.0, 2.5, 0.0, 56.0, -27.0, -3.0, 31.9030),
        (50.0, 2.5, 0.0, 58.0, 24.0, 15.0, 19.4535),
        (50.0, 2.5, 0.0, 50.0, 3.1736, 0.5854, 1.0000),
        (50.0, 2.5, 0.0, 50.0, 3.2972, 0.0, 1.0000),
        (50.0, 2.5, 0.0, 50.0, 1.8634, 0.5757, 1.0000),
        (50.0, 2.5, 0.0, 50.0, 3.2592, 0.3350, 1.0000),
        (60.2574, -34.0099, 36.2677, 60.4626, -34.1751, 39.4387, 1.2644),
        (63.0109, -31.0961, -5.8663, 62.8187, -29.7946, -4.0864, 1.2630),
        (61.2901, 3.7196, -5.3901, 61.4292, 2.2480, -4.9620, 1.8731),
        (35.0831, -44.1164, 3.7933, 35.0232, -40.0716, 1.5901, 1.8645),
        (22.7233, 20.0904, -46.6940, 23.0331, 14.9730, -42.5619, 2.0373),
        (36.4612, 47.8580, 18.3852, 36.2715, 50.5065, 21.2231, 1.4146),
        (90.8027, -2.0831, 1.4410, 91.1528, -1.6435, 0.0447, 1.4441),
        (90.9257, -0.5406, -0.9208, 88.6381, -0.8985, -0.7239, 1.5381),
        (6.7747, -0.2908, -2.4247, 5.8714, -0.0985, -2.2286, 0.6377),
        (2.0776, 0.0795, -1.1350, 0.9033, -0.0636, -0.5514, 0.9082),
    ];
    let mut worst = 0f64;
    for &(l1, a1, b1, l2, a2, b2, want) in pairs.iter() {
        let got = delta_e_2000(
            LabColor { l: l1, a: a1, b: b1 },
            LabColor { l: l2, a: a2, b: b2 },
        );
        worst = worst.max((got - want).abs());
    }
    let ok = worst < 1e-4;
    report(
        "ciede2000-reference",
        ok,
        &format!("34 published pairs, worst |err| {worst:.2e}"),
    );
    assert!(ok);
}

#[test]
fn c07_bd_rate_sanity() {
    let base = RdCurve::new(vec![
        (120_000.0, 31.0),
        (260_000.0, 34.7),
        (540_000.0, 38.1),
        (1_150_000.0, 41.2),
    ])
    .unwrap();

    let zero = bd_rate(&base, &base).unwrap();

    let scaled =
        RdCurve::new(base.points().iter().map(|&(r, q)| (r * 1.1, q)).collect()).unwrap();
    let ten = bd_rate(&base, &scaled).unwrap();

    // Reciprocal relation, exact on the constant-ratio family.
    let mut recip_ok = true;
    for ratio in [1.05, 1.25, 1.5, 2.0] {
        let test = RdCurve::new(
            base.points().iter().map(|&(r, q)| (r * ratio, q)).collect(),
        )
        .unwrap();
        let fwd = bd_rate(&base, &test).unwrap();
        let rev = bd_rate(&test, &base).unwrap();
        let want = -fwd / (1.0 + fwd / 100.0);
        recip_ok &= (rev - want).abs() < 1e-9;
    }

    let ok = zero == 0.0 && (ten - 10.0).abs() <= 1e-6 && recip_ok;
    report(
        "bd-rate-sanity",
        ok,
        &format!("identical {zero:.3}%, 1.1x {ten:.7}%, reciprocal ok: {recip_ok}"),
    );
    assert!(ok);
}

#[test]
fn c08_dc_error_medians_desk_scale() {
    // Fig-2-style distribution on a 10-image synthetic Kodak-class
    // corpus: median squared DC prediction error at or below 1.5 for
    // every chroma block size.
    let corpus = kodak_corpus(10, 384, 256);
    assert!(corpus.len() >= 8);
    let stats = dc_error_analysis(&corpus).unwrap();
    assert_eq!(stats.len(), 4);
    let mut ok = true;
    let mut details = String::new();
    for s in &stats {
        ok &= s.median <= 1.5;
        details.push_str(&format!("{}px median {:.3}; ", s.block_size, s.median));
    }
    report("dc-error-medians", ok, details.trim_end_matches("; "));
    assert!(ok, "{details}");
}

fn quality_curves(points: &[cfl_core::codec::RdPoint]) -> (RdCurve, RdCurve, RdCurve) {
    let cb = RdCurve::new(
        points
            .iter()
            .map(|p| (p.total_bits as f64, p.psnr_cb))
            .collect(),
    )
    .unwrap();
    let cr = RdCurve::new(
        points
            .iter()
            .map(|p| (p.total_bits as f64, p.psnr_cr))
            .collect(),
    )
    .unwrap();
    // CIEDE2000 falls as rate rises; negate so quality increases.
    let ciede = RdCurve::new(
        points
            .iter()
            .map(|p| (p.total_bits as f64, -p.ciede2000))
            .collect(),
    )
    .unwrap();
    (cb, cr, ciede)
}

#[test]
fn c09_directional_bd_rates() {
    // CfL on vs off over the synthetic corpus at quantizers
    // {20, 32, 43, 55}: strictly negative CIEDE2000 / PSNR-Cb /
    // PSNR-Cr BD-rates with |CIEDE2000| >= 1%; and <= -10% CIEDE2000
    // on blockwise-affine chroma content. (Closure is verified inside
    // every sweep.)
    let qs = [20u8, 32, 43, 55];
    let on = CodecTools::default();
    let off = CodecTools {
        cfl_enabled: false,
        ..CodecTools::default()
    };

    let corpus = kodak_corpus(10, 384, 256);
    let points_on = sweep(&corpus, &qs, &on).unwrap();
    let points_off = sweep(&corpus, &qs, &off).unwrap();
    let (cb_off, cr_off, de_off) = quality_curves(&points_off);
    let (cb_on, cr_on, de_on) = quality_curves(&points_on);
    let bd_cb = bd_rate(&cb_off, &cb_on).unwrap();
    let bd_cr = bd_rate(&cr_off, &cr_on).unwrap();
    let bd_de = bd_rate(&de_off, &de_on).unwrap();

    let affine: Vec<_> = (0..6)
        .map(|i| affine_chroma(0xAFF1E + i as u64, 256, 256, ChromaFormat::Cf420))
        .collect();
    let aff_on = sweep(&affine, &qs, &on).unwrap();
    let aff_off = sweep(&affine, &qs, &off).unwrap();
    let (_, _, ade_off) = quality_curves(&aff_off);
    let (_, _, ade_on) = quality_curves(&aff_on);
    let bd_affine = bd_rate(&ade_off, &ade_on).unwrap();

    let ok = bd_de < 0.0
        && bd_cb < 0.0
        && bd_cr < 0.0
        && bd_de.abs() >= 1.0
        && bd_affine <= -10.0;
    report(
        "directional-bd-rates",
        ok,
        &format!(
            "kodak-class: ciede {bd_de:.2}%, psnr-cb {bd_cb:.2}%, psnr-cr {bd_cr:.2}%; \
             affine ciede {bd_affine:.2}%"
        ),
    );
    assert!(ok);
}

#[test]
fn c10_codec_closure() {
    // Explicit decoder-replay equality over a corpus slice at every
    // quantizer and tool setting (the sweeps in c09 also enforce it on
    // every payload they produce).
    let corpus = kodak_corpus(3, 192, 128);
    let mut payloads = 0u32;
    for frame in &corpus {
        for q in [20u8, 32, 43, 55] {
            for cfl in [false, true] {
                let tools = CodecTools {
                    cfl_enabled: cfl,
                    ..CodecTools::default()
                };
                let (blob, _, recon) =
                    cfl_core::encode_frame(frame, cfl_core::QuantizerConfig::new(q), &tools)
                        .unwrap();
                let decoded = cfl_core::decode_frame(&blob).unwrap();
                assert_eq!(decoded, recon, "q={q} cfl={cfl}");
                payloads += 1;
            }
        }
    }
    report(
        "codec-closure",
        true,
        &format!("{payloads} payloads replayed bit-exactly"),
    );
}
