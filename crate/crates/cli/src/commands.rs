//! The three commands: `eval` (sweeps plus BD-rate report),
//! `analyze-dc` (DC predictor error distribution), and `dump-blocks`
//! (per-unit decision traces, optionally with fit comparisons).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use cfl_core::analysis::{dc_error_analysis, dc_error_csv};
use cfl_core::codec::{
    aggregate_point, encode_frame, measure_frame, rd_points_csv, FrameMeasure, QuantizerConfig,
    RdPoint,
};
use cfl_core::fit::{fit_ls_zero_mean, implicit_fit};
use cfl_core::frame::Frame;
use cfl_core::metrics::{bd_rate, RdCurve};
use cfl_core::rdo::ChromaMode;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{CflSwitch, RunConfig};
use crate::corpus::SourceImage;

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()?)
}

// (frame, quantizer) jobs in parallel, aggregated in canonical order.
fn parallel_points(
    frames: &[Frame],
    quantizers: &[u8],
    tools: &cfl_core::CodecTools,
    pool: &rayon::ThreadPool,
) -> Result<Vec<RdPoint>> {
    let depth = frames[0].depth;
    let jobs: Vec<(usize, usize)> = (0..quantizers.len())
        .flat_map(|qi| (0..frames.len()).map(move |fi| (qi, fi)))
        .collect();
    let measures: Vec<((usize, usize), FrameMeasure)> = pool.install(|| {
        jobs.par_iter()
            .map(|&(qi, fi)| {
                let q = QuantizerConfig::new(quantizers[qi]);
                measure_frame(&frames[fi], q, tools)
                    .map(|m| ((qi, fi), m))
                    .map_err(anyhow::Error::from)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut points = Vec::with_capacity(quantizers.len());
    for (qi, &q) in quantizers.iter().enumerate() {
        let mut per_q: Vec<(usize, FrameMeasure)> = measures
            .iter()
            .filter(|((j, _), _)| *j == qi)
            .map(|((_, fi), m)| (*fi, m.clone()))
            .collect();
        per_q.sort_by_key(|(fi, _)| *fi);
        let ordered: Vec<FrameMeasure> = per_q.into_iter().map(|(_, m)| m).collect();
        points.push(aggregate_point(q, depth, &ordered));
    }
    Ok(points)
}

#[derive(Debug, Serialize)]
struct BdReport {
    baseline: &'static str,
    test: &'static str,
    psnr: f64,
    psnr_cb: f64,
    psnr_cr: f64,
    ciede2000: f64,
}

fn curve(points: &[RdPoint], quality: impl Fn(&RdPoint) -> f64) -> Result<RdCurve> {
    Ok(RdCurve::new(
        points
            .iter()
            .map(|p| (p.total_bits as f64, quality(p)))
            .collect(),
    )?)
}

fn bd_report(off: &[RdPoint], on: &[RdPoint]) -> Result<BdReport> {
    // CIEDE2000 falls with rate; negate it for the quality axis.
    Ok(BdReport {
        baseline: "cfl-off",
        test: "cfl-on",
        psnr: bd_rate(&curve(off, |p| p.psnr)?, &curve(on, |p| p.psnr)?)?,
        psnr_cb: bd_rate(&curve(off, |p| p.psnr_cb)?, &curve(on, |p| p.psnr_cb)?)?,
        psnr_cr: bd_rate(&curve(off, |p| p.psnr_cr)?, &curve(on, |p| p.psnr_cr)?)?,
        ciede2000: bd_rate(
            &curve(off, |p| -p.ciede2000)?,
            &curve(on, |p| -p.ciede2000)?,
        )?,
    })
}

fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct ConfigSnapshot<'a> {
    command: &'a str,
    inputs: Vec<String>,
    quantizers: &'a [u8],
    cfl: &'a str,
    lambda_const: f64,
    rate_model: &'a str,
    seed: u64,
}

// Reproducibility record: every command writes the resolved config it
// actually ran with.
fn write_config_snapshot(cfg: &RunConfig, command: &str) -> Result<()> {
    let snapshot = ConfigSnapshot {
        command,
        inputs: cfg
            .inputs
            .iter()
            .map(|p| p.display().to_string())
            .collect(),
        quantizers: &cfg.quantizers,
        cfl: match cfg.cfl {
            CflSwitch::On => "on",
            CflSwitch::Off => "off",
            CflSwitch::Both => "both",
        },
        lambda_const: cfg.lambda_const,
        rate_model: match cfg.rate_model {
            cfl_core::codec::RateRanking::ParamOnly => "param-only",
            cfl_core::codec::RateRanking::Full => "full",
        },
        seed: cfg.seed,
    };
    write_artifact(
        &cfg.out,
        "run_config.json",
        &serde_json::to_string_pretty(&snapshot)?,
    )
}

pub fn cmd_eval(cfg: &RunConfig, corpus: &[SourceImage]) -> Result<()> {
    fs::create_dir_all(&cfg.out)
        .with_context(|| format!("creating {}", cfg.out.display()))?;
    write_config_snapshot(cfg, "eval")?;
    let frames: Vec<Frame> = corpus.iter().map(|s| s.frame.clone()).collect();
    let pool = thread_pool(cfg.jobs)?;

    let run = |enabled: bool| -> Result<Vec<RdPoint>> {
        let label = if enabled { "cfl-on" } else { "cfl-off" };
        let points = parallel_points(&frames, &cfg.quantizers, &cfg.tools(enabled), &pool)?;
        let stem = format!("rd_{}", label.replace('-', "_"));
        write_artifact(&cfg.out, &format!("{stem}.csv"), &rd_points_csv(label, &points))?;
        let json: Vec<serde_json::Value> = points
            .iter()
            .map(|p| {
                serde_json::json!({
                    "config": label,
                    "q_index": p.q_index,
                    "rate_bits": p.total_bits,
                    "psnr": p.psnr,
                    "psnr_y": p.psnr_y,
                    "psnr_cb": p.psnr_cb,
                    "psnr_cr": p.psnr_cr,
                    "ciede2000": p.ciede2000,
                    "dc_blocks": p.dc_blocks,
                    "cfl_blocks": p.cfl_blocks,
                })
            })
            .collect();
        write_artifact(
            &cfg.out,
            &format!("{stem}.json"),
            &serde_json::to_string_pretty(&json)?,
        )?;
        Ok(points)
    };

    match cfg.cfl {
        CflSwitch::On => {
            run(true)?;
        }
        CflSwitch::Off => {
            run(false)?;
        }
        CflSwitch::Both => {
            let on = run(true)?;
            let off = run(false)?;
            let report = bd_report(&off, &on)?;

            let mut table = String::new();
            writeln!(table, "BD-Rate, cfl-on vs cfl-off (percent)")?;
            writeln!(
                table,
                "{:<10}{:>10}{:>10}{:>10}{:>12}",
                "", "PSNR", "PSNR-Cb", "PSNR-Cr", "CIEDE2000"
            )?;
            writeln!(
                table,
                "{:<10}{:>10.2}{:>10.2}{:>10.2}{:>12.2}",
                "Average", report.psnr, report.psnr_cb, report.psnr_cr, report.ciede2000
            )?;
            print!("{table}");

            let mut csv = String::from("metric,bd_rate_percent\n");
            for (k, v) in [
                ("psnr", report.psnr),
                ("psnr_cb", report.psnr_cb),
                ("psnr_cr", report.psnr_cr),
                ("ciede2000", report.ciede2000),
            ] {
                writeln!(csv, "{k},{v:.6}")?;
            }
            write_artifact(&cfg.out, "bd_report.csv", &csv)?;
            write_artifact(
                &cfg.out,
                "bd_report.json",
                &serde_json::to_string_pretty(&report)?,
            )?;
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct DcErrorRow {
    size: usize,
    q1: f64,
    median: f64,
    q3: f64,
    lo_whisker: f64,
    hi_whisker: f64,
}

pub fn cmd_analyze_dc(cfg: &RunConfig, corpus: &[SourceImage]) -> Result<()> {
    fs::create_dir_all(&cfg.out)
        .with_context(|| format!("creating {}", cfg.out.display()))?;
    write_config_snapshot(cfg, "analyze-dc")?;
    let frames: Vec<Frame> = corpus.iter().map(|s| s.frame.clone()).collect();
    let stats = dc_error_analysis(&frames)?;
    let csv = dc_error_csv(&stats);
    print!("{csv}");
    write_artifact(&cfg.out, "dc_error.csv", &csv)?;
    let rows: Vec<DcErrorRow> = stats
        .iter()
        .map(|s| DcErrorRow {
            size: s.block_size,
            q1: s.q1,
            median: s.median,
            q3: s.q3,
            lo_whisker: s.lo_whisker,
            hi_whisker: s.hi_whisker,
        })
        .collect();
    write_artifact(
        &cfg.out,
        "dc_error.json",
        &serde_json::to_string_pretty(&rows)?,
    )?;
    Ok(())
}

pub const BLOCKS_CSV_HEADER: &str =
    "input,q_index,block_x,block_y,mode,alpha_cb,alpha_cr,distortion,rate_bits,cost";
pub const BLOCKS_FIT_COLUMNS: &str =
    ",fit_alpha_cb,fit_alpha_cr,implicit_alpha_cb,implicit_alpha_cr";

// Exact zero-mean subsampled luma of one chroma block, in pixel units.
fn exact_block_ac(recon: &Frame, bx: usize, by: usize, unit: usize) -> Vec<BigRational> {
    let fmt = recon.format;
    let c = fmt.coincident_samples() as i64;
    let (cw, ch) = fmt.chroma_dims(recon.y.width(), recon.y.height());
    let mut values = Vec::with_capacity(unit * unit);
    for v in 0..unit {
        for u in 0..unit {
            let cu = (bx * unit + u).min(cw - 1);
            let cv = (by * unit + v).min(ch - 1);
            let sum = cfl_core::subsample_sum(&recon.y, fmt, cu, cv).unwrap();
            values.push(BigRational::new((sum as i64).into(), c.into()));
        }
    }
    let mean: BigRational = values.iter().sum::<BigRational>()
        / BigRational::from_integer((values.len() as i64).into());
    values.into_iter().map(|v| v - &mean).collect()
}

fn rational_pixels(samples: &[u16]) -> Vec<BigRational> {
    samples
        .iter()
        .map(|&s| BigRational::from_integer((s as i64).into()))
        .collect()
}

// Explicit fit of the source chroma block against the reconstructed
// luma AC, per plane.
fn explicit_alphas(src: &Frame, recon: &Frame, bx: usize, by: usize, unit: usize) -> (f64, f64) {
    let ac = exact_block_ac(recon, bx, by, unit);
    let mut alphas = [0f64; 2];
    for (i, plane) in [&src.cb, &src.cr].into_iter().enumerate() {
        let chroma = rational_pixels(&plane.region(bx * unit, by * unit, unit, unit));
        let fit = fit_ls_zero_mean(&ac, &chroma).expect("same dims");
        alphas[i] = fit.alpha.to_f64().unwrap_or(0.0);
    }
    (alphas[0], alphas[1])
}

// Implicit (decoder-side) fit from the reconstructed neighbor ring.
fn implicit_alphas(
    recon: &Frame,
    bx: usize,
    by: usize,
    unit: usize,
) -> (Option<f64>, Option<f64>) {
    let fmt = recon.format;
    let c = fmt.coincident_samples() as i64;
    let (cw, ch) = fmt.chroma_dims(recon.y.width(), recon.y.height());
    let mut positions: Vec<(usize, usize)> = Vec::new();
    if by * unit > 0 {
        for u in 0..unit {
            let cu = (bx * unit + u).min(cw - 1);
            positions.push((cu, by * unit - 1));
        }
    }
    if bx * unit > 0 {
        for v in 0..unit {
            let cv = (by * unit + v).min(ch - 1);
            positions.push((bx * unit - 1, cv));
        }
    }
    if positions.len() < 2 {
        return (None, None);
    }
    let luma: Vec<BigRational> = positions
        .iter()
        .map(|&(u, v)| {
            let sum = cfl_core::subsample_sum(&recon.y, fmt, u, v).unwrap();
            BigRational::new((sum as i64).into(), c.into())
        })
        .collect();
    let mut out = [None; 2];
    for (i, plane) in [&recon.cb, &recon.cr].into_iter().enumerate() {
        let chroma: Vec<BigRational> = positions
            .iter()
            .map(|&(u, v)| BigRational::from_integer((plane.get(u, v) as i64).into()))
            .collect();
        out[i] = implicit_fit(&luma, &chroma)
            .ok()
            .map(|f| f.alpha.to_f64().unwrap_or(0.0));
    }
    (out[0], out[1])
}

pub fn cmd_dump_blocks(cfg: &RunConfig, corpus: &[SourceImage], fit_compare: bool) -> Result<()> {
    fs::create_dir_all(&cfg.out)
        .with_context(|| format!("creating {}", cfg.out.display()))?;
    write_config_snapshot(cfg, "dump-blocks")?;
    let cfl_enabled = !matches!(cfg.cfl, CflSwitch::Off);
    let tools = cfg.tools(cfl_enabled);
    let unit = cfl_core::codec::BLOCK;

    let mut csv = String::from(BLOCKS_CSV_HEADER);
    if fit_compare {
        csv.push_str(BLOCKS_FIT_COLUMNS);
    }
    csv.push('\n');

    for image in corpus {
        for &qi in &cfg.quantizers {
            let (_, stats, recon) = encode_frame(&image.frame, QuantizerConfig::new(qi), &tools)?;
            for t in &stats.traces {
                let (mode, a_cb, a_cr) = match t.mode {
                    ChromaMode::Dc => ("dc", 0.0, 0.0),
                    ChromaMode::Cfl(p) => (
                        "cfl",
                        p.alpha_q3_cb() as f64 / 8.0,
                        p.alpha_q3_cr() as f64 / 8.0,
                    ),
                };
                write!(
                    csv,
                    "{},{},{},{},{},{:.3},{:.3},{},{},{:.3}",
                    image.name, qi, t.bx, t.by, mode, a_cb, a_cr, t.distortion, t.rate_bits,
                    t.cost
                )?;
                if fit_compare {
                    let (f_cb, f_cr) = explicit_alphas(&image.frame, &recon, t.bx, t.by, unit);
                    let (i_cb, i_cr) = implicit_alphas(&recon, t.bx, t.by, unit);
                    let fmtopt = |v: Option<f64>| match v {
                        Some(x) => format!("{x:.4}"),
                        None => String::new(),
                    };
                    write!(
                        csv,
                        ",{f_cb:.4},{f_cr:.4},{},{}",
                        fmtopt(i_cb),
                        fmtopt(i_cr)
                    )?;
                }
                csv.push('\n');
            }
        }
    }
    print!("{}", csv.lines().take(1).collect::<String>());
    println!();
    write_artifact(&cfg.out, "blocks.csv", &csv)?;
    Ok(())
}
