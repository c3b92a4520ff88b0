//! Run configuration: command-line flags, optional TOML config file,
//! and environment overrides. Flags win over the config file.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use cfl_core::codec::RateRanking;
use cfl_core::frame::ChromaFormat;
use clap::{Args, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CflSwitch {
    On,
    Off,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RateModelArg {
    ParamOnly,
    Full,
}

impl From<RateModelArg> for RateRanking {
    fn from(v: RateModelArg) -> RateRanking {
        match v {
            RateModelArg::ParamOnly => RateRanking::ParamOnly,
            RateModelArg::Full => RateRanking::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
pub enum FormatArg {
    #[value(name = "420")]
    #[serde(rename = "420")]
    F420,
    #[value(name = "422")]
    #[serde(rename = "422")]
    F422,
    #[value(name = "440")]
    #[serde(rename = "440")]
    F440,
    #[value(name = "444")]
    #[serde(rename = "444")]
    F444,
}

impl From<FormatArg> for ChromaFormat {
    fn from(v: FormatArg) -> ChromaFormat {
        match v {
            FormatArg::F420 => ChromaFormat::Cf420,
            FormatArg::F422 => ChromaFormat::Cf422,
            FormatArg::F440 => ChromaFormat::Cf440,
            FormatArg::F444 => ChromaFormat::Cf444,
        }
    }
}

/// Shared flags. Environment variables (`CFL_*`) override defaults;
/// explicit flags override everything, including the config file.
#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Input images: .y4m (every frame) or .ppm (P6).
    #[arg(long, env = "CFL_INPUT", value_delimiter = ',')]
    pub input: Vec<PathBuf>,

    /// Optional TOML config file; flags win on conflict.
    #[arg(long, env = "CFL_CONFIG")]
    pub config: Option<PathBuf>,

    /// Quantizer indices for the sweep.
    #[arg(long, env = "CFL_QUANTIZERS", value_delimiter = ',')]
    pub quantizers: Option<Vec<u8>>,

    /// Chroma tool selection.
    #[arg(long, env = "CFL_CFL", value_enum)]
    pub cfl: Option<CflSwitch>,

    /// Lambda multiplier: lambda = const * q^2.
    #[arg(long, env = "CFL_LAMBDA_CONST")]
    pub lambda_const: Option<f64>,

    /// Candidate ranking rate model.
    #[arg(long, env = "CFL_RATE_MODEL", value_enum)]
    pub rate_model: Option<RateModelArg>,

    /// Worker threads for (frame, quantizer) jobs; 0 = all cores.
    #[arg(long, env = "CFL_JOBS")]
    pub jobs: Option<usize>,

    /// Seed recorded with the run (content generation is external, so
    /// this only tags artifacts).
    #[arg(long, env = "CFL_SEED")]
    pub seed: Option<u64>,

    /// Output directory for artifacts.
    #[arg(long, env = "CFL_OUT")]
    pub out: Option<PathBuf>,

    /// Chroma geometry for RGB (PPM) ingestion.
    #[arg(long, env = "CFL_FORMAT", value_enum)]
    pub format: Option<FormatArg>,
}

/// Config-file counterpart of the flags (all optional).
#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct FileConfig {
    pub input: Option<Vec<PathBuf>>,
    pub quantizers: Option<Vec<u8>>,
    pub cfl: Option<CflSwitch>,
    pub lambda_const: Option<f64>,
    pub rate_model: Option<RateModelArg>,
    pub jobs: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<FormatArg>,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub quantizers: Vec<u8>,
    pub cfl: CflSwitch,
    pub lambda_const: f64,
    pub rate_model: RateRanking,
    pub jobs: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub format: ChromaFormat,
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<RunConfig> {
        let file: FileConfig = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("config file {} not found", path.display()))?;
                toml::from_str(&text)
                    .with_context(|| format!("invalid config file {}", path.display()))?
            }
            None => FileConfig::default(),
        };

        let inputs = if !args.input.is_empty() {
            args.input.clone()
        } else {
            file.input.unwrap_or_default()
        };
        if inputs.is_empty() {
            bail!("no inputs given (use --input or the config file)");
        }
        for path in &inputs {
            if !path.exists() {
                bail!("input not found: {}", path.display());
            }
        }

        let quantizers = args
            .quantizers
            .clone()
            .or(file.quantizers)
            .unwrap_or_else(|| vec![20, 32, 43, 55]);
        if quantizers.is_empty() {
            bail!("quantizer list is empty");
        }

        Ok(RunConfig {
            inputs,
            quantizers,
            cfl: args.cfl.or(file.cfl).unwrap_or(CflSwitch::Both),
            lambda_const: args.lambda_const.or(file.lambda_const).unwrap_or(0.057),
            rate_model: args
                .rate_model
                .or(file.rate_model)
                .unwrap_or(RateModelArg::ParamOnly)
                .into(),
            jobs: args.jobs.or(file.jobs).unwrap_or(0),
            seed: args.seed.or(file.seed).unwrap_or(0),
            out: args
                .out
                .clone()
                .or(file.out)
                .unwrap_or_else(|| PathBuf::from("cfl-out")),
            format: args
                .format
                .or(file.format)
                .unwrap_or(FormatArg::F420)
                .into(),
        })
    }

    pub fn tools(&self, cfl_enabled: bool) -> cfl_core::CodecTools {
        cfl_core::CodecTools {
            cfl_enabled,
            rate_ranking: self.rate_model,
            lambda_const: self.lambda_const,
        }
    }
}
