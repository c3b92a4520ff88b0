//! Input ingestion: Y4M streams (every frame) and P6 PPM stills.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use cfl_core::color::{chroma_downsample, rgb_to_ycbcr};
use cfl_core::frame::{ChromaFormat, Frame};
use cfl_core::{ppm, y4m};

/// One loaded image with its provenance (for trace output).
pub struct SourceImage {
    pub name: String,
    pub frame: Frame,
}

pub fn load_corpus(inputs: &[PathBuf], ppm_format: ChromaFormat) -> Result<Vec<SourceImage>> {
    let mut corpus = Vec::new();
    for path in inputs {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase())
            .unwrap_or_default();
        match ext.as_str() {
            "y4m" => load_y4m(path, &mut corpus)?,
            "ppm" => load_ppm(path, ppm_format, &mut corpus)?,
            other => bail!(
                "unsupported input {} (extension {other:?}; expected .y4m or .ppm)",
                path.display()
            ),
        }
    }
    if corpus.is_empty() {
        bail!("inputs contained no frames");
    }
    Ok(corpus)
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("input")
        .to_string()
}

fn load_y4m(path: &Path, corpus: &mut Vec<SourceImage>) -> Result<()> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut reader = BufReader::new(file);
    let (_, frames) =
        y4m::read_y4m(&mut reader).with_context(|| format!("parsing {}", path.display()))?;
    let base = stem(path);
    let multi = frames.len() > 1;
    for (i, f) in frames.into_iter().enumerate() {
        let name = if multi {
            format!("{base}#{i}")
        } else {
            base.clone()
        };
        corpus.push(SourceImage {
            name,
            frame: f.frame,
        });
    }
    Ok(())
}

fn load_ppm(path: &Path, format: ChromaFormat, corpus: &mut Vec<SourceImage>) -> Result<()> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut reader = BufReader::new(file);
    let img =
        ppm::read_ppm(&mut reader).with_context(|| format!("parsing {}", path.display()))?;
    let frame = chroma_downsample(&rgb_to_ycbcr(&img), format);
    corpus.push(SourceImage {
        name: stem(path),
        frame,
    });
    Ok(())
}
