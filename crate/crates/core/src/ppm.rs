//! Raw PPM (P6) ingestion for RGB source images.

use std::fmt;
use std::io::{self, Read};

#[derive(Debug)]
pub enum PpmError {
    /// Not a binary PPM (`P6`) file.
    MissingMagic,
    MalformedHeader(String),
    /// Only 8-bit (maxval <= 255) images are supported.
    UnsupportedMaxval(u32),
    Truncated,
    Io(io::Error),
}

impl fmt::Display for PpmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PpmError::MissingMagic => write!(f, "not a P6 PPM file"),
            PpmError::MalformedHeader(m) => write!(f, "malformed PPM header: {m}"),
            PpmError::UnsupportedMaxval(v) => write!(f, "unsupported PPM maxval {v}"),
            PpmError::Truncated => write!(f, "PPM pixel data truncated"),
            PpmError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for PpmError {}

impl From<io::Error> for PpmError {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::UnexpectedEof {
            PpmError::Truncated
        } else {
            PpmError::Io(e)
        }
    }
}

/// 8-bit interleaved RGB image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    pub width: usize,
    pub height: usize,
    /// `width * height * 3` bytes, RGB order.
    pub data: Vec<u8>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize) -> RgbImage {
        RgbImage {
            width,
            height,
            data: vec![0; width * height * 3],
        }
    }

    #[inline]
    pub fn pixel(&self, x: usize, y: usize) -> (u8, u8, u8) {
        let i = (y * self.width + x) * 3;
        (self.data[i], self.data[i + 1], self.data[i + 2])
    }

    #[inline]
    pub fn set_pixel(&mut self, x: usize, y: usize, rgb: (u8, u8, u8)) {
        let i = (y * self.width + x) * 3;
        self.data[i] = rgb.0;
        self.data[i + 1] = rgb.1;
        self.data[i + 2] = rgb.2;
    }
}

// Reads one whitespace-delimited token, skipping `#` comments.
fn read_token<R: Read>(reader: &mut R) -> Result<String, PpmError> {
    let mut tok = String::new();
    let mut byte = [0u8; 1];
    let mut in_comment = false;
    loop {
        if reader.read(&mut byte)? == 0 {
            if tok.is_empty() {
                return Err(PpmError::MalformedHeader("unexpected end of header".into()));
            }
            return Ok(tok);
        }
        let c = byte[0];
        if in_comment {
            if c == b'\n' {
                in_comment = false;
            }
            continue;
        }
        match c {
            b'#' => in_comment = true,
            b' ' | b'\t' | b'\r' | b'\n' => {
                if !tok.is_empty() {
                    return Ok(tok);
                }
            }
            _ => tok.push(c as char),
        }
        if tok.len() > 32 {
            return Err(PpmError::MalformedHeader("oversized header token".into()));
        }
    }
}

pub fn read_ppm<R: Read>(reader: &mut R) -> Result<RgbImage, PpmError> {
    let mut magic = [0u8; 2];
    reader.read_exact(&mut magic).map_err(|_| PpmError::MissingMagic)?;
    if &magic != b"P6" {
        return Err(PpmError::MissingMagic);
    }
    let parse = |t: String| -> Result<u32, PpmError> {
        t.parse::<u32>()
            .map_err(|_| PpmError::MalformedHeader(format!("bad number {t:?}")))
    };
    let width = parse(read_token(reader)?)? as usize;
    let height = parse(read_token(reader)?)? as usize;
    let maxval = parse(read_token(reader)?)?;
    if width == 0 || height == 0 {
        return Err(PpmError::MalformedHeader("zero dimension".into()));
    }
    if maxval == 0 || maxval > 255 {
        return Err(PpmError::UnsupportedMaxval(maxval));
    }
    // The single whitespace byte after maxval was consumed by read_token.
    let mut img = RgbImage::new(width, height);
    reader.read_exact(&mut img.data)?;
    Ok(img)
}

pub fn write_ppm<W: io::Write>(writer: &mut W, img: &RgbImage) -> Result<(), PpmError> {
    writeln!(writer, "P6")?;
    writeln!(writer, "{} {}", img.width, img.height)?;
    writeln!(writer, "255")?;
    writer.write_all(&img.data)?;
    Ok(())
}
