//! YUV4MPEG2 (Y4M) stream reading and writing.
//!
//! The writer re-emits the tokens the reader captured, so
//! `write(read(x))` is bit-identical to `x` for supported colorspaces.

use std::fmt;
use std::io::{self, Read, Write};

use crate::frame::{BitDepth, ChromaFormat, Frame, Plane};

const MAGIC: &[u8] = b"YUV4MPEG2";
const MAX_HEADER_LEN: usize = 1024;

#[derive(Debug)]
pub enum Y4mError {
    /// Stream does not start with `YUV4MPEG2`.
    MissingMagic,
    /// A `C` tag we cannot represent.
    UnsupportedColorspace(String),
    /// Header present but unparseable (missing W/H/F, bad numbers, ...).
    MalformedHeader(String),
    /// Stream ended inside a frame's sample data.
    TruncatedFrame,
    /// Expected a `FRAME` line and found something else.
    MissingFrameMarker,
    Io(io::Error),
}

impl fmt::Display for Y4mError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Y4mError::MissingMagic => write!(f, "not a YUV4MPEG2 stream"),
            Y4mError::UnsupportedColorspace(c) => write!(f, "unsupported colorspace {c}"),
            Y4mError::MalformedHeader(m) => write!(f, "malformed Y4M header: {m}"),
            Y4mError::TruncatedFrame => write!(f, "stream truncated inside a frame"),
            Y4mError::MissingFrameMarker => write!(f, "missing FRAME marker"),
            Y4mError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Y4mError {}

impl From<io::Error> for Y4mError {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::UnexpectedEof {
            Y4mError::TruncatedFrame
        } else {
            Y4mError::Io(e)
        }
    }
}

/// Parsed stream header. `tokens` holds the original header tokens
/// (everything after the magic) verbatim so a rewrite is bit-exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Y4mHeader {
    pub width: usize,
    pub height: usize,
    pub fps_num: u32,
    pub fps_den: u32,
    pub format: ChromaFormat,
    pub depth: BitDepth,
    tokens: Vec<String>,
}

impl Y4mHeader {
    /// Header with canonical tokens for programmatic stream creation.
    pub fn new(
        width: usize,
        height: usize,
        fps_num: u32,
        fps_den: u32,
        format: ChromaFormat,
        depth: BitDepth,
    ) -> Y4mHeader {
        let ctag = match (format, depth) {
            (ChromaFormat::Cf420, BitDepth::Eight) => "C420".to_string(),
            (ChromaFormat::Cf422, BitDepth::Eight) => "C422".to_string(),
            (ChromaFormat::Cf440, BitDepth::Eight) => "C440".to_string(),
            (ChromaFormat::Cf444, BitDepth::Eight) => "C444".to_string(),
            (fmt, d) => {
                let base = match fmt {
                    ChromaFormat::Cf420 => "C420",
                    ChromaFormat::Cf422 => "C422",
                    ChromaFormat::Cf440 => "C440",
                    ChromaFormat::Cf444 => "C444",
                };
                format!("{base}p{}", d.bits())
            }
        };
        let tokens = vec![
            format!("W{width}"),
            format!("H{height}"),
            format!("F{fps_num}:{fps_den}"),
            ctag,
        ];
        Y4mHeader {
            width,
            height,
            fps_num,
            fps_den,
            format,
            depth,
            tokens,
        }
    }

    fn header_line(&self) -> String {
        let mut line = String::from("YUV4MPEG2");
        for t in &self.tokens {
            line.push(' ');
            line.push_str(t);
        }
        line.push('\n');
        line
    }
}

fn map_colorspace(tag: &str) -> Result<(ChromaFormat, BitDepth), Y4mError> {
    let unsupported = || Y4mError::UnsupportedColorspace(format!("C{tag}"));
    // C420 and its chroma-siting variants share the same plane layout.
    let (base, rest) = if let Some(r) = tag.strip_prefix("420") {
        (ChromaFormat::Cf420, r)
    } else if let Some(r) = tag.strip_prefix("422") {
        (ChromaFormat::Cf422, r)
    } else if let Some(r) = tag.strip_prefix("440") {
        (ChromaFormat::Cf440, r)
    } else if let Some(r) = tag.strip_prefix("444") {
        (ChromaFormat::Cf444, r)
    } else {
        return Err(unsupported());
    };
    let depth = match rest {
        "" => BitDepth::Eight,
        "jpeg" | "mpeg2" | "paldv" if base == ChromaFormat::Cf420 => BitDepth::Eight,
        "p10" => BitDepth::Ten,
        "p12" => BitDepth::Twelve,
        _ => return Err(unsupported()),
    };
    Ok((base, depth))
}

fn read_line<R: Read>(reader: &mut R) -> Result<Vec<u8>, Y4mError> {
    let mut line = Vec::new();
    let mut byte = [0u8; 1];
    loop {
        match reader.read(&mut byte)? {
            0 => return Err(Y4mError::TruncatedFrame),
            _ => {
                if byte[0] == b'\n' {
                    return Ok(line);
                }
                line.push(byte[0]);
                if line.len() > MAX_HEADER_LEN {
                    return Err(Y4mError::MalformedHeader("header line too long".into()));
                }
            }
        }
    }
}

/// Parses the stream header, leaving the reader positioned at the
/// first `FRAME` marker. A missing `C` tag defaults to 8-bit 4:2:0.
pub fn parse_y4m_header<R: Read>(reader: &mut R) -> Result<Y4mHeader, Y4mError> {
    let mut magic = [0u8; 9];
    reader.read_exact(&mut magic).map_err(|_| Y4mError::MissingMagic)?;
    if magic != *MAGIC {
        return Err(Y4mError::MissingMagic);
    }
    let line = match read_line(reader) {
        Ok(l) => l,
        Err(Y4mError::TruncatedFrame) => {
            return Err(Y4mError::MalformedHeader("unterminated header".into()))
        }
        Err(e) => return Err(e),
    };
    let line = String::from_utf8(line)
        .map_err(|_| Y4mError::MalformedHeader("non-utf8 header".into()))?;

    let mut width = None;
    let mut height = None;
    let mut fps = None;
    let mut colorspace = None;
    let mut tokens = Vec::new();
    for tok in line.split(' ').filter(|t| !t.is_empty()) {
        tokens.push(tok.to_string());
        let (key, value) = tok.split_at(1);
        match key {
            "W" => {
                width = Some(value.parse::<usize>().map_err(|_| {
                    Y4mError::MalformedHeader(format!("bad width {value:?}"))
                })?)
            }
            "H" => {
                height = Some(value.parse::<usize>().map_err(|_| {
                    Y4mError::MalformedHeader(format!("bad height {value:?}"))
                })?)
            }
            "F" => {
                let (num, den) = value.split_once(':').ok_or_else(|| {
                    Y4mError::MalformedHeader(format!("bad framerate {value:?}"))
                })?;
                let num = num.parse::<u32>().map_err(|_| {
                    Y4mError::MalformedHeader(format!("bad framerate {value:?}"))
                })?;
                let den = den.parse::<u32>().map_err(|_| {
                    Y4mError::MalformedHeader(format!("bad framerate {value:?}"))
                })?;
                if den == 0 {
                    return Err(Y4mError::MalformedHeader("zero framerate denominator".into()));
                }
                fps = Some((num, den));
            }
            "C" => colorspace = Some(map_colorspace(value)?),
            // I (interlace), A (aspect), X (extensions): kept verbatim.
            _ => {}
        }
    }

    let width = width.ok_or_else(|| Y4mError::MalformedHeader("missing W tag".into()))?;
    let height = height.ok_or_else(|| Y4mError::MalformedHeader("missing H tag".into()))?;
    let (fps_num, fps_den) =
        fps.ok_or_else(|| Y4mError::MalformedHeader("missing F tag".into()))?;
    if width == 0 || height == 0 {
        return Err(Y4mError::MalformedHeader("zero frame dimension".into()));
    }
    let (format, depth) = colorspace.unwrap_or((ChromaFormat::Cf420, BitDepth::Eight));

    Ok(Y4mHeader {
        width,
        height,
        fps_num,
        fps_den,
        format,
        depth,
        tokens,
    })
}

fn read_plane<R: Read>(
    reader: &mut R,
    width: usize,
    height: usize,
    depth: BitDepth,
) -> Result<Plane, Y4mError> {
    let mut plane = Plane::new(width, height);
    if depth == BitDepth::Eight {
        let mut row = vec![0u8; width];
        for y in 0..height {
            reader.read_exact(&mut row)?;
            for (dst, &src) in plane.row_mut(y).iter_mut().zip(row.iter()) {
                *dst = src as u16;
            }
        }
    } else {
        // 10/12-bit content is stored as little-endian 16-bit words.
        // Words above the depth maximum are clamped so the frame
        // invariant holds even for out-of-spec streams.
        let max = depth.max_value();
        let mut row = vec![0u8; width * 2];
        for y in 0..height {
            reader.read_exact(&mut row)?;
            for (dst, src) in plane.row_mut(y).iter_mut().zip(row.chunks_exact(2)) {
                *dst = u16::from_le_bytes([src[0], src[1]]).min(max);
            }
        }
    }
    Ok(plane)
}

/// Frame payload plus the raw parameter text of its `FRAME` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Y4mFrame {
    pub frame: Frame,
    pub frame_params: String,
}

/// Reads one frame. Returns `Ok(None)` at a clean end of stream.
pub fn read_y4m_frame<R: Read>(
    reader: &mut R,
    header: &Y4mHeader,
) -> Result<Option<Y4mFrame>, Y4mError> {
    let mut first = [0u8; 1];
    match reader.read(&mut first)? {
        0 => return Ok(None),
        _ => {}
    }
    let mut marker = vec![first[0]];
    let mut rest = [0u8; 4];
    reader.read_exact(&mut rest).map_err(|_| Y4mError::MissingFrameMarker)?;
    marker.extend_from_slice(&rest);
    if marker != b"FRAME" {
        return Err(Y4mError::MissingFrameMarker);
    }
    let params = read_line(reader).map_err(|_| Y4mError::MissingFrameMarker)?;
    let frame_params = String::from_utf8(params)
        .map_err(|_| Y4mError::MalformedHeader("non-utf8 frame params".into()))?;

    let (cw, ch) = header.format.chroma_dims(header.width, header.height);
    let y = read_plane(reader, header.width, header.height, header.depth)?;
    let cb = read_plane(reader, cw, ch, header.depth)?;
    let cr = read_plane(reader, cw, ch, header.depth)?;
    Ok(Some(Y4mFrame {
        frame: Frame {
            y,
            cb,
            cr,
            format: header.format,
            depth: header.depth,
        },
        frame_params,
    }))
}

pub fn write_y4m_header<W: Write>(writer: &mut W, header: &Y4mHeader) -> Result<(), Y4mError> {
    writer.write_all(header.header_line().as_bytes())?;
    Ok(())
}

fn write_plane<W: Write>(writer: &mut W, plane: &Plane, depth: BitDepth) -> Result<(), Y4mError> {
    if depth == BitDepth::Eight {
        let mut row = vec![0u8; plane.width()];
        for y in 0..plane.height() {
            for (dst, &src) in row.iter_mut().zip(plane.row(y).iter()) {
                *dst = src as u8;
            }
            writer.write_all(&row)?;
        }
    } else {
        let mut row = vec![0u8; plane.width() * 2];
        for y in 0..plane.height() {
            for (dst, &src) in row.chunks_exact_mut(2).zip(plane.row(y).iter()) {
                dst.copy_from_slice(&src.to_le_bytes());
            }
            writer.write_all(&row)?;
        }
    }
    Ok(())
}

pub fn write_y4m_frame<W: Write>(
    writer: &mut W,
    frame: &Frame,
    frame_params: &str,
) -> Result<(), Y4mError> {
    writer.write_all(b"FRAME")?;
    writer.write_all(frame_params.as_bytes())?;
    writer.write_all(b"\n")?;
    write_plane(writer, &frame.y, frame.depth)?;
    write_plane(writer, &frame.cb, frame.depth)?;
    write_plane(writer, &frame.cr, frame.depth)?;
    Ok(())
}

/// Reads every frame of a Y4M stream.
pub fn read_y4m<R: Read>(reader: &mut R) -> Result<(Y4mHeader, Vec<Y4mFrame>), Y4mError> {
    let header = parse_y4m_header(reader)?;
    let mut frames = Vec::new();
    while let Some(f) = read_y4m_frame(reader, &header)? {
        frames.push(f);
    }
    Ok((header, frames))
}

/// Writes a complete Y4M stream.
pub fn write_y4m<W: Write>(
    writer: &mut W,
    header: &Y4mHeader,
    frames: &[Y4mFrame],
) -> Result<(), Y4mError> {
    write_y4m_header(writer, header)?;
    for f in frames {
        write_y4m_frame(writer, &f.frame, &f.frame_params)?;
    }
    Ok(())
}
