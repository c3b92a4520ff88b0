//! Self-framed binary container for one coded frame: magic, version,
//! geometry, quantizer and tool flags, then the range-coded payload.
//! All fields are little-endian; the layout is identical on every
//! platform.

use std::fmt;

use crate::frame::{BitDepth, ChromaFormat};

pub const BLOB_MAGIC: [u8; 4] = *b"CFLB";
pub const BLOB_VERSION: u8 = 1;

#[derive(Debug)]
pub enum BlobError {
    BadMagic,
    UnsupportedVersion(u8),
    BadField(&'static str),
    Truncated,
}

impl fmt::Display for BlobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlobError::BadMagic => write!(f, "not a coded-frame blob"),
            BlobError::UnsupportedVersion(v) => write!(f, "unsupported blob version {v}"),
            BlobError::BadField(name) => write!(f, "invalid blob field: {name}"),
            BlobError::Truncated => write!(f, "blob truncated"),
        }
    }
}

impl std::error::Error for BlobError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlobHeader {
    pub width: u32,
    pub height: u32,
    pub format: ChromaFormat,
    pub depth: BitDepth,
    pub q_index: u8,
    pub cfl_enabled: bool,
}

fn format_code(f: ChromaFormat) -> u8 {
    match f {
        ChromaFormat::Cf420 => 0,
        ChromaFormat::Cf422 => 1,
        ChromaFormat::Cf440 => 2,
        ChromaFormat::Cf444 => 3,
    }
}

fn format_from_code(c: u8) -> Option<ChromaFormat> {
    match c {
        0 => Some(ChromaFormat::Cf420),
        1 => Some(ChromaFormat::Cf422),
        2 => Some(ChromaFormat::Cf440),
        3 => Some(ChromaFormat::Cf444),
        _ => None,
    }
}

pub fn write_blob(header: &BlobHeader, payload: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(20 + payload.len());
    out.extend_from_slice(&BLOB_MAGIC);
    out.push(BLOB_VERSION);
    out.extend_from_slice(&header.width.to_le_bytes());
    out.extend_from_slice(&header.height.to_le_bytes());
    out.push(format_code(header.format));
    out.push(header.depth.bits() as u8);
    out.push(header.q_index);
    out.push(header.cfl_enabled as u8);
    out.extend_from_slice(&(payload.len() as u32).to_le_bytes());
    out.extend_from_slice(payload);
    out
}

pub fn read_blob(bytes: &[u8]) -> Result<(BlobHeader, &[u8]), BlobError> {
    if bytes.len() < 4 {
        return Err(BlobError::Truncated);
    }
    if bytes[..4] != BLOB_MAGIC {
        return Err(BlobError::BadMagic);
    }
    if bytes.len() < 21 {
        return Err(BlobError::Truncated);
    }
    let version = bytes[4];
    if version != BLOB_VERSION {
        return Err(BlobError::UnsupportedVersion(version));
    }
    let width = u32::from_le_bytes(bytes[5..9].try_into().unwrap());
    let height = u32::from_le_bytes(bytes[9..13].try_into().unwrap());
    let format = format_from_code(bytes[13]).ok_or(BlobError::BadField("format"))?;
    let depth =
        BitDepth::from_bits(bytes[14] as u32).ok_or(BlobError::BadField("bit depth"))?;
    let q_index = bytes[15];
    let cfl_enabled = match bytes[16] {
        0 => false,
        1 => true,
        _ => return Err(BlobError::BadField("tool flags")),
    };
    let len = u32::from_le_bytes(bytes[17..21].try_into().unwrap()) as usize;
    let payload = bytes.get(21..21 + len).ok_or(BlobError::Truncated)?;
    Ok((
        BlobHeader {
            width,
            height,
            format,
            depth,
            q_index,
            cfl_enabled,
        },
        payload,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let h = BlobHeader {
            width: 768,
            height: 512,
            format: ChromaFormat::Cf420,
            depth: BitDepth::Ten,
            q_index: 32,
            cfl_enabled: true,
        };
        let payload = vec![1u8, 2, 3, 4, 5];
        let blob = write_blob(&h, &payload);
        let (h2, p2) = read_blob(&blob).unwrap();
        assert_eq!(h, h2);
        assert_eq!(p2, &payload[..]);
    }

    #[test]
    fn bad_magic() {
        assert!(matches!(read_blob(b"NOPE....."), Err(BlobError::BadMagic)));
    }

    #[test]
    fn truncated_payload() {
        let h = BlobHeader {
            width: 4,
            height: 4,
            format: ChromaFormat::Cf444,
            depth: BitDepth::Eight,
            q_index: 20,
            cfl_enabled: false,
        };
        let blob = write_blob(&h, &[9; 10]);
        assert!(matches!(
            read_blob(&blob[..blob.len() - 1]),
            Err(BlobError::Truncated)
        ));
    }
}
