//! Sample containers: bit depth, chroma geometry, planes and frames.

use std::fmt;

/// Bit depth of the coded samples. Only the depths used by the
/// surrounding toolchain are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BitDepth {
    Eight,
    Ten,
    Twelve,
}

impl BitDepth {
    pub fn from_bits(bits: u32) -> Option<BitDepth> {
        match bits {
            8 => Some(BitDepth::Eight),
            10 => Some(BitDepth::Ten),
            12 => Some(BitDepth::Twelve),
            _ => None,
        }
    }

    #[inline]
    pub fn bits(self) -> u32 {
        match self {
            BitDepth::Eight => 8,
            BitDepth::Ten => 10,
            BitDepth::Twelve => 12,
        }
    }

    /// Largest representable sample value, `2^bits - 1`.
    #[inline]
    pub fn max_value(self) -> u16 {
        ((1u32 << self.bits()) - 1) as u16
    }

    /// Midpoint sample `2^(bits-1)`, used as the neighborless DC value.
    #[inline]
    pub fn midpoint(self) -> u16 {
        (1u16) << (self.bits() - 1)
    }
}

impl fmt::Display for BitDepth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bits())
    }
}

/// Chroma subsampling geometry, expressed as the subsampling step on
/// each axis. `(2,2)` = 4:2:0, `(2,1)` = 4:2:2, `(1,2)` = 4:4:0,
/// `(1,1)` = 4:4:4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChromaFormat {
    Cf420,
    Cf422,
    Cf440,
    Cf444,
}

impl ChromaFormat {
    pub fn from_steps(s_x: u32, s_y: u32) -> Option<ChromaFormat> {
        match (s_x, s_y) {
            (2, 2) => Some(ChromaFormat::Cf420),
            (2, 1) => Some(ChromaFormat::Cf422),
            (1, 2) => Some(ChromaFormat::Cf440),
            (1, 1) => Some(ChromaFormat::Cf444),
            _ => None,
        }
    }

    /// Subsampling step along x.
    #[inline]
    pub fn step_x(self) -> usize {
        match self {
            ChromaFormat::Cf420 | ChromaFormat::Cf422 => 2,
            ChromaFormat::Cf440 | ChromaFormat::Cf444 => 1,
        }
    }

    /// Subsampling step along y.
    #[inline]
    pub fn step_y(self) -> usize {
        match self {
            ChromaFormat::Cf420 | ChromaFormat::Cf440 => 2,
            ChromaFormat::Cf422 | ChromaFormat::Cf444 => 1,
        }
    }

    /// Number of luma samples coincident with one chroma sample
    /// (`s_x * s_y`, one of 1, 2, 4).
    #[inline]
    pub fn coincident_samples(self) -> usize {
        self.step_x() * self.step_y()
    }

    /// `log2(s_x * s_y)`, used to fold the subsampling division into a
    /// bit shift.
    #[inline]
    pub fn log2_coincident(self) -> u32 {
        (self.coincident_samples() as u32).trailing_zeros()
    }

    /// Chroma plane dimensions for a luma plane of `(width, height)`,
    /// using ceil division so odd frame edges keep a chroma sample.
    #[inline]
    pub fn chroma_dims(self, width: usize, height: usize) -> (usize, usize) {
        (
            width.div_ceil(self.step_x()),
            height.div_ceil(self.step_y()),
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            ChromaFormat::Cf420 => "4:2:0",
            ChromaFormat::Cf422 => "4:2:2",
            ChromaFormat::Cf440 => "4:4:0",
            ChromaFormat::Cf444 => "4:4:4",
        }
    }
}

impl fmt::Display for ChromaFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A single plane of unsigned samples. Samples are stored as `u16`
/// regardless of bit depth; the frame's [`BitDepth`] bounds the values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plane {
    width: usize,
    height: usize,
    stride: usize,
    samples: Vec<u16>,
}

impl Plane {
    pub fn new(width: usize, height: usize) -> Plane {
        Plane {
            width,
            height,
            stride: width,
            samples: vec![0; width * height],
        }
    }

    pub fn filled(width: usize, height: usize, value: u16) -> Plane {
        Plane {
            width,
            height,
            stride: width,
            samples: vec![value; width * height],
        }
    }

    /// Builds a plane from a row-major sample vector with `stride == width`.
    pub fn from_samples(width: usize, height: usize, samples: Vec<u16>) -> Plane {
        assert_eq!(samples.len(), width * height, "sample count mismatch");
        Plane {
            width,
            height,
            stride: width,
            samples,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn row(&self, y: usize) -> &[u16] {
        let start = y * self.stride;
        &self.samples[start..start + self.width]
    }

    #[inline]
    pub fn row_mut(&mut self, y: usize) -> &mut [u16] {
        let start = y * self.stride;
        &mut self.samples[start..start + self.width]
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u16 {
        self.samples[y * self.stride + x]
    }

    /// Sample at `(x, y)` with coordinates clamped into the plane;
    /// realizes edge replication for out-of-range reads.
    #[inline]
    pub fn get_clamped(&self, x: usize, y: usize) -> u16 {
        let cx = x.min(self.width - 1);
        let cy = y.min(self.height - 1);
        self.samples[cy * self.stride + cx]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: u16) {
        self.samples[y * self.stride + x] = value;
    }

    pub fn samples(&self) -> &[u16] {
        &self.samples
    }

    /// Copies the `w x h` region at `(x0, y0)` into a row-major vector,
    /// replicating edge samples where the region leaves the plane.
    pub fn region(&self, x0: usize, y0: usize, w: usize, h: usize) -> Vec<u16> {
        let mut out = Vec::with_capacity(w * h);
        for y in 0..h {
            for x in 0..w {
                out.push(self.get_clamped(x0 + x, y0 + y));
            }
        }
        out
    }

    /// Plane enlarged to `(width, height)` by replicating the last row
    /// and column. Dimensions must not shrink.
    pub fn padded(&self, width: usize, height: usize) -> Plane {
        assert!(width >= self.width && height >= self.height);
        let mut out = Plane::new(width, height);
        for y in 0..height {
            for x in 0..width {
                out.set(x, y, self.get_clamped(x, y));
            }
        }
        out
    }

    /// Top-left `w x h` crop.
    pub fn cropped(&self, w: usize, h: usize) -> Plane {
        assert!(w <= self.width && h <= self.height);
        let mut out = Plane::new(w, h);
        for y in 0..h {
            out.row_mut(y).copy_from_slice(&self.row(y)[..w]);
        }
        out
    }
}

/// One YCbCr picture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub y: Plane,
    pub cb: Plane,
    pub cr: Plane,
    pub format: ChromaFormat,
    pub depth: BitDepth,
}

impl Frame {
    /// Allocates a zeroed frame with chroma planes sized by ceil
    /// division of the luma dimensions.
    pub fn new(width: usize, height: usize, format: ChromaFormat, depth: BitDepth) -> Frame {
        let (cw, ch) = format.chroma_dims(width, height);
        Frame {
            y: Plane::new(width, height),
            cb: Plane::new(cw, ch),
            cr: Plane::new(cw, ch),
            format,
            depth,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.y.width()
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.y.height()
    }

    /// Checks the chroma-geometry invariant.
    pub fn geometry_consistent(&self) -> bool {
        let (cw, ch) = self.format.chroma_dims(self.y.width(), self.y.height());
        self.cb.width() == cw
            && self.cb.height() == ch
            && self.cr.width() == cw
            && self.cr.height() == ch
    }
}
