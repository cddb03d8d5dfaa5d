//! Bit-exact Netpbm (PGM/PPM) decoding and encoding.
//!
//! Supports P2/P5 grayscale and P3/P6 color, maxval up to 65535 with
//! 16-bit binary samples big-endian. Comments (`#`) are accepted on
//! decode and never emitted. Encoding is canonical: single spaces in
//! the header, one newline before the raster, `maxval = 2^bit_depth - 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::raster::Raster;

/// Netpbm subformat.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// ASCII grayscale.
    P2,
    /// ASCII color.
    P3,
    /// Binary grayscale.
    P5,
    /// Binary color.
    P6,
}

impl Format {
    pub fn bands(self) -> u8 {
        match self {
            Format::P2 | Format::P5 => 1,
            Format::P3 | Format::P6 => 3,
        }
    }

    pub fn is_binary(self) -> bool {
        matches!(self, Format::P5 | Format::P6)
    }

    fn magic(self) -> &'static [u8; 2] {
        match self {
            Format::P2 => b"P2",
            Format::P3 => b"P3",
            Format::P5 => b"P5",
            Format::P6 => b"P6",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::P2 => "P2",
            Format::P3 => "P3",
            Format::P5 => "P5",
            Format::P6 => "P6",
        })
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "P2" => Ok(Format::P2),
            "P3" => Ok(Format::P3),
            "P5" => Ok(Format::P5),
            "P6" => Ok(Format::P6),
            _ => Err(Error::Usage(format!("unknown netpbm format {s:?}"))),
        }
    }
}

struct Scanner<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(data: &'a [u8]) -> Self {
        Scanner { data, pos: 0 }
    }

    fn fail<T>(&self, at: usize, detail: impl Into<String>) -> Result<T> {
        Err(Error::Decode {
            offset: at,
            detail: detail.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.data.get(self.pos).copied()
    }

    /// Skip whitespace and `#` comment lines between header tokens.
    fn skip_separators(&mut self) {
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(c) = self.peek() {
                    self.pos += 1;
                    if c == b'\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn read_uint(&mut self, what: &str) -> Result<u32> {
        self.skip_separators();
        let start = self.pos;
        let mut value: u64 = 0;
        let mut digits = 0;
        while let Some(b) = self.peek() {
            if b.is_ascii_digit() {
                value = value * 10 + u64::from(b - b'0');
                if value > u64::from(u32::MAX) {
                    return self.fail(start, format!("{what} overflows"));
                }
                digits += 1;
                self.pos += 1;
            } else {
                break;
            }
        }
        if digits == 0 {
            return self.fail(start, format!("expected {what}"));
        }
        Ok(value as u32)
    }

    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        if self.pos + n > self.data.len() {
            return self.fail(self.data.len(), format!("truncated {what}"));
        }
        let slice = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }
}

/// Decode a P2/P3/P5/P6 file into a planar raster.
///
/// `bit_depth` is derived from the header as `ceil(log2(maxval + 1))`,
/// so a maxval of 63 yields 6-bit data without sidecar metadata.
pub fn decode_netpbm(bytes: &[u8]) -> Result<Raster> {
    let mut sc = Scanner::new(bytes);
    let magic = sc.take(2, "magic number")?;
    let format = match magic {
        b"P2" => Format::P2,
        b"P3" => Format::P3,
        b"P5" => Format::P5,
        b"P6" => Format::P6,
        _ => return sc.fail(0, "unsupported magic, expected P2/P3/P5/P6"),
    };
    match sc.peek() {
        Some(b) if b.is_ascii_whitespace() || b == b'#' => {}
        _ => return sc.fail(sc.pos, "expected whitespace after magic"),
    }

    sc.skip_separators();
    let width_at = sc.pos;
    let width = sc.read_uint("width")?;
    sc.skip_separators();
    let height_at = sc.pos;
    let height = sc.read_uint("height")?;
    sc.skip_separators();
    let maxval_at = sc.pos;
    let maxval = sc.read_uint("maxval")?;
    if width == 0 {
        return sc.fail(width_at, "width must be at least 1");
    }
    if height == 0 {
        return sc.fail(height_at, "height must be at least 1");
    }
    if !(1..=65535).contains(&maxval) {
        return sc.fail(maxval_at, format!("maxval {maxval} outside [1, 65535]"));
    }
    let bit_depth = (32 - maxval.leading_zeros()) as u8;
    let bands = format.bands();
    let count = width as usize * height as usize * bands as usize;

    let interleaved = if format.is_binary() {
        // exactly one whitespace byte separates the header from the payload
        match sc.peek() {
            Some(b) if b.is_ascii_whitespace() => sc.pos += 1,
            _ => return sc.fail(sc.pos, "expected single whitespace before binary payload"),
        }
        let wide = maxval > 255;
        let payload = sc.take(count * if wide { 2 } else { 1 }, "binary payload")?;
        let base = sc.pos - payload.len();
        let mut samples = Vec::with_capacity(count);
        if wide {
            for (i, pair) in payload.chunks_exact(2).enumerate() {
                let v = u16::from_be_bytes([pair[0], pair[1]]);
                if u32::from(v) > maxval {
                    return sc.fail(base + i * 2, format!("sample {v} out of [0, {maxval}]"));
                }
                samples.push(v);
            }
        } else {
            for (i, &b) in payload.iter().enumerate() {
                if u32::from(b) > maxval {
                    return sc.fail(base + i, format!("sample {b} out of [0, {maxval}]"));
                }
                samples.push(u16::from(b));
            }
        }
        if sc.pos != bytes.len() {
            return sc.fail(sc.pos, "trailing bytes after binary payload");
        }
        samples
    } else {
        let mut samples = Vec::with_capacity(count);
        for _ in 0..count {
            sc.skip_separators();
            let at = sc.pos;
            let v = sc.read_uint("sample")?;
            if v > maxval {
                return sc.fail(at, format!("sample {v} out of [0, {maxval}]"));
            }
            samples.push(v as u16);
        }
        sc.skip_separators();
        if sc.pos != bytes.len() {
            return sc.fail(sc.pos, "trailing data after ASCII samples");
        }
        samples
    };

    // de-interleave P3/P6 pixels into planar band-major storage
    let samples = if bands == 3 {
        let n = width as usize * height as usize;
        let mut planar = vec![0u16; count];
        for (i, chunk) in interleaved.chunks_exact(3).enumerate() {
            planar[i] = chunk[0];
            planar[n + i] = chunk[1];
            planar[2 * n + i] = chunk[2];
        }
        planar
    } else {
        interleaved
    };

    Raster::new(width, height, bands, bit_depth, samples)
}

/// Encode a raster in the requested format with a canonical header.
pub fn encode_netpbm(raster: &Raster, format: Format) -> Result<Vec<u8>> {
    if format.bands() != raster.bands() {
        return Err(Error::Usage(format!(
            "format {format} carries {} band(s) but raster has {}",
            format.bands(),
            raster.bands()
        )));
    }
    let maxval = raster.max_value();
    let mut out = Vec::new();
    out.extend_from_slice(format.magic());
    out.extend_from_slice(
        format!("\n{} {}\n{}\n", raster.width(), raster.height(), maxval).as_bytes(),
    );

    let n = raster.width() as usize * raster.height() as usize;
    let bands = raster.bands() as usize;
    let row_len = raster.width() as usize;
    // pixel-interleaved sample order, row-major
    let sample_at = |i: usize| -> u16 {
        let pixel = i / bands;
        let band = i % bands;
        raster.samples()[band * n + pixel]
    };

    match format {
        Format::P5 | Format::P6 => {
            if maxval > 255 {
                for i in 0..n * bands {
                    out.extend_from_slice(&sample_at(i).to_be_bytes());
                }
            } else {
                for i in 0..n * bands {
                    out.push(sample_at(i) as u8);
                }
            }
        }
        Format::P2 | Format::P3 => {
            let per_row = row_len * bands;
            let mut text = String::new();
            for row in 0..raster.height() as usize {
                for j in 0..per_row {
                    if j > 0 {
                        text.push(' ');
                    }
                    text.push_str(&sample_at(row * per_row + j).to_string());
                }
                text.push('\n');
            }
            out.extend_from_slice(text.as_bytes());
        }
    }
    Ok(out)
}
