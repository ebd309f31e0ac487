use std::path::Path;

use super::write_atomic;
use crate::cipher::ImageBuffer;
use crate::error::{Error, PnmError, Result};

/// Parses a binary PGM (P5) or PPM (P6) with maxval 255. Header comments are
/// skipped; bytes after the pixel data are ignored.
pub fn decode_pnm(bytes: &[u8]) -> Result<ImageBuffer> {
    let magic = bytes.get(..2).unwrap_or(bytes);
    let channels = match magic {
        b"P5" => 1,
        b"P6" => 3,
        _ => return Err(PnmError::Magic(String::from_utf8_lossy(magic).into_owned()).into()),
    };
    let mut pos = 2;
    let mut fields = [0u32; 3];
    for (field, name) in fields.iter_mut().zip(["width", "height", "maxval"]) {
        *field = header_number(bytes, &mut pos, name)?;
    }
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(PnmError::Header("missing whitespace after maxval".into()).into()),
    }
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(PnmError::Maxval(maxval).into());
    }
    if width == 0 || height == 0 {
        return Err(PnmError::Header(format!("zero dimension {width}x{height}")).into());
    }
    let expected = ImageBuffer::byte_len(width, height, channels)?;
    let raster = &bytes[pos..];
    if raster.len() < expected {
        return Err(PnmError::Truncated {
            expected,
            actual: raster.len(),
        }
        .into());
    }
    ImageBuffer::new(width, height, channels, raster[..expected].to_vec())
}

fn header_number(bytes: &[u8], pos: &mut usize, name: &str) -> Result<u32> {
    loop {
        match bytes.get(*pos) {
            Some(b'#') => {
                while bytes.get(*pos).is_some_and(|&b| b != b'\n') {
                    *pos += 1;
                }
            }
            Some(b) if b.is_ascii_whitespace() => *pos += 1,
            _ => break,
        }
    }
    let start = *pos;
    while bytes.get(*pos).is_some_and(u8::is_ascii_digit) {
        *pos += 1;
    }
    let digits = std::str::from_utf8(&bytes[start..*pos]).expect("ascii digits");
    if digits.is_empty() {
        return Err(PnmError::Header(format!("expected {name}")).into());
    }
    digits
        .parse()
        .map_err(|_| PnmError::Header(format!("{name} {digits} out of range")).into())
}

/// Canonical netpbm bytes: `P5 W H 255\n` or `P6 W H 255\n`, then pixels.
pub fn encode_pnm(image: &ImageBuffer) -> Vec<u8> {
    let magic = if image.channels() == 1 { "P5" } else { "P6" };
    let mut out = format!("{magic} {} {} 255\n", image.width(), image.height()).into_bytes();
    out.extend_from_slice(image.data());
    out
}

pub fn read_image(path: &Path) -> Result<ImageBuffer> {
    decode_pnm(&std::fs::read(path)?)
}

pub fn write_image(image: &ImageBuffer, path: &Path) -> Result<()> {
    write_atomic(path, &encode_pnm(image))
}

/// Reads headerless row-major pixels; the file size must match exactly.
pub fn read_raw(path: &Path, width: u32, height: u32, channels: u8) -> Result<ImageBuffer> {
    let data = std::fs::read(path)?;
    let expected = ImageBuffer::byte_len(width, height, channels)?;
    if data.len() != expected {
        return Err(Error::Image(format!(
            "raw file has {} bytes, {width}x{height}x{channels} needs {expected}",
            data.len()
        )));
    }
    ImageBuffer::new(width, height, channels, data)
}
