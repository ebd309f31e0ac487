//! Additive stream cipher over raster images: keystream bytes XORed onto the
//! pixel bytes in row-major order, plus histogram and uniformity analysis.

use crate::error::{Error, Result};
use crate::prng::{generate, keystream_bytes, BitSequence, CipherKey, GeneratorKind};
use crate::sts::special::igamc;

pub const ENVELOPE_MAGIC: [u8; 4] = *b"CCIM";
pub const ENVELOPE_VERSION: u8 = 1;
/// magic, version, width, height, channels, kind
pub const ENVELOPE_HEADER_LEN: usize = 4 + 1 + 4 + 4 + 1 + 1;

/// Row-major pixel bytes with their dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    width: u32,
    height: u32,
    channels: u8,
    data: Vec<u8>,
}

impl ImageBuffer {
    pub fn new(width: u32, height: u32, channels: u8, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Image(format!("dimensions must be positive, got {width}x{height}")));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::Image(format!("channels must be 1 or 3, got {channels}")));
        }
        let expected = Self::byte_len(width, height, channels)?;
        if data.len() != expected {
            return Err(Error::Image(format!(
                "{width}x{height}x{channels} needs {expected} bytes, got {}",
                data.len()
            )));
        }
        Ok(ImageBuffer {
            width,
            height,
            channels,
            data,
        })
    }

    pub(crate) fn byte_len(width: u32, height: u32, channels: u8) -> Result<usize> {
        (width as usize)
            .checked_mul(height as usize)
            .and_then(|p| p.checked_mul(channels as usize))
            .ok_or_else(|| Error::Image("image size overflows".into()))
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn channels(&self) -> u8 {
        self.channels
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }
}

/// Ciphertext plus the structural header. Key material is never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherEnvelope {
    pub width: u32,
    pub height: u32,
    pub channels: u8,
    pub kind: GeneratorKind,
    pub version: u8,
    pub ciphertext: Vec<u8>,
}

impl CipherEnvelope {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(ENVELOPE_HEADER_LEN + self.ciphertext.len());
        out.extend_from_slice(&ENVELOPE_MAGIC);
        out.push(self.version);
        out.extend_from_slice(&self.width.to_be_bytes());
        out.extend_from_slice(&self.height.to_be_bytes());
        out.push(self.channels);
        out.push(self.kind.code());
        out.extend_from_slice(&self.ciphertext);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < ENVELOPE_HEADER_LEN {
            return Err(Error::Envelope(format!(
                "{} bytes is shorter than the {ENVELOPE_HEADER_LEN}-byte header",
                bytes.len()
            )));
        }
        if bytes[..4] != ENVELOPE_MAGIC {
            return Err(Error::Envelope("bad magic".into()));
        }
        let version = bytes[4];
        if version != ENVELOPE_VERSION {
            return Err(Error::Envelope(format!("unsupported version {version}")));
        }
        let width = u32::from_be_bytes(bytes[5..9].try_into().expect("4 bytes"));
        let height = u32::from_be_bytes(bytes[9..13].try_into().expect("4 bytes"));
        let channels = bytes[13];
        let kind = GeneratorKind::from_code(bytes[14])
            .ok_or_else(|| Error::Envelope(format!("unknown generator code {}", bytes[14])))?;
        let expected = ImageBuffer::byte_len(width, height, channels).map_err(|e| Error::Envelope(e.to_string()))?;
        let body = &bytes[ENVELOPE_HEADER_LEN..];
        if body.len() != expected {
            return Err(Error::Envelope(format!(
                "dimension mismatch: {width}x{height}x{channels} needs {expected} ciphertext bytes, found {}",
                body.len()
            )));
        }
        Ok(CipherEnvelope {
            width,
            height,
            channels,
            kind,
            version,
            ciphertext: body.to_vec(),
        })
    }
}

/// The first `count` keystream bytes of `key`.
///
/// The key's `n_bits` is the keystream budget. Hybrid streams are prefix
/// stable, so only the needed bits are generated; mean-threshold streams
/// depend on the whole orbit and are generated in full.
pub fn keystream(key: &CipherKey, count: usize) -> Result<Vec<u8>> {
    let needed = count as u64 * 8;
    if key.spec.n_bits < needed {
        return Err(Error::InsufficientLength {
            required: needed as usize,
            actual: key.spec.n_bits as usize,
            unit: "keystream bits in the key budget",
        });
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let bits: BitSequence = if key.spec.kind.is_hybrid() {
        generate(&key.spec.clone().with_bits(needed))?
    } else {
        generate(&key.spec)?
    };
    keystream_bytes(&bits, count)
}

fn xor_in_place(data: &mut [u8], stream: &[u8]) {
    for (d, k) in data.iter_mut().zip(stream) {
        *d ^= k;
    }
}

pub fn encrypt(image: &ImageBuffer, key: &CipherKey) -> Result<CipherEnvelope> {
    let mut ciphertext = image.data.clone();
    let stream = keystream(key, ciphertext.len())?;
    xor_in_place(&mut ciphertext, &stream);
    Ok(CipherEnvelope {
        width: image.width,
        height: image.height,
        channels: image.channels,
        kind: key.kind(),
        version: ENVELOPE_VERSION,
        ciphertext,
    })
}

pub fn decrypt(envelope: &CipherEnvelope, key: &CipherKey) -> Result<ImageBuffer> {
    if envelope.version != ENVELOPE_VERSION {
        return Err(Error::Envelope(format!("unsupported version {}", envelope.version)));
    }
    if envelope.kind != key.kind() {
        return Err(Error::Envelope(format!(
            "envelope was made with {}, key is {}",
            envelope.kind,
            key.kind()
        )));
    }
    let expected = ImageBuffer::byte_len(envelope.width, envelope.height, envelope.channels)?;
    if envelope.ciphertext.len() != expected {
        return Err(Error::Envelope(format!(
            "dimension mismatch: expected {expected} bytes, found {}",
            envelope.ciphertext.len()
        )));
    }
    let mut data = envelope.ciphertext.clone();
    let stream = keystream(key, data.len())?;
    xor_in_place(&mut data, &stream);
    ImageBuffer::new(envelope.width, envelope.height, envelope.channels, data)
}

pub fn histogram(data: &[u8]) -> Result<[u64; 256]> {
    if data.is_empty() {
        return Err(Error::Contract("histogram of empty data".into()));
    }
    let mut counts = [0u64; 256];
    for &b in data {
        counts[b as usize] += 1;
    }
    Ok(counts)
}

/// Pearson statistic of the counts against a flat expectation.
pub fn chi_square(hist: &[u64; 256]) -> f64 {
    let total: u64 = hist.iter().sum();
    let expected = total as f64 / 256.0;
    hist.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum()
}

/// p-value of the uniformity test with 255 degrees of freedom. Needs at least
/// five expected counts per bin.
pub fn chi_square_uniformity(hist: &[u64; 256]) -> Result<f64> {
    let total: u64 = hist.iter().sum();
    if total < 5 * 256 {
        return Err(Error::InsufficientLength {
            required: 5 * 256,
            actual: total as usize,
            unit: "histogram counts",
        });
    }
    igamc(255.0 / 2.0, chi_square(hist) / 2.0)
}

/// Flips bit `bit` (0 = most significant) of a 64-hex-digit seed.
pub fn flip_seed_bit(hex_seed: &str, bit: usize) -> Result<String> {
    crate::prng::parse_seed(hex_seed)?;
    let mut bytes = hex::decode(hex_seed).map_err(|e| Error::KeyParse(e.to_string()))?;
    if bit >= bytes.len() * 8 {
        return Err(Error::Contract(format!("seed bit {bit} out of range")));
    }
    bytes[bit / 8] ^= 0x80 >> (bit % 8);
    Ok(hex::encode(bytes))
}

/// Fraction of differing bits between two equal-length byte strings.
pub fn bit_difference(a: &[u8], b: &[u8]) -> Result<f64> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::Contract(format!("cannot compare {} and {} bytes", a.len(), b.len())));
    }
    let diff: u32 = a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum();
    Ok(f64::from(diff) / (a.len() as f64 * 8.0))
}
