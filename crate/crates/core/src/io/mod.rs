//! File formats: binary netpbm images, raw pixel dumps, packed bit files with
//! JSON sidecars, key files and envelopes. Every writer is atomic.

mod bitfile;
mod pnm;

use std::io::Write;
use std::path::Path;

pub use bitfile::{read_bits, sidecar_path, write_bits, BitFileMeta};
pub use pnm::{decode_pnm, encode_pnm, read_image, read_raw, write_image};

use crate::cipher::CipherEnvelope;
use crate::error::Result;
use crate::prng::CipherKey;

/// Writes `bytes` to a temporary file beside `path` and renames it into
/// place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn read_key(path: &Path) -> Result<CipherKey> {
    CipherKey::parse(&std::fs::read_to_string(path)?)
}

pub fn write_key(key: &CipherKey, path: &Path) -> Result<()> {
    write_atomic(path, key.to_text().as_bytes())
}

pub fn read_envelope(path: &Path) -> Result<CipherEnvelope> {
    CipherEnvelope::from_bytes(&std::fs::read(path)?)
}

pub fn write_envelope(envelope: &CipherEnvelope, path: &Path) -> Result<()> {
    write_atomic(path, &envelope.to_bytes())
}

/// `bin,count` rows for all 256 byte values.
pub fn histogram_csv(hist: &[u64; 256]) -> String {
    let mut out = String::from("bin,count\n");
    for (bin, count) in hist.iter().enumerate() {
        out.push_str(&format!("{bin},{count}\n"));
    }
    out
}
