use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::write_atomic;
use crate::error::{Error, Result};
use crate::prng::BitSequence;

/// Sidecar record stored next to a packed bit file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitFileMeta {
    pub kind: String,
    pub n_bits: u64,
    pub transient: u64,
}

/// `bits.bin` becomes `bits.bin.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

/// Writes the packed bits and, when given, the sidecar.
pub fn write_bits(path: &Path, bits: &BitSequence, meta: Option<&BitFileMeta>) -> Result<()> {
    if let Some(m) = meta {
        if m.n_bits != bits.len() as u64 {
            return Err(Error::Contract(format!(
                "sidecar records {} bits, sequence has {}",
                m.n_bits,
                bits.len()
            )));
        }
        let json = serde_json::to_string_pretty(m)? + "\n";
        write_atomic(&sidecar_path(path), json.as_bytes())?;
    }
    write_atomic(path, bits.as_bytes())
}

/// Reads a packed bit file. With a sidecar the recorded length is used,
/// otherwise every byte counts as eight bits.
pub fn read_bits(path: &Path) -> Result<(BitSequence, Option<BitFileMeta>)> {
    let bytes = std::fs::read(path)?;
    let side = sidecar_path(path);
    let meta: Option<BitFileMeta> = if side.exists() {
        Some(serde_json::from_str(&std::fs::read_to_string(&side)?)?)
    } else {
        None
    };
    let len = match &meta {
        Some(m) => {
            let n = usize::try_from(m.n_bits).map_err(|_| Error::Contract("bit count too large".into()))?;
            if bytes.len() != n.div_ceil(8) {
                return Err(Error::InsufficientLength {
                    required: n.div_ceil(8),
                    actual: bytes.len(),
                    unit: "bytes in bit file",
                });
            }
            n
        }
        None => bytes.len() * 8,
    };
    Ok((BitSequence::from_packed(bytes, len)?, meta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_byte_padding() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b.bin");
        let bits: BitSequence = [true, false, true, true, true, false, false, false, true, true].into_iter().collect();
        let meta = BitFileMeta {
            kind: "logistic".into(),
            n_bits: 10,
            transient: 1000,
        };
        write_bits(&path, &bits, Some(&meta)).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), [0b1011_1000, 0b1100_0000]);
        let (back, m) = read_bits(&path).unwrap();
        assert_eq!(back, bits);
        assert_eq!(m, Some(meta));
    }

    #[test]
    fn without_sidecar_all_bytes_count() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("raw.bin");
        std::fs::write(&path, [0xffu8, 0x00]).unwrap();
        let (bits, meta) = read_bits(&path).unwrap();
        assert_eq!(bits.len(), 16);
        assert_eq!(bits.count_ones(), 8);
        assert!(meta.is_none());
    }

    #[test]
    fn length_mismatch_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b.bin");
        let bits: BitSequence = std::iter::repeat_n(true, 16).collect();
        let meta = BitFileMeta {
            kind: "henon".into(),
            n_bits: 16,
            transient: 0,
        };
        write_bits(&path, &bits, Some(&meta)).unwrap();
        std::fs::write(&path, [0u8]).unwrap();
        assert!(read_bits(&path).is_err());
        let wrong = BitFileMeta { n_bits: 9, ..meta };
        assert!(write_bits(&path, &bits, Some(&wrong)).is_err());
    }
}
