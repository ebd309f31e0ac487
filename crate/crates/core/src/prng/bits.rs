use crate::error::{Error, Result};

/// A length-tagged packed bit string, most significant bit first within each
/// byte. Bits past `len` in the final byte are always zero.
#[derive(Clone, PartialEq, Eq)]
pub struct BitSequence {
    bytes: Vec<u8>,
    len: usize,
}

impl BitSequence {
    pub fn new() -> Self {
        BitSequence {
            bytes: Vec::new(),
            len: 0,
        }
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitSequence {
            bytes: Vec::with_capacity(bits.div_ceil(8)),
            len: 0,
        }
    }

    /// Wraps packed bytes holding `len` bits. Padding bits are cleared.
    pub fn from_packed(mut bytes: Vec<u8>, len: usize) -> Result<Self> {
        let needed = len.div_ceil(8);
        if bytes.len() < needed {
            return Err(Error::InsufficientLength {
                required: needed,
                actual: bytes.len(),
                unit: "bytes",
            });
        }
        bytes.truncate(needed);
        if len % 8 != 0 {
            let last = bytes.len() - 1;
            bytes[last] &= 0xFFu8 << (8 - len % 8);
        }
        Ok(BitSequence { bytes, len })
    }

    /// Builds a sequence from unpacked bits; any nonzero byte counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        bits.iter().map(|&b| b != 0).collect()
    }

    pub fn push(&mut self, bit: bool) {
        if self.len % 8 == 0 {
            self.bytes.push(0);
        }
        if bit {
            let last = self.bytes.len() - 1;
            self.bytes[last] |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, index: usize) -> Option<bool> {
        (index < self.len).then(|| self.bytes[index / 8] & (0x80 >> (index % 8)) != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bytes[i / 8] & (0x80 >> (i % 8)) != 0)
    }

    /// One byte (0 or 1) per bit.
    pub fn unpack(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    /// The packed representation, including zero padding.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    pub fn count_ones(&self) -> usize {
        self.bytes.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Every bit inverted.
    pub fn complement(&self) -> BitSequence {
        let bytes = self.bytes.iter().map(|b| !b).collect();
        // re-clears the padding
        BitSequence::from_packed(bytes, self.len).expect("same length")
    }

    /// Number of positions at which the two sequences differ, over their
    /// common prefix.
    pub fn hamming_distance(&self, other: &BitSequence) -> usize {
        let common = self.len.min(other.len);
        let full = common / 8;
        let mut d: usize = self.bytes[..full]
            .iter()
            .zip(&other.bytes[..full])
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum();
        for i in full * 8..common {
            d += usize::from(self.get(i) != other.get(i));
        }
        d
    }
}

impl Default for BitSequence {
    fn default() -> Self {
        BitSequence::new()
    }
}

impl FromIterator<bool> for BitSequence {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let iter = iter.into_iter();
        let mut seq = BitSequence::with_capacity(iter.size_hint().0);
        for bit in iter {
            seq.push(bit);
        }
        seq
    }
}

impl std::fmt::Debug for BitSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        const SHOWN: usize = 64;
        let head: String = self.iter().take(SHOWN).map(|b| if b { '1' } else { '0' }).collect();
        let ellipsis = if self.len > SHOWN { "..." } else { "" };
        write!(f, "BitSequence({} bits: {head}{ellipsis})", self.len)
    }
}

/// Packs the first `count` bytes' worth of bits MSB-first.
pub fn keystream_bytes(bits: &BitSequence, count: usize) -> Result<Vec<u8>> {
    let needed = count.checked_mul(8).ok_or_else(|| Error::Contract("byte count overflows".into()))?;
    if bits.len() < needed {
        return Err(Error::InsufficientLength {
            required: needed,
            actual: bits.len(),
            unit: "keystream bits",
        });
    }
    Ok(bits.as_bytes()[..count].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(s: &str) -> BitSequence {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn msb_first_packing() {
        assert_eq!(keystream_bytes(&parse("10000000"), 1).unwrap(), vec![0x80]);
        assert_eq!(keystream_bytes(&parse("00000001"), 1).unwrap(), vec![0x01]);
        assert_eq!(keystream_bytes(&parse("1010101010101010"), 2).unwrap(), vec![0xAA, 0xAA]);
    }

    #[test]
    fn keystream_shortfall_reported() {
        let err = keystream_bytes(&parse("1010101"), 1).unwrap_err();
        assert!(matches!(err, Error::InsufficientLength { required: 8, actual: 7, .. }));
    }

    #[test]
    fn padding_is_cleared() {
        let seq = BitSequence::from_packed(vec![0xFF, 0xFF], 11).unwrap();
        assert_eq!(seq.as_bytes(), &[0xFF, 0xE0]);
        assert_eq!(seq.count_ones(), 11);
        assert_eq!(seq.complement().count_ones(), 0);
        assert!(BitSequence::from_packed(vec![0xFF], 9).is_err());
    }

    #[test]
    fn hamming_over_partial_byte() {
        let a = parse("1111000011");
        let b = parse("1111000000");
        assert_eq!(a.hamming_distance(&b), 2);
        assert_eq!(a.hamming_distance(&a.complement()), 10);
    }

    proptest! {
        #[test]
        fn unpack_roundtrip(bits in prop::collection::vec(0u8..=1, 0..300)) {
            let seq = BitSequence::from_bits(&bits);
            prop_assert_eq!(seq.len(), bits.len());
            prop_assert_eq!(seq.unpack(), bits.clone());
            let again = BitSequence::from_packed(seq.as_bytes().to_vec(), seq.len()).unwrap();
            prop_assert_eq!(again, seq);
        }
    }
}
