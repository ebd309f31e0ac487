use super::result::{Stat, TestId, TestResult};
use super::special::igamc;
use super::Bits;
use crate::error::{Error, Result};
use crate::prng::BitSequence;

pub const DEFAULT_LINEAR_COMPLEXITY_M: usize = 500;
pub const LINEAR_COMPLEXITY_M_RANGE: std::ops::RangeInclusive<usize> = 500..=5000;
pub const LINEAR_COMPLEXITY_MIN_BLOCKS: usize = 200;

/// Class probabilities of the normalized complexity statistic T, over the
/// bins T <= -2.5, (-2.5, -1.5], ..., (1.5, 2.5], T > 2.5. The first entry is
/// 0.01047 rather than 1/96, as in the reference code whose published results
/// are reproduced here.
pub const LINEAR_COMPLEXITY_PROBS: [f64; 7] = [0.010_47, 0.031_25, 0.125, 0.5, 0.25, 0.0625, 0.020_833];

/// Length of the shortest LFSR generating `s`.
///
/// Bit-packed Berlekamp-Massey: the sequence is stored reversed so that the
/// window `s[i], s[i-1], ...` paired with the connection polynomial is a
/// contiguous, ascending run of bits.
pub fn berlekamp_massey(s: Bits) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let words = n / 64 + 2;
    // bit k of `rev` is s[n-1-k]; two extra words absorb the shifted reads
    let mut rev = vec![0u64; 2 * words + 2];
    for (k, &b) in s.iter().rev().enumerate() {
        rev[k / 64] |= u64::from(b & 1) << (k % 64);
    }
    let read = |pos: usize| -> u64 {
        let (w, sh) = (pos / 64, pos % 64);
        if sh == 0 {
            rev[w]
        } else {
            (rev[w] >> sh) | (rev[w + 1] << (64 - sh))
        }
    };
    let mut c = vec![0u64; words];
    let mut b = vec![0u64; words];
    let mut old = vec![0u64; words];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut m = -1isize;
    for i in 0..n {
        // sum over j = 0..=l of c_j s_{i-j}, where s_{i-j} is bit n-1-i+j of rev
        let base = n - 1 - i;
        let mut acc = 0u64;
        for (w, &word) in c.iter().enumerate().take(l / 64 + 1) {
            let mut cw = word;
            if w == l / 64 {
                let keep = l % 64 + 1;
                if keep < 64 {
                    cw &= (1u64 << keep) - 1;
                }
            }
            acc ^= cw & read(base + 64 * w);
        }
        if acc.count_ones() % 2 == 1 {
            let shift = (i as isize - m) as usize;
            let grow = 2 * l <= i;
            if grow {
                old.copy_from_slice(&c);
            }
            xor_shifted(&mut c, &b, shift);
            if grow {
                l = i + 1 - l;
                m = i as isize;
                std::mem::swap(&mut b, &mut old);
            }
        }
    }
    l
}

/// `dst ^= src << shift` on little-endian bit vectors.
fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    let len = dst.len();
    for k in 0..len.saturating_sub(ws) {
        dst[k + ws] ^= src[k] << bs;
        if bs > 0 && k + ws + 1 < len {
            dst[k + ws + 1] ^= src[k] >> (64 - bs);
        }
    }
}

/// Expected complexity of a random `m`-bit block.
pub(crate) fn expected_complexity(m: usize) -> f64 {
    let mf = m as f64;
    let sign = if m % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^(M+1)
    mf / 2.0 + (9.0 + sign) / 36.0 - (mf / 3.0 + 2.0 / 9.0) / 2f64.powf(mf)
}

fn t_bin(t: f64) -> usize {
    const EDGES: [f64; 6] = [-2.5, -1.5, -0.5, 0.5, 1.5, 2.5];
    EDGES.iter().position(|&e| t <= e).unwrap_or(6)
}

pub fn linear_complexity(bits: &BitSequence, m: usize) -> Result<TestResult> {
    complexity_test(&bits.unpack(), m)
}

pub(crate) fn complexity_test(eps: Bits, m: usize) -> Result<TestResult> {
    let n = eps.len();
    if !LINEAR_COMPLEXITY_M_RANGE.contains(&m) {
        return Err(Error::InvalidParameter {
            name: "M",
            value: m as f64,
            reason: "block length must be in 500..=5000",
        });
    }
    let required = m * LINEAR_COMPLEXITY_MIN_BLOCKS;
    if n < required {
        return Err(Error::InsufficientLength {
            required,
            actual: n,
            unit: "bits",
        });
    }
    let blocks = n / m;
    let mu = expected_complexity(m);
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 }; // (-1)^M
    let mut nu = [0u64; 7];
    for blk in eps.chunks_exact(m) {
        let l = berlekamp_massey(blk) as f64;
        nu[t_bin(sign * (l - mu) + 2.0 / 9.0)] += 1;
    }
    let nb = blocks as f64;
    let chi2: f64 = nu
        .iter()
        .zip(LINEAR_COMPLEXITY_PROBS)
        .map(|(&v, p)| (v as f64 - nb * p).powi(2) / (nb * p))
        .sum();
    let p = igamc(3.0, chi2 / 2.0)?;
    let mut stats: Vec<Stat> = nu.iter().enumerate().map(|(i, &v)| Stat::new(format!("nu{i}"), v as f64)).collect();
    stats.push(Stat::new("chi2", chi2));
    Ok(TestResult::single(
        TestId::LinearComplexity,
        vec![Stat::new("n", n as f64), Stat::new("M", m as f64), Stat::new("blocks", nb)],
        stats,
        p,
    ))
}
