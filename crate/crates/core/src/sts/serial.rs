use super::result::{PValue, Stat, TestId, TestResult};
use super::special::igamc;
use super::Bits;
use crate::error::{Error, Result};
use crate::prng::BitSequence;

pub const DEFAULT_SERIAL_M: usize = 16;
/// Keeps the pattern table within a few hundred megabytes.
pub const SERIAL_MAX_M: usize = 24;

/// Overlapping counts of every `m`-bit pattern, the sequence wrapped around
/// by `m - 1` bits. Pattern values read the first bit as most significant.
fn pattern_counts(eps: Bits, m: usize) -> Vec<u64> {
    let mut counts = vec![0u64; 1 << m];
    let mask = (1usize << m) - 1;
    let mut window = 0usize;
    for (i, &b) in eps.iter().chain(&eps[..m - 1]).enumerate() {
        window = ((window << 1) | usize::from(b)) & mask;
        if i + 1 >= m {
            counts[window] += 1;
        }
    }
    counts
}

/// Counts for `m - 1` from counts for `m`: a pattern's prefix is the shorter
/// pattern starting at the same position.
fn fold(counts: &[u64]) -> Vec<u64> {
    counts.chunks_exact(2).map(|c| c[0] + c[1]).collect()
}

fn psi_sq(counts: &[u64], n: usize) -> f64 {
    if counts.len() <= 1 {
        return 0.0;
    }
    let sum: f64 = counts.iter().map(|&c| (c as f64) * (c as f64)).sum();
    counts.len() as f64 / n as f64 * sum - n as f64
}

/// Returns (psi2_m, psi2_{m-1}, psi2_{m-2}).
pub(crate) fn psi_squares(eps: Bits, m: usize) -> (f64, f64, f64) {
    let n = eps.len();
    let cm = pattern_counts(eps, m);
    let cm1 = fold(&cm);
    let psi_m1 = psi_sq(&cm1, n);
    let psi_m2 = if m >= 2 { psi_sq(&fold(&cm1), n) } else { 0.0 };
    (psi_sq(&cm, n), psi_m1, psi_m2)
}

pub fn serial(bits: &BitSequence, m: usize) -> Result<TestResult> {
    serial_test(&bits.unpack(), m)
}

pub(crate) fn serial_test(eps: Bits, m: usize) -> Result<TestResult> {
    let n = eps.len();
    if !(1..=SERIAL_MAX_M).contains(&m) {
        return Err(Error::InvalidParameter {
            name: "m",
            value: m as f64,
            reason: "pattern length must be in 1..=24",
        });
    }
    // m < floor(log2 n) - 2
    let log2n = if n == 0 { 0 } else { n.ilog2() as usize };
    if m + 2 >= log2n {
        let required = 1usize.checked_shl((m + 3) as u32).unwrap_or(usize::MAX);
        return Err(Error::InsufficientLength {
            required,
            actual: n,
            unit: "bits",
        });
    }
    serial_core(eps, m)
}

pub(crate) fn serial_core(eps: Bits, m: usize) -> Result<TestResult> {
    let (psi_m, psi_m1, psi_m2) = psi_squares(eps, m);
    let del1 = (psi_m - psi_m1).max(0.0);
    let del2 = (psi_m - 2.0 * psi_m1 + psi_m2).max(0.0);
    let mf = m as f64;
    let p1 = igamc(2f64.powf(mf - 2.0), del1 / 2.0)?;
    let p2 = igamc(2f64.powf(mf - 3.0), del2 / 2.0)?;
    Ok(TestResult::applicable(
        TestId::Serial,
        vec![Stat::new("n", eps.len() as f64), Stat::new("m", mf)],
        vec![
            Stat::new("psi2_m", psi_m),
            Stat::new("psi2_m-1", psi_m1),
            Stat::new("psi2_m-2", psi_m2),
            Stat::new("del1", del1),
            Stat::new("del2", del2),
        ],
        vec![
            PValue { label: "p1".into(), value: p1 },
            PValue { label: "p2".into(), value: p2 },
        ],
    ))
}
