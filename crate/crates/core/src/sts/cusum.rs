use serde::{Deserialize, Serialize};

use super::result::{PValue, Stat, TestId, TestResult};
use super::special::normal_cdf;
use super::{require_len, Bits};
use crate::error::Result;
use crate::prng::BitSequence;

pub const CUSUM_MIN_BITS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CusumMode {
    Forward,
    Backward,
}

impl CusumMode {
    fn label(self) -> &'static str {
        match self {
            CusumMode::Forward => "forward",
            CusumMode::Backward => "backward",
        }
    }
}

/// Largest absolute partial sum of the +-1 walk.
fn max_excursion<'a>(bits: impl Iterator<Item = &'a u8>) -> u64 {
    let mut s = 0i64;
    let mut z = 0u64;
    for &b in bits {
        s += if b == 1 { 1 } else { -1 };
        z = z.max(s.unsigned_abs());
    }
    z
}

/// Tail probability of the maximal excursion `z` of an `n`-step walk. The
/// summation limits use truncating integer division.
pub(crate) fn cusum_p(n: usize, z: u64) -> f64 {
    let (n_i, z_i) = (n as i64, z as i64);
    let sqrt_n = (n as f64).sqrt();
    let phi = |k: i64, off: i64| normal_cdf(((4 * k + off) * z_i) as f64 / sqrt_n);
    let mut sum1 = 0.0;
    for k in (-n_i / z_i + 1) / 4..=(n_i / z_i - 1) / 4 {
        sum1 += phi(k, 1) - phi(k, -1);
    }
    let mut sum2 = 0.0;
    for k in (-n_i / z_i - 3) / 4..=(n_i / z_i - 1) / 4 {
        sum2 += phi(k, 3) - phi(k, 1);
    }
    (1.0 - sum1 + sum2).clamp(0.0, 1.0)
}

pub fn cumulative_sums(bits: &BitSequence, mode: CusumMode) -> Result<TestResult> {
    cusum_one(&bits.unpack(), mode)
}

fn excursion_for(eps: Bits, mode: CusumMode) -> u64 {
    match mode {
        CusumMode::Forward => max_excursion(eps.iter()),
        CusumMode::Backward => max_excursion(eps.iter().rev()),
    }
}

pub(crate) fn cusum_one(eps: Bits, mode: CusumMode) -> Result<TestResult> {
    let n = eps.len();
    require_len(n, CUSUM_MIN_BITS)?;
    let z = excursion_for(eps, mode);
    Ok(TestResult::single(
        TestId::CumulativeSums,
        vec![Stat::new("n", n as f64)],
        vec![Stat::new(format!("z_{}", mode.label()), z as f64)],
        cusum_p(n, z),
    ))
}

/// Both directions, as the suite reports them.
pub(crate) fn cusum_both(eps: Bits) -> Result<TestResult> {
    let n = eps.len();
    require_len(n, CUSUM_MIN_BITS)?;
    let mut stats = Vec::new();
    let mut ps = Vec::new();
    for mode in [CusumMode::Forward, CusumMode::Backward] {
        let z = excursion_for(eps, mode);
        stats.push(Stat::new(format!("z_{}", mode.label()), z as f64));
        ps.push(PValue {
            label: mode.label().into(),
            value: cusum_p(n, z),
        });
    }
    Ok(TestResult::applicable(TestId::CumulativeSums, vec![Stat::new("n", n as f64)], stats, ps))
}
