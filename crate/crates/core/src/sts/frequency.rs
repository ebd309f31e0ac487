use super::result::{Stat, TestId, TestResult};
use super::special::{erfc, igamc};
use super::{require_len, Bits};
use crate::error::{Error, Result};
use crate::prng::BitSequence;

pub const MONOBIT_MIN_BITS: usize = 100;
pub const BLOCK_FREQUENCY_MIN_M: usize = 20;
pub const DEFAULT_BLOCK_FREQUENCY_M: usize = 128;

pub fn frequency_monobit(bits: &BitSequence) -> Result<TestResult> {
    monobit(&bits.unpack())
}

pub(crate) fn monobit(eps: Bits) -> Result<TestResult> {
    let n = eps.len();
    require_len(n, MONOBIT_MIN_BITS)?;
    let ones = eps.iter().filter(|&&b| b == 1).count() as i64;
    let s = 2 * ones - n as i64;
    let s_obs = s.unsigned_abs() as f64 / (n as f64).sqrt();
    let p = erfc(s_obs / std::f64::consts::SQRT_2);
    Ok(TestResult::single(
        TestId::Frequency,
        vec![Stat::new("n", n as f64)],
        vec![Stat::new("sum", s as f64), Stat::new("s_obs", s_obs)],
        p,
    ))
}

pub fn block_frequency(bits: &BitSequence, m: usize) -> Result<TestResult> {
    block(&bits.unpack(), m)
}

pub(crate) fn block(eps: Bits, m: usize) -> Result<TestResult> {
    let n = eps.len();
    if m < BLOCK_FREQUENCY_MIN_M {
        return Err(Error::InvalidParameter {
            name: "M",
            value: m as f64,
            reason: "block length must be at least 20",
        });
    }
    require_len(n, MONOBIT_MIN_BITS.max(m))?;
    let blocks = n / m;
    let sum_sq: f64 = eps
        .chunks_exact(m)
        .map(|blk| {
            let pi = blk.iter().filter(|&&b| b == 1).count() as f64 / m as f64;
            (pi - 0.5) * (pi - 0.5)
        })
        .sum();
    let chi2 = 4.0 * m as f64 * sum_sq;
    let p = igamc(blocks as f64 / 2.0, chi2 / 2.0)?;
    Ok(TestResult::single(
        TestId::BlockFrequency,
        vec![Stat::new("n", n as f64), Stat::new("M", m as f64)],
        vec![Stat::new("blocks", blocks as f64), Stat::new("chi2", chi2)],
        p,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sts::testing::{alternating, from_str, ones, zeros};

    #[test]
    fn monobit_extremes() {
        let p = monobit(&ones(100)).unwrap().p("p").unwrap();
        assert!(p < 1e-20 && p > 0.0);
        assert!((p - erfc(50f64.sqrt())).abs() < 1e-30);
        assert_eq!(monobit(&alternating(100)).unwrap().p("p").unwrap(), 1.0);
    }

    #[test]
    fn monobit_nist_pi_example() {
        let eps = from_str(crate::sts::testing::PI_100);
        let r = monobit(&eps).unwrap();
        assert_eq!(r.statistic("sum"), Some(-16.0));
        assert!((r.p("p").unwrap() - 0.109_599).abs() < 1e-6);
    }

    #[test]
    fn monobit_too_short() {
        assert!(matches!(
            monobit(&ones(99)),
            Err(Error::InsufficientLength { required: 100, actual: 99, .. })
        ));
    }

    #[test]
    fn monobit_complement_symmetry() {
        let eps = from_str(crate::sts::testing::PI_100);
        let comp: Vec<u8> = eps.iter().map(|b| 1 - b).collect();
        assert_eq!(monobit(&eps).unwrap().p("p"), monobit(&comp).unwrap().p("p"));
    }

    #[test]
    fn block_balanced_and_constant() {
        let r = block(&alternating(1000), 20).unwrap();
        assert_eq!(r.statistic("chi2"), Some(0.0));
        assert_eq!(r.p("p"), Some(1.0));
        assert!(block(&zeros(1000), 20).unwrap().p("p").unwrap() < 1e-30);
    }

    #[test]
    fn block_discards_partial_tail() {
        let mut eps = alternating(1000);
        eps.extend(ones(19));
        assert_eq!(block(&eps, 20).unwrap().p("p"), Some(1.0));
    }

    #[test]
    fn block_of_whole_sequence_follows_monobit_direction() {
        let mut eps = ones(80);
        eps.extend(zeros(20));
        let b = block(&eps, 100).unwrap().p("p").unwrap();
        let m = monobit(&eps).unwrap().p("p").unwrap();
        assert!(b < 0.01 && m < 0.01);
        let even = alternating(100);
        assert_eq!(block(&even, 100).unwrap().p("p"), Some(1.0));
    }

    #[test]
    fn block_parameter_checks() {
        assert!(matches!(block(&ones(1000), 10), Err(Error::InvalidParameter { .. })));
        assert!(matches!(block(&ones(100), 128), Err(Error::InsufficientLength { .. })));
    }
}
