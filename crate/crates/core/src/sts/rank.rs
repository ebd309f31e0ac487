use super::result::{Stat, TestId, TestResult};
use super::{require_len, Bits};
use crate::error::Result;
use crate::prng::BitSequence;

pub const RANK_DIM: usize = 32;
pub const RANK_MIN_MATRICES: usize = 38;

/// Probability that a random `dim`x`dim` binary matrix has rank `r`.
pub fn rank_probability(r: u32, dim: u32) -> f64 {
    let (m, q) = (f64::from(dim), f64::from(dim));
    let mut product = 1.0;
    for i in 0..r {
        let i = f64::from(i);
        product *= (1.0 - 2f64.powf(i - q)) * (1.0 - 2f64.powf(i - m)) / (1.0 - 2f64.powf(i - f64::from(r)));
    }
    2f64.powf(f64::from(r) * (q + m - f64::from(r)) - m * q) * product
}

/// Rank over GF(2) of a 32x32 matrix given as row bitmasks.
pub fn gf2_rank(mut rows: [u32; RANK_DIM]) -> u32 {
    let mut rank = 0;
    for col in (0..RANK_DIM).rev() {
        let bit = 1u32 << col;
        let Some(pivot) = (rank..RANK_DIM).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank];
        for row in rows.iter_mut().skip(rank + 1) {
            if *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        rank += 1;
    }
    rank as u32
}

pub fn rank(bits: &BitSequence) -> Result<TestResult> {
    rank_test(&bits.unpack())
}

pub(crate) fn rank_test(eps: Bits) -> Result<TestResult> {
    let n = eps.len();
    let cells = RANK_DIM * RANK_DIM;
    require_len(n, RANK_MIN_MATRICES * cells)?;
    let matrices = n / cells;
    let (mut full, mut full_minus_one) = (0usize, 0usize);
    for block in eps.chunks_exact(cells) {
        let mut rows = [0u32; RANK_DIM];
        for (row, bits) in rows.iter_mut().zip(block.chunks_exact(RANK_DIM)) {
            *row = bits.iter().fold(0, |acc, &b| (acc << 1) | u32::from(b));
        }
        match gf2_rank(rows) {
            32 => full += 1,
            31 => full_minus_one += 1,
            _ => {}
        }
    }
    let rest = matrices - full - full_minus_one;
    let p32 = rank_probability(32, 32);
    let p31 = rank_probability(31, 32);
    let p30 = 1.0 - p32 - p31;
    let nm = matrices as f64;
    let chi2 = [(full, p32), (full_minus_one, p31), (rest, p30)]
        .iter()
        .map(|&(f, p)| (f as f64 - nm * p).powi(2) / (nm * p))
        .sum::<f64>();
    let p = (-chi2 / 2.0).exp();
    Ok(TestResult::single(
        TestId::Rank,
        vec![Stat::new("n", n as f64), Stat::new("M", RANK_DIM as f64), Stat::new("Q", RANK_DIM as f64)],
        vec![
            Stat::new("matrices", nm),
            Stat::new("full_rank", full as f64),
            Stat::new("full_rank_minus_one", full_minus_one as f64),
            Stat::new("lower_rank", rest as f64),
            Stat::new("chi2", chi2),
        ],
        p,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sts::testing::zeros;

    #[test]
    fn class_probabilities() {
        assert!((rank_probability(32, 32) - 0.288_788).abs() < 1e-6);
        assert!((rank_probability(31, 32) - 0.577_576).abs() < 1e-6);
        assert!((1.0 - rank_probability(32, 32) - rank_probability(31, 32) - 0.133_636).abs() < 1e-6);
        // 3x3 ranks match direct enumeration: 168 of 512 matrices are invertible
        assert!((rank_probability(3, 3) - 168.0 / 512.0).abs() < 1e-15);
    }

    #[test]
    fn rank_small_cases() {
        let mut identity = [0u32; 32];
        for (i, r) in identity.iter_mut().enumerate() {
            *r = 1 << i;
        }
        assert_eq!(gf2_rank(identity), 32);
        assert_eq!(gf2_rank([0; 32]), 0);
        let mut dup = identity;
        dup[5] = dup[3] ^ dup[7];
        assert_eq!(gf2_rank(dup), 31);
        assert_eq!(gf2_rank([0xFFFF_FFFF; 32]), 1);
    }

    fn identity_bits(matrices: usize) -> Vec<u8> {
        let mut eps = Vec::with_capacity(matrices * 1024);
        for _ in 0..matrices {
            for i in 0..32 {
                eps.extend((0..32).map(|j| u8::from(i == j)));
            }
        }
        eps
    }

    #[test]
    fn identity_pattern_is_rejected() {
        let r = rank_test(&identity_bits(40)).unwrap();
        assert_eq!(r.statistic("full_rank"), Some(40.0));
        let p32 = rank_probability(32, 32);
        let p31 = rank_probability(31, 32);
        let want_chi2 = (40.0 - 40.0 * p32).powi(2) / (40.0 * p32) + 40.0 * p31 + 40.0 * (1.0 - p32 - p31);
        assert!((r.statistic("chi2").unwrap() - want_chi2).abs() < 1e-9);
        assert!(r.p("p").unwrap() < 1e-10);
    }

    #[test]
    fn zeros_and_length() {
        let r = rank_test(&zeros(38 * 1024)).unwrap();
        assert_eq!(r.statistic("lower_rank"), Some(38.0));
        assert!(r.p("p").unwrap() < 1e-30);
        assert!(rank_test(&zeros(38 * 1024 - 1)).is_err());
    }
}
