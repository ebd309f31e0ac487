use super::result::{Stat, TestId, TestResult};
use super::special::{erfc, igamc};
use super::{require_len, Bits};
use crate::error::Result;
use crate::prng::BitSequence;

pub const RUNS_MIN_BITS: usize = 100;
pub const LONGEST_RUN_MIN_BITS: usize = 128;

pub fn runs(bits: &BitSequence) -> Result<TestResult> {
    runs_test(&bits.unpack())
}

pub(crate) fn runs_test(eps: Bits) -> Result<TestResult> {
    let n = eps.len();
    require_len(n, RUNS_MIN_BITS)?;
    let nf = n as f64;
    let ones = eps.iter().filter(|&&b| b == 1).count();
    let pi = ones as f64 / nf;
    // symmetric in ones and zeros, so complementing the input is exact
    let pq = ones as f64 * (n - ones) as f64 / (nf * nf);
    let tau = 2.0 / nf.sqrt();
    let params = vec![Stat::new("n", nf)];
    if (2.0 * ones as f64 - nf).abs() / (2.0 * nf) >= tau {
        return Ok(TestResult::not_applicable(
            TestId::Runs,
            params,
            vec![Stat::new("pi", pi), Stat::new("tau", tau)],
            "ones fraction fails the frequency prerequisite",
        ));
    }
    let v_obs = 1 + eps.windows(2).filter(|w| w[0] != w[1]).count();
    let expected = 2.0 * nf * pq;
    let p = erfc((v_obs as f64 - expected).abs() / (2.0 * (2.0 * nf).sqrt() * pq));
    Ok(TestResult::single(
        TestId::Runs,
        params,
        vec![Stat::new("pi", pi), Stat::new("v_obs", v_obs as f64)],
        p,
    ))
}

/// Block length, class bounds and class probabilities, chosen by sequence length.
struct LongestRunTable {
    m: usize,
    lowest: usize,
    probs: &'static [f64],
}

fn longest_run_table(n: usize) -> LongestRunTable {
    if n < 6272 {
        LongestRunTable {
            m: 8,
            lowest: 1,
            probs: &[0.214_843_75, 0.367_187_5, 0.230_468_75, 0.1875],
        }
    } else if n < 750_000 {
        LongestRunTable {
            m: 128,
            lowest: 4,
            probs: &[0.117_403_578_8, 0.242_955_959, 0.249_363_483, 0.175_177_06, 0.102_701_071, 0.112_398_847],
        }
    } else {
        LongestRunTable {
            m: 10_000,
            lowest: 10,
            probs: &[0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727],
        }
    }
}

pub fn longest_run_of_ones(bits: &BitSequence) -> Result<TestResult> {
    longest_run(&bits.unpack())
}

pub(crate) fn longest_run(eps: Bits) -> Result<TestResult> {
    let n = eps.len();
    require_len(n, LONGEST_RUN_MIN_BITS)?;
    let table = longest_run_table(n);
    let k = table.probs.len() - 1;
    let blocks = n / table.m;
    let mut nu = vec![0usize; k + 1];
    for blk in eps.chunks_exact(table.m) {
        let (mut run, mut longest) = (0usize, 0usize);
        for &b in blk {
            run = if b == 1 { run + 1 } else { 0 };
            longest = longest.max(run);
        }
        let class = longest.clamp(table.lowest, table.lowest + k) - table.lowest;
        nu[class] += 1;
    }
    let nb = blocks as f64;
    let chi2: f64 = nu
        .iter()
        .zip(table.probs)
        .map(|(&v, &p)| (v as f64 - nb * p).powi(2) / (nb * p))
        .sum();
    let p = igamc(k as f64 / 2.0, chi2 / 2.0)?;
    let mut stats: Vec<Stat> = nu.iter().enumerate().map(|(i, &v)| Stat::new(format!("nu{i}"), v as f64)).collect();
    stats.push(Stat::new("chi2", chi2));
    Ok(TestResult::single(
        TestId::LongestRun,
        vec![Stat::new("n", n as f64), Stat::new("M", table.m as f64), Stat::new("K", k as f64)],
        stats,
        p,
    ))
}
