use super::result::{PValue, Stat, TestId, TestResult};
use super::special::{erfc, igamc};
use super::Bits;
use crate::error::Result;
use crate::prng::BitSequence;

pub const EXCURSION_MIN_CYCLES: f64 = 500.0;
pub const EXCURSION_STATES: [i64; 8] = [-4, -3, -2, -1, 1, 2, 3, 4];
pub const VARIANT_STATES: [i64; 18] = [-9, -8, -7, -6, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6, 7, 8, 9];

/// Visit-count class probabilities for state `x`: exactly k visits for
/// k = 0..4, then five or more.
pub fn visit_probabilities(x: i64) -> [f64; 6] {
    let a = 1.0 / (2.0 * x.unsigned_abs() as f64);
    let mut pi = [0.0; 6];
    pi[0] = 1.0 - a;
    for (k, slot) in pi.iter_mut().enumerate().take(5).skip(1) {
        *slot = a * a * (1.0 - a).powi(k as i32 - 1);
    }
    pi[5] = a * (1.0 - a).powi(4);
    pi
}

/// Number of cycles, i.e. returns of the walk to zero plus a final
/// incomplete cycle when the walk does not end at zero.
fn cycle_count(eps: Bits) -> usize {
    let mut s = 0i64;
    let mut zeros = 0;
    for &b in eps {
        s += if b == 1 { 1 } else { -1 };
        zeros += usize::from(s == 0);
    }
    zeros + usize::from(s != 0)
}

fn min_cycles(n: usize) -> f64 {
    (0.005 * (n as f64).sqrt()).max(EXCURSION_MIN_CYCLES)
}

pub fn random_excursions(bits: &BitSequence) -> Result<TestResult> {
    excursions(&bits.unpack())
}

pub(crate) fn excursions(eps: Bits) -> Result<TestResult> {
    let n = eps.len();
    let params = vec![Stat::new("n", n as f64)];
    // nu[state][class]
    let mut nu = [[0u64; 6]; 8];
    let mut visits = [0u64; 8];
    let mut cycles = 0usize;
    let mut s = 0i64;
    let close = |visits: &mut [u64; 8], nu: &mut [[u64; 6]; 8]| {
        for (row, v) in nu.iter_mut().zip(visits.iter_mut()) {
            row[(*v).min(5) as usize] += 1;
            *v = 0;
        }
    };
    for &b in eps {
        s += if b == 1 { 1 } else { -1 };
        if s == 0 {
            cycles += 1;
            close(&mut visits, &mut nu);
        } else if (-4..=4).contains(&s) {
            visits[state_index(s)] += 1;
        }
    }
    if s != 0 {
        cycles += 1;
        close(&mut visits, &mut nu);
    }
    let j = cycles as f64;
    let mut stats = vec![Stat::new("J", j)];
    if j < min_cycles(n) {
        return Ok(TestResult::not_applicable(
            TestId::RandomExcursions,
            params,
            stats,
            format!("{cycles} cycles, fewer than {}", min_cycles(n)),
        ));
    }
    let mut ps = Vec::with_capacity(8);
    for (x, row) in EXCURSION_STATES.iter().zip(&nu) {
        let pi = visit_probabilities(*x);
        let chi2: f64 = row
            .iter()
            .zip(pi)
            .map(|(&v, p)| (v as f64 - j * p).powi(2) / (j * p))
            .sum();
        stats.push(Stat::new(format!("chi2_{x:+}"), chi2));
        ps.push(PValue {
            label: format!("x={x:+}"),
            value: igamc(2.5, chi2 / 2.0)?,
        });
    }
    Ok(TestResult::applicable(TestId::RandomExcursions, params, stats, ps))
}

fn state_index(s: i64) -> usize {
    if s < 0 {
        (s + 4) as usize
    } else {
        (s + 3) as usize
    }
}

pub fn random_excursions_variant(bits: &BitSequence) -> Result<TestResult> {
    excursions_variant(&bits.unpack())
}

pub(crate) fn excursions_variant(eps: Bits) -> Result<TestResult> {
    let n = eps.len();
    let params = vec![Stat::new("n", n as f64)];
    let j = cycle_count(eps) as f64;
    let mut stats = vec![Stat::new("J", j)];
    if j < min_cycles(n) {
        return Ok(TestResult::not_applicable(
            TestId::RandomExcursionsVariant,
            params,
            stats,
            format!("{j} cycles, fewer than {}", min_cycles(n)),
        ));
    }
    // xi[s + 9] for s in -9..=9
    let mut xi = [0u64; 19];
    let mut s = 0i64;
    for &b in eps {
        s += if b == 1 { 1 } else { -1 };
        if (-9..=9).contains(&s) {
            xi[(s + 9) as usize] += 1;
        }
    }
    let mut ps = Vec::with_capacity(18);
    for x in VARIANT_STATES {
        let count = xi[(x + 9) as usize] as f64;
        stats.push(Stat::new(format!("xi_{x:+}"), count));
        let denom = (2.0 * j * (4.0 * x.unsigned_abs() as f64 - 2.0)).sqrt();
        ps.push(PValue {
            label: format!("x={x:+}"),
            value: erfc((count - j).abs() / denom),
        });
    }
    Ok(TestResult::applicable(TestId::RandomExcursionsVariant, params, stats, ps))
}
