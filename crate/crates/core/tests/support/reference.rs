//! Second implementation of the ten randomness tests, written directly from
//! the SP 800-22 definitions and the reference C code. It shares nothing with
//! the crate: bits are unpacked bytes, loops are naive, and the special
//! functions come from statrs.

#![allow(dead_code, clippy::needless_range_loop)]

use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::erf::erfc;
use statrs::function::gamma::gamma_ur;

/// Labelled p-values of one test, or `None` when the test does not apply.
pub type Outcome = Option<Vec<(String, f64)>>;

pub const TESTS: [&str; 10] = [
    "frequency",
    "block-frequency",
    "serial",
    "runs",
    "rank",
    "longest-run",
    "random-excursions",
    "random-excursions-variant",
    "cumulative-sums",
    "linear-complexity",
];

fn single(p: f64) -> Outcome {
    Some(vec![("p".to_string(), p)])
}

fn igamc(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else {
        gamma_ur(a, x)
    }
}

pub fn run(name: &str, e: &[u8]) -> Outcome {
    match name {
        "frequency" => frequency(e),
        "block-frequency" => block_frequency(e, 128),
        "serial" => serial(e, 16),
        "runs" => runs(e),
        "rank" => rank(e),
        "longest-run" => longest_run(e),
        "random-excursions" => excursions(e),
        "random-excursions-variant" => excursions_variant(e),
        "cumulative-sums" => cusum(e),
        "linear-complexity" => linear_complexity(e, 500),
        _ => panic!("unknown test {name}"),
    }
}

pub fn frequency(e: &[u8]) -> Outcome {
    let n = e.len() as f64;
    let s: f64 = e.iter().map(|&b| if b == 1 { 1.0 } else { -1.0 }).sum();
    single(erfc(s.abs() / n.sqrt() / std::f64::consts::SQRT_2))
}

pub fn block_frequency(e: &[u8], m: usize) -> Outcome {
    let blocks = e.len() / m;
    let mut sum = 0.0;
    for i in 0..blocks {
        let ones = e[i * m..(i + 1) * m].iter().filter(|&&b| b == 1).count();
        let pi = ones as f64 / m as f64;
        sum += (pi - 0.5) * (pi - 0.5);
    }
    let chi2 = 4.0 * m as f64 * sum;
    single(igamc(blocks as f64 / 2.0, chi2 / 2.0))
}

pub fn runs(e: &[u8]) -> Outcome {
    let n = e.len() as f64;
    let pi = e.iter().filter(|&&b| b == 1).count() as f64 / n;
    if (pi - 0.5).abs() >= 2.0 / n.sqrt() {
        return None;
    }
    let mut v = 1.0;
    for k in 1..e.len() {
        if e[k] != e[k - 1] {
            v += 1.0;
        }
    }
    let num = (v - 2.0 * n * pi * (1.0 - pi)).abs();
    single(erfc(num / (2.0 * (2.0 * n).sqrt() * pi * (1.0 - pi))))
}

pub fn longest_run(e: &[u8]) -> Outcome {
    let n = e.len();
    let (m, v0, pi): (usize, usize, &[f64]) = if n < 6272 {
        (8, 1, &[0.21484375, 0.3671875, 0.23046875, 0.1875])
    } else if n < 750_000 {
        (128, 4, &[0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847])
    } else {
        (10_000, 10, &[0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727])
    };
    let k = pi.len() - 1;
    let blocks = n / m;
    let mut nu = vec![0.0; k + 1];
    for i in 0..blocks {
        let mut longest = 0;
        let mut run = 0;
        for j in 0..m {
            if e[i * m + j] == 1 {
                run += 1;
                if run > longest {
                    longest = run;
                }
            } else {
                run = 0;
            }
        }
        let idx = if longest < v0 {
            0
        } else if longest > v0 + k {
            k
        } else {
            longest - v0
        };
        nu[idx] += 1.0;
    }
    let nb = blocks as f64;
    let chi2: f64 = (0..=k).map(|i| (nu[i] - nb * pi[i]).powi(2) / (nb * pi[i])).sum();
    single(igamc(k as f64 / 2.0, chi2 / 2.0))
}

fn gf2_rank(mut rows: Vec<Vec<u8>>) -> usize {
    let (r, c) = (rows.len(), rows[0].len());
    let mut rank = 0;
    for col in 0..c {
        if let Some(piv) = (rank..r).find(|&i| rows[i][col] == 1) {
            rows.swap(rank, piv);
            for i in 0..r {
                if i != rank && rows[i][col] == 1 {
                    for j in 0..c {
                        rows[i][j] ^= rows[rank][j];
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

fn full_rank_probability(r: i32) -> f64 {
    let mut product = 1.0;
    for i in 0..r {
        let a = 1.0 - 2f64.powi(i - 32);
        product *= a * a / (1.0 - 2f64.powi(i - r));
    }
    2f64.powi(r * (64 - r) - 1024) * product
}

pub fn rank(e: &[u8]) -> Outcome {
    let count = e.len() / 1024;
    if count == 0 {
        return None;
    }
    let (mut full, mut minus_one) = (0.0, 0.0);
    for k in 0..count {
        let rows: Vec<Vec<u8>> = (0..32).map(|i| e[k * 1024 + 32 * i..k * 1024 + 32 * (i + 1)].to_vec()).collect();
        match gf2_rank(rows) {
            32 => full += 1.0,
            31 => minus_one += 1.0,
            _ => {}
        }
    }
    let p32 = full_rank_probability(32);
    let p31 = full_rank_probability(31);
    let p30 = 1.0 - p32 - p31;
    let nf = count as f64;
    let rest = nf - full - minus_one;
    let chi2 = (full - nf * p32).powi(2) / (nf * p32)
        + (minus_one - nf * p31).powi(2) / (nf * p31)
        + (rest - nf * p30).powi(2) / (nf * p30);
    single((-chi2 / 2.0).exp())
}

fn psi2(e: &[u8], m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let n = e.len();
    let mut counts = vec![0u64; 1 << m];
    for i in 0..n {
        let mut v = 0usize;
        for j in 0..m {
            v = (v << 1) | e[(i + j) % n] as usize;
        }
        counts[v] += 1;
    }
    let sum: f64 = counts.iter().map(|&c| (c as f64) * (c as f64)).sum();
    sum * (1u64 << m) as f64 / n as f64 - n as f64
}

pub fn serial(e: &[u8], m: usize) -> Outcome {
    let log2n = (e.len() as f64).log2().floor() as usize;
    if m + 2 >= log2n {
        return None;
    }
    let (a, b, c) = (psi2(e, m), psi2(e, m - 1), psi2(e, m - 2));
    let d1 = a - b;
    let d2 = a - 2.0 * b + c;
    Some(vec![
        ("p1".to_string(), igamc(2f64.powi(m as i32 - 2), d1 / 2.0)),
        ("p2".to_string(), igamc(2f64.powi(m as i32 - 3), d2 / 2.0)),
    ])
}

fn cusum_p(n: i64, z: i64) -> f64 {
    let phi = Normal::new(0.0, 1.0).unwrap();
    let sn = (n as f64).sqrt();
    let zf = z as f64;
    let mut s1 = 0.0;
    let mut k = (-n / z + 1) / 4;
    while k <= (n / z - 1) / 4 {
        s1 += phi.cdf((4 * k + 1) as f64 * zf / sn) - phi.cdf((4 * k - 1) as f64 * zf / sn);
        k += 1;
    }
    let mut s2 = 0.0;
    let mut k = (-n / z - 3) / 4;
    while k <= (n / z - 1) / 4 {
        s2 += phi.cdf((4 * k + 3) as f64 * zf / sn) - phi.cdf((4 * k + 1) as f64 * zf / sn);
        k += 1;
    }
    1.0 - s1 + s2
}

pub fn cusum(e: &[u8]) -> Outcome {
    let n = e.len() as i64;
    let steps: Vec<i64> = e.iter().map(|&b| if b == 1 { 1 } else { -1 }).collect();
    let max_abs = |it: &mut dyn Iterator<Item = &i64>| {
        let (mut s, mut z) = (0i64, 0i64);
        for x in it {
            s += x;
            z = z.max(s.abs());
        }
        z
    };
    let fwd = max_abs(&mut steps.iter());
    let bwd = max_abs(&mut steps.iter().rev());
    Some(vec![
        ("forward".to_string(), cusum_p(n, fwd)),
        ("backward".to_string(), cusum_p(n, bwd)),
    ])
}

/// Partial sums padded with a zero at both ends, split into cycles.
fn cycles(e: &[u8]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut s = 0i64;
    for &b in e {
        s += if b == 1 { 1 } else { -1 };
        if s == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(s);
        }
    }
    // an unfinished walk closes at the appended zero; one that already ended
    // at zero has no extra cycle
    if s != 0 {
        out.push(cur);
    }
    out
}

fn excursion_threshold(n: usize) -> f64 {
    (0.005 * (n as f64).sqrt()).max(500.0)
}

pub fn excursions(e: &[u8]) -> Outcome {
    const PI: [[f64; 6]; 5] = [
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.5000000000, 0.25000000, 0.12500000, 0.06250000, 0.03125000, 0.0312500000],
        [0.7500000000, 0.06250000, 0.04687500, 0.03515625, 0.02636719, 0.0791015625],
        [0.8333333333, 0.02777778, 0.02314815, 0.01929012, 0.01607510, 0.0803755144],
        [0.8750000000, 0.01562500, 0.01367188, 0.01196289, 0.01046753, 0.0732727051],
    ];
    let cyc = cycles(e);
    let j = cyc.len() as f64;
    if j < excursion_threshold(e.len()) {
        return None;
    }
    let mut out = Vec::new();
    for x in [-4i64, -3, -2, -1, 1, 2, 3, 4] {
        let mut nu = [0.0f64; 6];
        for c in &cyc {
            let visits = c.iter().filter(|&&s| s == x).count();
            nu[visits.min(5)] += 1.0;
        }
        let row = &PI[x.unsigned_abs() as usize];
        let chi2: f64 = (0..6).map(|k| (nu[k] - j * row[k]).powi(2) / (j * row[k])).sum();
        out.push((format!("x={x:+}"), igamc(2.5, chi2 / 2.0)));
    }
    Some(out)
}

pub fn excursions_variant(e: &[u8]) -> Outcome {
    let cyc = cycles(e);
    let j = cyc.len() as f64;
    if j < excursion_threshold(e.len()) {
        return None;
    }
    let mut out = Vec::new();
    for x in (-9i64..=9).filter(|&x| x != 0) {
        let xi = cyc.iter().flatten().filter(|&&s| s == x).count() as f64;
        let p = erfc((xi - j).abs() / (2.0 * j * (4.0 * x.abs() as f64 - 2.0)).sqrt());
        out.push((format!("x={x:+}"), p));
    }
    Some(out)
}

/// Textbook Berlekamp-Massey on unpacked bits.
pub fn lfsr_length(s: &[u8]) -> usize {
    let n = s.len();
    let mut c = vec![0u8; n + 1];
    let mut b = vec![0u8; n + 1];
    c[0] = 1;
    b[0] = 1;
    let (mut l, mut m) = (0usize, -1i64);
    for i in 0..n {
        let mut d = s[i];
        for j in 1..=l {
            d ^= c[j] & s[i - j];
        }
        if d == 1 {
            let t = c.clone();
            let shift = (i as i64 - m) as usize;
            for j in 0..=n - shift {
                c[j + shift] ^= b[j];
            }
            if 2 * l <= i {
                l = i + 1 - l;
                m = i as i64;
                b = t;
            }
        }
    }
    l
}

pub fn linear_complexity(e: &[u8], m: usize) -> Outcome {
    const PROBS: [f64; 7] = [0.01047, 0.03125, 0.12500, 0.50000, 0.25000, 0.06250, 0.020833];
    let blocks = e.len() / m;
    if blocks < 200 {
        return None;
    }
    let mf = m as f64;
    let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
    let mean = mf / 2.0 + (9.0 + sign) / 36.0 - (mf / 3.0 + 2.0 / 9.0) / 2f64.powi(m as i32);
    let sign = -sign;
    let mut nu = [0.0f64; 7];
    for i in 0..blocks {
        let l = lfsr_length(&e[i * m..(i + 1) * m]) as f64;
        let t = sign * (l - mean) + 2.0 / 9.0;
        let bin = if t <= -2.5 {
            0
        } else if t <= -1.5 {
            1
        } else if t <= -0.5 {
            2
        } else if t <= 0.5 {
            3
        } else if t <= 1.5 {
            4
        } else if t <= 2.5 {
            5
        } else {
            6
        };
        nu[bin] += 1.0;
    }
    let nb = blocks as f64;
    let chi2: f64 = (0..7).map(|i| (nu[i] - nb * PROBS[i]).powi(2) / (nb * PROBS[i])).sum();
    single(igamc(3.0, chi2 / 2.0))
}
