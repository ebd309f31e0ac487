use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::complexity::{complexity_test, DEFAULT_LINEAR_COMPLEXITY_M};
use super::cusum::cusum_both;
use super::excursions::{excursions, excursions_variant};
use super::frequency::{block, monobit, DEFAULT_BLOCK_FREQUENCY_M};
use super::rank::rank_test;
use super::result::{TestId, TestResult};
use super::runs::{longest_run, runs_test};
use super::serial::{serial_test, DEFAULT_SERIAL_M};
use super::Bits;
use crate::error::Result;
use crate::prng::BitSequence;

pub const DEFAULT_ALPHA: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub alpha: f64,
    pub block_frequency_m: usize,
    pub serial_m: usize,
    pub linear_complexity_m: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            alpha: DEFAULT_ALPHA,
            block_frequency_m: DEFAULT_BLOCK_FREQUENCY_M,
            serial_m: DEFAULT_SERIAL_M,
            linear_complexity_m: DEFAULT_LINEAR_COMPLEXITY_M,
        }
    }
}

fn dispatch(id: TestId, eps: Bits, config: &SuiteConfig) -> Result<TestResult> {
    match id {
        TestId::Frequency => monobit(eps),
        TestId::BlockFrequency => block(eps, config.block_frequency_m),
        TestId::Serial => serial_test(eps, config.serial_m),
        TestId::Runs => runs_test(eps),
        TestId::Rank => rank_test(eps),
        TestId::LongestRun => longest_run(eps),
        TestId::RandomExcursions => excursions(eps),
        TestId::RandomExcursionsVariant => excursions_variant(eps),
        TestId::CumulativeSums => cusum_both(eps),
        TestId::LinearComplexity => complexity_test(eps, config.linear_complexity_m),
    }
}

/// Runs one test with the suite's parameters. Cumulative sums reports both
/// directions.
pub fn run_test(id: TestId, bits: &BitSequence, config: &SuiteConfig) -> Result<TestResult> {
    dispatch(id, &bits.unpack(), config)
}

fn run_unpacked(id: TestId, eps: Bits, config: &SuiteConfig) -> TestResult {
    dispatch(id, eps, config).unwrap_or_else(|e| TestResult::not_applicable(id, Vec::new(), Vec::new(), e.to_string()))
}

/// Runs all ten tests concurrently. A test whose preconditions fail (too
/// short an input, too few cycles) is recorded as not applicable.
pub fn run_suite(bits: &BitSequence, config: &SuiteConfig) -> SuiteReport {
    let eps = bits.unpack();
    let results = TestId::ALL
        .par_iter()
        .map(|&id| run_unpacked(id, &eps, config))
        .collect();
    SuiteReport {
        label: String::new(),
        n_bits: bits.len(),
        alpha: config.alpha,
        results,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub label: String,
    pub n_bits: usize,
    pub alpha: f64,
    pub results: Vec<TestResult>,
}

#[derive(Serialize)]
struct ResultView<'a> {
    number: usize,
    title: &'static str,
    passed: Option<bool>,
    #[serde(flatten)]
    result: &'a TestResult,
}

#[derive(Serialize)]
struct ReportView<'a> {
    label: &'a str,
    n_bits: usize,
    alpha: f64,
    pass_count: usize,
    applicable_count: usize,
    results: Vec<ResultView<'a>>,
}

impl SuiteReport {
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn result(&self, id: TestId) -> Option<&TestResult> {
        self.results.iter().find(|r| r.test == id)
    }

    pub fn pass_count(&self) -> usize {
        self.results.iter().filter(|r| r.passed(self.alpha) == Some(true)).count()
    }

    pub fn applicable_count(&self) -> usize {
        self.results.iter().filter(|r| r.is_applicable()).count()
    }

    /// True when every applicable test passed and at least one was applicable.
    pub fn all_applicable_passed(&self) -> bool {
        self.applicable_count() > 0 && self.pass_count() == self.applicable_count()
    }

    pub fn to_json(&self) -> String {
        let view = ReportView {
            label: &self.label,
            n_bits: self.n_bits,
            alpha: self.alpha,
            pass_count: self.pass_count(),
            applicable_count: self.applicable_count(),
            results: self
                .results
                .iter()
                .map(|r| ResultView {
                    number: r.test.number(),
                    title: r.test.title(),
                    passed: r.passed(self.alpha),
                    result: r,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&view).expect("report serializes")
    }

    /// Plain-text report: a numbered table with one p-value per test (the
    /// smallest of a family), then every p-value at full precision.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let label = if self.label.is_empty() { "-" } else { &self.label };
        let _ = writeln!(out, "generator: {label}");
        let _ = writeln!(out, "bits: {}", self.n_bits);
        let _ = writeln!(out, "alpha: {}", self.alpha);
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<3} {:<28} {:>10}  result", "S", "Test", "p-value");
        for r in &self.results {
            let (p, verdict) = match (r.min_p(), r.passed(self.alpha)) {
                (Some(p), Some(true)) => (format!("{p:.6}"), "pass"),
                (Some(p), _) => (format!("{p:.6}"), "FAIL"),
                (None, _) => ("-".to_string(), "n/a"),
            };
            let _ = writeln!(out, "{:<3} {:<28} {:>10}  {verdict}", r.test.number(), r.test.title(), p);
        }
        let _ = writeln!(
            out,
            "\npassed {} of {} applicable tests ({} not applicable)",
            self.pass_count(),
            self.applicable_count(),
            self.results.len() - self.applicable_count()
        );
        let _ = writeln!(out, "\np-values:");
        for r in &self.results {
            match &r.outcome {
                super::result::Outcome::Applicable { p_values } => {
                    for p in p_values {
                        let _ = writeln!(out, "{} {} {:?}", r.test.name(), p.label, p.value);
                    }
                }
                super::result::Outcome::NotApplicable { reason } => {
                    let _ = writeln!(out, "{} not-applicable {reason}", r.test.name());
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pseudo_random_bits(n: usize) -> BitSequence {
        // xorshift64*, good enough to exercise the plumbing
        let mut x = 0x9E37_79B9_7F4A_7C15u64;
        (0..n)
            .map(|_| {
                x ^= x >> 12;
                x ^= x << 25;
                x ^= x >> 27;
                x.wrapping_mul(0x2545_F491_4F6C_DD1D) >> 63 == 1
            })
            .collect()
    }

    #[test]
    fn report_lists_all_tests_in_order() {
        let report = run_suite(&pseudo_random_bits(20_000), &SuiteConfig::default());
        let ids: Vec<TestId> = report.results.iter().map(|r| r.test).collect();
        assert_eq!(ids, TestId::ALL);
        // too short for rank, serial at m=16, excursions and linear complexity
        for id in [TestId::Rank, TestId::Serial, TestId::LinearComplexity] {
            assert!(!report.result(id).unwrap().is_applicable(), "{id}");
        }
        assert!(report.result(TestId::Frequency).unwrap().is_applicable());
    }

    #[test]
    fn zeros_pass_nothing() {
        let zeros = BitSequence::from_bits(&vec![0; 1_000_000]);
        let report = run_suite(&zeros, &SuiteConfig::default());
        assert_eq!(report.pass_count(), 0);
        assert!(!report.all_applicable_passed());
        assert!(report.applicable_count() >= 7);
    }

    #[test]
    fn text_and_json_share_p_values() {
        let report = run_suite(&pseudo_random_bits(200_000), &SuiteConfig::default()).with_label("xorshift");
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        let text = report.to_text();
        for r in json["results"].as_array().unwrap() {
            for p in r["outcome"]["p_values"].as_array().into_iter().flatten() {
                let line = format!("{} {} {:?}", r["test"].as_str().unwrap(), p["label"].as_str().unwrap(), p["value"].as_f64().unwrap());
                assert!(text.contains(&line), "missing {line}");
            }
        }
        assert_eq!(json["pass_count"].as_u64().unwrap() as usize, report.pass_count());
    }

    #[test]
    fn family_verdict_needs_every_p_value() {
        let report = run_suite(&pseudo_random_bits(200_000), &SuiteConfig::default());
        for r in &report.results {
            if let Some(passed) = r.passed(report.alpha) {
                assert_eq!(passed, r.verdicts(report.alpha).iter().all(|&v| v));
            }
        }
    }
}
