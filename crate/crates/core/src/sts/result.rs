use serde::{Deserialize, Serialize};

/// The ten tests of the battery, in reporting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestId {
    Frequency,
    BlockFrequency,
    Serial,
    Runs,
    Rank,
    LongestRun,
    RandomExcursions,
    RandomExcursionsVariant,
    CumulativeSums,
    LinearComplexity,
}

impl TestId {
    pub const ALL: [TestId; 10] = [
        TestId::Frequency,
        TestId::BlockFrequency,
        TestId::Serial,
        TestId::Runs,
        TestId::Rank,
        TestId::LongestRun,
        TestId::RandomExcursions,
        TestId::RandomExcursionsVariant,
        TestId::CumulativeSums,
        TestId::LinearComplexity,
    ];

    /// Machine name, as used in structured reports.
    pub fn name(self) -> &'static str {
        match self {
            TestId::Frequency => "frequency",
            TestId::BlockFrequency => "block-frequency",
            TestId::Serial => "serial",
            TestId::Runs => "runs",
            TestId::Rank => "rank",
            TestId::LongestRun => "longest-run",
            TestId::RandomExcursions => "random-excursions",
            TestId::RandomExcursionsVariant => "random-excursions-variant",
            TestId::CumulativeSums => "cumulative-sums",
            TestId::LinearComplexity => "linear-complexity",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            TestId::Frequency => "Frequency (monobit)",
            TestId::BlockFrequency => "Block frequency",
            TestId::Serial => "Serial",
            TestId::Runs => "Runs",
            TestId::Rank => "Binary matrix rank",
            TestId::LongestRun => "Longest run of ones",
            TestId::RandomExcursions => "Random excursions",
            TestId::RandomExcursionsVariant => "Random excursions variant",
            TestId::CumulativeSums => "Cumulative sums",
            TestId::LinearComplexity => "Linear complexity",
        }
    }

    /// 1-based position in the reporting order.
    pub fn number(self) -> usize {
        TestId::ALL.iter().position(|&t| t == self).expect("listed") + 1
    }
}

impl std::fmt::Display for TestId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A named real number: a test parameter or an intermediate statistic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub name: String,
    pub value: f64,
}

impl Stat {
    pub fn new(name: impl Into<String>, value: f64) -> Self {
        Stat {
            name: name.into(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PValue {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    Applicable { p_values: Vec<PValue> },
    NotApplicable { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub test: TestId,
    pub parameters: Vec<Stat>,
    pub statistics: Vec<Stat>,
    pub outcome: Outcome,
}

impl TestResult {
    pub(crate) fn applicable(test: TestId, parameters: Vec<Stat>, statistics: Vec<Stat>, p_values: Vec<PValue>) -> Self {
        debug_assert!(p_values.iter().all(|p| (0.0..=1.0).contains(&p.value)), "{test}: {p_values:?}");
        TestResult {
            test,
            parameters,
            statistics,
            outcome: Outcome::Applicable { p_values },
        }
    }

    pub(crate) fn single(test: TestId, parameters: Vec<Stat>, statistics: Vec<Stat>, p: f64) -> Self {
        Self::applicable(test, parameters, statistics, vec![PValue { label: "p".into(), value: p }])
    }

    pub(crate) fn not_applicable(test: TestId, parameters: Vec<Stat>, statistics: Vec<Stat>, reason: impl Into<String>) -> Self {
        TestResult {
            test,
            parameters,
            statistics,
            outcome: Outcome::NotApplicable { reason: reason.into() },
        }
    }

    pub fn is_applicable(&self) -> bool {
        matches!(self.outcome, Outcome::Applicable { .. })
    }

    /// Labeled p-values; empty when the test was not applicable.
    pub fn p_values(&self) -> &[PValue] {
        match &self.outcome {
            Outcome::Applicable { p_values } => p_values,
            Outcome::NotApplicable { .. } => &[],
        }
    }

    /// The p-value with the given label.
    pub fn p(&self, label: &str) -> Option<f64> {
        self.p_values().iter().find(|p| p.label == label).map(|p| p.value)
    }

    pub fn min_p(&self) -> Option<f64> {
        self.p_values().iter().map(|p| p.value).reduce(f64::min)
    }

    /// Per-p-value verdicts at significance `alpha`.
    pub fn verdicts(&self, alpha: f64) -> Vec<bool> {
        self.p_values().iter().map(|p| p.value >= alpha).collect()
    }

    /// `None` when not applicable, otherwise whether every p-value is at least `alpha`.
    pub fn passed(&self, alpha: f64) -> Option<bool> {
        self.is_applicable().then(|| self.p_values().iter().all(|p| p.value >= alpha))
    }

    pub fn statistic(&self, name: &str) -> Option<f64> {
        self.statistics.iter().find(|s| s.name == name).map(|s| s.value)
    }
}
