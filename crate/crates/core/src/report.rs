//! Pass-count matrices over generator kinds and seeds.

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::prng::{derive_spec_from_hex, generate, GeneratorKind};
use crate::sts::{run_suite, SuiteConfig};

/// The `index`-th seed of a sweep: SHA-256 of the master string followed by
/// the big-endian index, as 64 hex characters.
pub fn sweep_seed(master: &str, index: u32) -> String {
    let mut h = Sha256::new();
    h.update(master.as_bytes());
    h.update(index.to_be_bytes());
    hex::encode(h.finalize())
}

pub fn sweep_seeds(master: &str, count: u32) -> Vec<String> {
    (0..count).map(|i| sweep_seed(master, i)).collect()
}

/// Suite outcome for one kind and seed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub passed: usize,
    pub applicable: usize,
    pub failed_tests: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonMatrix {
    pub kinds: Vec<String>,
    pub seeds: Vec<String>,
    pub n_bits: u64,
    pub alpha: f64,
    /// `cells[k][s]` for kind `k` and seed `s`.
    pub cells: Vec<Vec<Cell>>,
}

impl ComparisonMatrix {
    pub fn mean_pass_count(&self, kind: usize) -> f64 {
        let row = &self.cells[kind];
        row.iter().map(|c| c.passed as f64).sum::<f64>() / row.len() as f64
    }

    /// Seeds on which every applicable test passed.
    pub fn all_pass_count(&self, kind: usize) -> usize {
        self.cells[kind].iter().filter(|c| c.passed == c.applicable).count()
    }

    pub fn row(&self, kind: GeneratorKind) -> Option<usize> {
        self.kinds.iter().position(|k| k == kind.name())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "pass counts at alpha = {} over {} seeds of {} bits\n\n",
            self.alpha,
            self.seeds.len(),
            self.n_bits
        );
        out.push_str(&format!("{:<16}", "kind"));
        for s in 0..self.seeds.len() {
            out.push_str(&format!(" {:>5}", format!("s{s}")));
        }
        out.push_str(&format!(" {:>8} {:>9}\n", "mean", "all-pass"));
        for (k, name) in self.kinds.iter().enumerate() {
            out.push_str(&format!("{name:<16}"));
            for c in &self.cells[k] {
                out.push_str(&format!(" {:>5}", format!("{}/{}", c.passed, c.applicable)));
            }
            out.push_str(&format!(
                " {:>8.2} {:>9}\n",
                self.mean_pass_count(k),
                format!("{}/{}", self.all_pass_count(k), self.seeds.len())
            ));
        }
        out.push_str("\nseeds:\n");
        for (s, seed) in self.seeds.iter().enumerate() {
            out.push_str(&format!("s{s} {seed}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix serializes")
    }
}

/// Generates `n_bits` per kind and seed and runs the suite on each. Jobs run
/// in parallel; the matrix keeps input order.
pub fn compare(kinds: &[GeneratorKind], seeds: &[String], n_bits: u64, config: &SuiteConfig) -> Result<ComparisonMatrix> {
    let jobs: Vec<(usize, usize)> = (0..kinds.len()).flat_map(|k| (0..seeds.len()).map(move |s| (k, s))).collect();
    let results: Vec<Cell> = jobs
        .par_iter()
        .map(|&(k, s)| -> Result<Cell> {
            let spec = derive_spec_from_hex(&seeds[s], kinds[k])?.with_bits(n_bits);
            let report = run_suite(&generate(&spec)?, config);
            let failed_tests = report
                .results
                .iter()
                .filter(|r| r.passed(config.alpha) == Some(false))
                .map(|r| r.test.name())
                .collect();
            Ok(Cell {
                passed: report.pass_count(),
                applicable: report.applicable_count(),
                failed_tests,
            })
        })
        .collect::<Result<_>>()?;
    let mut cells = vec![Vec::with_capacity(seeds.len()); kinds.len()];
    for ((k, _), cell) in jobs.into_iter().zip(results) {
        cells[k].push(cell);
    }
    Ok(ComparisonMatrix {
        kinds: kinds.iter().map(|k| k.name().to_string()).collect(),
        seeds: seeds.to_vec(),
        n_bits,
        alpha: config.alpha,
        cells,
    })
}
