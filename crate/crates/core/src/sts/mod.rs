//! The ten-test randomness battery. Statistics and reference distributions
//! follow NIST SP 800-22 rev. 1a; the special functions are in [`special`].

mod complexity;
mod cusum;
mod excursions;
mod frequency;
mod rank;
mod result;
mod runs;
mod serial;
pub mod special;
mod suite;

pub use complexity::{
    berlekamp_massey, linear_complexity, DEFAULT_LINEAR_COMPLEXITY_M, LINEAR_COMPLEXITY_MIN_BLOCKS,
    LINEAR_COMPLEXITY_PROBS,
};
pub use cusum::{cumulative_sums, CusumMode};
pub use excursions::{random_excursions, random_excursions_variant, visit_probabilities};
pub use frequency::{block_frequency, frequency_monobit, DEFAULT_BLOCK_FREQUENCY_M, MONOBIT_MIN_BITS};
pub use rank::{gf2_rank, rank, rank_probability};
pub use result::{Outcome, PValue, Stat, TestId, TestResult};
pub use runs::{longest_run_of_ones, runs};
pub use serial::{serial, DEFAULT_SERIAL_M};
pub use suite::{run_suite, run_test, SuiteConfig, SuiteReport, DEFAULT_ALPHA};

use crate::error::{Error, Result};

/// Unpacked bits, one byte (0 or 1) each.
pub(crate) type Bits<'a> = &'a [u8];

pub(crate) fn require_len(actual: usize, required: usize) -> Result<()> {
    if actual < required {
        return Err(Error::InsufficientLength {
            required,
            actual,
            unit: "bits",
        });
    }
    Ok(())
}
