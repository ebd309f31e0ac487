pub mod chaos;
pub mod cipher;
pub mod error;
pub mod io;
pub mod prng;
pub mod report;
pub mod sts;

pub use cipher::{decrypt, encrypt, CipherEnvelope, ImageBuffer};
pub use error::{Error, PnmError, Result};
pub use prng::{BitSequence, CipherKey, GeneratorKind, GeneratorSpec};
pub use sts::{run_suite, SuiteConfig, SuiteReport, TestId};
