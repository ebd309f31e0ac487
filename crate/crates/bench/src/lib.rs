//! Criterion benchmarks; see `benches/`.

/// Seed shared by every benchmark.
pub const SEED: &str = "6a09e667f3bcc908bb67ae8584caa73b3c6ef372fe94f82ba54ff53a5f1d36f1";
