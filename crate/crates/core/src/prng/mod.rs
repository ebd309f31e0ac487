//! Bit generation from chaotic orbits: mean-threshold binarization of a single
//! system, two-map comparison hybrids, key derivation and keystream packing.

mod bits;
mod generator;
mod key;
mod spec;

pub use bits::{keystream_bytes, BitSequence};
pub use generator::{binarize_mean, generate, hybrid_bits, sample_orbit, HybridStream, Orbit};
pub use key::{derive_spec_from_hex, parse_seed, CipherKey, MAX_PERTURBATIONS, SEED_HEX_LEN};
pub use spec::{
    Construction, GeneratorKind, GeneratorSpec, DEFAULT_BITS, DEFAULT_TRANSIENT_CONTINUOUS, DEFAULT_TRANSIENT_DISCRETE,
    HENON_HYBRID_STRIDE,
};
