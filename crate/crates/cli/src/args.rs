use std::path::PathBuf;

use chaoscrypt::prng::GeneratorKind;
use chaoscrypt::sts::DEFAULT_ALPHA;
use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "chaoscrypt", version, about = "Chaotic bit generators, SP 800-22 tests and an XOR image cipher")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a packed bit file and its JSON sidecar
    Generate(GenerateArgs),
    /// Run the statistical suite on a bit file
    Test(TestArgs),
    /// Encrypt a PGM/PPM or raw image into an envelope
    Encrypt(EncryptArgs),
    /// Decrypt an envelope back into a PGM/PPM image
    Decrypt(DecryptArgs),
    /// Byte histogram and uniformity of an image or envelope
    Analyze(AnalyzeArgs),
    /// Pass-count matrix over generator kinds and seeds
    Report(ReportArgs),
}

pub fn kind_parser() -> impl TypedValueParser<Value = GeneratorKind> {
    PossibleValuesParser::new(GeneratorKind::ALL.map(GeneratorKind::name))
        .map(|s| s.parse::<GeneratorKind>().expect("listed kind parses"))
}

/// Where the generator recipe comes from.
#[derive(Debug, Args)]
pub struct KeyArgs {
    /// Key file written by an earlier run; takes precedence over a seed
    #[arg(long, value_name = "FILE", conflicts_with_all = ["kind", "transient", "dt"])]
    pub key: Option<PathBuf>,

    /// 256-bit seed as 64 hex characters
    #[arg(long, value_name = "HEX64", env = "CHAOSCRYPT_SEED", hide_env_values = true)]
    pub hex_seed: Option<String>,

    /// Generator kind used with --hex-seed
    #[arg(long, value_parser = kind_parser())]
    pub kind: Option<GeneratorKind>,

    /// Discarded iterations before sampling
    #[arg(long)]
    pub transient: Option<u64>,

    /// Integration step for continuous systems
    #[arg(long)]
    pub dt: Option<f64>,

    /// Write the key actually used to this file
    #[arg(long, value_name = "FILE")]
    pub key_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RawArgs {
    /// Width of a headerless raw image
    #[arg(long, requires_all = ["height", "channels"])]
    pub width: Option<u32>,
    #[arg(long, requires_all = ["width", "channels"])]
    pub height: Option<u32>,
    /// 1 for grayscale, 3 for RGB
    #[arg(long, requires_all = ["width", "height"], value_parser = clap::value_parser!(u8).range(1..=3))]
    pub channels: Option<u8>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub key: KeyArgs,

    /// Number of bits to produce
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub bits: Option<u64>,

    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    /// Packed bit file; a `.json` sidecar next to it fixes the bit count
    pub input: PathBuf,

    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,

    /// Report prefix: writes PREFIX.txt and PREFIX.json
    #[arg(long, value_name = "PREFIX")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EncryptArgs {
    pub input: PathBuf,

    #[command(flatten)]
    pub key: KeyArgs,

    #[command(flatten)]
    pub raw: RawArgs,

    /// Keystream budget in bits; defaults to exactly what the image needs
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub bits: Option<u64>,

    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DecryptArgs {
    pub input: PathBuf,

    #[command(flatten)]
    pub key: KeyArgs,

    /// Keystream budget used at encryption, if it was set
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub bits: Option<u64>,

    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Image (PGM/PPM, or raw with dimensions) or cipher envelope
    pub input: PathBuf,

    #[command(flatten)]
    pub raw: RawArgs,

    /// Histogram CSV (bin,count)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Kinds to compare, comma separated
    #[arg(
        long,
        value_delimiter = ',',
        value_parser = kind_parser(),
        default_value = "logistic,henon,hybrid-logistic,hybrid-henon"
    )]
    pub compare: Vec<GeneratorKind>,

    /// Number of seeds derived from --master
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    pub seeds: u32,

    /// Master string the seed list is hashed from
    #[arg(long, default_value = "chaoscrypt")]
    pub master: String,

    /// Bits per generated sequence
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub bits: u64,

    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,

    /// Report prefix: writes PREFIX.txt and PREFIX.json
    #[arg(long, value_name = "PREFIX")]
    pub out: Option<PathBuf>,
}
