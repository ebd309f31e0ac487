mod args;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chaoscrypt::cipher::{self, CipherEnvelope, ImageBuffer, ENVELOPE_MAGIC};
use chaoscrypt::io::{self, BitFileMeta};
use chaoscrypt::prng::{generate, CipherKey, GeneratorKind};
use chaoscrypt::report::{compare, sweep_seeds};
use chaoscrypt::sts::{run_suite, SuiteConfig, MONOBIT_MIN_BITS};
use chaoscrypt::Error;
use clap::Parser;

use args::{AnalyzeArgs, Cli, Command, DecryptArgs, EncryptArgs, GenerateArgs, KeyArgs, RawArgs, ReportArgs, TestArgs};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_STATISTICAL: u8 = 3;

const DEFAULT_KIND: GeneratorKind = GeneratorKind::HybridHenon;

enum Failure {
    Usage(String),
    Operational(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Operational(e)
    }
}

type CmdResult = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Test(a) => cmd_test(a),
        Command::Encrypt(a) => cmd_encrypt(a),
        Command::Decrypt(a) => cmd_decrypt(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Report(a) => cmd_report(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_STATISTICAL),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Operational(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

/// Loads or derives the key. `fallback_kind` applies when a seed is given
/// without --kind; `bits` overrides the key's keystream budget.
fn resolve_key(args: &KeyArgs, fallback_kind: GeneratorKind, bits: Option<u64>) -> Result<CipherKey, Failure> {
    let mut key = match (&args.key, &args.hex_seed) {
        (Some(path), _) => io::read_key(path)?,
        (None, Some(seed)) => {
            let mut key = CipherKey::from_hex(seed, args.kind.unwrap_or(fallback_kind))?;
            if let Some(t) = args.transient {
                key.spec.transient = t;
            }
            if let Some(dt) = args.dt {
                key.spec.dt = dt;
            }
            key
        }
        (None, None) => return Err(Failure::Usage("one of --key or --hex-seed (or CHAOSCRYPT_SEED) is required".into())),
    };
    if let Some(n) = bits {
        key.spec.n_bits = n;
    }
    key.spec.validate()?;
    Ok(key)
}

fn save_key(args: &KeyArgs, key: &CipherKey) -> Result<(), Failure> {
    if let Some(path) = &args.key_out {
        io::write_key(key, path)?;
    }
    Ok(())
}

fn with_extension(prefix: &Path, ext: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(".");
    name.push(ext);
    PathBuf::from(name)
}

fn cmd_generate(a: GenerateArgs) -> CmdResult {
    let key = resolve_key(&a.key, DEFAULT_KIND, a.bits)?;
    let bits = generate(&key.spec)?;
    let meta = BitFileMeta {
        kind: key.kind().name().into(),
        n_bits: bits.len() as u64,
        transient: key.spec.transient,
    };
    save_key(&a.key, &key)?;
    io::write_bits(&a.out, &bits, Some(&meta))?;
    Ok(true)
}

fn cmd_test(a: TestArgs) -> CmdResult {
    if !(a.alpha > 0.0 && a.alpha < 1.0) {
        return Err(Failure::Usage(format!("--alpha must lie in (0, 1), got {}", a.alpha)));
    }
    let (bits, _) = io::read_bits(&a.input)?;
    if bits.len() < MONOBIT_MIN_BITS {
        return Err(Error::InsufficientLength {
            required: MONOBIT_MIN_BITS,
            actual: bits.len(),
            unit: "bits",
        }
        .into());
    }
    let config = SuiteConfig {
        alpha: a.alpha,
        ..SuiteConfig::default()
    };
    let report = run_suite(&bits, &config).with_label(a.input.display().to_string());
    let text = report.to_text();
    if let Some(prefix) = &a.out {
        io::write_atomic(&with_extension(prefix, "json"), (report.to_json() + "\n").as_bytes())?;
        io::write_atomic(&with_extension(prefix, "txt"), text.as_bytes())?;
    }
    print!("{text}");
    Ok(report.all_applicable_passed())
}

fn load_image(path: &Path, raw: &RawArgs) -> Result<ImageBuffer, Failure> {
    Ok(match (raw.width, raw.height, raw.channels) {
        (Some(w), Some(h), Some(c)) => io::read_raw(path, w, h, c)?,
        _ => io::read_image(path)?,
    })
}

fn cmd_encrypt(a: EncryptArgs) -> CmdResult {
    let image = load_image(&a.input, &a.raw)?;
    let budget = a.bits.unwrap_or(image.data().len() as u64 * 8);
    let key = resolve_key(&a.key, DEFAULT_KIND, if a.key.key.is_some() { a.bits } else { Some(budget) })?;
    let envelope = cipher::encrypt(&image, &key)?;
    save_key(&a.key, &key)?;
    io::write_envelope(&envelope, &a.out)?;
    Ok(true)
}

fn cmd_decrypt(a: DecryptArgs) -> CmdResult {
    let envelope = io::read_envelope(&a.input)?;
    let budget = a.bits.unwrap_or(envelope.ciphertext.len() as u64 * 8);
    let key = resolve_key(&a.key, envelope.kind, if a.key.key.is_some() { a.bits } else { Some(budget) })?;
    let image = cipher::decrypt(&envelope, &key)?;
    save_key(&a.key, &key)?;
    io::write_image(&image, &a.out)?;
    Ok(true)
}

fn cmd_analyze(a: AnalyzeArgs) -> CmdResult {
    let bytes = std::fs::read(&a.input).map_err(Error::from)?;
    let data = if bytes.starts_with(&ENVELOPE_MAGIC) {
        CipherEnvelope::from_bytes(&bytes)?.ciphertext
    } else {
        load_image(&a.input, &a.raw)?.into_data()
    };
    let hist = cipher::histogram(&data)?;
    println!("bytes {}", data.len());
    println!("chi2 {:?}", cipher::chi_square(&hist));
    match cipher::chi_square_uniformity(&hist) {
        Ok(p) => println!("uniformity-p {p:?}"),
        Err(e) => println!("uniformity-p n/a ({e})"),
    }
    if let Some(out) = &a.out {
        io::write_atomic(out, io::histogram_csv(&hist).as_bytes())?;
    }
    Ok(true)
}

fn cmd_report(a: ReportArgs) -> CmdResult {
    if !(a.alpha > 0.0 && a.alpha < 1.0) {
        return Err(Failure::Usage(format!("--alpha must lie in (0, 1), got {}", a.alpha)));
    }
    let config = SuiteConfig {
        alpha: a.alpha,
        ..SuiteConfig::default()
    };
    let matrix = compare(&a.compare, &sweep_seeds(&a.master, a.seeds), a.bits, &config)?;
    let text = matrix.to_text();
    if let Some(prefix) = &a.out {
        io::write_atomic(&with_extension(prefix, "json"), (matrix.to_json() + "\n").as_bytes())?;
        io::write_atomic(&with_extension(prefix, "txt"), text.as_bytes())?;
    }
    print!("{text}");
    Ok(true)
}
