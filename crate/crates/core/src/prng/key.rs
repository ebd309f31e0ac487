//! Key material: derivation of generator recipes from 256-bit seeds and the
//! canonical text serialization of keys.
//!
//! A seed is split into four big-endian 64-bit words. The words are chained
//! through a bijective 64-bit finalizer over two rounds, so every seed bit
//! reaches every word, and each mixed word is scaled into the open unit
//! interval as `v = (w + 1) / (2^64 + 2)`. Full diffusion matters for the
//! hybrids: a seed bit that reached only one of the two maps would flip a
//! third of the comparison bits instead of half.

use std::fmt::Write as _;

use super::spec::{GeneratorKind, GeneratorSpec, DEFAULT_BITS};
use crate::chaos::{
    ChaoticSystem, ChuaParams, DiscreteMap, HenonParams, LogisticParams, LorenzParams,
    RosslerParams, StateVector, SystemParams, DEFAULT_DT, LOGISTIC_LAMBDA_MAX, LOGISTIC_LAMBDA_MIN,
};
use crate::error::{Error, Result};

pub const SEED_HEX_LEN: usize = 64;
pub const MAX_PERTURBATIONS: u32 = 8;
const KEY_FORMAT: &str = "chaoscrypt-key";
const KEY_VERSION: u32 = 1;

/// Corners of a quadrilateral that the canonical Henon map sends into
/// itself, ordered so that `(u, w)` in the unit square maps bilinearly onto it.
const HENON_TRAP: [(f64, f64); 4] = [(-1.06, -0.5), (1.245, -0.14), (1.32, 0.133), (-1.33, 0.42)];
/// Fraction of the trapping region used for seeding; keeps seeds off its edges.
const HENON_TRAP_SHRINK: f64 = 0.9;

/// A generator recipe plus the seed it was derived from, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct CipherKey {
    pub spec: GeneratorSpec,
    pub hex_seed: Option<String>,
}

impl CipherKey {
    pub fn from_hex(hex_seed: &str, kind: GeneratorKind) -> Result<Self> {
        let spec = derive_spec_from_hex(hex_seed, kind)?;
        Ok(CipherKey {
            spec,
            hex_seed: Some(hex_seed.to_ascii_lowercase()),
        })
    }

    pub fn kind(&self) -> GeneratorKind {
        self.spec.kind
    }

    /// Canonical `key=value` text, one field per line in fixed order, floats
    /// with 17 significant digits.
    pub fn to_text(&self) -> String {
        let s = &self.spec;
        let mut out = String::new();
        let mut line = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(out, "{k}={v}");
        };
        line("format", &KEY_FORMAT);
        line("version", &KEY_VERSION);
        line("kind", &s.kind);
        line("hex_seed", &self.hex_seed.as_deref().unwrap_or(""));
        line("transient", &s.transient);
        line("n_bits", &s.n_bits);
        line("sample_component", &s.sample_component);
        line("dt", &Float(s.dt));
        line("stride", &s.stride);
        let maps = std::iter::once(&s.first).chain(s.second.as_ref());
        for ((prefix, system), state) in ["first", "second"].into_iter().zip(maps).zip(&s.initial) {
            line(&format!("{prefix}.system"), &system.name());
            for (name, value) in system.params().named() {
                line(&format!("{prefix}.{name}"), &Float(value));
            }
            for (i, c) in state.as_slice().iter().enumerate() {
                line(&format!("{prefix}.init.{i}"), &Float(*c));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut fields = Fields::new(text);
        if fields.next("format")? != KEY_FORMAT {
            return Err(Error::KeyParse("not a chaoscrypt key".into()));
        }
        let version: u32 = fields.parse("version")?;
        if version != KEY_VERSION {
            return Err(Error::KeyParse(format!("unsupported key version {version}")));
        }
        let kind: GeneratorKind = fields
            .next("kind")?
            .parse()
            .map_err(|e: Error| Error::KeyParse(e.to_string()))?;
        let hex_seed = match fields.next("hex_seed")? {
            "" => None,
            h => {
                parse_seed(h)?;
                Some(h.to_string())
            }
        };
        let transient = fields.parse("transient")?;
        let n_bits = fields.parse("n_bits")?;
        let sample_component = fields.parse("sample_component")?;
        let dt = fields.parse("dt")?;
        let stride = fields.parse("stride")?;
        let maps = if kind.is_hybrid() { 2 } else { 1 };
        let mut systems = Vec::with_capacity(maps);
        let mut initial = Vec::with_capacity(maps);
        for prefix in ["first", "second"].into_iter().take(maps) {
            let name = fields.next(&format!("{prefix}.system"))?;
            let expected = kind.default_system();
            if name != expected.name() {
                return Err(Error::KeyParse(format!("{kind} key cannot hold a {name} system")));
            }
            let names: Vec<&'static str> = expected.params().named().into_iter().map(|(n, _)| n).collect();
            let mut values = Vec::with_capacity(names.len());
            for n in names {
                values.push(fields.parse::<f64>(&format!("{prefix}.{n}"))?);
            }
            systems.push(build_system(expected.params(), &values)?);
            let mut comps = Vec::with_capacity(expected.dim());
            for i in 0..expected.dim() {
                comps.push(fields.parse::<f64>(&format!("{prefix}.init.{i}"))?);
            }
            initial.push(StateVector::new(&comps).map_err(|e| Error::KeyParse(e.to_string()))?);
        }
        fields.finish()?;
        let spec = GeneratorSpec {
            kind,
            first: systems[0],
            second: systems.get(1).copied(),
            initial,
            transient,
            n_bits,
            sample_component,
            dt,
            stride,
        };
        spec.validate().map_err(|e| Error::KeyParse(e.to_string()))?;
        Ok(CipherKey { spec, hex_seed })
    }
}

/// Prints a double with 17 significant digits, enough to round-trip exactly.
struct Float(f64);

impl std::fmt::Display for Float {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.16e}", self.0)
    }
}

struct Fields<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Fields<'a> {
    fn new(text: &'a str) -> Self {
        Fields {
            lines: text.lines().enumerate(),
        }
    }

    fn next(&mut self, key: &str) -> Result<&'a str> {
        let (no, line) = self
            .lines
            .next()
            .ok_or_else(|| Error::KeyParse(format!("missing field {key}")))?;
        let (k, v) = line
            .trim_end_matches('\r')
            .split_once('=')
            .ok_or_else(|| Error::KeyParse(format!("line {}: expected key=value", no + 1)))?;
        if k != key {
            return Err(Error::KeyParse(format!("line {}: expected field {key}, found {k}", no + 1)));
        }
        Ok(v)
    }

    fn parse<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let raw = self.next(key)?;
        raw.parse()
            .map_err(|_| Error::KeyParse(format!("field {key}: cannot parse {raw:?}")))
    }

    fn finish(mut self) -> Result<()> {
        match self.lines.find(|(_, l)| !l.trim().is_empty()) {
            None => Ok(()),
            Some((no, l)) => Err(Error::KeyParse(format!("line {}: unexpected trailing field {l:?}", no + 1))),
        }
    }
}

fn build_system(template: SystemParams, v: &[f64]) -> Result<ChaoticSystem> {
    let params = match template {
        SystemParams::Chua(_) => SystemParams::Chua(ChuaParams {
            alpha: v[0],
            beta: v[1],
            a: v[2],
            b: v[3],
        }),
        SystemParams::Lorenz(_) => SystemParams::Lorenz(LorenzParams { a: v[0], b: v[1], c: v[2] }),
        SystemParams::Rossler(_) => SystemParams::Rossler(RosslerParams { a: v[0], b: v[1], c: v[2] }),
        SystemParams::Henon(_) => SystemParams::Henon(HenonParams { a: v[0], b: v[1], c: v[2] }),
        SystemParams::Logistic(_) => {
            SystemParams::Logistic(LogisticParams::new(v[0]).map_err(|e| Error::KeyParse(e.to_string()))?)
        }
    };
    params.validate().map_err(|e| Error::KeyParse(e.to_string()))?;
    Ok(ChaoticSystem::from_params(params))
}

/// Decodes a 64-character hexadecimal seed into its four big-endian words.
pub fn parse_seed(hex_seed: &str) -> Result<[u64; 4]> {
    if hex_seed.len() != SEED_HEX_LEN {
        return Err(Error::KeyParse(format!(
            "seed must be {SEED_HEX_LEN} hex characters, got {}",
            hex_seed.len()
        )));
    }
    let mut raw = [0u8; 32];
    hex::decode_to_slice(hex_seed, &mut raw).map_err(|e| Error::KeyParse(format!("seed: {e}")))?;
    let mut words = [0u64; 4];
    for (w, chunk) in words.iter_mut().zip(raw.chunks_exact(8)) {
        *w = u64::from_be_bytes(chunk.try_into().expect("8-byte chunk"));
    }
    Ok(words)
}

/// Bijective 64-bit finalizer with `mix64(0) == 0`.
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Two rounds of `w[i] = mix64(w[i] ^ rotl(w[i-1], 23))`. Bijective, and the
/// all-zero seed stays zero.
fn diffuse(mut w: [u64; 4]) -> [u64; 4] {
    for _ in 0..2 {
        for i in 0..4 {
            w[i] = mix64(w[i] ^ w[(i + 3) % 4].rotate_left(23));
        }
    }
    w
}

/// Maps a mixed word into (0, 1]. The upper end is only reached through
/// rounding and is caught by the interior checks.
fn unit(word: u64) -> f64 {
    const DENOM: f64 = 18_446_744_073_709_551_618.0; // 2^64 + 2
    (word as f64 + 1.0) / DENOM
}

fn frac_sum(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s >= 1.0 {
        s - 1.0
    } else {
        s
    }
}

fn henon_seed(u: f64, w: f64) -> StateVector {
    let [p0, p1, p2, p3] = HENON_TRAP;
    let bilinear = |i: fn(&(f64, f64)) -> f64| {
        (1.0 - u) * (1.0 - w) * i(&p0) + u * (1.0 - w) * i(&p1) + u * w * i(&p2) + (1.0 - u) * w * i(&p3)
    };
    let centroid = |i: fn(&(f64, f64)) -> f64| HENON_TRAP.iter().map(i).sum::<f64>() / 4.0;
    let x = centroid(|p| p.0) + HENON_TRAP_SHRINK * (bilinear(|p| p.0) - centroid(|p| p.0));
    let y = centroid(|p| p.1) + HENON_TRAP_SHRINK * (bilinear(|p| p.1) - centroid(|p| p.1));
    StateVector::planar(x, y)
}

fn continuous_seed(kind: GeneratorKind, v: [f64; 3]) -> StateVector {
    // boxes inside each attractor's basin
    let (lo, span): ([f64; 3], [f64; 3]) = match kind {
        GeneratorKind::Chua => ([-1.0, -0.25, -1.0], [2.0, 0.5, 2.0]),
        GeneratorKind::Lorenz => ([-15.0, -15.0, 5.0], [30.0, 30.0, 30.0]),
        _ => ([-5.0, -5.0, 0.0], [10.0, 10.0, 0.5]),
    };
    StateVector::spatial(lo[0] + span[0] * v[0], lo[1] + span[1] * v[1], lo[2] + span[2] * v[2])
}

/// Logistic seeds that are absorbing, fixed, or fall onto a fixed point.
fn logistic_degenerate(x: f64, lambda: f64) -> Option<&'static str> {
    if !(x > 0.0 && x < 1.0) {
        Some("logistic seed outside (0, 1)")
    } else if lambda == 4.0 && x == 0.5 {
        Some("seed 0.5 collapses to 0 at lambda = 4")
    } else if x == 1.0 - 1.0 / lambda || x == 1.0 / lambda {
        Some("seed on the logistic fixed point or its preimage")
    } else {
        None
    }
}

fn perturb_unit(x: f64) -> f64 {
    if x >= 0.5 {
        x.next_down()
    } else {
        x.next_up()
    }
}

/// Derives a generator recipe from a 256-bit hexadecimal seed.
///
/// * logistic: `x0 = frac(v1 + v2)`, `lambda = 3.57 + 0.43 v3`
/// * henon: `(v1, v2)` placed bilinearly in the Henon trapping region
/// * continuous: `(v1, v2, v3)` scaled into a box inside the attractor basin
/// * hybrid-logistic: `x0 = frac(v1 + v2)`, `y0 = frac(v3 + v4)`, both maps at
///   `lambda = 4`
/// * hybrid-henon: `(v1, v2)` and `(v3, v4)` seed two canonical Henon maps
///
/// Seeds that violate an invariant are nudged by one ulp and re-checked, at
/// most eight times.
pub fn derive_spec_from_hex(hex_seed: &str, kind: GeneratorKind) -> Result<GeneratorSpec> {
    let words = parse_seed(hex_seed)?;
    let v = diffuse(words).map(unit);
    let mut spec = base_spec(kind, v)?;
    for attempt in 0..=MAX_PERTURBATIONS {
        match check_derived(&spec) {
            None => {
                spec.validate()?;
                return Ok(spec);
            }
            Some(reason) if attempt == MAX_PERTURBATIONS => {
                return Err(Error::KeyRejected {
                    attempts: attempt,
                    reason: reason.into(),
                })
            }
            Some(_) => perturb(&mut spec),
        }
    }
    unreachable!("loop returns on its last attempt")
}

fn base_spec(kind: GeneratorKind, v: [f64; 4]) -> Result<GeneratorSpec> {
    let system = kind.default_system();
    let (first, second, initial) = match kind {
        GeneratorKind::Logistic => {
            let lambda = (LOGISTIC_LAMBDA_MIN + (LOGISTIC_LAMBDA_MAX - LOGISTIC_LAMBDA_MIN) * v[2]).min(LOGISTIC_LAMBDA_MAX);
            let map = ChaoticSystem::Discrete(DiscreteMap::Logistic(LogisticParams::new(lambda)?));
            (map, None, vec![StateVector::scalar(frac_sum(v[0], v[1]))])
        }
        GeneratorKind::Henon => (system, None, vec![henon_seed(v[0], v[1])]),
        GeneratorKind::Chua | GeneratorKind::Lorenz | GeneratorKind::Rossler => {
            (system, None, vec![continuous_seed(kind, [v[0], v[1], v[2]])])
        }
        GeneratorKind::HybridLogistic => (
            system,
            Some(system),
            vec![StateVector::scalar(frac_sum(v[0], v[1])), StateVector::scalar(frac_sum(v[2], v[3]))],
        ),
        GeneratorKind::HybridHenon => (system, Some(system), vec![henon_seed(v[0], v[1]), henon_seed(v[2], v[3])]),
    };
    Ok(GeneratorSpec {
        kind,
        first,
        second,
        initial,
        transient: kind.default_transient(),
        n_bits: DEFAULT_BITS,
        sample_component: 0,
        dt: DEFAULT_DT,
        stride: kind.default_stride(),
    })
}

fn lambda_of(system: &ChaoticSystem) -> Option<f64> {
    match system {
        ChaoticSystem::Discrete(DiscreteMap::Logistic(p)) => Some(p.lambda()),
        _ => None,
    }
}

fn check_derived(spec: &GeneratorSpec) -> Option<&'static str> {
    let maps = std::iter::once(&spec.first).chain(spec.second.as_ref());
    for (system, state) in maps.zip(&spec.initial) {
        if let Some(lambda) = lambda_of(system) {
            if let Some(reason) = logistic_degenerate(state.as_slice()[0], lambda) {
                return Some(reason);
            }
        }
    }
    if spec.initial.len() == 2 && spec.initial[0] == spec.initial[1] {
        return Some("hybrid initial conditions collide");
    }
    None
}

fn perturb(spec: &mut GeneratorSpec) {
    let collide = spec.initial.len() == 2 && spec.initial[0] == spec.initial[1];
    let maps: Vec<ChaoticSystem> = std::iter::once(spec.first).chain(spec.second).collect();
    for (i, system) in maps.iter().enumerate() {
        let state = spec.initial[i];
        let mut comps = state.as_slice().to_vec();
        let degenerate = lambda_of(system).is_some_and(|l| logistic_degenerate(comps[0], l).is_some());
        // on a collision only the second map moves
        if degenerate || (collide && i == 1) {
            comps[0] = match lambda_of(system) {
                Some(_) => perturb_unit(comps[0]).clamp(f64::MIN_POSITIVE, 1.0f64.next_down()),
                None => comps[0].next_up(),
            };
            spec.initial[i] = StateVector::new(&comps).expect("finite perturbation");
        }
    }
}
