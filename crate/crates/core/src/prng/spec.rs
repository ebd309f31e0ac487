use std::fmt;
use std::str::FromStr;

use crate::chaos::{
    ChaoticSystem, ChuaParams, ContinuousSystem, DiscreteMap, HenonParams, LogisticParams, LorenzParams,
    RosslerParams, StateVector, DEFAULT_DT,
};
use crate::error::{Error, Result};

pub const DEFAULT_BITS: u64 = 1_000_000;
pub const DEFAULT_TRANSIENT_DISCRETE: u64 = 1_000;
pub const DEFAULT_TRANSIENT_CONTINUOUS: u64 = 5_000;

/// Map iterations between two emitted bits of the dual-Henon generator.
///
/// Comparison bits of two Henon orbits taken on consecutive iterations are
/// strongly anti-correlated (lag-one correlation near -0.4) and the
/// correlation decays slowly, so the generator decimates the orbits.
pub const HENON_HYBRID_STRIDE: u32 = 64;

/// Generator selectable by name on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Chua,
    Lorenz,
    Rossler,
    Henon,
    Logistic,
    HybridHenon,
    HybridLogistic,
}

/// How a generator turns orbits into bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    SingleContinuous,
    SingleDiscrete,
    HybridLogistic,
    HybridHenon,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 7] = [
        GeneratorKind::Chua,
        GeneratorKind::Lorenz,
        GeneratorKind::Rossler,
        GeneratorKind::Henon,
        GeneratorKind::Logistic,
        GeneratorKind::HybridHenon,
        GeneratorKind::HybridLogistic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Chua => "chua",
            GeneratorKind::Lorenz => "lorenz",
            GeneratorKind::Rossler => "rossler",
            GeneratorKind::Henon => "henon",
            GeneratorKind::Logistic => "logistic",
            GeneratorKind::HybridHenon => "hybrid-henon",
            GeneratorKind::HybridLogistic => "hybrid-logistic",
        }
    }

    /// Stable one-byte code used in envelope headers.
    pub fn code(self) -> u8 {
        match self {
            GeneratorKind::Chua => 1,
            GeneratorKind::Lorenz => 2,
            GeneratorKind::Rossler => 3,
            GeneratorKind::Henon => 4,
            GeneratorKind::Logistic => 5,
            GeneratorKind::HybridHenon => 6,
            GeneratorKind::HybridLogistic => 7,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        GeneratorKind::ALL.into_iter().find(|k| k.code() == code)
    }

    pub fn construction(self) -> Construction {
        match self {
            GeneratorKind::Chua | GeneratorKind::Lorenz | GeneratorKind::Rossler => Construction::SingleContinuous,
            GeneratorKind::Henon | GeneratorKind::Logistic => Construction::SingleDiscrete,
            GeneratorKind::HybridHenon => Construction::HybridHenon,
            GeneratorKind::HybridLogistic => Construction::HybridLogistic,
        }
    }

    pub fn is_hybrid(self) -> bool {
        matches!(self, GeneratorKind::HybridHenon | GeneratorKind::HybridLogistic)
    }

    /// The system each orbit of this generator runs.
    pub fn default_system(self) -> ChaoticSystem {
        match self {
            GeneratorKind::Chua => ChaoticSystem::Continuous(ContinuousSystem::Chua(ChuaParams::default())),
            GeneratorKind::Lorenz => ChaoticSystem::Continuous(ContinuousSystem::Lorenz(LorenzParams::default())),
            GeneratorKind::Rossler => ChaoticSystem::Continuous(ContinuousSystem::Rossler(RosslerParams::default())),
            GeneratorKind::Henon | GeneratorKind::HybridHenon => {
                ChaoticSystem::Discrete(DiscreteMap::Henon(HenonParams::default()))
            }
            GeneratorKind::Logistic | GeneratorKind::HybridLogistic => {
                ChaoticSystem::Discrete(DiscreteMap::Logistic(LogisticParams::default()))
            }
        }
    }

    pub fn default_transient(self) -> u64 {
        match self.construction() {
            Construction::SingleContinuous => DEFAULT_TRANSIENT_CONTINUOUS,
            _ => DEFAULT_TRANSIENT_DISCRETE,
        }
    }

    pub fn default_stride(self) -> u32 {
        match self {
            GeneratorKind::HybridHenon => HENON_HYBRID_STRIDE,
            _ => 1,
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Contract(format!("unknown generator kind {s:?}")))
    }
}

/// Full recipe for a bit generator.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub first: ChaoticSystem,
    /// Second map of a hybrid generator.
    pub second: Option<ChaoticSystem>,
    /// One initial state per map.
    pub initial: Vec<StateVector>,
    /// Iterations (or integration steps) discarded before sampling.
    pub transient: u64,
    pub n_bits: u64,
    /// Index of the observed state component.
    pub sample_component: usize,
    /// Integration step; only used by continuous systems.
    pub dt: f64,
    /// Iterations advanced per emitted sample.
    pub stride: u32,
}

impl GeneratorSpec {
    /// A single-system generator with default transient, length and step.
    pub fn single(system: ChaoticSystem, initial: StateVector) -> Result<Self> {
        let kind = match system {
            ChaoticSystem::Continuous(ContinuousSystem::Chua(_)) => GeneratorKind::Chua,
            ChaoticSystem::Continuous(ContinuousSystem::Lorenz(_)) => GeneratorKind::Lorenz,
            ChaoticSystem::Continuous(ContinuousSystem::Rossler(_)) => GeneratorKind::Rossler,
            ChaoticSystem::Discrete(DiscreteMap::Henon(_)) => GeneratorKind::Henon,
            ChaoticSystem::Discrete(DiscreteMap::Logistic(_)) => GeneratorKind::Logistic,
        };
        let spec = GeneratorSpec {
            kind,
            first: system,
            second: None,
            initial: vec![initial],
            transient: kind.default_transient(),
            n_bits: DEFAULT_BITS,
            sample_component: 0,
            dt: DEFAULT_DT,
            stride: 1,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// A two-map comparison generator.
    pub fn hybrid(
        first: DiscreteMap,
        second: DiscreteMap,
        first_initial: StateVector,
        second_initial: StateVector,
    ) -> Result<Self> {
        let kind = match first {
            DiscreteMap::Henon(_) => GeneratorKind::HybridHenon,
            DiscreteMap::Logistic(_) => GeneratorKind::HybridLogistic,
        };
        let spec = GeneratorSpec {
            kind,
            first: ChaoticSystem::Discrete(first),
            second: Some(ChaoticSystem::Discrete(second)),
            initial: vec![first_initial, second_initial],
            transient: kind.default_transient(),
            n_bits: DEFAULT_BITS,
            sample_component: 0,
            dt: DEFAULT_DT,
            stride: kind.default_stride(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_transient(mut self, transient: u64) -> Self {
        self.transient = transient;
        self
    }

    pub fn with_bits(mut self, n_bits: u64) -> Self {
        self.n_bits = n_bits;
        self
    }

    pub fn with_stride(mut self, stride: u32) -> Self {
        self.stride = stride;
        self
    }

    pub fn with_dt(mut self, dt: f64) -> Self {
        self.dt = dt;
        self
    }

    /// Checks the structural invariants of the recipe.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Contract(msg));
        if self.n_bits == 0 {
            return bad("n_bits must be at least 1".into());
        }
        if self.stride == 0 {
            return bad("stride must be at least 1".into());
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt must be positive and finite, got {}", self.dt));
        }
        let expected = self.kind.default_system();
        let same_family = |s: &ChaoticSystem| std::mem::discriminant(&s.params()) == std::mem::discriminant(&expected.params());
        if !same_family(&self.first) {
            return bad(format!("{} generator cannot run a {} system", self.kind, self.first.name()));
        }
        self.first.params().validate()?;
        let maps = match (self.kind.is_hybrid(), &self.second) {
            (true, Some(second)) => {
                if !same_family(second) {
                    return bad(format!("hybrid maps must be of one kind, got {}", second.name()));
                }
                second.params().validate()?;
                2
            }
            (true, None) => return bad("hybrid generator needs a second map".into()),
            (false, Some(_)) => return bad("single generator cannot carry a second map".into()),
            (false, None) => 1,
        };
        if self.initial.len() != maps {
            return bad(format!("expected {maps} initial states, got {}", self.initial.len()));
        }
        let dim = self.first.dim();
        for s in &self.initial {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    system: self.first.name(),
                    expected: dim,
                    actual: s.dim(),
                });
            }
        }
        if self.sample_component >= dim {
            return bad(format!("sample component {} out of range for dimension {dim}", self.sample_component));
        }
        if matches!(self.kind, GeneratorKind::Logistic | GeneratorKind::HybridLogistic) {
            for s in &self.initial {
                let x = s.as_slice()[0];
                if !(x > 0.0 && x < 1.0) {
                    return bad(format!("logistic initial condition {x} outside (0, 1)"));
                }
            }
        }
        if maps == 2 && self.initial[0] == self.initial[1] {
            return bad("hybrid initial conditions must differ".into());
        }
        Ok(())
    }
}
