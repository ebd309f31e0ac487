use super::bits::BitSequence;
use super::spec::GeneratorSpec;
use crate::chaos::{henon_map, rk4_step, ChaoticSystem, DiscreteMap, StateVector, ESCAPE_RADIUS};
use crate::error::{Error, Result};

/// A running orbit of one system. Not shareable between threads while
/// advancing; clone the spec and start another orbit instead.
#[derive(Debug, Clone)]
pub struct Orbit {
    system: ChaoticSystem,
    state: StateVector,
    dt: f64,
    steps: u64,
}

impl Orbit {
    pub fn new(system: ChaoticSystem, initial: StateVector, dt: f64) -> Result<Self> {
        if initial.dim() != system.dim() {
            return Err(Error::DimensionMismatch {
                system: system.name(),
                expected: system.dim(),
                actual: initial.dim(),
            });
        }
        Ok(Orbit {
            system,
            state: initial,
            dt,
            steps: 0,
        })
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    /// Iterations taken so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Advances one iteration (or one integration step).
    pub fn advance(&mut self) -> Result<()> {
        self.steps += 1;
        let step = self.steps;
        let relabel = |e: Error| match e {
            Error::Divergence { .. } => Error::Divergence { step },
            other => other,
        };
        if let ChaoticSystem::Discrete(DiscreteMap::Henon(p)) = &self.system {
            // hot path for the hybrid, identical arithmetic to `henon_step`
            let s = self.state.as_slice();
            let (x, y) = henon_map(s[0], s[1], p);
            if !(x.abs() <= ESCAPE_RADIUS && y.abs() <= ESCAPE_RADIUS) {
                return Err(Error::Divergence { step });
            }
            self.state = StateVector::planar(x, y);
            return Ok(());
        }
        let next = match &self.system {
            ChaoticSystem::Continuous(c) => rk4_step(c, &self.state, self.dt).map_err(relabel)?,
            ChaoticSystem::Discrete(d) => d.step(&self.state).map_err(relabel)?,
        };
        if next.max_abs() > ESCAPE_RADIUS {
            return Err(Error::Divergence { step });
        }
        self.state = next;
        Ok(())
    }

    pub fn advance_by(&mut self, n: u64) -> Result<()> {
        for _ in 0..n {
            self.advance()?;
        }
        Ok(())
    }
}

fn checked_len(spec: &GeneratorSpec) -> Result<usize> {
    usize::try_from(spec.n_bits).map_err(|_| Error::Contract(format!("n_bits {} too large", spec.n_bits)))
}

/// Runs the first system of `spec`, discards the transient and returns the
/// next `n_bits` observations of the sampled component.
pub fn sample_orbit(spec: &GeneratorSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let n = checked_len(spec)?;
    let mut orbit = Orbit::new(spec.first, spec.initial[0], spec.dt)?;
    orbit.advance_by(spec.transient)?;
    let mut samples = Vec::with_capacity(n);
    for _ in 0..n {
        orbit.advance_by(u64::from(spec.stride))?;
        samples.push(orbit.state().as_slice()[spec.sample_component]);
    }
    Ok(samples)
}

/// Thresholds samples at their arithmetic mean: a bit is 1 iff the sample is
/// strictly greater than the mean.
pub fn binarize_mean(samples: &[f64]) -> Result<BitSequence> {
    if samples.is_empty() {
        return Err(Error::Contract("cannot binarize an empty sample sequence".into()));
    }
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    Ok(samples.iter().map(|&x| x > mean).collect())
}

/// Two maps iterated side by side, compared on every emitted step.
#[derive(Debug, Clone)]
pub struct HybridStream {
    first: Orbit,
    second: Orbit,
    component: usize,
    stride: u32,
}

impl HybridStream {
    /// Builds the stream and runs the transient.
    pub fn new(spec: &GeneratorSpec) -> Result<Self> {
        spec.validate()?;
        let second = spec
            .second
            .ok_or_else(|| Error::Contract(format!("{} is not a hybrid generator", spec.kind)))?;
        let mut stream = HybridStream {
            first: Orbit::new(spec.first, spec.initial[0], spec.dt)?,
            second: Orbit::new(second, spec.initial[1], spec.dt)?,
            component: spec.sample_component,
            stride: spec.stride,
        };
        stream.first.advance_by(spec.transient)?;
        stream.second.advance_by(spec.transient)?;
        Ok(stream)
    }

    /// Emits 1 iff the first map's sampled component exceeds the second's.
    pub fn next_bit(&mut self) -> Result<bool> {
        for _ in 0..self.stride {
            self.first.advance()?;
            self.second.advance()?;
        }
        Ok(self.first.state().as_slice()[self.component] > self.second.state().as_slice()[self.component])
    }
}

pub fn hybrid_bits(spec: &GeneratorSpec) -> Result<BitSequence> {
    let n = checked_len(spec)?;
    let mut stream = HybridStream::new(spec)?;
    let mut bits = BitSequence::with_capacity(n);
    for _ in 0..n {
        bits.push(stream.next_bit()?);
    }
    Ok(bits)
}

/// Produces exactly `spec.n_bits` bits with the construction selected by the
/// spec's kind.
pub fn generate(spec: &GeneratorSpec) -> Result<BitSequence> {
    if spec.kind.is_hybrid() {
        hybrid_bits(spec)
    } else {
        binarize_mean(&sample_orbit(spec)?)
    }
}
