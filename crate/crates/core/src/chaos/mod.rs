//! Chaotic dynamical systems.
//!
//! Three continuous flows (Chua, Lorenz, Rossler) integrated with a fixed-step
//! fourth-order Runge-Kutta scheme, and two discrete maps (Henon, logistic).
//! Everything here is a pure function of its inputs.

mod continuous;
mod discrete;
mod params;

pub use continuous::{chua_deriv, lorenz_deriv, rk4_step, rk4_step_with, rossler_deriv, DEFAULT_DT};
pub use discrete::{henon_step, logistic_step, ESCAPE_RADIUS};
pub(crate) use discrete::henon_map;
pub use params::{
    ChuaParams, HenonParams, LogisticParams, LorenzParams, RosslerParams, SystemParams,
    LOGISTIC_LAMBDA_MAX, LOGISTIC_LAMBDA_MIN,
};

use std::fmt;

use crate::error::{Error, Result};

/// State of a chaotic system with between one and three real components.
#[derive(Clone, Copy, PartialEq)]
pub struct StateVector {
    comps: [f64; 3],
    dim: u8,
}

impl StateVector {
    /// Builds a state from a slice of one to three finite components.
    pub fn new(components: &[f64]) -> Result<Self> {
        if components.is_empty() || components.len() > 3 {
            return Err(Error::Contract(format!(
                "state dimension must be 1..=3, got {}",
                components.len()
            )));
        }
        if let Some(bad) = components.iter().find(|c| !c.is_finite()) {
            return Err(Error::Contract(format!("non-finite state component {bad}")));
        }
        let mut comps = [0.0; 3];
        comps[..components.len()].copy_from_slice(components);
        Ok(StateVector {
            comps,
            dim: components.len() as u8,
        })
    }

    pub fn scalar(x: f64) -> Self {
        StateVector {
            comps: [x, 0.0, 0.0],
            dim: 1,
        }
    }

    pub fn planar(x: f64, y: f64) -> Self {
        StateVector {
            comps: [x, y, 0.0],
            dim: 2,
        }
    }

    pub fn spatial(x: f64, y: f64, z: f64) -> Self {
        StateVector {
            comps: [x, y, z],
            dim: 3,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.comps[..self.dim()]
    }

    pub fn get(&self, index: usize) -> Option<f64> {
        self.as_slice().get(index).copied()
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|c| c.is_finite())
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.as_slice().iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.as_slice().iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub(crate) fn expect_dim(&self, system: &'static str, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                system,
                expected,
                actual: self.dim(),
            })
        }
    }

    /// `self + k * other`, component-wise. Dimensions must already agree.
    pub(crate) fn axpy(&self, k: f64, other: &StateVector) -> StateVector {
        let mut out = *self;
        for i in 0..self.dim() {
            out.comps[i] += k * other.comps[i];
        }
        out
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("StateVector").field(&self.as_slice()).finish()
    }
}

/// A continuous-time flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContinuousSystem {
    Chua(ChuaParams),
    Lorenz(LorenzParams),
    Rossler(RosslerParams),
}

impl ContinuousSystem {
    pub const DIM: usize = 3;

    pub fn name(&self) -> &'static str {
        match self {
            ContinuousSystem::Chua(_) => "chua",
            ContinuousSystem::Lorenz(_) => "lorenz",
            ContinuousSystem::Rossler(_) => "rossler",
        }
    }

    /// Evaluates the vector field at `state`.
    pub fn deriv(&self, state: &StateVector) -> Result<StateVector> {
        match self {
            ContinuousSystem::Chua(p) => chua_deriv(state, p),
            ContinuousSystem::Lorenz(p) => lorenz_deriv(state, p),
            ContinuousSystem::Rossler(p) => rossler_deriv(state, p),
        }
    }

    pub fn params(&self) -> SystemParams {
        match *self {
            ContinuousSystem::Chua(p) => SystemParams::Chua(p),
            ContinuousSystem::Lorenz(p) => SystemParams::Lorenz(p),
            ContinuousSystem::Rossler(p) => SystemParams::Rossler(p),
        }
    }
}

/// A discrete-time map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiscreteMap {
    Henon(HenonParams),
    Logistic(LogisticParams),
}

impl DiscreteMap {
    pub fn name(&self) -> &'static str {
        match self {
            DiscreteMap::Henon(_) => "henon",
            DiscreteMap::Logistic(_) => "logistic",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            DiscreteMap::Henon(_) => 2,
            DiscreteMap::Logistic(_) => 1,
        }
    }

    /// Applies the map once.
    pub fn step(&self, state: &StateVector) -> Result<StateVector> {
        match self {
            DiscreteMap::Henon(p) => henon_step(state, p),
            DiscreteMap::Logistic(p) => {
                state.expect_dim("logistic", 1)?;
                logistic_step(state.comps[0], p).map(StateVector::scalar)
            }
        }
    }

    pub fn params(&self) -> SystemParams {
        match *self {
            DiscreteMap::Henon(p) => SystemParams::Henon(p),
            DiscreteMap::Logistic(p) => SystemParams::Logistic(p),
        }
    }
}

/// Any of the five supported systems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChaoticSystem {
    Continuous(ContinuousSystem),
    Discrete(DiscreteMap),
}

impl ChaoticSystem {
    pub fn name(&self) -> &'static str {
        match self {
            ChaoticSystem::Continuous(c) => c.name(),
            ChaoticSystem::Discrete(d) => d.name(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ChaoticSystem::Continuous(_) => ContinuousSystem::DIM,
            ChaoticSystem::Discrete(d) => d.dim(),
        }
    }

    pub fn params(&self) -> SystemParams {
        match self {
            ChaoticSystem::Continuous(c) => c.params(),
            ChaoticSystem::Discrete(d) => d.params(),
        }
    }

    /// Rebuilds a system from its parameter set.
    pub fn from_params(params: SystemParams) -> Self {
        match params {
            SystemParams::Chua(p) => ChaoticSystem::Continuous(ContinuousSystem::Chua(p)),
            SystemParams::Lorenz(p) => ChaoticSystem::Continuous(ContinuousSystem::Lorenz(p)),
            SystemParams::Rossler(p) => ChaoticSystem::Continuous(ContinuousSystem::Rossler(p)),
            SystemParams::Henon(p) => ChaoticSystem::Discrete(DiscreteMap::Henon(p)),
            SystemParams::Logistic(p) => ChaoticSystem::Discrete(DiscreteMap::Logistic(p)),
        }
    }
}
