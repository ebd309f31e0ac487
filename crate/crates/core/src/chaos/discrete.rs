use super::{HenonParams, LogisticParams, StateVector};
use crate::error::{Error, Result};

/// Orbits whose largest component exceeds this magnitude are treated as
/// escaped.
pub const ESCAPE_RADIUS: f64 = 1e6;

/// One Henon iteration on raw coordinates, without escape checks.
#[inline]
pub(crate) fn henon_map(x: f64, y: f64, p: &HenonParams) -> (f64, f64) {
    (p.c - p.a * x * x + y, p.b * x)
}

pub fn henon_step(state: &StateVector, p: &HenonParams) -> Result<StateVector> {
    state.expect_dim("henon", 2)?;
    let [x, y, _] = state.comps;
    let (nx, ny) = henon_map(x, y, p);
    let next = StateVector::planar(nx, ny);
    if !next.is_finite() || next.max_abs() > ESCAPE_RADIUS {
        return Err(Error::Divergence { step: 1 });
    }
    Ok(next)
}

pub fn logistic_step(x: f64, p: &LogisticParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Contract(format!("logistic state {x} outside [0, 1]")));
    }
    Ok(p.lambda() * x * (1.0 - x))
}
