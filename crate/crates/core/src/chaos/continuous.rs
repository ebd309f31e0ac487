use super::{ChuaParams, ContinuousSystem, LorenzParams, RosslerParams, StateVector};
use crate::error::{Error, Result};

/// Default integration step.
pub const DEFAULT_DT: f64 = 0.01;

fn chua_h(x: f64, p: &ChuaParams) -> f64 {
    p.b * x + 0.5 * (p.a - p.b) * ((x + 1.0).abs() - (x - 1.0).abs())
}

pub fn chua_deriv(state: &StateVector, p: &ChuaParams) -> Result<StateVector> {
    state.expect_dim("chua", 3)?;
    let [x1, x2, x3] = state.comps;
    Ok(StateVector::spatial(
        p.alpha * (x2 - chua_h(x1, p)),
        x1 - x2 + x3,
        -p.beta * x2,
    ))
}

pub fn lorenz_deriv(state: &StateVector, p: &LorenzParams) -> Result<StateVector> {
    state.expect_dim("lorenz", 3)?;
    let [x, y, z] = state.comps;
    Ok(StateVector::spatial(
        p.a * (y - x),
        p.b * x - y - x * z,
        x * y - p.c * z,
    ))
}

pub fn rossler_deriv(state: &StateVector, p: &RosslerParams) -> Result<StateVector> {
    state.expect_dim("rossler", 3)?;
    let [x, y, z] = state.comps;
    Ok(StateVector::spatial(-y - z, x + p.a * y, p.b + z * (x - p.c)))
}

/// One classical Runge-Kutta step of `dt` for an arbitrary vector field.
///
/// A non-finite stage or result is reported as [`Error::Divergence`] with
/// `step = 1`; callers that integrate many steps relabel it with their own
/// step index.
pub fn rk4_step_with<F>(field: F, state: &StateVector, dt: f64) -> Result<StateVector>
where
    F: Fn(&StateVector) -> Result<StateVector>,
{
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Contract(format!("time step must be positive and finite, got {dt}")));
    }
    let diverged = || Error::Divergence { step: 1 };
    let checked = |s: StateVector| if s.is_finite() { Ok(s) } else { Err(diverged()) };

    let k1 = checked(field(state)?)?;
    let k2 = checked(field(&state.axpy(0.5 * dt, &k1))?)?;
    let k3 = checked(field(&state.axpy(0.5 * dt, &k2))?)?;
    let k4 = checked(field(&state.axpy(dt, &k3))?)?;

    let mut next = *state;
    for i in 0..state.dim() {
        next.comps[i] += dt / 6.0 * (k1.comps[i] + 2.0 * k2.comps[i] + 2.0 * k3.comps[i] + k4.comps[i]);
    }
    checked(next)
}

pub fn rk4_step(system: &ContinuousSystem, state: &StateVector, dt: f64) -> Result<StateVector> {
    state.expect_dim(system.name(), ContinuousSystem::DIM)?;
    rk4_step_with(|s| system.deriv(s), state, dt)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &StateVector, b: &[f64], tol: f64) -> bool {
        a.as_slice().iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn chua_hand_values() {
        let p = ChuaParams::QUOTED;
        let origin = chua_deriv(&StateVector::spatial(0.0, 0.0, 0.0), &ChuaParams::default()).unwrap();
        assert_eq!(origin.as_slice(), &[0.0, 0.0, 0.0]);
        // h(1) = a = -1.27
        let d = chua_deriv(&StateVector::spatial(1.0, 0.0, 0.0), &p).unwrap();
        assert!(close(&d, &[12.7, 1.0, 0.0], 1e-12), "{d:?}");
        let d = chua_deriv(&StateVector::spatial(0.0, 1.0, 0.0), &p).unwrap();
        assert!(close(&d, &[10.0, -1.0, -14.87], 1e-12), "{d:?}");
    }

    #[test]
    fn chua_characteristic_is_piecewise_linear() {
        let p = ChuaParams::QUOTED;
        assert!((chua_h(0.5, &p) - p.a * 0.5).abs() < 1e-15);
        assert!((chua_h(3.0, &p) - (p.b * 3.0 + (p.a - p.b))).abs() < 1e-15);
        assert!((chua_h(-3.0, &p) - (p.b * -3.0 - (p.a - p.b))).abs() < 1e-15);
    }

    #[test]
    fn lorenz_hand_values() {
        let p = LorenzParams::default();
        let d = lorenz_deriv(&StateVector::spatial(0.0, 0.0, 0.0), &p).unwrap();
        assert_eq!(d.as_slice(), &[0.0, 0.0, 0.0]);
        let d = lorenz_deriv(&StateVector::spatial(1.0, 1.0, 1.0), &p).unwrap();
        assert!(close(&d, &[0.0, 26.0, 1.0 - 8.0 / 3.0], 1e-12));
        let r = 72f64.sqrt();
        let d = lorenz_deriv(&StateVector::spatial(r, r, 27.0), &p).unwrap();
        assert!(d.norm() < 1e-12, "{d:?}");
    }

    #[test]
    fn rossler_hand_values() {
        let p = RosslerParams::default();
        let d = rossler_deriv(&StateVector::spatial(0.0, 0.0, 0.0), &p).unwrap();
        assert!(close(&d, &[0.0, 0.0, 0.2], 1e-15));
        let d = rossler_deriv(&StateVector::spatial(0.0, 1.0, -1.0), &p).unwrap();
        assert!(close(&d, &[0.0, 0.2, 5.9], 1e-12), "{d:?}");
        let p0 = RosslerParams { a: 0.0, ..p };
        let d = rossler_deriv(&StateVector::spatial(1.0, 1.0, 0.0), &p0).unwrap();
        assert_eq!(d.get(1), Some(1.0));
    }

    #[test]
    fn derivatives_reject_wrong_dimension() {
        let s = StateVector::planar(1.0, 2.0);
        assert!(matches!(
            chua_deriv(&s, &ChuaParams::default()),
            Err(Error::DimensionMismatch { expected: 3, actual: 2, .. })
        ));
        assert!(lorenz_deriv(&s, &LorenzParams::default()).is_err());
        assert!(rossler_deriv(&s, &RosslerParams::default()).is_err());
        let sys = ContinuousSystem::Lorenz(LorenzParams::default());
        assert!(rk4_step(&sys, &s, 0.01).is_err());
    }

    #[test]
    fn rk4_fixes_equilibria() {
        let sys = ContinuousSystem::Lorenz(LorenzParams::default());
        let r = 72f64.sqrt();
        for eq in [StateVector::spatial(0.0, 0.0, 0.0), StateVector::spatial(-r, -r, 27.0)] {
            let next = rk4_step(&sys, &eq, 0.01).unwrap();
            assert!(close(&next, eq.as_slice(), 1e-12));
        }
    }

    #[test]
    fn lorenz_nearby_trajectories_separate() {
        let sys = ContinuousSystem::Lorenz(LorenzParams::default());
        let mut a = StateVector::spatial(1.0, 1.0, 1.0);
        for _ in 0..1000 {
            a = rk4_step(&sys, &a, 0.01).unwrap();
        }
        let s = a.as_slice();
        let mut b = StateVector::spatial(s[0] + 1e-9, s[1], s[2]);
        let mut steps = 0;
        while steps < 2500 {
            a = rk4_step(&sys, &a, 0.01).unwrap();
            b = rk4_step(&sys, &b, 0.01).unwrap();
            steps += 1;
            let d: f64 = a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x - y).powi(2)).sum();
            if d.sqrt() > 1.0 {
                break;
            }
        }
        assert!(steps < 2500, "no separation within 25 time units");
    }

    #[test]
    fn rk4_matches_exponential_decay() {
        let decay = |s: &StateVector| Ok(StateVector::scalar(-s.as_slice()[0]));
        let x = rk4_step_with(decay, &StateVector::scalar(1.0), 0.1).unwrap();
        assert!((x.as_slice()[0] - (-0.1f64).exp()).abs() < 1e-7);
    }

    #[test]
    fn rk4_rejects_bad_step_and_reports_divergence() {
        let sys = ContinuousSystem::Lorenz(LorenzParams::default());
        let s = StateVector::spatial(1.0, 1.0, 1.0);
        assert!(matches!(rk4_step(&sys, &s, 0.0), Err(Error::Contract(_))));
        assert!(rk4_step(&sys, &s, f64::NAN).is_err());
        let blowup = |s: &StateVector| Ok(StateVector::scalar(s.as_slice()[0] * 1e300));
        assert!(matches!(
            rk4_step_with(blowup, &StateVector::scalar(1e10), 1.0),
            Err(Error::Divergence { step: 1 })
        ));
    }
}
