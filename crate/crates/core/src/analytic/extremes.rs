//! Turning points of an undamped orbit from energy conservation.
//!
//! At a turning point the kinetic energy vanishes, so
//! `Δδ̇(0)² = 2β [cos(δ0 + Δδ(0)) − cos(δ0 + Δδ_ep) + (Δδ(0) − Δδ_ep) sin δ0]`.
//! On each side of the equilibrium the potential is strictly monotone inside
//! the well, so each side has exactly one root.

use std::f64::consts::PI;

use super::OscillationBounds;
use crate::model::{potential_shape, potential_shape_derivative, SmibParams, SystemState};
use crate::numeric::roots::bisect_newton;
use crate::{Error, Result};

const BRACKET_WIDTH: f64 = 1e-10;
const NEWTON_STEPS: usize = 4;
const EDGE_MARGIN: f64 = 1e-12;

/// Residual of the turning-point equation,
/// `Δδ̇(0)² − 2β [cos(δ0 + Δδ(0)) − cos(δ0 + x) + (Δδ(0) − x) sin δ0]`.
pub fn energy_residual(params: &SmibParams, init: SystemState, x: f64) -> f64 {
    let gap = potential_shape(params.delta0, x) - potential_shape(params.delta0, init.delta_dev);
    init.speed_dev_rad * init.speed_dev_rad - 2.0 * params.beta() * gap
}

/// Root of `U(x) = level` with `x` on the side of the equilibrium given by `positive`.
fn solve_level(params: &SmibParams, level: f64, positive: bool) -> Result<f64> {
    if level == 0.0 {
        return Ok(0.0);
    }
    let d0 = params.delta0;
    let f = |x: f64| potential_shape(d0, x) - level;
    let df = |x: f64| potential_shape_derivative(d0, x);
    let (lo, hi) = if positive {
        (0.0, params.barrier_deviation() - EDGE_MARGIN)
    } else {
        (-(PI + 2.0 * d0) + EDGE_MARGIN, 0.0)
    };
    bisect_newton(f, df, lo, hi, BRACKET_WIDTH, NEWTON_STEPS)
}

/// Maximum and minimum angle deviation reached from `init` without damping.
///
/// Returns [`Error::Unstable`] when the total energy reaches the barrier
/// energy, which is the stability signal rather than a numerical failure.
pub fn extreme_points(params: &SmibParams, init: SystemState) -> Result<OscillationBounds> {
    params.validate()?;
    if !init.is_finite() {
        return Err(Error::InvalidParameter("initial state must be finite".into()));
    }
    let critical = params.critical_energy();
    let energy = params.total_energy(init);
    let inside = init.delta_dev < params.barrier_deviation()
        && init.delta_dev > -(PI + 2.0 * params.delta0);
    if !inside || energy >= critical {
        return Err(Error::Unstable { energy, critical });
    }

    let x0 = init.delta_dev;
    let v0 = init.speed_dev_rad;
    if x0 == 0.0 && v0 == 0.0 {
        return Ok(OscillationBounds::zero());
    }
    let level = potential_shape(params.delta0, x0) + v0 * v0 / (2.0 * params.beta());
    let (delta_max, delta_min) = if v0 == 0.0 && x0 > 0.0 {
        (x0, solve_level(params, level, false)?)
    } else if v0 == 0.0 {
        (solve_level(params, level, true)?, x0)
    } else {
        (solve_level(params, level, true)?, solve_level(params, level, false)?)
    };
    OscillationBounds::new(delta_max, delta_min)
}

/// The negative turning point with the same potential energy as `delta_max`.
///
/// `delta_max` may equal the barrier deviation, which gives the left edge of
/// the largest bounded orbit.
pub fn conjugate_extreme(params: &SmibParams, delta_max: f64) -> Result<f64> {
    let barrier = params.barrier_deviation();
    if !(0.0..=barrier).contains(&delta_max) {
        return Err(Error::Domain(format!("delta_max = {delta_max} outside [0, {barrier}]")));
    }
    solve_level(params, potential_shape(params.delta0, delta_max), false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case() -> SmibParams {
        SmibParams::case_study(0.0)
    }

    #[test]
    fn equilibrium_has_zero_bounds() {
        let b = extreme_points(&case(), SystemState::default()).unwrap();
        assert_eq!(b, OscillationBounds::zero());
    }

    #[test]
    fn case_one_turning_points() {
        let p = case();
        let init = SystemState::new(30f64.to_radians(), 2.0);
        let b = extreme_points(&p, init).unwrap();
        assert!((b.delta_max() - 0.618).abs() < 2e-3);
        assert!((b.delta_min() + 0.502).abs() < 2e-3);
        assert!(energy_residual(&p, init, b.delta_max()).abs() < 1e-12);
        assert!(energy_residual(&p, init, b.delta_min()).abs() < 1e-12);
    }

    #[test]
    fn starting_at_rest_is_a_turning_point() {
        let p = case();
        let a = 1e-3;
        let b = extreme_points(&p, SystemState::new(a, 0.0)).unwrap();
        assert_eq!(b.delta_max(), a);
        assert!((b.delta_min() + a).abs() < 1e-6);
        let b = extreme_points(&p, SystemState::new(-0.4, 0.0)).unwrap();
        assert_eq!(b.delta_min(), -0.4);
        assert!(b.delta_max() > 0.0);
    }

    #[test]
    fn unstable_beyond_critical_speed() {
        let p = case();
        let threshold = (p.omega0 * p.critical_energy() / p.h).sqrt();
        assert!((threshold - 6.85).abs() < 0.01);
        let err = extreme_points(&p, SystemState::new(0.0, threshold + 1e-6)).unwrap_err();
        assert!(matches!(err, Error::Unstable { .. }));
        assert!(extreme_points(&p, SystemState::new(0.0, threshold - 1e-3)).is_ok());
        let beyond = SystemState::new(p.barrier_deviation() + 0.5, 0.0);
        assert!(matches!(extreme_points(&p, beyond), Err(Error::Unstable { .. })));
    }

    #[test]
    fn conjugate_of_symmetric_well() {
        let p = SmibParams::new(1.0, 0.0, 10.0, 1.0, 0.0).unwrap();
        for &a in &[0.1, 1.0, 2.5] {
            assert!((conjugate_extreme(&p, a).unwrap() + a).abs() < 1e-12);
        }
    }

    #[test]
    fn conjugate_at_barrier() {
        let p = case();
        let c = conjugate_extreme(&p, p.barrier_deviation()).unwrap();
        assert!((c + 0.823).abs() < 2e-3);
    }

    #[test]
    fn left_side_is_steeper() {
        let p = case();
        for i in 1..30 {
            let a = i as f64 * 0.05;
            let c = conjugate_extreme(&p, a).unwrap();
            assert!(c.abs() < a, "a = {a}");
            let mismatch = (p.potential_energy(a) - p.potential_energy(c)).abs();
            assert!(mismatch < 1e-12);
        }
    }
}
