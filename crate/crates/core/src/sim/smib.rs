use super::{step_count, Column, Rk4, Trajectory, DIVERGENCE_LIMIT};
use crate::model::{SmibParams, SystemState};
use crate::{Error, Result};

pub const DEFAULT_STEP: f64 = 1e-4;

/// Integrates `Δδ̈ + (D/2H)Δδ̇ + β sin(δ0 + Δδ) = β sin δ0` with fixed-step RK4.
///
/// Columns are `delta` (rad) and `speed` (rad/s), starting at `t = 0`.
pub fn simulate_smib(
    params: &SmibParams,
    init: SystemState,
    dt: f64,
    t_end: f64,
) -> Result<Trajectory> {
    params.validate()?;
    if !init.is_finite() {
        return Err(Error::InvalidParameter("initial state must be finite".into()));
    }
    let steps = step_count(dt, t_end)?;
    let rhs = |y: &[f64], out: &mut [f64]| {
        let d = params.derivative(SystemState::new(y[0], y[1]));
        out[0] = d.delta_dev;
        out[1] = d.speed_dev_rad;
    };

    let mut delta = Vec::with_capacity(steps + 1);
    let mut speed = Vec::with_capacity(steps + 1);
    let mut y = [init.delta_dev, init.speed_dev_rad];
    delta.push(y[0]);
    speed.push(y[1]);
    let mut rk = Rk4::new(2);
    for i in 1..=steps {
        rk.step(&rhs, &mut y, dt);
        if !(y[0].abs() <= DIVERGENCE_LIMIT) {
            return Err(Error::Divergence { time: dt * i as f64 });
        }
        delta.push(y[0]);
        speed.push(y[1]);
    }
    Trajectory::new(
        0.0,
        dt,
        vec![
            Column { name: "delta".into(), values: delta },
            Column { name: "speed".into(), values: speed },
        ],
    )
}
