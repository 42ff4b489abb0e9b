//! SMIB machine model: parameters, energies and the small-signal limit.
//!
//! Angles are radians and the speed state is the angle rate Δδ̇ in rad/s
//! (the per-unit speed deviation is `speed / omega0`).

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Constants of one machine against an infinite bus at a fixed operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmibParams {
    /// Inertia constant (s).
    pub h: f64,
    /// Damping factor (per-unit torque per per-unit speed).
    pub d: f64,
    /// Synchronous frequency (rad/s).
    pub omega0: f64,
    /// Steady-state maximum power transfer (per-unit).
    pub pmax: f64,
    /// Steady-state rotor angle (rad), in `[0, π/2)`.
    pub delta0: f64,
}

impl SmibParams {
    pub fn new(h: f64, d: f64, omega0: f64, pmax: f64, delta0: f64) -> Result<Self> {
        let p = Self { h, d, omega0, pmax, delta0 };
        p.validate()?;
        Ok(p)
    }

    /// The single-machine case study: H = 3 s, ω0 = 120π, Pmax = 1.3, δ0 = 0.8,
    /// with the given damping.
    pub fn case_study(d: f64) -> Self {
        Self { h: 3.0, d, omega0: 120.0 * PI, pmax: 1.3, delta0: 0.8 }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.h, self.d, self.omega0, self.pmax, self.delta0];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("parameters must be finite".into()));
        }
        if self.h <= 0.0 {
            return Err(Error::InvalidParameter(format!("H must be positive, got {}", self.h)));
        }
        if self.omega0 <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "omega0 must be positive, got {}",
                self.omega0
            )));
        }
        if self.pmax <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Pmax must be positive, got {}",
                self.pmax
            )));
        }
        if self.d < 0.0 {
            return Err(Error::InvalidParameter(format!("D must be non-negative, got {}", self.d)));
        }
        if !(0.0..FRAC_PI_2).contains(&self.delta0) {
            return Err(Error::InvalidParameter(format!(
                "delta0 must lie in [0, pi/2), got {}",
                self.delta0
            )));
        }
        Ok(())
    }

    pub fn with_damping(mut self, d: f64) -> Self {
        self.d = d;
        self
    }

    /// Acceleration coefficient β = Pmax·ω0 / 2H (rad/s²).
    pub fn beta(&self) -> f64 {
        self.pmax * self.omega0 / (2.0 * self.h)
    }

    /// Constant mechanical power, equal to the electrical power at equilibrium.
    pub fn mechanical_power(&self) -> f64 {
        self.pmax * self.delta0.sin()
    }

    pub fn electrical_power(&self, delta_dev: f64) -> f64 {
        self.pmax * (self.delta0 + delta_dev).sin()
    }

    pub fn kinetic_energy(&self, speed_dev_rad: f64) -> f64 {
        speed_dev_rad * speed_dev_rad * self.h / self.omega0
    }

    /// Potential energy relative to the equilibrium (zero at `delta_dev = 0`).
    pub fn potential_energy(&self, delta_dev: f64) -> f64 {
        self.pmax * potential_shape(self.delta0, delta_dev)
    }

    pub fn total_energy(&self, state: SystemState) -> f64 {
        self.kinetic_energy(state.speed_dev_rad) + self.potential_energy(state.delta_dev)
    }

    /// Angle deviation of the unstable equilibrium, `π − 2δ0`.
    pub fn barrier_deviation(&self) -> f64 {
        PI - 2.0 * self.delta0
    }

    /// Potential energy at the barrier: the largest energy of a bounded orbit.
    pub fn critical_energy(&self) -> f64 {
        self.potential_energy(self.barrier_deviation())
    }

    /// Linearized oscillation frequency `sqrt(β cos δ0) / 2π` (Hz).
    pub fn natural_frequency(&self) -> Result<f64> {
        let c = self.delta0.cos();
        if c <= 0.0 {
            return Err(Error::Domain(format!(
                "cos(delta0) = {c} is not positive: no stable linearized mode"
            )));
        }
        Ok((self.beta() * c).sqrt() / (2.0 * PI))
    }

    /// Small-signal angular frequency `sqrt(β cos δ0)` (rad/s).
    pub(crate) fn natural_angular_frequency(&self) -> f64 {
        (self.beta() * self.delta0.cos()).sqrt()
    }

    /// Time derivative of the state under the damped swing equation.
    pub fn derivative(&self, state: SystemState) -> SystemState {
        let beta = self.beta();
        let accel = -(self.d / (2.0 * self.h)) * state.speed_dev_rad
            - beta * (self.delta0 + state.delta_dev).sin()
            + beta * self.delta0.sin();
        SystemState { delta_dev: state.speed_dev_rad, speed_dev_rad: accel }
    }
}

/// Rotor angle deviation and its rate.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SystemState {
    pub delta_dev: f64,
    pub speed_dev_rad: f64,
}

impl SystemState {
    pub fn new(delta_dev: f64, speed_dev_rad: f64) -> Self {
        Self { delta_dev, speed_dev_rad }
    }

    pub fn from_per_unit_speed(delta_dev: f64, speed_pu: f64, omega0: f64) -> Self {
        Self { delta_dev, speed_dev_rad: speed_pu * omega0 }
    }

    pub fn speed_per_unit(&self, omega0: f64) -> f64 {
        self.speed_dev_rad / omega0
    }

    pub fn is_finite(&self) -> bool {
        self.delta_dev.is_finite() && self.speed_dev_rad.is_finite()
    }
}

/// `sin(z)/z − 1`, accurate near zero.
pub(crate) fn sinc_minus_one(z: f64) -> f64 {
    if z.abs() < 0.1 {
        let z2 = z * z;
        z2 * (-1.0 / 6.0 + z2 * (1.0 / 120.0 + z2 * (-1.0 / 5040.0 + z2 / 362_880.0)))
    } else {
        z.sin() / z - 1.0
    }
}

/// `U(a) − U(x)` divided by `a − x`, where U is the per-Pmax potential.
///
/// With `y = (a + x)/2` and `d = a − x` this is
/// `sin(δ0 + y)·sinc(d/2) − sin δ0`, rearranged so that no term cancels
/// when `y` or `d` is small.
pub(crate) fn potential_slope(delta0: f64, mid: f64, gap: f64) -> f64 {
    2.0 * (delta0 + 0.5 * mid).cos() * (0.5 * mid).sin()
        + (delta0 + mid).sin() * sinc_minus_one(0.5 * gap)
}

/// `cos δ0 − cos(δ0 + x) − x sin δ0`, the potential per unit Pmax.
pub(crate) fn potential_shape(delta0: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    x * potential_slope(delta0, 0.5 * x, x)
}

/// Derivative of [`potential_shape`]: `sin(δ0 + x) − sin δ0`.
pub(crate) fn potential_shape_derivative(delta0: f64, x: f64) -> f64 {
    2.0 * (delta0 + 0.5 * x).cos() * (0.5 * x).sin()
}
