//! Reference time-domain simulation and per-cycle frequency extraction.

mod extrema;
mod multimachine;
mod smib;

use serde::{Deserialize, Serialize};

pub use extrema::{
    cycle_points, detect_extrema, equivalent_angle, find_extrema, CyclePoint, Extremum,
    ExtremumKind, MachineGroup,
};
pub use multimachine::{simulate_multimachine, Machine, MultiMachineCase};
pub use smib::{simulate_smib, DEFAULT_STEP};

use crate::{Error, Result};

/// A simulation diverges once any angle leaves `[-10π, 10π]`.
pub(crate) const DIVERGENCE_LIMIT: f64 = 10.0 * std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

/// Uniformly sampled named series sharing one time axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    t0: f64,
    dt: f64,
    columns: Vec<Column>,
}

impl Trajectory {
    pub fn new(t0: f64, dt: f64, columns: Vec<Column>) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite() && t0.is_finite()) {
            return Err(Error::InvalidParameter(format!("invalid time axis t0={t0}, dt={dt}")));
        }
        let len = columns.first().map_or(0, |c| c.values.len());
        if columns.is_empty() || len < 2 {
            return Err(Error::InsufficientData("trajectory needs at least 2 samples".into()));
        }
        for c in &columns {
            if c.values.len() != len {
                return Err(Error::InvalidParameter(format!(
                    "column `{}` has {} samples, expected {len}",
                    c.name,
                    c.values.len()
                )));
            }
            if c.values.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter(format!("column `{}` is not finite", c.name)));
            }
        }
        Ok(Self { t0, dt, columns })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.columns[0].values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + self.dt * i as f64
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.time(i)).collect()
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column_names(&self) -> impl Iterator<Item = &str> {
        self.columns.iter().map(|c| c.name.as_str())
    }

    pub fn column(&self, name: &str) -> Result<&[f64]> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.values.as_slice())
            .ok_or_else(|| Error::UnknownColumn(name.to_string()))
    }
}

/// One classical RK4 step of `y' = f(y)` in place.
pub(crate) struct Rk4 {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    tmp: Vec<f64>,
}

impl Rk4 {
    pub(crate) fn new(dim: usize) -> Self {
        Self {
            k1: vec![0.0; dim],
            k2: vec![0.0; dim],
            k3: vec![0.0; dim],
            k4: vec![0.0; dim],
            tmp: vec![0.0; dim],
        }
    }

    pub(crate) fn step<F>(&mut self, f: &F, y: &mut [f64], dt: f64)
    where
        F: Fn(&[f64], &mut [f64]),
    {
        let half = 0.5 * dt;
        f(y, &mut self.k1);
        for i in 0..y.len() {
            self.tmp[i] = y[i] + half * self.k1[i];
        }
        f(&self.tmp, &mut self.k2);
        for i in 0..y.len() {
            self.tmp[i] = y[i] + half * self.k2[i];
        }
        f(&self.tmp, &mut self.k3);
        for i in 0..y.len() {
            self.tmp[i] = y[i] + dt * self.k3[i];
        }
        f(&self.tmp, &mut self.k4);
        for i in 0..y.len() {
            y[i] += dt / 6.0 * (self.k1[i] + 2.0 * self.k2[i] + 2.0 * self.k3[i] + self.k4[i]);
        }
    }
}

pub(crate) fn step_count(dt: f64, t_end: f64) -> Result<usize> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    if !(t_end > dt && t_end.is_finite()) {
        return Err(Error::InvalidParameter(format!("t_end must exceed dt, got {t_end}")));
    }
    Ok((t_end / dt).round() as usize)
}
