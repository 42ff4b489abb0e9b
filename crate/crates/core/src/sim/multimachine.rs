//! Classical multi-machine model: constant internal voltages behind a
//! reduced admittance network, one swing equation per machine.

use serde::{Deserialize, Serialize};

use super::{step_count, Column, Rk4, Trajectory, DIVERGENCE_LIMIT};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Machine {
    /// Inertia constant (s).
    pub h: f64,
    /// Damping (per-unit torque per per-unit speed).
    pub d: f64,
    /// Internal voltage magnitude (per-unit).
    pub e: f64,
    /// Initial rotor angle (rad).
    pub delta_init: f64,
    /// Initial angle rate (rad/s).
    pub speed_init: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiMachineCase {
    machines: Vec<Machine>,
    g: Vec<Vec<f64>>,
    b: Vec<Vec<f64>>,
    omega0: f64,
    pm: Vec<f64>,
}

impl MultiMachineCase {
    /// Builds a case; mechanical powers are set to the initial electrical powers.
    pub fn new(machines: Vec<Machine>, g: Vec<Vec<f64>>, b: Vec<Vec<f64>>, omega0: f64) -> Result<Self> {
        let n = machines.len();
        if n == 0 {
            return Err(Error::InvalidParameter("at least one machine is required".into()));
        }
        if !(omega0 > 0.0 && omega0.is_finite()) {
            return Err(Error::InvalidParameter(format!("omega0 must be positive, got {omega0}")));
        }
        for (i, m) in machines.iter().enumerate() {
            let vals = [m.h, m.d, m.e, m.delta_init, m.speed_init];
            if vals.iter().any(|v| !v.is_finite()) || m.h <= 0.0 || m.d < 0.0 {
                return Err(Error::InvalidParameter(format!("machine {} is invalid", i + 1)));
            }
        }
        for (name, mat) in [("G", &g), ("B", &b)] {
            if mat.len() != n || mat.iter().any(|row| row.len() != n) {
                return Err(Error::InvalidParameter(format!("{name} must be {n}x{n}")));
            }
            for i in 0..n {
                for j in 0..n {
                    if !mat[i][j].is_finite() || mat[i][j] != mat[j][i] {
                        return Err(Error::InvalidParameter(format!(
                            "{name} must be finite and symmetric"
                        )));
                    }
                }
            }
        }
        let mut case = Self { machines, g, b, omega0, pm: Vec::new() };
        let angles: Vec<f64> = case.machines.iter().map(|m| m.delta_init).collect();
        case.pm = case.electrical_powers(&angles);
        Ok(case)
    }

    pub fn machines(&self) -> &[Machine] {
        &self.machines
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn mechanical_powers(&self) -> &[f64] {
        &self.pm
    }

    /// `Pe_i = Σ_j E_i E_j (G_ij cos(δ_i − δ_j) + B_ij sin(δ_i − δ_j))`.
    pub fn electrical_powers(&self, angles: &[f64]) -> Vec<f64> {
        let n = self.machines.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (s, c) = (angles[i] - angles[j]).sin_cos();
                        self.machines[i].e
                            * self.machines[j].e
                            * (self.g[i][j] * c + self.b[i][j] * s)
                    })
                    .sum()
            })
            .collect()
    }

    fn lossless(&self) -> bool {
        let n = self.machines.len();
        (0..n).all(|i| (0..n).all(|j| i == j || self.g[i][j] == 0.0))
    }

    /// Transient energy function
    /// `Σ H_i v_i²/ω0 − Σ (Pm_i − E_i² G_ii) δ_i − Σ_{i<j} E_i E_j B_ij cos(δ_i − δ_j)`.
    ///
    /// Only defined without transfer conductances; returns `None` otherwise.
    pub fn energy(&self, angles: &[f64], speeds: &[f64]) -> Option<f64> {
        if !self.lossless() {
            return None;
        }
        let n = self.machines.len();
        let mut total = 0.0;
        for i in 0..n {
            let m = &self.machines[i];
            total += m.h * speeds[i] * speeds[i] / self.omega0;
            total -= (self.pm[i] - m.e * m.e * self.g[i][i]) * angles[i];
            for j in (i + 1)..n {
                total -= m.e * self.machines[j].e * self.b[i][j] * (angles[i] - angles[j]).cos();
            }
        }
        Some(total)
    }

    fn rhs(&self, y: &[f64], out: &mut [f64]) {
        let n = self.machines.len();
        let (angles, speeds) = y.split_at(n);
        let pe = self.electrical_powers(angles);
        for i in 0..n {
            let m = &self.machines[i];
            out[i] = speeds[i];
            out[n + i] = self.omega0 / (2.0 * m.h)
                * (self.pm[i] - pe[i] - m.d * speeds[i] / self.omega0);
        }
    }
}

/// Fixed-step RK4 trajectories of all machines.
///
/// Columns are `delta_1 … delta_n` (rotor angles, rad) followed by
/// `speed_1 … speed_n` (rad/s).
pub fn simulate_multimachine(case: &MultiMachineCase, dt: f64, t_end: f64) -> Result<Trajectory> {
    let steps = step_count(dt, t_end)?;
    let n = case.machines.len();
    let mut y: Vec<f64> = case
        .machines
        .iter()
        .map(|m| m.delta_init)
        .chain(case.machines.iter().map(|m| m.speed_init))
        .collect();
    let mut series: Vec<Vec<f64>> = y.iter().map(|&v| {
        let mut s = Vec::with_capacity(steps + 1);
        s.push(v);
        s
    }).collect();
    let rhs = |y: &[f64], out: &mut [f64]| case.rhs(y, out);
    let mut rk = Rk4::new(2 * n);
    for step in 1..=steps {
        rk.step(&rhs, &mut y, dt);
        if y[..n].iter().any(|a| !(a.abs() <= DIVERGENCE_LIMIT)) {
            return Err(Error::Divergence { time: dt * step as f64 });
        }
        for (s, &v) in series.iter_mut().zip(&y) {
            s.push(v);
        }
    }
    let columns = series
        .into_iter()
        .enumerate()
        .map(|(k, values)| {
            let name = if k < n { format!("delta_{}", k + 1) } else { format!("speed_{}", k - n + 1) };
            Column { name, values }
        })
        .collect();
    Trajectory::new(0.0, dt, columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn machine(h: f64, delta: f64, speed: f64) -> Machine {
        Machine { h, d: 0.0, e: 1.0, delta_init: delta, speed_init: speed }
    }

    fn ring(n: usize, b: f64) -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { b }).collect())
            .collect()
    }

    #[test]
    fn mechanical_power_balances_initial_state() {
        let case = MultiMachineCase::new(
            vec![machine(5.0, 0.3, 0.0), machine(4.0, -0.2, 0.0), machine(3.0, 0.0, 0.0)],
            vec![vec![0.1, 0.0, 0.0], vec![0.0, 0.1, 0.0], vec![0.0, 0.0, 0.1]],
            ring(3, 1.5),
            120.0 * std::f64::consts::PI,
        )
        .unwrap();
        let t = simulate_multimachine(&case, 1e-3, 1.0).unwrap();
        for k in 1..=3 {
            let col = t.column(&format!("delta_{k}")).unwrap();
            assert!(col.iter().all(|&v| (v - col[0]).abs() < 1e-12));
        }
    }

    #[test]
    fn symmetric_machines_stay_together() {
        let case = MultiMachineCase::new(
            vec![machine(4.0, 0.1, 1.0), machine(4.0, 0.1, 1.0)],
            vec![vec![0.0; 2]; 2],
            ring(2, 2.0),
            100.0,
        )
        .unwrap();
        let t = simulate_multimachine(&case, 1e-3, 2.0).unwrap();
        let a = t.column("delta_1").unwrap();
        let b = t.column("delta_2").unwrap();
        assert!(a.iter().zip(b).all(|(x, y)| x == y));
    }

    #[test]
    fn energy_conserved_without_damping() {
        let case = MultiMachineCase::new(
            vec![machine(6.5, 0.4, 1.5), machine(6.175, 0.1, -0.5), machine(5.0, -0.3, 0.2)],
            vec![vec![0.05, 0.0, 0.0], vec![0.0, 0.02, 0.0], vec![0.0, 0.0, 0.01]],
            ring(3, 1.2),
            120.0 * std::f64::consts::PI,
        )
        .unwrap();
        let t = simulate_multimachine(&case, 1e-4, 10.0).unwrap();
        let cols: Vec<&[f64]> = (1..=3)
            .map(|k| t.column(&format!("delta_{k}")).unwrap())
            .chain((1..=3).map(|k| t.column(&format!("speed_{k}")).unwrap()))
            .collect();
        let energy_at = |i: usize| {
            let a: Vec<f64> = (0..3).map(|k| cols[k][i]).collect();
            let v: Vec<f64> = (0..3).map(|k| cols[3 + k][i]).collect();
            case.energy(&a, &v).unwrap()
        };
        let e0 = energy_at(0);
        let drift = (0..t.len()).map(|i| (energy_at(i) - e0).abs()).fold(0.0, f64::max);
        assert!(drift < 1e-8, "drift {drift}");
    }

    #[test]
    fn energy_undefined_with_transfer_conductance() {
        let case = MultiMachineCase::new(
            vec![machine(4.0, 0.0, 0.0), machine(4.0, 0.0, 0.0)],
            vec![vec![0.0, 0.1], vec![0.1, 0.0]],
            ring(2, 1.0),
            100.0,
        )
        .unwrap();
        assert!(case.energy(&[0.0, 0.0], &[0.0, 0.0]).is_none());
    }

    #[test]
    fn rejects_bad_cases() {
        let ok = vec![machine(4.0, 0.0, 0.0), machine(4.0, 0.0, 0.0)];
        assert!(MultiMachineCase::new(vec![], vec![], vec![], 100.0).is_err());
        assert!(MultiMachineCase::new(ok.clone(), vec![vec![0.0; 2]; 2], vec![vec![0.0; 3]; 2], 100.0).is_err());
        assert!(MultiMachineCase::new(
            ok.clone(),
            vec![vec![0.0; 2]; 2],
            vec![vec![0.0, 1.0], vec![2.0, 0.0]],
            100.0
        )
        .is_err());
        let bad = vec![machine(-1.0, 0.0, 0.0), machine(4.0, 0.0, 0.0)];
        assert!(MultiMachineCase::new(bad, vec![vec![0.0; 2]; 2], ring(2, 1.0), 100.0).is_err());
    }
}
