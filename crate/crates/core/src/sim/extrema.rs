//! Extremum detection, per-cycle frequency/amplitude estimates and the
//! inertia-weighted inter-area angle.

use serde::{Deserialize, Serialize};

use super::Trajectory;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub t: f64,
    pub value: f64,
    pub kind: ExtremumKind,
}

/// Vertex of the parabola through three samples, clamped to the outer two times.
fn parabola_vertex(t: [f64; 3], y: [f64; 3]) -> (f64, f64) {
    let f01 = (y[1] - y[0]) / (t[1] - t[0]);
    let f12 = (y[2] - y[1]) / (t[2] - t[1]);
    let curvature = (f12 - f01) / (t[2] - t[0]);
    if curvature == 0.0 || !curvature.is_finite() {
        return (t[1], y[1]);
    }
    let tv = (0.5 * (t[0] + t[1]) - f01 / (2.0 * curvature)).clamp(t[0], t[2]);
    let yv = y[0] + f01 * (tv - t[0]) + curvature * (tv - t[0]) * (tv - t[1]);
    (tv, yv)
}

/// Interior extrema of a sampled series, refined by a 3-point quadratic fit.
///
/// Works for non-uniform sampling. The result alternates between maxima and
/// minima; if two of the same kind occur in a row the more extreme one is
/// kept. Plateaus that do not change direction are not extrema.
pub fn find_extrema(times: &[f64], values: &[f64]) -> Vec<Extremum> {
    assert_eq!(times.len(), values.len(), "times and values differ in length");
    let n = values.len();
    let mut out: Vec<Extremum> = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        let (prev, here) = (values[i - 1], values[i]);
        if here == prev {
            i += 1;
            continue;
        }
        // skip over a flat run to the next differing sample
        let mut j = i + 1;
        while j < n && values[j] == here {
            j += 1;
        }
        if j == n {
            break;
        }
        let next = values[j];
        let kind = if here > prev && here > next {
            Some(ExtremumKind::Max)
        } else if here < prev && here < next {
            Some(ExtremumKind::Min)
        } else {
            None
        };
        if let Some(kind) = kind {
            let (t, value) = parabola_vertex(
                [times[i - 1], times[i], times[i + 1]],
                [values[i - 1], values[i], values[i + 1]],
            );
            let ext = Extremum { t, value, kind };
            match out.last_mut() {
                Some(last) if last.kind == kind => {
                    let more = match kind {
                        ExtremumKind::Max => value > last.value,
                        ExtremumKind::Min => value < last.value,
                    };
                    if more {
                        *last = ext;
                    }
                }
                _ => out.push(ext),
            }
        }
        i = j;
    }
    out
}

/// Extrema of one named trajectory column.
pub fn detect_extrema(traj: &Trajectory, column: &str) -> Result<Vec<Extremum>> {
    let values = traj.column(column)?;
    Ok(find_extrema(&traj.times(), values))
}

/// One empirical (amplitude, frequency) estimate from two adjacent extrema.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CyclePoint {
    /// Midpoint time of the two extrema (s).
    pub t_mid: f64,
    /// Half the angle difference of the two extrema (rad).
    pub oa: f64,
    /// `1 / (2 Δt)`: adjacent extrema are half a period apart (Hz).
    pub of: f64,
    /// Larger of the two extrema, relative to the steady state (rad).
    pub upper: f64,
    /// Smaller of the two extrema, relative to the steady state (rad).
    pub lower: f64,
}

/// Per-pair estimates from consecutive extrema.
pub fn cycle_points(extrema: &[Extremum], steady_state: f64) -> Vec<CyclePoint> {
    extrema
        .windows(2)
        .filter_map(|w| {
            let (a, b) = (w[0], w[1]);
            let dt = b.t - a.t;
            let oa = 0.5 * (a.value - b.value).abs();
            if !(dt > 0.0 && oa > 0.0) {
                return None;
            }
            Some(CyclePoint {
                t_mid: 0.5 * (a.t + b.t),
                oa,
                of: 1.0 / (2.0 * dt),
                upper: a.value.max(b.value) - steady_state,
                lower: a.value.min(b.value) - steady_state,
            })
        })
        .collect()
}

/// Named machines with their inertia constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MachineGroup {
    members: Vec<(String, f64)>,
}

impl MachineGroup {
    pub fn new<S: Into<String>>(members: impl IntoIterator<Item = (S, f64)>) -> Result<Self> {
        let members: Vec<(String, f64)> =
            members.into_iter().map(|(n, h)| (n.into(), h)).collect();
        if members.is_empty() {
            return Err(Error::InvalidGroup("group is empty".into()));
        }
        if let Some((name, h)) = members.iter().find(|(_, h)| !(*h > 0.0 && h.is_finite())) {
            return Err(Error::InvalidGroup(format!("inertia of `{name}` must be positive, got {h}")));
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[(String, f64)] {
        &self.members
    }

    fn weighted_mean(&self, traj: &Trajectory) -> Result<Vec<f64>> {
        let total: f64 = self.members.iter().map(|(_, h)| h).sum();
        let mut mean = vec![0.0; traj.len()];
        for (name, h) in &self.members {
            let col = traj.column(name)?;
            for (m, v) in mean.iter_mut().zip(col) {
                *m += v * h;
            }
        }
        mean.iter_mut().for_each(|m| *m /= total);
        Ok(mean)
    }
}

/// `Σ_A δ_i H_i / Σ_A H_i − Σ_B δ_i H_i / Σ_B H_i` per sample.
pub fn equivalent_angle(
    traj: &Trajectory,
    group_a: &MachineGroup,
    group_b: &MachineGroup,
) -> Result<Vec<f64>> {
    if let Some((name, _)) = group_a
        .members
        .iter()
        .find(|(a, _)| group_b.members.iter().any(|(b, _)| a == b))
    {
        return Err(Error::InvalidGroup(format!("`{name}` appears in both groups")));
    }
    let a = group_a.weighted_mean(traj)?;
    let b = group_b.weighted_mean(traj)?;
    Ok(a.iter().zip(&b).map(|(x, y)| x - y).collect())
}
