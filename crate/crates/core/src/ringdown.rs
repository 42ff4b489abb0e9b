//! Per-cycle amplitude/frequency extraction from measured angle series and
//! comparison against an analytic F-A curve.

use serde::{Deserialize, Serialize};

use crate::analytic::FaCurve;
use crate::sim::{cycle_points, find_extrema, CyclePoint};
use crate::{Error, Result};

const MIN_SAMPLES: usize = 8;

/// A measured rotor-angle series with strictly increasing (possibly
/// non-uniform) timestamps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasuredSeries {
    times: Vec<f64>,
    angles: Vec<f64>,
}

impl MeasuredSeries {
    pub fn new(times: Vec<f64>, angles: Vec<f64>) -> Result<Self> {
        if times.len() != angles.len() {
            return Err(Error::InvalidParameter("times and angles differ in length".into()));
        }
        if times.len() < MIN_SAMPLES {
            return Err(Error::InsufficientData(format!(
                "need at least {MIN_SAMPLES} samples, got {}",
                times.len()
            )));
        }
        if times.iter().chain(&angles).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("samples must be finite".into()));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter("times must be strictly increasing".into()));
        }
        Ok(Self { times, angles })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub enum SteadyStateMethod {
    /// Time-weighted mean over the last full cycle.
    #[default]
    TrailingCycleMean,
    Supplied(f64),
}

/// Linear-interpolation value of the series at `t` (inside the time span).
fn value_at(times: &[f64], values: &[f64], t: f64) -> f64 {
    let idx = times.partition_point(|&x| x < t).clamp(1, times.len() - 1);
    let (t0, t1) = (times[idx - 1], times[idx]);
    let w = (t - t0) / (t1 - t0);
    values[idx - 1] + w * (values[idx] - values[idx - 1])
}

/// Trapezoidal mean of the piecewise-linear series over `[ta, tb]`.
fn time_average(times: &[f64], values: &[f64], ta: f64, tb: f64) -> f64 {
    let mut knots = vec![(ta, value_at(times, values, ta))];
    knots.extend(
        times
            .iter()
            .zip(values)
            .filter(|(&t, _)| t > ta && t < tb)
            .map(|(&t, &v)| (t, v)),
    );
    knots.push((tb, value_at(times, values, tb)));
    let area: f64 = knots.windows(2).map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1)).sum();
    area / (tb - ta)
}

/// Steady-state angle of the series.
pub fn estimate_steady_state(series: &MeasuredSeries, method: SteadyStateMethod) -> Result<f64> {
    match method {
        SteadyStateMethod::Supplied(v) => Ok(v),
        SteadyStateMethod::TrailingCycleMean => {
            let first = series.angles[0];
            if series.angles.iter().all(|&v| v == first) {
                return Ok(first);
            }
            let ext = find_extrema(&series.times, &series.angles);
            if ext.len() < 3 {
                return Err(Error::InsufficientData(format!(
                    "need a full trailing cycle (3 extrema), found {}",
                    ext.len()
                )));
            }
            let ta = ext[ext.len() - 3].t;
            let tb = ext[ext.len() - 1].t;
            Ok(time_average(&series.times, &series.angles, ta, tb))
        }
    }
}

/// Per-cycle (OA, OF) estimates after removing `steady_state`.
pub fn measured_fa_points(series: &MeasuredSeries, steady_state: f64) -> Vec<CyclePoint> {
    let deviations: Vec<f64> = series.angles.iter().map(|a| a - steady_state).collect();
    let ext = find_extrema(&series.times, &deviations);
    if ext.len() < 2 {
        log::warn!("fewer than two extrema in the measured series; no cycle points");
        return Vec::new();
    }
    cycle_points(&ext, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparedPoint {
    pub point: CyclePoint,
    pub predicted_f: f64,
    /// `|of − predicted_f| / predicted_f`.
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaComparison {
    pub points: Vec<ComparedPoint>,
    /// Points outside the curve's amplitude range; never extrapolated.
    pub out_of_range: Vec<CyclePoint>,
    pub max_relative_error: Option<f64>,
    pub mean_relative_error: Option<f64>,
}

impl FaComparison {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Compares measured points with the curve, interpolated linearly in amplitude.
pub fn compare_to_curve(points: &[CyclePoint], curve: &FaCurve) -> Result<FaComparison> {
    if curve.points.is_empty() {
        return Err(Error::InsufficientData("F-A curve has no points".into()));
    }
    let mut compared = Vec::new();
    let mut out_of_range = Vec::new();
    for &point in points {
        match curve.interpolate(point.oa) {
            Some(predicted_f) => compared.push(ComparedPoint {
                point,
                predicted_f,
                relative_error: (point.of - predicted_f).abs() / predicted_f,
            }),
            None => out_of_range.push(point),
        }
    }
    if compared.is_empty() && !points.is_empty() {
        log::warn!("every measured point lies outside the curve's amplitude range");
    }
    let max_relative_error = compared.iter().map(|c| c.relative_error).reduce(f64::max);
    let mean_relative_error = (!compared.is_empty())
        .then(|| compared.iter().map(|c| c.relative_error).sum::<f64>() / compared.len() as f64);
    Ok(FaComparison { points: compared, out_of_range, max_relative_error, mean_relative_error })
}
