//! Frequency-Amplitude (F-A) curves.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    conjugate_extreme, oscillation_frequency_with, power_series_frequency, OscillationBounds,
    QuadratureOptions,
};
use crate::model::SmibParams;
use crate::numeric::roots::bisect_newton;
use crate::{Error, Result};

/// Distance kept from the equilibrium and from the barrier when sweeping.
const SWEEP_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FaMethod {
    Quadrature(QuadratureOptions),
    Series { n_terms: usize },
}

impl FaMethod {
    pub fn quadrature() -> Self {
        Self::Quadrature(QuadratureOptions::default())
    }

    pub fn series(n_terms: usize) -> Self {
        Self::Series { n_terms }
    }

    pub fn frequency(&self, params: &SmibParams, bounds: &OscillationBounds) -> Result<f64> {
        match self {
            Self::Quadrature(opts) => oscillation_frequency_with(params, bounds, opts),
            Self::Series { n_terms } => power_series_frequency(params, bounds, *n_terms),
        }
    }
}

impl fmt::Display for FaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Quadrature(_) => write!(f, "quadrature"),
            Self::Series { n_terms } => write!(f, "series n_terms={n_terms}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaPoint {
    pub delta_max: f64,
    pub delta_min: f64,
    /// Oscillation amplitude (rad).
    pub oa: f64,
    /// Oscillation frequency (Hz).
    pub frequency: f64,
}

/// Oscillation frequency as a function of amplitude for fixed parameters.
///
/// Points are sampled on a grid uniform in `Δδ_max` and sorted by strictly
/// increasing amplitude.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaCurve {
    pub points: Vec<FaPoint>,
    /// Amplitude of the orbit that grazes the potential barrier (rad).
    pub oa_limit: f64,
    pub params: SmibParams,
    pub method: FaMethod,
    /// Grid points whose evaluation failed and were left out.
    pub dropped: usize,
}

impl FaCurve {
    /// Builds a curve from externally supplied `(oa, f)` samples.
    pub fn from_samples(
        samples: &[(f64, f64)],
        oa_limit: f64,
        params: SmibParams,
        method: FaMethod,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InsufficientData("F-A curve has no points".into()));
        }
        if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidParameter(
                "F-A samples must be strictly increasing in amplitude".into(),
            ));
        }
        if samples.iter().any(|&(oa, f)| !(oa.is_finite() && f > 0.0 && f.is_finite())) {
            return Err(Error::InvalidParameter("F-A samples must be finite with f > 0".into()));
        }
        let points = samples
            .iter()
            .map(|&(oa, frequency)| FaPoint {
                delta_max: f64::NAN,
                delta_min: f64::NAN,
                oa,
                frequency,
            })
            .collect();
        Ok(Self { points, oa_limit, params, method, dropped: 0 })
    }

    pub fn oa_range(&self) -> Option<(f64, f64)> {
        Some((self.points.first()?.oa, self.points.last()?.oa))
    }

    /// Piecewise-linear interpolation in amplitude; `None` outside the sampled range.
    pub fn interpolate(&self, oa: f64) -> Option<f64> {
        let (lo, hi) = self.oa_range()?;
        if !(lo..=hi).contains(&oa) {
            return None;
        }
        let idx = self.points.partition_point(|p| p.oa < oa);
        if idx < self.points.len() && self.points[idx].oa == oa {
            return Some(self.points[idx].frequency);
        }
        let a = &self.points[idx - 1];
        let b = &self.points[idx];
        let t = (oa - a.oa) / (b.oa - a.oa);
        Some(a.frequency + t * (b.frequency - a.frequency))
    }
}

fn orbit_for(params: &SmibParams, delta_max: f64) -> Result<OscillationBounds> {
    OscillationBounds::new(delta_max, conjugate_extreme(params, delta_max)?)
}

/// Samples the F-A curve at `n_points` values of `Δδ_max` spread uniformly
/// over `(1e-3, π − 2δ0 − 1e-3)`.
///
/// Grid points are evaluated in parallel; the result does not depend on the
/// number of threads. A point that fails is dropped with a warning.
pub fn fa_curve(params: &SmibParams, n_points: usize, method: FaMethod) -> Result<FaCurve> {
    params.validate()?;
    if n_points < 2 {
        return Err(Error::InvalidParameter(format!("n_points must be >= 2, got {n_points}")));
    }
    let barrier = params.barrier_deviation();
    let lo = SWEEP_MARGIN;
    let hi = barrier - SWEEP_MARGIN;
    let step = (hi - lo) / (n_points - 1) as f64;

    let evaluated: Vec<(f64, Result<FaPoint>)> = (0..n_points)
        .into_par_iter()
        .map(|i| {
            let delta_max = if i == n_points - 1 { hi } else { lo + step * i as f64 };
            let point = orbit_for(params, delta_max).and_then(|bounds| {
                Ok(FaPoint {
                    delta_max,
                    delta_min: bounds.delta_min(),
                    oa: bounds.amplitude(),
                    frequency: method.frequency(params, &bounds)?,
                })
            });
            (delta_max, point)
        })
        .collect();

    let mut points = Vec::with_capacity(n_points);
    let mut dropped = 0;
    for (delta_max, point) in evaluated {
        match point {
            Ok(p) if p.frequency.is_finite() && p.frequency > 0.0 => points.push(p),
            Ok(p) => {
                log::warn!("dropping F-A point at delta_max = {delta_max}: f = {}", p.frequency);
                dropped += 1;
            }
            Err(e) => {
                log::warn!("dropping F-A point at delta_max = {delta_max}: {e}");
                dropped += 1;
            }
        }
    }
    if points.is_empty() {
        return Err(Error::Convergence("every F-A sweep point failed".into()));
    }
    points.sort_by(|a, b| a.oa.total_cmp(&b.oa));
    points.dedup_by(|b, a| b.oa <= a.oa);

    let oa_limit = 0.5 * (barrier - conjugate_extreme(params, barrier)?);
    Ok(FaCurve { points, oa_limit, params: *params, method, dropped })
}

/// Frequency of the conservative orbit with amplitude `oa`.
///
/// Inverts the monotone map `Δδ_max ↦ (Δδ_max − Δδ_min)/2` by bisection.
pub fn frequency_at_amplitude(params: &SmibParams, oa: f64, method: FaMethod) -> Result<f64> {
    let barrier = params.barrier_deviation();
    let amplitude = |dm: f64| -> f64 {
        conjugate_extreme(params, dm).map(|c| 0.5 * (dm - c)).unwrap_or(f64::NAN)
    };
    let limit = amplitude(barrier);
    if !(oa >= 0.0 && oa < limit) {
        return Err(Error::Domain(format!("amplitude {oa} outside [0, {limit})")));
    }
    if oa == 0.0 {
        return params.natural_frequency();
    }
    let delta_max = bisect_newton(|dm| amplitude(dm) - oa, |_| f64::NAN, 0.0, barrier, 1e-14, 0)?;
    method.frequency(params, &orbit_for(params, delta_max)?)
}
