//! Large-disturbance oscillation frequency from the energy integral.
//!
//! For an undamped orbit with turning points `Δδ_max > 0 > Δδ_min` the time
//! spent on each side of the equilibrium is
//!
//! ```text
//! T = 2 ∫ dΔδ / sqrt(2β (U(Δδ_ep) − U(Δδ)))
//! ```
//!
//! with `U(x) = cos δ0 − cos(δ0 + x) − x sin δ0`. Substituting
//! `sin φ = sin(Δδ/2) / sin(Δδ_ep/2)` maps each half onto `φ ∈ [0, π/2]`;
//! the oscillation frequency is `1 / (T_upper + T_lower)`.
//!
//! The substituted integrand has a removable 0/0 at `φ = π/2`. It is
//! evaluated here in a rearranged form where the vanishing factors cancel
//! algebraically, so it is finite and accurate on the closed interval.

mod curve;
mod extremes;
mod series;

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

pub use curve::{fa_curve, frequency_at_amplitude, FaCurve, FaMethod, FaPoint};
pub use extremes::{conjugate_extreme, energy_residual, extreme_points};
pub use series::{
    closed_form_frequency_n1, power_series_frequency, wallis, SeriesApprox, DEFAULT_SERIES_TERMS,
};

use crate::model::{potential_shape, potential_slope, SmibParams};
use crate::numeric::quadrature::{integrate_gauss_legendre, integrate_simpson};
use crate::{Error, Result};

/// Turning points of one conservative oscillation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillationBounds {
    delta_max: f64,
    delta_min: f64,
}

impl OscillationBounds {
    pub fn new(delta_max: f64, delta_min: f64) -> Result<Self> {
        if !delta_max.is_finite() || !delta_min.is_finite() {
            return Err(Error::InvalidParameter("bounds must be finite".into()));
        }
        if delta_max < 0.0 || delta_min > 0.0 {
            return Err(Error::InvalidParameter(format!(
                "bounds must satisfy delta_min <= 0 <= delta_max, got ({delta_max}, {delta_min})"
            )));
        }
        Ok(Self { delta_max, delta_min })
    }

    /// The equilibrium itself.
    pub fn zero() -> Self {
        Self { delta_max: 0.0, delta_min: 0.0 }
    }

    pub fn delta_max(&self) -> f64 {
        self.delta_max
    }

    pub fn delta_min(&self) -> f64 {
        self.delta_min
    }

    /// Oscillation amplitude `(Δδ_max − Δδ_min) / 2`.
    pub fn amplitude(&self) -> f64 {
        0.5 * (self.delta_max - self.delta_min)
    }

    /// `|Ep(Δδ_max) − Ep(Δδ_min)|`; zero for a conservative orbit.
    pub fn energy_mismatch(&self, params: &SmibParams) -> f64 {
        (params.potential_energy(self.delta_max) - params.potential_energy(self.delta_min)).abs()
    }

    fn check(&self, params: &SmibParams) -> Result<()> {
        check_upper(params, self.delta_max, true)?;
        check_lower(params, self.delta_min, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureMethod {
    /// Composite Gauss–Legendre panels; never samples the endpoints.
    #[default]
    GaussLegendre,
    /// Adaptive Simpson with the analytic limit substituted at `φ = π/2`.
    Simpson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureOptions {
    pub method: QuadratureMethod,
    pub rel_tol: f64,
    pub max_evals: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self { method: QuadratureMethod::GaussLegendre, rel_tol: 1e-10, max_evals: 1 << 20 }
    }
}

impl QuadratureOptions {
    pub fn simpson() -> Self {
        Self { method: QuadratureMethod::Simpson, ..Self::default() }
    }
}

fn check_upper(params: &SmibParams, delta_max: f64, allow_zero: bool) -> Result<()> {
    let barrier = params.barrier_deviation();
    let low_ok = if allow_zero { delta_max >= 0.0 } else { delta_max > 0.0 };
    if !(low_ok && delta_max < barrier) {
        return Err(Error::Domain(format!(
            "delta_max = {delta_max} outside (0, {barrier})"
        )));
    }
    Ok(())
}

fn check_lower(params: &SmibParams, delta_min: f64, allow_zero: bool) -> Result<()> {
    let edge = -(PI + 2.0 * params.delta0);
    let high_ok = if allow_zero { delta_min <= 0.0 } else { delta_min < 0.0 };
    if !(high_ok && delta_min > edge) {
        return Err(Error::Domain(format!("delta_min = {delta_min} outside ({edge}, 0)")));
    }
    Ok(())
}

/// Substituted half-cycle integrand for a signed turning point `extreme`,
/// at `φ ∈ [0, π/2]`.
///
/// With `k = sin(extreme/2)`, `s = sin φ` and `x = 2 asin(k s)`, the gap
/// `extreme − x` equals `cos²φ · R(φ)` where
/// `R = 2k·asinc(w)/den`, `den = sqrt(1 − k²s²) + s·sqrt(1 − k²)` and
/// `w = k cos²φ / den`. The potential gap is `(extreme − x)·slope`, so the
/// `cos φ` of the Jacobian cancels and the integrand becomes
/// `2|k| / (sqrt(1 − k²s²) · sqrt(2β R · slope))`.
fn half_cycle_integrand(params: &SmibParams, extreme: f64, phi: f64) -> Result<f64> {
    let phi = phi.abs().min(FRAC_PI_2);
    let k = (0.5 * extreme).sin();
    let (s, c) = phi.sin_cos();
    let ks = k * s;
    let root_ks = (1.0 - ks * ks).sqrt();
    let den = root_ks + s * (1.0 - k * k).sqrt();
    let w = k * c * c / den;
    let ratio = 2.0 * k * asinc(w) / den;
    let x = 2.0 * ks.asin();
    let gap = ratio * c * c;
    let slope = potential_slope(params.delta0, 0.5 * (extreme + x), gap);
    let bracket = ratio * slope;
    if !(bracket > 0.0) {
        return Err(Error::Domain(format!(
            "energy bracket {bracket} is not positive at phi = {phi} for turning point {extreme}"
        )));
    }
    Ok(2.0 * k.abs() / (root_ks * (2.0 * params.beta() * bracket).sqrt()))
}

/// `asin(w)/w`, accurate near zero.
fn asinc(w: f64) -> f64 {
    if w.abs() < 1e-2 {
        let w2 = w * w;
        1.0 + w2 * (1.0 / 6.0 + w2 * (3.0 / 40.0 + w2 * (5.0 / 112.0 + w2 * 35.0 / 1152.0)))
    } else {
        w.asin() / w
    }
}

/// Closed-form value of the half-cycle integrand at `|φ| = π/2`:
/// `2|k| / (cos(Δδ_ep/2) · sqrt(2β · tan(Δδ_ep/2) · (sin(δ0 + Δδ_ep) − sin δ0)))`.
pub fn integrand_endpoint_limit(params: &SmibParams, extreme: f64) -> Result<f64> {
    let half = 0.5 * extreme;
    let force = (params.delta0 + extreme).sin() - params.delta0.sin();
    let radicand = 2.0 * params.beta() * half.tan() * force;
    if !(radicand > 0.0) {
        return Err(Error::Domain(format!(
            "no finite endpoint limit for turning point {extreme}"
        )));
    }
    Ok(2.0 * half.sin().abs() / (half.cos() * radicand.sqrt()))
}

/// Integrand of the upper half period in the substituted variable.
pub fn integrand_upper(params: &SmibParams, delta_max: f64, phi: f64) -> Result<f64> {
    check_upper(params, delta_max, false)?;
    half_cycle_integrand(params, delta_max, phi)
}

/// Integrand of the lower half period, in terms of `|φ|`.
pub fn integrand_lower(params: &SmibParams, delta_min: f64, phi: f64) -> Result<f64> {
    check_lower(params, delta_min, false)?;
    half_cycle_integrand(params, delta_min, phi)
}

fn half_period(params: &SmibParams, extreme: f64, opts: &QuadratureOptions) -> Result<f64> {
    if extreme == 0.0 {
        return Ok(PI / params.natural_angular_frequency());
    }
    let estimate = match opts.method {
        QuadratureMethod::GaussLegendre => integrate_gauss_legendre(
            |phi| half_cycle_integrand(params, extreme, phi),
            0.0,
            FRAC_PI_2,
            opts.rel_tol,
            opts.max_evals,
        )?,
        QuadratureMethod::Simpson => {
            let limit = integrand_endpoint_limit(params, extreme)?;
            integrate_simpson(
                |phi| {
                    if phi >= FRAC_PI_2 {
                        Ok(limit)
                    } else {
                        half_cycle_integrand(params, extreme, phi)
                    }
                },
                0.0,
                FRAC_PI_2,
                opts.rel_tol,
                opts.max_evals,
            )?
        }
    };
    Ok(2.0 * estimate.value)
}

/// Time spent above the equilibrium, `T_u` (s).
pub fn half_period_upper(params: &SmibParams, delta_max: f64) -> Result<f64> {
    half_period_upper_with(params, delta_max, &QuadratureOptions::default())
}

pub fn half_period_upper_with(
    params: &SmibParams,
    delta_max: f64,
    opts: &QuadratureOptions,
) -> Result<f64> {
    check_upper(params, delta_max, true)?;
    half_period(params, delta_max, opts)
}

/// Time spent below the equilibrium, `T_l` (s).
pub fn half_period_lower(params: &SmibParams, delta_min: f64) -> Result<f64> {
    half_period_lower_with(params, delta_min, &QuadratureOptions::default())
}

pub fn half_period_lower_with(
    params: &SmibParams,
    delta_min: f64,
    opts: &QuadratureOptions,
) -> Result<f64> {
    check_lower(params, delta_min, true)?;
    half_period(params, delta_min, opts)
}

/// Oscillation frequency `1 / (T_u + T_l)` (Hz).
pub fn oscillation_frequency(params: &SmibParams, bounds: &OscillationBounds) -> Result<f64> {
    oscillation_frequency_with(params, bounds, &QuadratureOptions::default())
}

pub fn oscillation_frequency_with(
    params: &SmibParams,
    bounds: &OscillationBounds,
    opts: &QuadratureOptions,
) -> Result<f64> {
    bounds.check(params)?;
    if bounds.delta_max == 0.0 && bounds.delta_min == 0.0 {
        return params.natural_frequency();
    }
    let upper = half_period(params, bounds.delta_max, opts)?;
    let lower = half_period(params, bounds.delta_min, opts)?;
    Ok(1.0 / (upper + lower))
}

/// `m(x) = sqrt(cos δ0 − cos(δ0 + x) − x sin δ0)`.
pub(crate) fn energy_root(params: &SmibParams, x: f64) -> Result<f64> {
    let u = potential_shape(params.delta0, x);
    if !(u > 0.0) {
        return Err(Error::Domain(format!("m({x}) has non-positive radicand {u}")));
    }
    Ok(u.sqrt())
}
