//! Power-series approximation of the half-period integrals.
//!
//! Each substituted integrand is expanded in `s = sin φ` about zero and
//! integrated term by term with the Wallis integrals
//! `W_i = ∫₀^{π/2} sin^i φ dφ`. Keeping only the first term gives a closed
//! form in `m(x) = sqrt(cos δ0 − cos(δ0 + x) − x sin δ0)`.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use super::{energy_root, OscillationBounds};
use crate::model::{potential_shape, SmibParams};
use crate::numeric::taylor::Series;
use crate::{Error, Result};

pub const DEFAULT_SERIES_TERMS: usize = 8;

/// Relative size of the last retained term above which the series is
/// reported as not converged.
const TAIL_TOLERANCE: f64 = 1e-6;

/// `W_0 … W_{n-1}` by the recurrence `W_i = W_{i−2}·(i − 1)/i`.
pub fn wallis(n: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        let v = match i {
            0 => FRAC_PI_2,
            1 => 1.0,
            _ => w[i - 2] * (i as f64 - 1.0) / i as f64,
        };
        w.push(v);
    }
    w
}

/// Taylor coefficients in `s` of the integrand for turning point `extreme`.
///
/// `s` is the signed `sin φ` of the original substitution: positive on the
/// upper half, negative on the lower one.
fn integrand_series(params: &SmibParams, extreme: f64, n: usize) -> Series {
    if extreme == 0.0 {
        return Series::constant(1.0 / params.natural_angular_frequency(), n);
    }
    let (sin0, cos0) = params.delta0.sin_cos();
    let k = (0.5 * extreme).sin().abs();
    let ks = Series::linear(0.0, k, n);
    let x = ks.asin().scale(2.0);
    let (sx, cx) = x.sin_cos();
    // U(a) − U(x) = U(a) + cos δ0 (cos x − 1) − sin δ0 sin x + x sin δ0
    let varying = &(&cx.add_constant(-1.0).scale(cos0) - &sx.scale(sin0)) + &x.scale(sin0);
    let bracket = varying.add_constant(potential_shape(params.delta0, extreme));

    let mut one_minus_s2 = vec![0.0; n];
    one_minus_s2[0] = 1.0;
    if n > 2 {
        one_minus_s2[2] = -1.0;
    }
    let cos_phi = Series::from_coeffs(one_minus_s2).powf(0.5);
    let jacobian = (&Series::constant(1.0, n) - &(&ks * &ks)).powf(-0.5);
    let g = bracket.scale(2.0 * params.beta()).powf(-0.5);
    (&(&cos_phi * &jacobian) * &g).scale(2.0 * k)
}

/// Truncated series for both half periods of one orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesApprox {
    n_terms: usize,
    coefficients_upper: Vec<f64>,
    coefficients_lower: Vec<f64>,
    terms: Vec<f64>,
}

impl SeriesApprox {
    pub fn new(params: &SmibParams, bounds: &OscillationBounds, n_terms: usize) -> Result<Self> {
        if n_terms == 0 {
            return Err(Error::InvalidParameter("series needs at least one term".into()));
        }
        bounds.check(params)?;
        let upper = integrand_series(params, bounds.delta_max(), n_terms).into_coeffs();
        let lower = integrand_series(params, bounds.delta_min(), n_terms).into_coeffs();
        let w = wallis(n_terms);
        // the lower half runs over negative s, hence (−1)^i
        let terms = (0..n_terms)
            .map(|i| {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                2.0 * (upper[i] + sign * lower[i]) * w[i]
            })
            .collect();
        Ok(Self { n_terms, coefficients_upper: upper, coefficients_lower: lower, terms })
    }

    pub fn n_terms(&self) -> usize {
        self.n_terms
    }

    pub fn coefficients_upper(&self) -> &[f64] {
        &self.coefficients_upper
    }

    pub fn coefficients_lower(&self) -> &[f64] {
        &self.coefficients_lower
    }

    /// Contribution of each retained order to the period (s).
    pub fn period_terms(&self) -> &[f64] {
        &self.terms
    }

    pub fn period(&self) -> f64 {
        self.terms.iter().sum()
    }

    pub fn frequency(&self) -> f64 {
        1.0 / self.period()
    }

    /// Largest of the last two retained terms relative to the partial sum.
    ///
    /// Two terms are inspected because odd orders vanish for a symmetric well.
    pub fn tail_ratio(&self) -> f64 {
        let tail = self.terms.iter().rev().take(2).fold(0.0f64, |m, t| m.max(t.abs()));
        tail / self.period().abs()
    }

    pub fn is_converged(&self) -> bool {
        self.n_terms == 1 || self.tail_ratio() <= TAIL_TOLERANCE
    }
}

/// Oscillation frequency from the first `n_terms` orders of the series (Hz).
///
/// Logs a warning when the tail of the retained terms is still above `1e-6`
/// of the partial sum.
pub fn power_series_frequency(
    params: &SmibParams,
    bounds: &OscillationBounds,
    n_terms: usize,
) -> Result<f64> {
    let approx = SeriesApprox::new(params, bounds, n_terms)?;
    if !approx.is_converged() {
        log::warn!(
            "power series with {} terms may not have converged (tail ratio {:.3e}, amplitude {})",
            n_terms,
            approx.tail_ratio(),
            bounds.amplitude()
        );
    }
    Ok(approx.frequency())
}

/// One-term approximation
/// `sqrt(β)/(√2 π) · [sin(Δδ_max/2)/m(Δδ_max) + sin(−Δδ_min/2)/m(Δδ_min)]⁻¹`.
pub fn closed_form_frequency_n1(params: &SmibParams, bounds: &OscillationBounds) -> Result<f64> {
    bounds.check(params)?;
    if bounds.delta_max() == 0.0 && bounds.delta_min() == 0.0 {
        return params.natural_frequency();
    }
    let ratio = |x: f64| -> Result<f64> {
        if x == 0.0 {
            // limit of sin(|x|/2)/m(x) as x → 0
            Ok(1.0 / (2.0 * params.delta0.cos()).sqrt())
        } else {
            Ok((0.5 * x).sin().abs() / energy_root(params, x)?)
        }
    };
    let sum = ratio(bounds.delta_max())? + ratio(bounds.delta_min())?;
    Ok(params.beta().sqrt() / (SQRT_2 * PI) / sum)
}

#[cfg(test)]
mod tests {
    use super::super::{conjugate_extreme, oscillation_frequency};
    use super::*;

    fn case() -> SmibParams {
        SmibParams::case_study(0.0)
    }

    fn orbit(p: &SmibParams, a: f64) -> OscillationBounds {
        OscillationBounds::new(a, conjugate_extreme(p, a).unwrap()).unwrap()
    }

    #[test]
    fn wallis_values() {
        let w = wallis(6);
        assert_eq!(w[0], FRAC_PI_2);
        assert_eq!(w[1], 1.0);
        assert!((w[2] - PI / 4.0).abs() < 1e-15);
        assert!((w[3] - 2.0 / 3.0).abs() < 1e-15);
        assert!((w[4] - 3.0 * PI / 16.0).abs() < 1e-15);
    }

    #[test]
    fn leading_coefficients_are_integrand_at_zero() {
        let p = case();
        let b = orbit(&p, 0.6);
        let s = SeriesApprox::new(&p, &b, 5).unwrap();
        let up = super::super::integrand_upper(&p, b.delta_max(), 0.0).unwrap();
        let lo = super::super::integrand_lower(&p, b.delta_min(), 0.0).unwrap();
        assert!((s.coefficients_upper()[0] / up - 1.0).abs() < 1e-14);
        assert!((s.coefficients_lower()[0] / lo - 1.0).abs() < 1e-14);
        assert_eq!(s.coefficients_upper().len(), 5);
        assert_eq!(s.coefficients_lower().len(), 5);
    }

    #[test]
    fn series_reproduces_integrand_values() {
        // the Taylor polynomial must approach the integrand for small s
        let p = case();
        let b = orbit(&p, 0.4);
        let s = SeriesApprox::new(&p, &b, 12).unwrap();
        let poly = Series::from_coeffs(s.coefficients_upper().to_vec());
        for &phi in &[0.05f64, 0.1, 0.2] {
            let exact = super::super::integrand_upper(&p, b.delta_max(), phi).unwrap();
            assert!((poly.eval(phi.sin()) / exact - 1.0).abs() < 1e-9, "phi = {phi}");
        }
        let poly = Series::from_coeffs(s.coefficients_lower().to_vec());
        for &phi in &[0.05f64, 0.1, 0.2] {
            let exact = super::super::integrand_lower(&p, b.delta_min(), phi).unwrap();
            assert!((poly.eval(-phi.sin()) / exact - 1.0).abs() < 1e-9, "phi = {phi}");
        }
    }

    #[test]
    fn n1_equals_closed_form() {
        let p = case();
        for &a in &[1e-3, 0.3, 0.9, 1.4] {
            let b = orbit(&p, a);
            let series = power_series_frequency(&p, &b, 1).unwrap();
            let closed = closed_form_frequency_n1(&p, &b).unwrap();
            assert!((series / closed - 1.0).abs() < 1e-12, "a = {a}");
        }
    }

    #[test]
    fn truncated_sums_match_high_precision_oracle() {
        // 40-digit Taylor coefficients of the same integrands, delta_max = 0.3
        let p = case();
        let b = orbit(&p, 0.3);
        for &(n, expected) in &[
            (1, 1.1932571400003378),
            (4, 1.1862650344936643),
            (8, 1.1880642060084266),
            (16, 1.192043747234987),
        ] {
            let f = power_series_frequency(&p, &b, n).unwrap();
            assert!((f / expected - 1.0).abs() < 1e-11, "n = {n}: {f}");
        }
        let quad = oscillation_frequency(&p, &b).unwrap();
        assert!((quad / 1.1833454220308705 - 1.0).abs() < 1e-11);
    }

    #[test]
    fn asymmetric_well_series_is_not_convergent() {
        let p = case();
        let b = orbit(&p, 0.3);
        let s = SeriesApprox::new(&p, &b, 24).unwrap();
        assert!(!s.is_converged());
        let sym = SmibParams::new(3.0, 0.0, 120.0 * PI, 1.3, 0.0).unwrap();
        let b = orbit(&sym, 0.3);
        assert!(SeriesApprox::new(&sym, &b, 24).unwrap().is_converged());
        let quad = oscillation_frequency(&sym, &b).unwrap();
        let series = power_series_frequency(&sym, &b, 8).unwrap();
        assert!((series / quad - 1.0).abs() < 1e-4);
    }

    #[test]
    fn small_bounds_recover_natural_frequency() {
        let p = case();
        let fnat = p.natural_frequency().unwrap();
        let b = orbit(&p, 1e-5);
        for n in [1, 2, 5, 8] {
            let f = power_series_frequency(&p, &b, n).unwrap();
            assert!((f / fnat - 1.0).abs() < 1e-8, "n = {n}");
        }
        let tiny = OscillationBounds::new(1e-4, -1e-4).unwrap();
        let f = closed_form_frequency_n1(&p, &tiny).unwrap();
        assert!((f / fnat - 1.0).abs() < 1e-6);
    }

    #[test]
    fn closed_form_pendulum_is_rough() {
        // one term drops the k² sin²φ dependence entirely: T = 2π/sqrt(β)
        let p = SmibParams::new(0.5, 0.0, 1.0, 1.0, 0.0).unwrap();
        let b = OscillationBounds::new(FRAC_PI_2, -FRAC_PI_2).unwrap();
        let f = closed_form_frequency_n1(&p, &b).unwrap();
        assert!((f - 1.0 / (2.0 * PI)).abs() < 1e-14);
        let off = f / 0.134839 - 1.0;
        assert!(off > 0.15 && off < 0.2, "{off}");
    }

    #[test]
    fn zero_terms_rejected() {
        let p = case();
        assert!(power_series_frequency(&p, &orbit(&p, 0.3), 0).is_err());
    }

    #[test]
    fn degenerate_bounds() {
        let p = case();
        let fnat = p.natural_frequency().unwrap();
        let zero = OscillationBounds::zero();
        assert_eq!(closed_form_frequency_n1(&p, &zero).unwrap(), fnat);
        assert!((power_series_frequency(&p, &zero, 4).unwrap() / fnat - 1.0).abs() < 1e-14);
    }
}
