//! Adaptive quadrature on a finite interval.
//!
//! Two rules: composite Gauss–Legendre with panel halving (never samples the
//! interval endpoints) and adaptive Simpson with Richardson extrapolation.

use std::f64::consts::PI;

use crate::{Error, Result};

/// Points per Gauss–Legendre panel.
const GL_ORDER: usize = 10;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
///
/// Roots of `P_n` are found by Newton iteration from the Chebyshev-like
/// initial guess; nodes are returned in increasing order.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: f64,
    /// Sum of the per-panel error estimates.
    pub error: f64,
    pub evaluations: usize,
}

struct GlRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GlRule {
    fn new() -> Self {
        let (nodes, weights) = gauss_legendre(GL_ORDER);
        Self { nodes, weights }
    }

    fn panel<F>(&self, f: &mut F, a: f64, b: f64) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(mid + half * x)?;
        }
        Ok(sum * half)
    }
}

/// Integrates `f` over `[a, b]` with composite Gauss–Legendre panels.
///
/// A panel is accepted when its one-panel and two-half-panel estimates agree
/// within its share of `rel_tol · |I|`; otherwise both halves are refined.
/// Fails if the total number of integrand evaluations would exceed
/// `max_evals`.
pub fn integrate_gauss_legendre<F>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_evals: usize,
) -> Result<QuadEstimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    let rule = GlRule::new();
    let width = b - a;
    let mut evals = 0usize;
    let whole = rule.panel(&mut f, a, b)?;
    evals += GL_ORDER;

    // (lo, hi, coarse estimate)
    let mut stack = vec![(a, b, whole)];
    let mut value = 0.0;
    let mut error = 0.0;
    let mut scale = whole.abs();
    while let Some((lo, hi, coarse)) = stack.pop() {
        if evals + 2 * GL_ORDER > max_evals {
            return Err(Error::Convergence(format!(
                "Gauss-Legendre refinement exceeded {max_evals} evaluations"
            )));
        }
        let mid = 0.5 * (lo + hi);
        let left = rule.panel(&mut f, lo, mid)?;
        let right = rule.panel(&mut f, mid, hi)?;
        evals += 2 * GL_ORDER;
        let fine = left + right;
        scale = scale.max(fine.abs());
        let diff = (fine - coarse).abs();
        let share = (hi - lo) / width;
        if diff <= rel_tol * scale * share || hi - lo <= width * 1e-14 {
            value += fine;
            error += diff;
        } else {
            stack.push((mid, hi, right));
            stack.push((lo, mid, left));
        }
    }
    Ok(QuadEstimate { value, error, evaluations: evals })
}

/// Integrates `f` over `[a, b]` with adaptive Simpson's rule.
///
/// Both endpoints are sampled, so `f` must be finite on the closed interval.
pub fn integrate_simpson<F>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_evals: usize,
) -> Result<QuadEstimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let mut evals = 3usize;
    let width = b - a;
    let whole = simpson(a, b, fa, fm, fb);

    let mut scale = whole.abs();
    let mut stack = vec![(a, b, fa, fm, fb, whole)];
    let mut value = 0.0;
    let mut error = 0.0;
    while let Some((lo, hi, flo, fmid, fhi, coarse)) = stack.pop() {
        if evals + 2 > max_evals {
            return Err(Error::Convergence(format!(
                "Simpson refinement exceeded {max_evals} evaluations"
            )));
        }
        let mid = 0.5 * (lo + hi);
        let lm = 0.5 * (lo + mid);
        let rm = 0.5 * (mid + hi);
        let flm = f(lm)?;
        let frm = f(rm)?;
        evals += 2;
        let left = simpson(lo, mid, flo, flm, fmid);
        let right = simpson(mid, hi, fmid, frm, fhi);
        let fine = left + right;
        scale = scale.max(fine.abs());
        let diff = fine - coarse;
        let share = (hi - lo) / width;
        // Richardson: the error of `fine` is about diff/15.
        if diff.abs() <= 15.0 * rel_tol * scale * share || hi - lo <= width * 1e-14 {
            value += fine + diff / 15.0;
            error += diff.abs() / 15.0;
        } else {
            stack.push((mid, hi, fmid, frm, fhi, right));
            stack.push((lo, mid, flo, flm, fmid, left));
        }
    }
    Ok(QuadEstimate { value, error, evaluations: evals })
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}
