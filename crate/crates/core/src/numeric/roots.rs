//! Bracketed scalar root finding.

use crate::{Error, Result};

/// Finds a root of `f` in `[lo, hi]` by bisection down to a bracket of width
/// `xtol`, then polishes with up to `polish` Newton steps using `df`.
///
/// Newton steps that leave the final bracket or fail to reduce `|f|` are
/// discarded.
pub fn bisect_newton<F, D>(f: F, df: D, lo: f64, hi: f64, xtol: f64, polish: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Convergence(format!(
            "no sign change on [{a}, {b}] (f = {fa}, {fb})"
        )));
    }
    let mut iterations = 0;
    while b - a > xtol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        iterations += 1;
        if iterations > 2000 {
            return Err(Error::Convergence("bisection did not terminate".into()));
        }
    }

    let mut x = 0.5 * (a + b);
    let mut fx = f(x);
    for _ in 0..polish {
        let d = df(x);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let next = x - fx / d;
        if !(a..=b).contains(&next) {
            break;
        }
        let fnext = f(next);
        if fnext.abs() >= fx.abs() {
            break;
        }
        x = next;
        fx = fnext;
    }
    Ok(x)
}
