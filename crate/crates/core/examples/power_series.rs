//! Truncated sine-series frequency against the quadrature value.
//!
//! For a symmetric well the series converges quickly. With a nonzero
//! operating angle the upper-half integrand has a singularity inside the
//! unit disc (at the conjugate turning point), so adding terms eventually
//! makes the estimate worse; the tail check reports this.

use swingfreq::analytic::{
    closed_form_frequency_n1, conjugate_extreme, oscillation_frequency, OscillationBounds,
    SeriesApprox,
};
use swingfreq::model::SmibParams;

fn report(label: &str, params: &SmibParams, delta_max: f64) -> swingfreq::Result<()> {
    let bounds = OscillationBounds::new(delta_max, conjugate_extreme(params, delta_max)?)?;
    let exact = oscillation_frequency(params, &bounds)?;
    println!("{label}: delta_max = {delta_max}, quadrature f = {exact:.8} Hz");
    for n in [1, 2, 4, 8, 16] {
        let s = SeriesApprox::new(params, &bounds, n)?;
        println!(
            "  N = {n:>2}  f = {:.8}  rel err = {:.2e}  tail = {:.1e}  converged = {}",
            s.frequency(),
            (s.frequency() / exact - 1.0).abs(),
            s.tail_ratio(),
            s.is_converged()
        );
    }
    println!("  one-term closed form f = {:.8}", closed_form_frequency_n1(params, &bounds)?);
    Ok(())
}

pub fn main() -> swingfreq::Result<()> {
    let symmetric = SmibParams { delta0: 0.0, ..SmibParams::case_study(0.0) };
    report("symmetric well", &symmetric, 0.6)?;
    report("case study", &SmibParams::case_study(0.0), 0.3)?;
    Ok(())
}
