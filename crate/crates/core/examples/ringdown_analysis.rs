//! Measurement path: an irregularly sampled, offset angle record is reduced
//! to per-cycle estimates without knowing the operating point in advance.

use swingfreq::analytic::{fa_curve, FaMethod};
use swingfreq::model::{SmibParams, SystemState};
use swingfreq::ringdown::{
    compare_to_curve, estimate_steady_state, measured_fa_points, MeasuredSeries,
    SteadyStateMethod,
};
use swingfreq::sim::simulate_smib;

pub fn main() -> swingfreq::Result<()> {
    let params = SmibParams::case_study(1.0);
    let traj = simulate_smib(&params, SystemState::new(0.6, 1.0), 1e-4, 20.0)?;
    let delta = traj.column("delta")?;

    // keep an irregular subset of samples and add the absolute operating angle
    let mut times = Vec::new();
    let mut angles = Vec::new();
    let mut i = 0;
    let mut k = 0usize;
    while i < traj.len() {
        times.push(traj.time(i));
        angles.push(params.delta0 + delta[i]);
        i += 40 + 25 * (k % 3);
        k += 1;
    }
    let series = MeasuredSeries::new(times, angles)?;
    println!("{} samples over {:.1} s", series.len(), series.times()[series.len() - 1]);

    let steady = estimate_steady_state(&series, SteadyStateMethod::TrailingCycleMean)?;
    println!("estimated steady state {steady:.5} rad (true {:.5})", params.delta0);

    let points = measured_fa_points(&series, steady);
    let curve = fa_curve(&params, 200, FaMethod::quadrature())?;
    let cmp = compare_to_curve(&points, &curve)?;
    for c in cmp.points.iter().step_by(6) {
        println!(
            "  OA = {:.4}  OF = {:.4}  curve = {:.4}  rel err = {:.2e}  upper = {:+.4}  lower = {:+.4}",
            c.point.oa, c.point.of, c.predicted_f, c.relative_error, c.point.upper, c.point.lower
        );
    }
    if let Some(max) = cmp.max_relative_error {
        println!("max rel err = {max:.3e} over {} points, {} out of range", cmp.points.len(), cmp.out_of_range.len());
    }
    Ok(())
}
