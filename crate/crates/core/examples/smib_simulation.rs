//! The three single-machine cases: simulate, extract one (OA, OF) estimate
//! per pair of adjacent extrema and compare against the analytical curve.

use swingfreq::analytic::{fa_curve, FaMethod};
use swingfreq::model::{SmibParams, SystemState};
use swingfreq::ringdown::compare_to_curve;
use swingfreq::sim::{cycle_points, detect_extrema, simulate_smib};

pub fn main() -> swingfreq::Result<()> {
    let curve = fa_curve(&SmibParams::case_study(0.0), 200, FaMethod::quadrature())?;
    for (case, d, deg) in [(1, 1.0, 30.0f64), (2, 1.0, 60.0), (3, 3.0, 60.0)] {
        let params = SmibParams::case_study(d);
        let traj = simulate_smib(&params, SystemState::new(deg.to_radians(), 2.0), 1e-4, 10.0)?;
        let points = cycle_points(&detect_extrema(&traj, "delta")?, 0.0);
        let cmp = compare_to_curve(&points, &curve)?;
        println!("case {case}: D = {d}, delta(0) = {deg} deg, {} cycle estimates", points.len());
        for c in cmp.points.iter().take(4) {
            println!(
                "  t = {:>6.3} s  OA = {:.4}  OF = {:.4}  curve = {:.4}  rel err = {:.2e}",
                c.point.t_mid, c.point.oa, c.point.of, c.predicted_f, c.relative_error
            );
        }
        if let (Some(max), Some(mean)) = (cmp.max_relative_error, cmp.mean_relative_error) {
            println!("  max rel err = {max:.3e}, mean rel err = {mean:.3e}");
        }
    }
    Ok(())
}
