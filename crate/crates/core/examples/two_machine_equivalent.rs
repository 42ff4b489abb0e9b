//! Two machines against each other behave like one machine against an
//! infinite bus with inertia H1·H2/(H1+H2). The inertia-weighted angle
//! difference of the two groups is compared with that equivalent's curve.

use swingfreq::analytic::{fa_curve, FaMethod};
use swingfreq::model::SmibParams;
use swingfreq::ringdown::compare_to_curve;
use swingfreq::sim::{
    cycle_points, equivalent_angle, find_extrema, simulate_multimachine, Machine, MachineGroup,
    MultiMachineCase,
};

pub fn main() -> swingfreq::Result<()> {
    let (h1, h2, b, omega0) = (6.5, 6.175, 1.8, 120.0 * std::f64::consts::PI);
    let theta0 = 0.5;
    let equivalent = SmibParams::new(h1 * h2 / (h1 + h2), 0.0, omega0, b, theta0)?;
    let curve = fa_curve(&equivalent, 200, FaMethod::quadrature())?;
    println!("equivalent: H = {:.4} s, Pmax = {b}, delta0 = {theta0}, f_n = {:.5} Hz", equivalent.h, equivalent.natural_frequency()?);

    for speed in [0.5, 1.5, 2.5] {
        let machines = vec![
            Machine { h: h1, d: 0.0, e: 1.0, delta_init: theta0, speed_init: speed },
            Machine { h: h2, d: 0.0, e: 1.0, delta_init: 0.0, speed_init: -speed * h1 / h2 },
        ];
        let case = MultiMachineCase::new(
            machines,
            vec![vec![0.0; 2]; 2],
            vec![vec![0.0, b], vec![b, 0.0]],
            omega0,
        )?;
        let traj = simulate_multimachine(&case, 1e-4, 8.0)?;
        let area_a = MachineGroup::new([("delta_1", h1)])?;
        let area_b = MachineGroup::new([("delta_2", h2)])?;
        let angle = equivalent_angle(&traj, &area_a, &area_b)?;
        let points = cycle_points(&find_extrema(&traj.times(), &angle), theta0);
        let cmp = compare_to_curve(&points, &curve)?;
        let p = &cmp.points[0];
        println!(
            "relative speed {:.3} rad/s: OA = {:.4}  OF = {:.5}  equivalent curve = {:.5}  max rel err = {:.2e}",
            speed * (1.0 + h1 / h2),
            p.point.oa,
            p.point.of,
            p.predicted_f,
            cmp.max_relative_error.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
