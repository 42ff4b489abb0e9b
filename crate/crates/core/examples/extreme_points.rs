//! Turning points of the conservative orbit through a disturbed state, and
//! a check of the energy balance at both ends.

use swingfreq::analytic::{conjugate_extreme, extreme_points};
use swingfreq::model::{SmibParams, SystemState};

pub fn main() -> swingfreq::Result<()> {
    let params = SmibParams::case_study(0.0);
    println!("{:>10} {:>10} {:>10} {:>10} {:>10} {:>12}", "delta(0)", "speed(0)", "delta_max", "delta_min", "OA", "mismatch");
    for (deg, speed) in [(30.0f64, 2.0), (60.0, 2.0), (0.0, 4.0), (-20.0, -1.0), (0.0, 0.0)] {
        let init = SystemState::new(deg.to_radians(), speed);
        let b = extreme_points(&params, init)?;
        println!(
            "{:>10.4} {:>10.4} {:>10.6} {:>10.6} {:>10.6} {:>12.3e}",
            init.delta_dev,
            speed,
            b.delta_max(),
            b.delta_min(),
            b.amplitude(),
            b.energy_mismatch(&params)
        );
    }

    let barrier = params.barrier_deviation();
    println!("\nlargest bounded orbit: delta_max = {barrier:.6}, delta_min = {:.6}", conjugate_extreme(&params, barrier)?);

    match extreme_points(&params, SystemState::new(0.0, 7.0)) {
        Err(e) => println!("speed 7 rad/s from equilibrium: {e}"),
        Ok(b) => println!("speed 7 rad/s unexpectedly bounded: {b:?}"),
    }
    Ok(())
}
