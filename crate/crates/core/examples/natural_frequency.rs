//! Small-signal quantities of the single-machine case study: the
//! acceleration coefficient, the natural frequency, the energy barrier and
//! the initial speed that just reaches it from the equilibrium.

use swingfreq::model::SmibParams;

pub fn main() -> swingfreq::Result<()> {
    let params = SmibParams::case_study(1.0);
    let beta = params.beta();
    let fn_hz = params.natural_frequency()?;
    let barrier = params.barrier_deviation();
    let critical = params.critical_energy();
    let threshold_speed = (params.omega0 * critical / params.h).sqrt();

    println!("H = {} s, omega0 = {:.4} rad/s, Pmax = {}, delta0 = {} rad", params.h, params.omega0, params.pmax, params.delta0);
    println!("beta                  = {beta:.4} rad/s^2");
    println!("natural frequency     = {fn_hz:.6} Hz");
    println!("barrier deviation     = {barrier:.6} rad");
    println!("critical energy       = {critical:.6} pu");
    println!("critical speed at 0   = {threshold_speed:.4} rad/s");

    println!("\nnatural frequency against the operating angle:");
    for deg in [0.0f64, 15.0, 30.0, 45.0, 60.0, 75.0, 89.0] {
        let p = SmibParams { delta0: deg.to_radians(), ..params };
        println!("  delta0 = {deg:>4} deg  f_n = {:.5} Hz", p.natural_frequency()?);
    }
    Ok(())
}
