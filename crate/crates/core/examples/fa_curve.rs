//! Frequency-amplitude curve of the case study, with the head of its CSV form.

use swingfreq::analytic::{fa_curve, FaMethod};
use swingfreq::io::fa_curve_csv;
use swingfreq::model::SmibParams;

pub fn main() -> swingfreq::Result<()> {
    let params = SmibParams::case_study(0.0);
    let fn_hz = params.natural_frequency()?;
    let curve = fa_curve(&params, 200, FaMethod::quadrature())?;

    println!("{:>10} {:>10} {:>10} {:>10}", "OA (rad)", "f (Hz)", "f/f_n", "delta_max");
    let n = curve.points.len();
    for i in (0..n).step_by(20).chain(std::iter::once(n - 1)) {
        let p = &curve.points[i];
        println!("{:>10.5} {:>10.5} {:>10.5} {:>10.5}", p.oa, p.frequency, p.frequency / fn_hz, p.delta_max);
    }
    println!("stability limit OA = {:.5} rad", curve.oa_limit);

    println!();
    for line in fa_curve_csv(&curve).lines().take(3) {
        println!("{line}");
    }
    Ok(())
}
