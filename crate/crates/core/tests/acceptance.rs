//! Acceptance suite. Each test prints one `PASS`/`FAIL` line for its
//! criterion and then asserts it.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use swingfreq::analytic::{
    closed_form_frequency_n1, conjugate_extreme, extreme_points, fa_curve,
    frequency_at_amplitude, oscillation_frequency, oscillation_frequency_with,
    power_series_frequency, FaMethod, OscillationBounds, QuadratureOptions,
};
use swingfreq::model::{SmibParams, SystemState};
use swingfreq::ringdown::compare_to_curve;
use swingfreq::sim::{
    cycle_points, detect_extrema, equivalent_angle, find_extrema, simulate_multimachine,
    simulate_smib, CyclePoint, ExtremumKind, Machine, MachineGroup, MultiMachineCase,
};

fn report(n: u32, title: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {n:>2} {verdict}: {title} ({detail})");
    assert!(pass, "criterion {n} failed: {title} ({detail})");
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn orbit(params: &SmibParams, delta_max: f64) -> OscillationBounds {
    OscillationBounds::new(delta_max, conjugate_extreme(params, delta_max).unwrap()).unwrap()
}

/// Complete elliptic integral of the first kind by the arithmetic-geometric mean.
fn ellip_k(k: f64) -> f64 {
    let (mut a, mut b) = (1.0f64, (1.0 - k * k).sqrt());
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    PI / (2.0 * a)
}

const CASES: [(u32, f64, f64); 3] = [(1, 1.0, 30.0), (2, 1.0, 60.0), (3, 3.0, 60.0)];

fn case_points(d: f64, deg: f64) -> Vec<CyclePoint> {
    let params = SmibParams::case_study(d);
    let init = SystemState::new(deg.to_radians(), 2.0);
    let traj = simulate_smib(&params, init, 1e-4, 10.0).unwrap();
    cycle_points(&detect_extrema(&traj, "delta").unwrap(), 0.0)
}

/// Largest relative gap between the points of `b` and the piecewise-linear
/// interpolation of `a` (sorted by amplitude) over their shared range.
fn cross_case_gap(a: &[CyclePoint], b: &[CyclePoint]) -> (f64, usize) {
    let mut ref_pts: Vec<(f64, f64)> = a.iter().map(|p| (p.oa, p.of)).collect();
    ref_pts.sort_by(|x, y| x.0.total_cmp(&y.0));
    let (lo, hi) = (ref_pts[0].0, ref_pts[ref_pts.len() - 1].0);
    let mut worst = 0.0f64;
    let mut compared = 0;
    for p in b.iter().filter(|p| p.oa >= lo && p.oa <= hi) {
        let idx = ref_pts.partition_point(|q| q.0 < p.oa).clamp(1, ref_pts.len() - 1);
        let (x0, y0) = ref_pts[idx - 1];
        let (x1, y1) = ref_pts[idx];
        let y = if x1 > x0 { y0 + (p.oa - x0) / (x1 - x0) * (y1 - y0) } else { y0 };
        worst = worst.max((p.of - y).abs() / y);
        compared += 1;
    }
    (worst, compared)
}

#[test]
fn criterion_01_fig1_reproduction() {
    let start = Instant::now();
    let curve = fa_curve(&SmibParams::case_study(0.0), 200, FaMethod::quadrature()).unwrap();
    let points: Vec<Vec<CyclePoint>> =
        CASES.iter().map(|&(_, d, deg)| case_points(d, deg)).collect();
    let mut details = Vec::new();
    let mut pass = true;
    for ((case, _, _), pts) in CASES.iter().zip(&points) {
        let cmp = compare_to_curve(pts, &curve).unwrap();
        let max = cmp.max_relative_error.unwrap_or(f64::INFINITY);
        pass &= max < 0.01 && cmp.out_of_range.is_empty();
        details.push(format!("case {case} max {:.2}%", 100.0 * max));
    }
    let (gap_23, n_23) = cross_case_gap(&points[1], &points[2]);
    let (gap_12, n_12) = cross_case_gap(&points[1], &points[0]);
    pass &= gap_23 < 0.01 && gap_12 < 0.01 && n_23 > 0 && n_12 > 0;
    let elapsed = start.elapsed().as_secs_f64();
    pass &= elapsed < 10.0;
    details.push(format!("case 2 vs 3 {:.2}%", 100.0 * gap_23));
    details.push(format!("case 1 vs 2 {:.2}%", 100.0 * gap_12));
    details.push(format!("{elapsed:.2} s"));
    report(1, "per-cycle estimates of cases 1-3 within 1% of the curve", pass, &details.join(", "));
}

#[test]
fn criterion_02_small_signal_anchor() {
    let params = SmibParams::case_study(0.0);
    let formula = (params.beta() * params.delta0.cos()).sqrt() / (2.0 * PI);
    let f = frequency_at_amplitude(&params, 1e-4, FaMethod::quadrature()).unwrap();
    let rel = (f / formula - 1.0).abs();
    report(
        2,
        "OF at OA = 1e-4 rad equals sqrt(beta cos delta0)/(2 pi)",
        rel < 1e-6,
        &format!("f = {f:.7} Hz, formula = {formula:.7} Hz, rel err {rel:.1e}"),
    );
}

#[test]
fn criterion_03_pendulum_oracle() {
    let mut r = rng(3);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let beta: f64 = r.gen_range(0.5..200.0);
        let a: f64 = r.gen_range(0.01..3.0);
        // beta = Pmax * omega0 / (2H) with omega0 = 1, H = 1/2
        let params = SmibParams::new(0.5, 0.0, 1.0, beta, 0.0).unwrap();
        let f = oscillation_frequency(&params, &OscillationBounds::new(a, -a).unwrap()).unwrap();
        let oracle = beta.sqrt() / (4.0 * ellip_k((0.5 * a).sin()));
        worst = worst.max((f / oracle - 1.0).abs());
    }
    report(3, "pendulum frequency matches sqrt(beta)/(4K)", worst < 1e-8, &format!("max rel err {worst:.1e}"));
}

/// Turning point of the energy balance with the acceleration term as
/// `v0²/beta` instead of `v0²/(2 beta)`.
fn printed_form_turning_point(params: &SmibParams, init: SystemState, upper: bool) -> f64 {
    let u = |x: f64| params.delta0.cos() - (params.delta0 + x).cos() - x * params.delta0.sin();
    let level = u(init.delta_dev) + init.speed_dev_rad.powi(2) / params.beta();
    let (mut lo, mut hi) = if upper {
        (0.0, params.barrier_deviation())
    } else {
        (-(PI + 2.0 * params.delta0), 0.0)
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let below = u(mid) < level;
        if upper == below {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn criterion_04_turning_points() {
    let mut worst = 0.0f64;
    let mut printed_best = f64::INFINITY;
    for &(_, _, deg) in &CASES {
        let params = SmibParams::case_study(0.0);
        let init = SystemState::new(deg.to_radians(), 2.0);
        let bounds = extreme_points(&params, init).unwrap();
        let traj = simulate_smib(&params, init, 1e-5, 2.0).unwrap();
        let ext = detect_extrema(&traj, "delta").unwrap();
        let peak = ext.iter().find(|e| e.kind == ExtremumKind::Max).unwrap().value;
        let trough = ext.iter().find(|e| e.kind == ExtremumKind::Min).unwrap().value;
        worst = worst.max((peak - bounds.delta_max()).abs()).max((trough - bounds.delta_min()).abs());
        let p_max = printed_form_turning_point(&params, init, true);
        let p_min = printed_form_turning_point(&params, init, false);
        printed_best = printed_best.min((peak - p_max).abs().max((trough - p_min).abs()));
    }
    let pass = worst < 1e-4 && printed_best > 10.0 * 1e-4;
    report(
        4,
        "turning points match the simulated first peak and trough; printed form does not",
        pass,
        &format!("max err {worst:.1e} rad, printed-form smallest err {printed_best:.3} rad"),
    );
}

#[test]
fn criterion_05_series_convergence() {
    let mut r = rng(5);
    let mut violations = Vec::new();
    let mut worst_identity = 0.0f64;
    for i in 0..10 {
        let params = SmibParams::new(
            r.gen_range(2.0..8.0),
            0.0,
            120.0 * PI,
            r.gen_range(0.8..2.0),
            r.gen_range(0.1..1.0),
        )
        .unwrap();
        let delta_max = r.gen_range(0.1..0.5) * params.barrier_deviation();
        let bounds = orbit(&params, delta_max);
        let exact = oscillation_frequency(&params, &bounds).unwrap();
        let errors: Vec<f64> = [1, 2, 4, 8]
            .iter()
            .map(|&n| (power_series_frequency(&params, &bounds, n).unwrap() - exact).abs())
            .collect();
        if errors.windows(2).any(|w| w[1] > w[0]) {
            violations.push(format!(
                "#{i} errors {:.1e}/{:.1e}/{:.1e}/{:.1e}",
                errors[0], errors[1], errors[2], errors[3]
            ));
        }
        let n1 = power_series_frequency(&params, &bounds, 1).unwrap();
        let closed = closed_form_frequency_n1(&params, &bounds).unwrap();
        worst_identity = worst_identity.max((n1 / closed - 1.0).abs());
    }
    let pass = violations.is_empty() && worst_identity < 1e-12;
    let detail = format!(
        "{} of 10 configurations not monotone{}; N=1 vs closed form {worst_identity:.1e}",
        violations.len(),
        violations.first().map(|v| format!(", e.g. {v}")).unwrap_or_default()
    );
    report(5, "series error non-increasing over N = 1, 2, 4, 8", pass, &detail);
}

#[test]
fn criterion_06_stability_limit() {
    let params = SmibParams::case_study(0.0);
    let curve = fa_curve(&params, 200, FaMethod::quadrature()).unwrap();
    let fn_hz = params.natural_frequency().unwrap();
    let barrier = params.barrier_deviation();
    let f_near = oscillation_frequency(&params, &orbit(&params, barrier * (1.0 - 1e-3))).unwrap();
    let approach: Vec<f64> = [1e-2, 1e-3, 1e-4, 1e-5]
        .iter()
        .map(|&eps| oscillation_frequency(&params, &orbit(&params, barrier * (1.0 - eps))).unwrap())
        .collect();
    let trending = approach.windows(2).all(|w| w[1] < w[0]);
    let limit_ok = (curve.oa_limit - 1.182).abs() <= 0.005;
    let below = f_near < 0.25 * fn_hz;
    report(
        6,
        "oa_limit = 1.182 +- 0.005 and OF near the barrier below 0.25 f_n, trending to zero",
        limit_ok && below && trending,
        &format!(
            "oa_limit {:.4} rad, f/f_n at (1-1e-3) barrier {:.4}, f/f_n at (1-1e-5) barrier {:.4}",
            curve.oa_limit,
            f_near / fn_hz,
            approach[3] / fn_hz
        ),
    );
}

#[test]
fn criterion_07_energy_conservation() {
    let params = SmibParams::case_study(0.0);
    let traj = simulate_smib(&params, SystemState::new(60f64.to_radians(), 2.0), 1e-4, 10.0).unwrap();
    let delta = traj.column("delta").unwrap();
    let speed = traj.column("speed").unwrap();
    let e0 = params.total_energy(SystemState::new(delta[0], speed[0]));
    let smib_drift = delta
        .iter()
        .zip(speed)
        .map(|(&d, &v)| (params.total_energy(SystemState::new(d, v)) - e0).abs())
        .fold(0.0, f64::max);

    let machine = |h: f64, delta: f64, speed: f64| Machine { h, d: 0.0, e: 1.0, delta_init: delta, speed_init: speed };
    let case = MultiMachineCase::new(
        vec![machine(6.5, 0.5, 2.0), machine(6.175, 0.3, -1.0), machine(5.0, 0.0, 0.4)],
        vec![vec![0.1, 0.0, 0.0], vec![0.0, 0.05, 0.0], vec![0.0, 0.0, 0.02]],
        vec![vec![0.0, 1.5, 1.0], vec![1.5, 0.0, 1.2], vec![1.0, 1.2, 0.0]],
        120.0 * PI,
    )
    .unwrap();
    let mm = simulate_multimachine(&case, 1e-4, 10.0).unwrap();
    let cols: Vec<&[f64]> = ["delta_1", "delta_2", "delta_3", "speed_1", "speed_2", "speed_3"]
        .iter()
        .map(|c| mm.column(c).unwrap())
        .collect();
    let energy = |i: usize| {
        let a: Vec<f64> = (0..3).map(|k| cols[k][i]).collect();
        let v: Vec<f64> = (3..6).map(|k| cols[k][i]).collect();
        case.energy(&a, &v).unwrap()
    };
    let m0 = energy(0);
    let mm_drift = (0..mm.len()).map(|i| (energy(i) - m0).abs()).fold(0.0, f64::max);
    report(
        7,
        "zero-damping energy drift below 1e-8 over 10 s",
        smib_drift < 1e-8 && mm_drift < 1e-8,
        &format!("single machine {smib_drift:.1e}, multi-machine {mm_drift:.1e}"),
    );
}

#[test]
fn criterion_08_two_machine_equivalence() {
    let (h1, h2, b, omega0, theta0) = (6.5, 4.0, 1.6, 120.0 * PI, 0.6);
    let equivalent = SmibParams::new(h1 * h2 / (h1 + h2), 0.0, omega0, b, theta0).unwrap();
    let curve = fa_curve(&equivalent, 200, FaMethod::quadrature()).unwrap();
    let mut worst = 0.0f64;
    let mut amplitudes = Vec::new();
    for relative_speed in [1.0, 3.0, 5.0] {
        let v1 = relative_speed * h2 / (h1 + h2);
        let v2 = v1 - relative_speed;
        let case = MultiMachineCase::new(
            vec![
                Machine { h: h1, d: 0.0, e: 1.0, delta_init: theta0 + 0.2, speed_init: v1 },
                Machine { h: h2, d: 0.0, e: 1.0, delta_init: 0.2, speed_init: v2 },
            ],
            vec![vec![0.0; 2]; 2],
            vec![vec![0.0, b], vec![b, 0.0]],
            omega0,
        )
        .unwrap();
        let traj = simulate_multimachine(&case, 1e-4, 8.0).unwrap();
        let a = MachineGroup::new([("delta_1", h1)]).unwrap();
        let g = MachineGroup::new([("delta_2", h2)]).unwrap();
        let angle = equivalent_angle(&traj, &a, &g).unwrap();
        let points = cycle_points(&find_extrema(&traj.times(), &angle), theta0);
        let cmp = compare_to_curve(&points, &curve).unwrap();
        worst = worst.max(cmp.max_relative_error.unwrap_or(f64::INFINITY));
        amplitudes.push(format!("{:.3}", points[0].oa));
    }
    report(
        8,
        "two-machine cycle frequencies match the equivalent single-machine curve within 0.5%",
        worst < 0.005,
        &format!("OA {} rad, max rel err {worst:.1e}", amplitudes.join("/")),
    );
}

#[test]
fn criterion_09_quadrature_robustness() {
    let mut r = rng(9);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let params = SmibParams::new(
            r.gen_range(1.0..10.0),
            0.0,
            r.gen_range(100.0..400.0),
            r.gen_range(0.5..3.0),
            r.gen_range(0.0..1.3),
        )
        .unwrap();
        let delta_max = r.gen_range(0.01..0.99) * params.barrier_deviation();
        let bounds = orbit(&params, delta_max);
        let gl = oscillation_frequency_with(&params, &bounds, &QuadratureOptions::default()).unwrap();
        let simpson = oscillation_frequency_with(&params, &bounds, &QuadratureOptions::simpson()).unwrap();
        worst = worst.max((gl / simpson - 1.0).abs());
    }
    report(9, "Simpson and Gauss-Legendre agree to 1e-9", worst < 1e-9, &format!("max rel diff {worst:.1e}"));
}

fn cli(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_swingfreq")).args(args).output().unwrap();
    (out.stdout, out.status.code().unwrap())
}

#[test]
fn criterion_10_determinism_and_speed() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("traj.csv");
    let machines = dir.path().join("machines.csv");
    let traj_s = traj.to_str().unwrap();
    cli(&["simulate", "--case", "2", "--out", traj_s]);
    let mut text = String::from("t,delta_1,delta_2,delta_3,delta_4\n");
    for i in 0..200 {
        let t = i as f64 * 0.01;
        text.push_str(&format!("{t},{},{},{},{}\n", (3.0 * t).sin(), 0.5 * t, t.cos(), 0.1));
    }
    std::fs::write(&machines, text).unwrap();
    let machines_s = machines.to_str().unwrap();

    let commands: Vec<Vec<&str>> = vec![
        vec!["natural-freq"],
        vec!["extremes", "--case", "2"],
        vec!["frequency", "--case", "3"],
        vec!["fa-curve"],
        vec!["fa-curve", "--method", "series"],
        vec!["simulate", "--case", "1"],
        vec!["analyze", "--input", traj_s],
        vec!["aggregate", "--input", machines_s, "--group-a", "delta_1:6.5,delta_2:6.5", "--group-b", "delta_3:6.175,delta_4:6.175"],
    ];
    let mut unstable = Vec::new();
    for args in &commands {
        let (first, code) = cli(args);
        let (second, _) = cli(args);
        if code != 0 || first.is_empty() || first != second {
            unstable.push(args[0]);
        }
    }

    let params = SmibParams::case_study(1.0);
    let start = Instant::now();
    let curve = fa_curve(&params, 200, FaMethod::quadrature()).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let pass = unstable.is_empty() && curve.points.len() == 200 && elapsed < 1.0;
    report(
        10,
        "repeated CLI runs are byte-identical; 200-point curve in under 1 s",
        pass,
        &format!("{} commands, nondeterministic or failing: {:?}, curve {:.3} s", commands.len(), unstable, elapsed),
    );
}
