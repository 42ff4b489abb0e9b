//! The `swingfreq` command line.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 domain or
//! stability error, 3 I/O or parse error.

mod config;
mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use config::{FaConfig, InitConfig, IoConfig, MethodName, RunConfig, SimConfig, SystemConfig};
pub use svg::line_chart;

use crate::analytic::{
    extreme_points, fa_curve, frequency_at_amplitude, FaCurve, OscillationBounds,
};
use crate::io::{
    comparison_csv, cycle_points_csv, equivalent_angle_csv, fa_curve_csv, read_fa_curve_csv,
    trajectory_csv, Table,
};
use crate::ringdown::{compare_to_curve, estimate_steady_state, measured_fa_points, SteadyStateMethod};
use crate::sim::{cycle_points, detect_extrema, equivalent_angle, simulate_smib, MachineGroup};
use crate::{Error, Result};

/// Environment variable that caps the worker thread count.
pub const THREADS_ENV: &str = "SWINGFREQ_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "swingfreq",
    version,
    about = "Large-disturbance oscillation frequency of a single-machine power system"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Overrides,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Small-signal natural frequency (Hz).
    NaturalFreq,
    /// Turning points and amplitude of the conservative orbit through the initial state.
    Extremes,
    /// Oscillation frequency (Hz) for the initial state, or for a given amplitude.
    Frequency {
        /// Oscillation amplitude instead of the initial state.
        #[arg(long, allow_negative_numbers = true)]
        oa: Option<f64>,
    },
    /// Frequency-amplitude curve as CSV, optionally with an SVG chart.
    FaCurve,
    /// Time-domain simulation with per-cycle estimates.
    Simulate,
    /// Per-cycle estimates of a measured `t,delta` series compared against the curve.
    Analyze(AnalyzeArgs),
    /// Inertia-weighted angle difference between two machine groups.
    Aggregate(AggregateArgs),
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// CSV with columns `t` (s) and `delta`.
    #[arg(long)]
    input: PathBuf,
    /// Previously written F-A curve; computed from the system parameters if absent.
    #[arg(long)]
    curve: Option<PathBuf>,
    /// Known steady-state angle; estimated from the trailing cycle if absent.
    #[arg(long, allow_negative_numbers = true)]
    steady_state: Option<f64>,
}

#[derive(Debug, Args)]
struct AggregateArgs {
    /// CSV with a `t` column and one angle column per machine.
    #[arg(long)]
    input: PathBuf,
    /// First group as `column:H,column:H,...`.
    #[arg(long)]
    group_a: String,
    /// Second group as `column:H,column:H,...`.
    #[arg(long)]
    group_b: String,
}

#[derive(Debug, Default, Args)]
struct Overrides {
    /// JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Canned single-machine case (sets D and the initial state).
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(1..=3))]
    case: Option<u8>,
    /// Inertia constant H (s).
    #[arg(long, global = true)]
    h: Option<f64>,
    /// Damping factor D.
    #[arg(long, global = true)]
    d: Option<f64>,
    /// Synchronous frequency (rad/s).
    #[arg(long, global = true)]
    omega0: Option<f64>,
    /// Maximum power transfer (per-unit).
    #[arg(long, global = true)]
    pmax: Option<f64>,
    /// Steady-state angle (rad, or degrees with --degrees).
    #[arg(long, global = true)]
    delta0: Option<f64>,
    /// Initial angle deviation in degrees.
    #[arg(long, global = true, allow_negative_numbers = true, conflicts_with = "delta_rad")]
    delta_deg: Option<f64>,
    /// Initial angle deviation in radians.
    #[arg(long, global = true, allow_negative_numbers = true)]
    delta_rad: Option<f64>,
    /// Initial angle rate (rad/s).
    #[arg(long, global = true, allow_negative_numbers = true)]
    ddelta: Option<f64>,
    /// Integration step (s).
    #[arg(long, global = true)]
    dt: Option<f64>,
    /// Simulated duration (s).
    #[arg(long, global = true)]
    t_end: Option<f64>,
    /// Number of F-A curve points.
    #[arg(long, global = true)]
    n_points: Option<usize>,
    /// Frequency evaluation method.
    #[arg(long, global = true, value_enum)]
    method: Option<MethodName>,
    /// Number of series terms for `--method series`.
    #[arg(long, global = true)]
    n_terms: Option<usize>,
    /// Main output file (stdout if absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Per-cycle CSV output of `simulate`.
    #[arg(long, global = true)]
    cycles_out: Option<PathBuf>,
    /// Also write an SVG chart next to `--out`.
    #[arg(long, global = true)]
    svg: bool,
    /// Angles on the command line, in printed results and in input CSVs are degrees.
    #[arg(long, global = true)]
    degrees: bool,
}

impl Overrides {
    fn apply(&self, cfg: &mut RunConfig) -> Result<()> {
        if let Some(case) = self.case {
            cfg.apply_case(case)?;
        }
        if self.degrees {
            cfg.io.degrees = true;
        }
        let s = &mut cfg.system;
        for (slot, value) in [
            (&mut s.h, self.h),
            (&mut s.d, self.d),
            (&mut s.omega0, self.omega0),
            (&mut s.pmax, self.pmax),
        ] {
            if let Some(v) = value {
                *slot = v;
            }
        }
        if let Some(v) = self.delta0 {
            cfg.system.delta0 = cfg.angle_in(v);
        }
        if let Some(v) = self.delta_deg {
            cfg.init.delta_deg = Some(v);
            cfg.init.delta_rad = None;
        }
        if let Some(v) = self.delta_rad {
            cfg.init.delta_rad = Some(v);
            cfg.init.delta_deg = None;
        }
        if let Some(v) = self.ddelta {
            cfg.init.ddelta_rad_s = v;
        }
        if let Some(v) = self.dt {
            cfg.sim.dt = v;
        }
        if let Some(v) = self.t_end {
            cfg.sim.t_end = v;
        }
        if let Some(v) = self.n_points {
            cfg.fa.n_points = v;
        }
        if let Some(v) = self.method {
            cfg.fa.method = v;
        }
        if let Some(v) = self.n_terms {
            cfg.fa.n_terms = v;
        }
        if let Some(v) = &self.out {
            cfg.io.out = Some(v.clone());
        }
        if let Some(v) = &self.cycles_out {
            cfg.io.cycles_out = Some(v.clone());
        }
        if self.svg {
            cfg.io.svg = true;
        }
        Ok(())
    }
}

/// Maps a library error onto the process exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_) | Error::UnknownColumn(_) | Error::InvalidGroup(_) => 1,
        Error::Domain(_)
        | Error::Unstable { .. }
        | Error::Convergence(_)
        | Error::Divergence { .. }
        | Error::InsufficientData(_) => 2,
        Error::Parse { .. } | Error::Io(_) => 3,
    }
}

/// `v` with six significant digits.
pub fn six_significant(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v:.5}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let text = format!("{v:.decimals$}");
    // rounding may carry into a new leading digit, e.g. 9.999995 -> 10.00000
    let digits = text.chars().filter(char::is_ascii_digit).collect::<String>();
    let significant = digits.trim_start_matches('0').len();
    if significant > 6 && decimals > 0 {
        format!("{v:.prec$}", prec = decimals - 1)
    } else {
        text
    }
}

fn read_input(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn check_output(path: &Path) -> Result<()> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if !parent.is_dir() {
        return Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("output directory {} does not exist", parent.display()),
        )));
    }
    if path.is_dir() {
        return Err(Error::Io(std::io::Error::other(
            format!("output path {} is a directory", path.display()),
        )));
    }
    Ok(())
}

/// Writes `text` to `path` through a temporary file in the same directory.
fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn svg_path(out: &Path) -> PathBuf {
    out.with_extension("svg")
}

struct Outputs {
    files: Vec<(PathBuf, String)>,
    stdout: String,
}

impl Outputs {
    fn new() -> Self {
        Self { files: Vec::new(), stdout: String::new() }
    }

    fn to(&mut self, path: Option<&PathBuf>, text: String) {
        match path {
            Some(p) => self.files.push((p.clone(), text)),
            None => self.stdout.push_str(&text),
        }
    }
}

fn build_config(opts: &Overrides) -> Result<RunConfig> {
    let mut cfg = match &opts.config {
        Some(path) => RunConfig::from_json(&read_input(path)?)?,
        None => RunConfig::default(),
    };
    opts.apply(&mut cfg)?;
    Ok(cfg)
}

fn initial_bounds(cfg: &RunConfig) -> Result<OscillationBounds> {
    let params = cfg.params()?;
    extreme_points(&params, cfg.initial_state()?)
}

fn curve_for(cfg: &RunConfig) -> Result<FaCurve> {
    fa_curve(&cfg.params()?, cfg.fa.n_points, cfg.method()?)
}

fn parse_group(text: &str) -> Result<MachineGroup> {
    let members = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (name, h) = item.split_once(':').ok_or_else(|| {
                Error::InvalidGroup(format!("`{item}` is not of the form column:H"))
            })?;
            let h: f64 = h.trim().parse().map_err(|_| {
                Error::InvalidGroup(format!("inertia `{}` of `{}` is not a number", h.trim(), name.trim()))
            })?;
            Ok((name.trim().to_string(), h))
        })
        .collect::<Result<Vec<_>>>()?;
    MachineGroup::new(members)
}

fn execute(command: &Command, cfg: &RunConfig) -> Result<Outputs> {
    let mut out = Outputs::new();
    let io = &cfg.io;
    for path in io.out.iter().chain(io.cycles_out.iter()) {
        check_output(path)?;
    }
    if io.svg && io.out.is_none() {
        return Err(Error::InvalidParameter("--svg needs --out".into()));
    }
    match command {
        Command::NaturalFreq => {
            let f = cfg.params()?.natural_frequency()?;
            out.to(io.out.as_ref(), format!("{}\n", six_significant(f)));
        }
        Command::Extremes => {
            let b = initial_bounds(cfg)?;
            let unit = cfg.angle_unit();
            let text = format!(
                "delta_max_{unit}={}\ndelta_min_{unit}={}\noa_{unit}={}\n",
                six_significant(cfg.angle_out(b.delta_max())),
                six_significant(cfg.angle_out(b.delta_min())),
                six_significant(cfg.angle_out(b.amplitude())),
            );
            out.to(io.out.as_ref(), text);
        }
        Command::Frequency { oa } => {
            let params = cfg.params()?;
            let method = cfg.method()?;
            let f = match oa {
                Some(oa) => frequency_at_amplitude(&params, cfg.angle_in(*oa), method)?,
                None => method.frequency(&params, &initial_bounds(cfg)?)?,
            };
            out.to(io.out.as_ref(), format!("{}\n", six_significant(f)));
        }
        Command::FaCurve => {
            let curve = curve_for(cfg)?;
            if let (true, Some(path)) = (io.svg, io.out.as_ref()) {
                let pts: Vec<(f64, f64)> =
                    curve.points.iter().map(|p| (cfg.angle_out(p.oa), p.frequency)).collect();
                let x_label = format!("oscillation amplitude ({})", cfg.angle_unit());
                out.files.push((svg_path(path), line_chart(&pts, &x_label, "frequency (Hz)")));
            }
            out.to(io.out.as_ref(), fa_curve_csv(&curve));
        }
        Command::Simulate => {
            let params = cfg.params()?;
            let init = cfg.initial_state()?;
            if init.delta_dev == 0.0 && init.speed_dev_rad == 0.0 {
                log::warn!("initial state is the equilibrium; there is nothing to oscillate");
            }
            let traj = simulate_smib(&params, init, cfg.sim.dt, cfg.sim.t_end)?;
            let extrema = detect_extrema(&traj, "delta")?;
            if extrema.len() < 2 {
                log::warn!("fewer than two extrema in the simulated window; no cycle estimates");
            }
            let cycles = cycle_points(&extrema, 0.0);
            if let Some(path) = &io.out {
                out.files.push((path.clone(), trajectory_csv(&traj)));
            }
            out.to(io.cycles_out.as_ref(), cycle_points_csv(&cycles));
        }
        Command::Analyze(args) => {
            let table = Table::parse(&read_input(&args.input)?)?;
            let curve_text = args.curve.as_deref().map(read_input).transpose()?;
            let scale = cfg.angle_in(1.0);
            let series = table.measured_series(scale)?;
            let method = match args.steady_state {
                Some(v) => SteadyStateMethod::Supplied(cfg.angle_in(v)),
                None => SteadyStateMethod::TrailingCycleMean,
            };
            let steady = estimate_steady_state(&series, method)?;
            let points = measured_fa_points(&series, steady);
            if points.is_empty() {
                log::warn!("fewer than two extrema in the input; nothing to compare");
            }
            let curve = match curve_text {
                Some(text) => read_fa_curve_csv(&text, cfg.params()?)?,
                None => curve_for(cfg)?,
            };
            let cmp = compare_to_curve(&points, &curve)?;
            if cmp.is_empty() && !points.is_empty() {
                log::warn!("every measured point lies outside the curve's amplitude range");
            }
            out.to(io.out.as_ref(), comparison_csv(&cmp));
        }
        Command::Aggregate(args) => {
            let group_a = parse_group(&args.group_a)?;
            let group_b = parse_group(&args.group_b)?;
            let mut table = Table::parse(&read_input(&args.input)?)?;
            if cfg.io.degrees {
                for (name, col) in table.headers.iter().zip(table.columns.iter_mut()) {
                    if name != "t" {
                        col.iter_mut().for_each(|v| *v = v.to_radians());
                    }
                }
            }
            let traj = table.trajectory()?;
            let eq = equivalent_angle(&traj, &group_a, &group_b)?;
            out.to(io.out.as_ref(), equivalent_angle_csv(&traj.times(), &eq));
        }
    }
    Ok(out)
}

fn configure_threads() {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return;
    };
    match value.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                log::debug!("thread pool already configured: {e}");
            }
        }
        _ => log::warn!("ignoring {THREADS_ENV}={value}: expected a positive integer"),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Regular output goes to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    configure_threads();
    let result = build_config(&cli.opts).and_then(|cfg| {
        let outputs = execute(&cli.command, &cfg)?;
        for (path, text) in &outputs.files {
            write_atomic(path, text)?;
        }
        stdout.write_all(outputs.stdout.as_bytes())?;
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "swingfreq: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point of the `swingfreq` binary.
pub fn main() -> i32 {
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .try_init();
    run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}
