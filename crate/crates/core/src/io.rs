//! CSV formats.
//!
//! Numbers are written in the shortest representation that round-trips to
//! the same `f64`. Metadata goes on `#`-prefixed lines after the data, so
//! plain CSV readers can skip it. Files are always in seconds and radians.

use std::fmt::Write as _;

use crate::analytic::{FaCurve, FaMethod};
use crate::model::SmibParams;
use crate::ringdown::{FaComparison, MeasuredSeries};
use crate::sim::{Column, CyclePoint, Trajectory};
use crate::{Error, Result};

fn num(v: f64) -> String {
    format!("{v}")
}

/// `t,<col1>,<col2>,…`
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from("t");
    for name in traj.column_names() {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for i in 0..traj.len() {
        out.push_str(&num(traj.time(i)));
        for c in traj.columns() {
            out.push(',');
            out.push_str(&num(c.values[i]));
        }
        out.push('\n');
    }
    out
}

/// `t_mid,oa_rad,of_hz`
pub fn cycle_points_csv(points: &[CyclePoint]) -> String {
    let mut out = String::from("t_mid,oa_rad,of_hz\n");
    for p in points {
        let _ = writeln!(out, "{},{},{}", num(p.t_mid), num(p.oa), num(p.of));
    }
    out
}

/// `oa_rad,f_hz` followed by `# oa_limit_rad=<v> method=<m>` and a grid note.
pub fn fa_curve_csv(curve: &FaCurve) -> String {
    let mut out = String::from("oa_rad,f_hz\n");
    for p in &curve.points {
        let _ = writeln!(out, "{},{}", num(p.oa), num(p.frequency));
    }
    let _ = writeln!(out, "# oa_limit_rad={} method={}", num(curve.oa_limit), curve.method);
    let _ = writeln!(out, "# grid=uniform-delta-max dropped={}", curve.dropped);
    out
}

/// `t_mid,oa_rad,of_hz,predicted_f_hz,rel_err`
pub fn comparison_csv(cmp: &FaComparison) -> String {
    let mut out = String::from("t_mid,oa_rad,of_hz,predicted_f_hz,rel_err\n");
    for c in &cmp.points {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            num(c.point.t_mid),
            num(c.point.oa),
            num(c.point.of),
            num(c.predicted_f),
            num(c.relative_error)
        );
    }
    if let (Some(max), Some(mean)) = (cmp.max_relative_error, cmp.mean_relative_error) {
        let _ = writeln!(out, "# max_rel_err={} mean_rel_err={}", num(max), num(mean));
    }
    if !cmp.out_of_range.is_empty() {
        let _ = writeln!(out, "# out_of_range={}", cmp.out_of_range.len());
    }
    out
}

/// `t,delta_eq`
pub fn equivalent_angle_csv(times: &[f64], values: &[f64]) -> String {
    let mut out = String::from("t,delta_eq\n");
    for (t, v) in times.iter().zip(values) {
        let _ = writeln!(out, "{},{}", num(*t), num(*v));
    }
    out
}

/// A numeric CSV table with a header row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub columns: Vec<Vec<f64>>,
    /// `#` comment lines, without the leading `#`.
    pub comments: Vec<String>,
}

impl Table {
    pub fn parse(text: &str) -> Result<Self> {
        let comments = text
            .lines()
            .filter_map(|l| l.trim_start().strip_prefix('#'))
            .map(|l| l.trim().to_string())
            .collect();
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let parse_err = |e: csv::Error| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        };
        let headers: Vec<String> =
            reader.headers().map_err(parse_err)?.iter().map(str::to_string).collect();
        if headers.is_empty() || headers.iter().all(|h| h.is_empty()) {
            return Err(Error::Parse { line: 1, message: "missing header row".into() });
        }
        let mut columns = vec![Vec::new(); headers.len()];
        for record in reader.records() {
            let record = record.map_err(parse_err)?;
            let line = record.position().map_or(0, |p| p.line());
            for (col, field) in columns.iter_mut().zip(record.iter()) {
                let v: f64 = field.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("`{field}` is not a number"),
                })?;
                col.push(v);
            }
        }
        if columns[0].is_empty() {
            return Err(Error::Parse { line: 2, message: "no data rows".into() });
        }
        Ok(Self { headers, columns, comments })
    }

    pub fn column(&self, name: &str) -> Result<&[f64]> {
        self.headers
            .iter()
            .position(|h| h == name)
            .map(|i| self.columns[i].as_slice())
            .ok_or_else(|| Error::UnknownColumn(name.to_string()))
    }

    /// `t` and `delta` columns as a measured series.
    pub fn measured_series(&self, angle_scale: f64) -> Result<MeasuredSeries> {
        let t = self.column("t")?.to_vec();
        let delta = self.column("delta")?.iter().map(|v| v * angle_scale).collect();
        MeasuredSeries::new(t, delta)
    }

    /// Interprets the table as a uniformly sampled trajectory keyed by `t`.
    pub fn trajectory(&self) -> Result<Trajectory> {
        let t = self.column("t")?;
        if t.len() < 2 {
            return Err(Error::InsufficientData("trajectory needs at least 2 samples".into()));
        }
        let dt = t[1] - t[0];
        let uniform = t
            .windows(2)
            .all(|w| ((w[1] - w[0]) - dt).abs() <= 1e-6 * dt.abs());
        if !uniform {
            return Err(Error::InvalidParameter("time column is not uniformly sampled".into()));
        }
        let columns = self
            .headers
            .iter()
            .zip(&self.columns)
            .filter(|(h, _)| h.as_str() != "t")
            .map(|(h, v)| Column { name: h.clone(), values: v.clone() })
            .collect();
        Trajectory::new(t[0], dt, columns)
    }
}

/// Reads an `oa_rad,f_hz` curve, taking `oa_limit_rad` from its metadata.
pub fn read_fa_curve_csv(text: &str, params: SmibParams) -> Result<FaCurve> {
    let table = Table::parse(text)?;
    let oa = table.column("oa_rad")?;
    let f = table.column("f_hz")?;
    let oa_limit = table
        .comments
        .iter()
        .flat_map(|c| c.split_whitespace())
        .find_map(|kv| kv.strip_prefix("oa_limit_rad="))
        .and_then(|v| v.parse().ok())
        .unwrap_or(f64::NAN);
    let method = if table.comments.iter().any(|c| c.contains("method=series")) {
        let n = table
            .comments
            .iter()
            .flat_map(|c| c.split_whitespace())
            .find_map(|kv| kv.strip_prefix("n_terms="))
            .and_then(|v| v.parse().ok())
            .unwrap_or(crate::analytic::DEFAULT_SERIES_TERMS);
        FaMethod::series(n)
    } else {
        FaMethod::quadrature()
    };
    let samples: Vec<(f64, f64)> = oa.iter().copied().zip(f.iter().copied()).collect();
    FaCurve::from_samples(&samples, oa_limit, params, method)
}
