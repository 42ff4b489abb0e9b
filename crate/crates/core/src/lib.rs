//! Amplitude-dependent oscillation frequency of a single-machine-infinite-bus
//! (SMIB) swing system.
//!
//! Under a large disturbance the electromechanical oscillation of a
//! generator is not harmonic: its frequency falls as the swing grows, and
//! reaches zero when the orbit grazes the potential barrier. This crate
//! computes that frequency analytically from the energy integral of the
//! swing equation and validates it against direct simulation.
//!
//! - [`model`]: machine parameters, energies, small-signal frequency.
//! - [`analytic`]: half-period integrals, oscillation frequency, turning
//!   points, the power-series approximation and Frequency-Amplitude curves.
//! - [`sim`]: fixed-step RK4 simulation of SMIB and classical multi-machine
//!   systems, extremum detection and per-cycle frequency extraction.
//! - [`ringdown`]: the same per-cycle extraction for measured angle series,
//!   and comparison against an analytic curve.
//! - [`io`]: the CSV formats shared with the `swingfreq` binary.
//!
//! ```
//! use swingfreq::analytic::{extreme_points, oscillation_frequency};
//! use swingfreq::model::{SmibParams, SystemState};
//!
//! let params = SmibParams::new(3.0, 0.0, 120.0 * std::f64::consts::PI, 1.3, 0.8).unwrap();
//! let bounds = extreme_points(&params, SystemState::new(30f64.to_radians(), 2.0)).unwrap();
//! let f = oscillation_frequency(&params, &bounds).unwrap();
//! assert!(f < params.natural_frequency().unwrap());
//! ```

pub mod analytic;
pub mod cli;
mod error;
pub mod io;
pub mod model;
pub mod numeric;
pub mod ringdown;
pub mod sim;

pub use error::{Error, Result};
