//! Run configuration: a JSON document whose every field defaults to the
//! single-machine case study, overridable from the command line.

use std::f64::consts::PI;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::analytic::{FaMethod, DEFAULT_SERIES_TERMS};
use crate::model::{SmibParams, SystemState};
use crate::sim::DEFAULT_STEP;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemConfig {
    pub h: f64,
    pub d: f64,
    pub omega0: f64,
    pub pmax: f64,
    pub delta0: f64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self { h: 3.0, d: 1.0, omega0: 120.0 * PI, pmax: 1.3, delta0: 0.8 }
    }
}

/// Initial disturbance; exactly one of `delta_deg` and `delta_rad` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_deg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_rad: Option<f64>,
    #[serde(default = "default_ddelta")]
    pub ddelta_rad_s: f64,
}

fn default_ddelta() -> f64 {
    2.0
}

impl Default for InitConfig {
    fn default() -> Self {
        Self { delta_deg: Some(30.0), delta_rad: None, ddelta_rad_s: default_ddelta() }
    }
}

impl InitConfig {
    pub fn delta_rad(&self) -> Result<f64> {
        match (self.delta_deg, self.delta_rad) {
            (Some(deg), None) => Ok(deg.to_radians()),
            (None, Some(rad)) => Ok(rad),
            (Some(_), Some(_)) => {
                Err(Error::InvalidParameter("init: give only one of delta_deg and delta_rad".into()))
            }
            (None, None) => {
                Err(Error::InvalidParameter("init: one of delta_deg and delta_rad is required".into()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub dt: f64,
    pub t_end: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self { dt: DEFAULT_STEP, t_end: 10.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MethodName {
    #[default]
    Quadrature,
    Series,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FaConfig {
    pub n_points: usize,
    pub method: MethodName,
    pub n_terms: usize,
}

impl Default for FaConfig {
    fn default() -> Self {
        Self { n_points: 200, method: MethodName::Quadrature, n_terms: DEFAULT_SERIES_TERMS }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IoConfig {
    pub out: Option<PathBuf>,
    pub cycles_out: Option<PathBuf>,
    pub svg: bool,
    pub degrees: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemConfig,
    pub init: InitConfig,
    pub sim: SimConfig,
    pub fa: FaConfig,
    pub io: IoConfig,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::InvalidParameter(format!("config line {}: {e}", e.line()))
        })
    }

    /// Damping and initial state of one of the three single-machine cases.
    pub fn apply_case(&mut self, case: u8) -> Result<()> {
        let (d, deg) = match case {
            1 => (1.0, 30.0),
            2 => (1.0, 60.0),
            3 => (3.0, 60.0),
            other => {
                return Err(Error::InvalidParameter(format!("unknown case {other}, expected 1, 2 or 3")))
            }
        };
        self.system.d = d;
        self.init = InitConfig { delta_deg: Some(deg), delta_rad: None, ddelta_rad_s: 2.0 };
        Ok(())
    }

    pub fn params(&self) -> Result<SmibParams> {
        let s = &self.system;
        SmibParams::new(s.h, s.d, s.omega0, s.pmax, s.delta0)
    }

    pub fn initial_state(&self) -> Result<SystemState> {
        let delta = self.init.delta_rad()?;
        let speed = self.init.ddelta_rad_s;
        if !delta.is_finite() || !speed.is_finite() {
            return Err(Error::InvalidParameter("initial state must be finite".into()));
        }
        Ok(SystemState::new(delta, speed))
    }

    pub fn method(&self) -> Result<FaMethod> {
        match self.fa.method {
            MethodName::Quadrature => Ok(FaMethod::quadrature()),
            MethodName::Series if self.fa.n_terms == 0 => {
                Err(Error::InvalidParameter("n_terms must be at least 1".into()))
            }
            MethodName::Series => Ok(FaMethod::series(self.fa.n_terms)),
        }
    }

    /// Converts a user-facing angle into radians.
    pub fn angle_in(&self, v: f64) -> f64 {
        if self.io.degrees {
            v.to_radians()
        } else {
            v
        }
    }

    /// Converts radians into the user-facing angle unit.
    pub fn angle_out(&self, v: f64) -> f64 {
        if self.io.degrees {
            v.to_degrees()
        } else {
            v
        }
    }

    pub fn angle_unit(&self) -> &'static str {
        if self.io.degrees {
            "deg"
        } else {
            "rad"
        }
    }
}
