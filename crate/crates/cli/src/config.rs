//! Flags, JSON config files and their resolution into a validated run.
//!
//! A config file is a flat JSON object whose keys are the long flag names
//! without the leading dashes (`"K"`, `"theta-count"`, `"N-list"`). Flags
//! given on the command line override the file.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Subcommand};
use nic_core::geometry::LayerConfig;
use nic_core::{Geometry, Scheme};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    /// Plane wave e^{ikx} on [a, ∞) in one dimension.
    #[command(allow_negative_numbers = true)]
    Oned,
    /// Single Hankel mode H_m(kr) outside r = R0.
    #[command(allow_negative_numbers = true)]
    Mode2d,
    /// Plane wave scattered by a sound-soft circle of radius R0.
    #[command(allow_negative_numbers = true)]
    Scatter,
    /// Local wavenumbers of the compactified and transformed relations.
    #[command(allow_negative_numbers = true)]
    Dispersion,
    /// Plane wave continued through PML, PAL and null infinity layers.
    #[command(allow_negative_numbers = true)]
    Layerdemo,
    /// Errors and observed orders over a list of resolutions.
    #[command(allow_negative_numbers = true)]
    Converge,
    /// Boost conditions for every map and height.
    #[command(allow_negative_numbers = true)]
    Checkgeom,
}

/// Comma-separated resolutions; a JSON array is accepted in config files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NList(pub Vec<usize>);

impl FromStr for NList {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad resolution `{t}` in N list")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(NList)
    }
}

impl<'de> Deserialize<'de> for NList {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            List(Vec<usize>),
        }
        match Raw::deserialize(d)? {
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::List(v) => Ok(NList(v)),
        }
    }
}

/// Every option, all optional; shared by flags and config files.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Wavenumber.
    #[arg(long = "k", global = true)]
    #[serde(rename = "k", skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    /// Speed of the hyperboloidal height h = g - ρ/K.
    #[arg(long = "K", global = true)]
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub speed: Option<f64>,
    /// Discretization: fd2, cheb or cheb2 (two-domain, layer only).
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme: Option<String>,
    /// Number of intervals (per side for cheb2).
    #[arg(long = "N", global = true)]
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
    /// Output directory.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    /// nic (whole exterior) or nil (outer layer).
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<String>,
    /// Scatterer radius, also the inner radius of mode2d.
    #[arg(long = "R0", global = true)]
    #[serde(rename = "R0", skip_serializing_if = "Option::is_none")]
    pub r0: Option<f64>,
    /// Layer interface radius.
    #[arg(long = "R", global = true)]
    #[serde(rename = "R", skip_serializing_if = "Option::is_none")]
    pub interface: Option<f64>,
    /// Layer outer edge (null infinity).
    #[arg(long = "S", global = true)]
    #[serde(rename = "S", skip_serializing_if = "Option::is_none")]
    pub outer: Option<f64>,
    /// Layer exponent.
    #[arg(long = "n", global = true)]
    #[serde(rename = "n", skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u32>,
    /// Highest scattering mode; overrides the truncation rule.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modes: Option<u32>,
    /// Uniform angles in field outputs.
    #[arg(long = "theta-count", global = true)]
    #[serde(rename = "theta-count", skip_serializing_if = "Option::is_none")]
    pub theta_count: Option<usize>,
    /// Resolutions for converge, e.g. 64,128,256.
    #[arg(long = "N-list", global = true)]
    #[serde(rename = "N-list", skip_serializing_if = "Option::is_none")]
    pub n_list: Option<NList>,
    /// Sample count for dispersion and layerdemo.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Left end of the 1D domain.
    #[arg(long = "a", global = true)]
    #[serde(rename = "a", skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    /// Azimuthal mode of mode2d.
    #[arg(long = "m", global = true, allow_hyphen_values = true)]
    #[serde(rename = "m", skip_serializing_if = "Option::is_none")]
    pub m: Option<i32>,
    /// PML and PAL damping strength.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    /// Problem for converge: oned, mode2d or scatter.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<String>,
    /// Use h = g + R in the layer demo, which removes the phase entirely.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shifted: Option<bool>,
}

impl Options {
    /// Config file values overridden by `self`.
    pub fn merged_with_file(&self, path: Option<&Path>) -> Result<Options> {
        let Some(path) = path else {
            return Ok(self.clone());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read config {}: {e}", path.display())))?;
        let mut map: Map<String, Value> = serde_json::from_str(&text)
            .map_err(|e| CliError::validation(format!("config {} is not a JSON object: {e}", path.display())))?;
        let Value::Object(flags) = serde_json::to_value(self)? else {
            unreachable!("options serialize to an object");
        };
        map.extend(flags);
        serde_json::from_value(Value::Object(map))
            .map_err(|e| CliError::validation(format!("config {}: {e}", path.display())))
    }
}

/// Fully resolved and validated parameters of one run.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub k: f64,
    #[serde(rename = "K")]
    pub speed: f64,
    pub scheme: Scheme,
    #[serde(rename = "N")]
    pub resolution: usize,
    pub out: PathBuf,
    pub geometry: String,
    #[serde(rename = "R0")]
    pub r0: f64,
    #[serde(rename = "R")]
    pub interface: f64,
    #[serde(rename = "S")]
    pub outer: f64,
    #[serde(rename = "n")]
    pub exponent: u32,
    pub modes: Option<u32>,
    #[serde(rename = "theta-count")]
    pub theta_count: usize,
    #[serde(rename = "N-list")]
    pub n_list: Vec<usize>,
    pub samples: usize,
    pub a: f64,
    pub m: i32,
    pub sigma: f64,
    pub problem: Experiment,
    pub shifted: bool,
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::validation(format!("{name} must be positive and finite, got {v}")))
    }
}

fn default_resolution(experiment: Experiment, scheme: Scheme) -> usize {
    match (experiment, scheme) {
        (_, Scheme::Fd2) => 512,
        (Experiment::Oned, _) => 64,
        (Experiment::Mode2d, _) => 128,
        _ => 160,
    }
}

fn default_n_list(scheme: Scheme) -> Vec<usize> {
    match scheme {
        Scheme::Fd2 => vec![64, 128, 256, 512],
        _ => vec![16, 24, 32, 48, 64],
    }
}

impl RunConfig {
    pub fn resolve(experiment: Experiment, o: Options) -> Result<Self> {
        let k = positive("k", o.k.unwrap_or(40.0))?;
        let speed = positive("K", o.speed.unwrap_or(1.0))?;
        let scheme = match o.scheme.as_deref() {
            None => Scheme::Chebyshev,
            Some(s) => s.parse().map_err(|_| CliError::validation(format!("unknown scheme `{s}`; use fd2, cheb or cheb2")))?,
        };
        let geometry = o.geometry.unwrap_or_else(|| "nic".into());
        if geometry != "nic" && geometry != "nil" {
            return Err(CliError::validation(format!("unknown geometry `{geometry}`; use nic or nil")));
        }
        let problem = match o.problem.as_deref() {
            None | Some("oned") => Experiment::Oned,
            Some("mode2d") => Experiment::Mode2d,
            Some("scatter") => Experiment::Scatter,
            Some(p) => return Err(CliError::validation(format!("unknown problem `{p}`; use oned, mode2d or scatter"))),
        };
        let resolution = o.resolution.unwrap_or_else(|| default_resolution(experiment, scheme));
        let n_list = o.n_list.map(|l| l.0).unwrap_or_else(|| default_n_list(scheme));
        if experiment == Experiment::Converge && n_list.len() < 2 {
            return Err(CliError::validation("N-list needs at least two resolutions"));
        }
        let theta_count = o.theta_count.unwrap_or(128);
        if theta_count == 0 {
            return Err(CliError::validation("theta-count must be positive"));
        }
        let samples = o.samples.unwrap_or(101);
        if samples < 2 {
            return Err(CliError::validation("samples must be at least 2"));
        }
        let config = RunConfig {
            experiment,
            k,
            speed,
            scheme,
            resolution,
            out: o.out.unwrap_or_else(|| PathBuf::from("out")),
            geometry,
            r0: positive("R0", o.r0.unwrap_or(1.0))?,
            interface: positive("R", o.interface.unwrap_or(2.0))?,
            outer: positive("S", o.outer.unwrap_or(2.2))?,
            exponent: o.exponent.unwrap_or(2),
            modes: o.modes,
            theta_count,
            n_list,
            samples,
            a: positive("a", o.a.unwrap_or(1.0))?,
            m: o.m.unwrap_or(20),
            sigma: positive("sigma", o.sigma.unwrap_or(nic_core::reference::DEFAULT_SIGMA))?,
            problem,
            shifted: o.shifted.unwrap_or(false),
        };
        if config.geometry == "nil" || experiment == Experiment::Layerdemo {
            LayerConfig::new(config.interface, config.outer, config.exponent)?;
        }
        Ok(config)
    }

    pub fn geometry(&self) -> Result<Geometry> {
        Ok(match self.geometry.as_str() {
            "nil" => Geometry::Nil {
                layer: LayerConfig::new(self.interface, self.outer, self.exponent)?,
                speed: self.speed,
            },
            _ => Geometry::nic(self.speed),
        })
    }
}
