//! Run configuration: defaults, key=value config files, and flag overrides.
//!
//! Flags win over the config file. The key=value format round-trips
//! losslessly through [`RunConfig::to_kv`] / [`RunConfig::parse_kv`].

use std::fmt::Write as _;

use dskg::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn as_str(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    Bump,
    GaussianTrunc,
}

impl ProfileKind {
    fn as_str(self) -> &'static str {
        match self {
            ProfileKind::Bump => "bump",
            ProfileKind::GaussianTrunc => "gaussian_trunc",
        }
    }
}

/// Everything a run needs; fully deterministic (no seeds anywhere).
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n: u32,
    pub mass: f64,
    /// Sweep masses for the tail experiment.
    pub masses: Vec<f64>,
    pub profile: ProfileKind,
    pub radius: f64,
    pub power: u32,
    /// Gaussian width parameter (gaussian_trunc only).
    pub alpha: f64,
    pub rmax: f64,
    pub rsteps: usize,
    pub tmin: f64,
    pub tmax: f64,
    pub tsteps: usize,
    pub format: Format,
    pub first_datum_only: bool,
    pub margin: f64,
    pub order: usize,
    /// Sample radius for the expansion experiment.
    pub xoff: f64,
    /// Oracle grid spacing for the compare experiment.
    pub dr: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 3,
            mass: 2f64.sqrt(),
            masses: Vec::new(),
            profile: ProfileKind::Bump,
            radius: 0.5,
            power: 8,
            alpha: 8.0,
            rmax: 1.0,
            rsteps: 20,
            tmin: 0.1,
            tmax: 4.0,
            tsteps: 40,
            format: Format::Csv,
            first_datum_only: false,
            margin: 0.1,
            order: 2,
            xoff: 0.8,
            dr: 4e-3,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.radius >= 1.0 {
            return Err(Error::Config(format!(
                "profile radius {} must be strictly below 1 (the data must sit inside the unit horizon)",
                self.radius
            )));
        }
        if self.radius <= 0.0 {
            return Err(Error::Config("profile radius must be positive".into()));
        }
        if self.tsteps == 0 || self.rsteps == 0 {
            return Err(Error::Config("grid step counts must be positive".into()));
        }
        if self.tmax <= self.tmin {
            return Err(Error::Config("tmax must exceed tmin".into()));
        }
        Ok(())
    }

    /// Serialize as key=value lines.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let masses =
            self.masses.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "mass = {}", self.mass);
        let _ = writeln!(s, "masses = {masses}");
        let _ = writeln!(s, "profile = {}", self.profile.as_str());
        let _ = writeln!(s, "radius = {}", self.radius);
        let _ = writeln!(s, "power = {}", self.power);
        let _ = writeln!(s, "alpha = {}", self.alpha);
        let _ = writeln!(s, "rmax = {}", self.rmax);
        let _ = writeln!(s, "rsteps = {}", self.rsteps);
        let _ = writeln!(s, "tmin = {}", self.tmin);
        let _ = writeln!(s, "tmax = {}", self.tmax);
        let _ = writeln!(s, "tsteps = {}", self.tsteps);
        let _ = writeln!(s, "format = {}", self.format.as_str());
        let _ = writeln!(s, "first_datum_only = {}", self.first_datum_only);
        let _ = writeln!(s, "margin = {}", self.margin);
        let _ = writeln!(s, "order = {}", self.order);
        let _ = writeln!(s, "xoff = {}", self.xoff);
        let _ = writeln!(s, "dr = {}", self.dr);
        s
    }

    /// Apply key=value lines on top of `self`.
    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "config line {}: expected key = value, got {raw:?}",
                    lineno + 1
                )));
            };
            self.set(key.trim(), value.trim()).map_err(|e| {
                Error::Config(format!("config line {}: {e}", lineno + 1))
            })?;
        }
        Ok(())
    }

    #[cfg(test)]
    pub fn parse_kv(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        cfg.apply_kv(text)?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::Config(format!("bad {what} value {value:?}"));
        match key {
            "n" => self.n = value.parse().map_err(|_| bad("n"))?,
            "mass" => self.mass = value.parse().map_err(|_| bad("mass"))?,
            "masses" => {
                self.masses = if value.is_empty() {
                    Vec::new()
                } else {
                    value
                        .split(',')
                        .map(|v| v.trim().parse().map_err(|_| bad("masses")))
                        .collect::<Result<_>>()?
                };
            }
            "profile" => {
                self.profile = match value {
                    "bump" => ProfileKind::Bump,
                    "gaussian_trunc" => ProfileKind::GaussianTrunc,
                    _ => return Err(bad("profile (bump|gaussian_trunc)")),
                };
            }
            "radius" => self.radius = value.parse().map_err(|_| bad("radius"))?,
            "power" => self.power = value.parse().map_err(|_| bad("power"))?,
            "alpha" => self.alpha = value.parse().map_err(|_| bad("alpha"))?,
            "rmax" => self.rmax = value.parse().map_err(|_| bad("rmax"))?,
            "rsteps" => self.rsteps = value.parse().map_err(|_| bad("rsteps"))?,
            "tmin" => self.tmin = value.parse().map_err(|_| bad("tmin"))?,
            "tmax" => self.tmax = value.parse().map_err(|_| bad("tmax"))?,
            "tsteps" => self.tsteps = value.parse().map_err(|_| bad("tsteps"))?,
            "format" => {
                self.format = match value {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => return Err(bad("format (csv|json)")),
                };
            }
            "first_datum_only" => {
                self.first_datum_only = value.parse().map_err(|_| bad("first_datum_only"))?
            }
            "margin" => self.margin = value.parse().map_err(|_| bad("margin"))?,
            "order" => self.order = value.parse().map_err(|_| bad("order"))?,
            "xoff" => self.xoff = value.parse().map_err(|_| bad("xoff"))?,
            "dr" => self.dr = value.parse().map_err(|_| bad("dr"))?,
            _ => return Err(Error::Config(format!("unknown config key {key:?}"))),
        }
        Ok(())
    }

    pub fn build_profile(&self) -> Result<dskg::RadialProfile> {
        match self.profile {
            ProfileKind::Bump => dskg::RadialProfile::bump(self.radius, self.power),
            ProfileKind::GaussianTrunc => {
                dskg::RadialProfile::truncated_gaussian(self.radius, self.alpha)
            }
        }
    }
}
