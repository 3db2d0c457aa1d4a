//! Flat key=value sweep configuration with command-line overrides.

use anyhow::{anyhow, bail, Result};
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ifo {
    Su11,
    Mzi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Parity,
    Homodyne,
    Intensity,
    Qcrb,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Parity => "parity",
            Scheme::Homodyne => "homodyne",
            Scheme::Intensity => "intensity",
            Scheme::Qcrb => "qcrb",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coupling {
    /// α range is swept as given.
    Independent,
    /// α is derived from (g, r) by the optimal-coupling rule; the α range is ignored.
    OptimalAlpha,
}

#[derive(Debug, Clone, Copy)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Range {
    pub fn fixed(v: f64) -> Self {
        Range {
            start: v,
            stop: v,
            count: 1,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        (0..self.count)
            .map(|k| self.start + (self.stop - self.start) * (k as f64) / ((self.count - 1) as f64))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub interferometer: Ifo,
    pub scheme: Scheme,
    pub g: Range,
    pub r: Range,
    pub alpha: Range,
    pub phi: Range,
    pub coupling: Coupling,
    pub out: PathBuf,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            interferometer: Ifo::Su11,
            scheme: Scheme::Parity,
            g: Range::fixed(1.0),
            r: Range::fixed(0.0),
            alpha: Range::fixed(0.0),
            phi: Range::fixed(0.0),
            coupling: Coupling::Independent,
            out: PathBuf::from("sweep.csv"),
        }
    }
}

impl SweepConfig {
    /// Parse a config file; `line` in errors is 1-based.
    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| anyhow!("cannot read {}: {e}", path.display()))?;
        let mut cfg = SweepConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let stripped = raw.split('#').next().unwrap_or("").trim();
            if stripped.is_empty() {
                continue;
            }
            let (key, value) = stripped.split_once('=').ok_or_else(|| {
                anyhow!("{}:{line}: expected key=value, got `{raw}`", path.display())
            })?;
            cfg.apply(key.trim(), value.trim())
                .map_err(|e| anyhow!("{}:{line}: {e}", path.display()))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Apply `key=value` overrides in order; the last occurrence wins.
    pub fn with_overrides(mut self, overrides: &[String]) -> Result<Self> {
        for (i, ov) in overrides.iter().enumerate() {
            let (key, value) = ov
                .split_once('=')
                .ok_or_else(|| anyhow!("override {}: expected key=value, got `{ov}`", i + 1))?;
            self.apply(key.trim(), value.trim())
                .map_err(|e| anyhow!("override {}: {e}", i + 1))?;
        }
        self.validate()?;
        Ok(self)
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let parse_f = |v: &str| -> Result<f64> {
            v.parse::<f64>()
                .map_err(|_| anyhow!("`{v}` is not a number"))
        };
        let parse_n = |v: &str| -> Result<usize> {
            v.parse::<usize>()
                .map_err(|_| anyhow!("`{v}` is not a count"))
        };
        match key {
            "interferometer" => {
                self.interferometer = match value {
                    "su11" => Ifo::Su11,
                    "mzi" => Ifo::Mzi,
                    other => bail!("unknown interferometer `{other}` (su11|mzi)"),
                }
            }
            "scheme" => {
                self.scheme = match value {
                    "parity" => Scheme::Parity,
                    "homodyne" => Scheme::Homodyne,
                    "intensity" => Scheme::Intensity,
                    "qcrb" => Scheme::Qcrb,
                    other => bail!("unknown scheme `{other}` (parity|homodyne|intensity|qcrb)"),
                }
            }
            "coupling" => {
                self.coupling = match value {
                    "independent" => Coupling::Independent,
                    "optimal_alpha" => Coupling::OptimalAlpha,
                    other => bail!("unknown coupling `{other}` (independent|optimal_alpha)"),
                }
            }
            "out" => self.out = PathBuf::from(value),
            "g_start" => self.g.start = parse_f(value)?,
            "g_stop" => self.g.stop = parse_f(value)?,
            "g_count" => self.g.count = parse_n(value)?,
            "r_start" => self.r.start = parse_f(value)?,
            "r_stop" => self.r.stop = parse_f(value)?,
            "r_count" => self.r.count = parse_n(value)?,
            "alpha_start" => self.alpha.start = parse_f(value)?,
            "alpha_stop" => self.alpha.stop = parse_f(value)?,
            "alpha_count" => self.alpha.count = parse_n(value)?,
            "phi_start" => self.phi.start = parse_f(value)?,
            "phi_stop" => self.phi.stop = parse_f(value)?,
            "phi_count" => self.phi.count = parse_n(value)?,
            other => bail!("unknown key `{other}`"),
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        for (name, range) in [
            ("g", &self.g),
            ("r", &self.r),
            ("alpha", &self.alpha),
            ("phi", &self.phi),
        ] {
            if range.count < 1 {
                bail!("{name}_count must be at least 1");
            }
            if range.start > range.stop {
                bail!(
                    "{name}_start ({}) must not exceed {name}_stop ({})",
                    range.start,
                    range.stop
                );
            }
        }
        Ok(())
    }

    /// Canonical echo of the effective configuration, one key per line,
    /// sorted; used for the run-metadata sidecar.
    pub fn echo(&self) -> String {
        let ifo = match self.interferometer {
            Ifo::Su11 => "su11",
            Ifo::Mzi => "mzi",
        };
        let coupling = match self.coupling {
            Coupling::Independent => "independent",
            Coupling::OptimalAlpha => "optimal_alpha",
        };
        let mut lines = vec![
            format!("alpha_count = {}", self.alpha.count),
            format!("alpha_start = {}", self.alpha.start),
            format!("alpha_stop = {}", self.alpha.stop),
            format!("coupling = {coupling}"),
            format!("g_count = {}", self.g.count),
            format!("g_start = {}", self.g.start),
            format!("g_stop = {}", self.g.stop),
            format!("interferometer = {ifo}"),
            format!("out = {}", self.out.display()),
            format!("phi_count = {}", self.phi.count),
            format!("phi_start = {}", self.phi.start),
            format!("phi_stop = {}", self.phi.stop),
            format!("r_count = {}", self.r.count),
            format!("r_start = {}", self.r.start),
            format!("r_stop = {}", self.r.stop),
            format!("scheme = {}", self.scheme.name()),
        ];
        lines.sort();
        lines.join("\n") + "\n"
    }
}
