//! Run configuration: defaults, then a key-value config file, then flags.

use std::path::Path;

use gasshift_core::lieb_liniger::TbaConfig;
use serde::Serialize;

use crate::spec::OutputFormat;
use crate::{CliError, CliResult};

/// Layer of optional settings; later layers win.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigLayer {
    pub tol: Option<f64>,
    pub nodes: Option<usize>,
    pub format: Option<OutputFormat>,
    pub gnuplot: Option<bool>,
    pub serial: Option<bool>,
}

impl ConfigLayer {
    /// Parse `key = value` lines. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut layer = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| CliError::spec(format!("config line {}: {what}", lineno + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad("expected key = value"))?;
            let value = value.trim().trim_matches('"');
            match key.trim() {
                "tol" => layer.tol = Some(value.parse().map_err(|_| bad("tol must be a number"))?),
                "nodes" => {
                    layer.nodes = Some(value.parse().map_err(|_| bad("nodes must be an integer"))?)
                }
                "format" => layer.format = Some(value.parse().map_err(|e: String| bad(&e))?),
                "gnuplot" => {
                    layer.gnuplot = Some(
                        value
                            .parse()
                            .map_err(|_| bad("gnuplot must be true or false"))?,
                    )
                }
                "serial" => {
                    layer.serial = Some(
                        value
                            .parse()
                            .map_err(|_| bad("serial must be true or false"))?,
                    )
                }
                other => return Err(bad(&format!("unknown key `{other}`"))),
            }
        }
        Ok(layer)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(path.display().to_string(), e))?;
        Self::parse(&text)
    }

    /// `other` takes precedence where set.
    pub fn overlay(self, other: &ConfigLayer) -> Self {
        Self {
            tol: other.tol.or(self.tol),
            nodes: other.nodes.or(self.nodes),
            format: other.format.or(self.format),
            gnuplot: other.gnuplot.or(self.gnuplot),
            serial: other.serial.or(self.serial),
        }
    }
}

/// Effective settings after layering.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunConfig {
    pub tol: f64,
    pub nodes: usize,
    pub format: OutputFormat,
    pub gnuplot: bool,
    pub serial: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let tba = TbaConfig::default();
        Self {
            tol: tba.energy_rtol,
            nodes: tba.min_nodes,
            format: OutputFormat::Csv,
            gnuplot: false,
            serial: false,
        }
    }
}

impl RunConfig {
    pub fn resolve(layer: &ConfigLayer) -> CliResult<Self> {
        let d = Self::default();
        let cfg = Self {
            tol: layer.tol.unwrap_or(d.tol),
            nodes: layer.nodes.unwrap_or(d.nodes),
            format: layer.format.unwrap_or(d.format),
            gnuplot: layer.gnuplot.unwrap_or(d.gnuplot),
            serial: layer.serial.unwrap_or(d.serial),
        };
        cfg.tba()
            .validate()
            .map_err(|e| CliError::spec(e.to_string()))?;
        Ok(cfg)
    }

    pub fn tba(&self) -> TbaConfig {
        let base = TbaConfig::default();
        TbaConfig {
            energy_rtol: self.tol,
            min_nodes: self.nodes,
            max_nodes: base.max_nodes.max(self.nodes),
            ..base
        }
    }
}
