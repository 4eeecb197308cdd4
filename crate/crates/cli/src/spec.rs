//! Sweep specification read from TOML.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::quantity::Quantity;
use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

/// One swept parameter: either `start`/`stop`/`points` or an explicit `values` list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default)]
    pub spacing: Spacing,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

impl Axis {
    pub fn range(name: &str, start: f64, stop: f64, points: usize, spacing: Spacing) -> Self {
        Self {
            name: name.to_string(),
            start: Some(start),
            stop: Some(stop),
            points: Some(points),
            spacing,
            values: None,
        }
    }

    pub fn list(name: &str, values: Vec<f64>) -> Self {
        Self {
            name: name.to_string(),
            start: None,
            stop: None,
            points: None,
            spacing: Spacing::Linear,
            values: Some(values),
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let err = |m: &str| Err(CliError::spec(format!("axis `{}`: {m}", self.name)));
        match (&self.values, self.start, self.stop, self.points) {
            (Some(values), None, None, None) => {
                if values.iter().any(|v| v.is_nan()) {
                    return err("values must not be NaN");
                }
                if self.spacing == Spacing::Log && values.iter().any(|&v| !(v > 0.0)) {
                    return err("log axis values must be strictly positive");
                }
                Ok(())
            }
            (None, Some(start), Some(stop), Some(_)) => {
                if !start.is_finite() || !stop.is_finite() {
                    return err("bounds must be finite");
                }
                if self.spacing == Spacing::Log && !(start > 0.0 && stop > 0.0) {
                    return err("log axis bounds must be strictly positive");
                }
                Ok(())
            }
            _ => err("give either `values` or all of `start`, `stop`, `points`"),
        }
    }

    /// Grid values; endpoints are reproduced exactly.
    pub fn grid(&self) -> Vec<f64> {
        if let Some(values) = &self.values {
            return values.clone();
        }
        let (a, b, n) = (
            self.start.unwrap_or(0.0),
            self.stop.unwrap_or(0.0),
            self.points.unwrap_or(0),
        );
        let step = |i: usize| i as f64 / (n - 1) as f64;
        match n {
            0 => vec![],
            1 => vec![a],
            _ => (0..n)
                .map(|i| match (i, self.spacing) {
                    (0, _) => a,
                    (i, _) if i == n - 1 => b,
                    (i, Spacing::Linear) => a + (b - a) * step(i),
                    (i, Spacing::Log) => (a.ln() + (b.ln() - a.ln()) * step(i)).exp(),
                })
                .collect(),
        }
    }
}

/// Non-swept parameter value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FixedValue {
    Number(f64),
    Text(String),
    List(Vec<f64>),
    Matrix(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gnuplot: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub quantity: Quantity,
    #[serde(default)]
    pub axes: Vec<Axis>,
    #[serde(default)]
    pub fixed: BTreeMap<String, FixedValue>,
    #[serde(default)]
    pub output: OutputSpec,
}

pub const MAX_AXES: usize = 2;

impl SweepSpec {
    pub fn new(quantity: Quantity) -> Self {
        Self {
            quantity,
            axes: vec![],
            fixed: BTreeMap::new(),
            output: OutputSpec::default(),
        }
    }

    pub fn with_axis(mut self, axis: Axis) -> Self {
        self.axes.push(axis);
        self
    }

    pub fn fix(mut self, name: &str, value: f64) -> Self {
        self.fixed
            .insert(name.to_string(), FixedValue::Number(value));
        self
    }

    pub fn fix_value(mut self, name: &str, value: FixedValue) -> Self {
        self.fixed.insert(name.to_string(), value);
        self
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::spec(e.to_string()))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(path.display().to_string(), e))?;
        Self::parse(&text).map_err(|e| CliError::spec(format!("{}: {e}", path.display())))
    }

    /// Structural checks plus parameter names known to the quantity.
    pub fn validate(&self) -> CliResult<()> {
        if self.axes.len() > MAX_AXES {
            return Err(CliError::spec(format!(
                "at most {MAX_AXES} axes are supported"
            )));
        }
        for (i, axis) in self.axes.iter().enumerate() {
            axis.validate()?;
            if self.axes[..i].iter().any(|a| a.name == axis.name) {
                return Err(CliError::spec(format!(
                    "axis `{}` appears twice",
                    axis.name
                )));
            }
            if self.fixed.contains_key(&axis.name) {
                return Err(CliError::spec(format!(
                    "`{}` is both swept and fixed",
                    axis.name
                )));
            }
        }
        self.quantity.check_names(self)
    }

    /// Row-major grid: the last axis varies fastest.
    pub fn grid(&self) -> Vec<Vec<f64>> {
        self.axes.iter().fold(vec![vec![]], |acc, axis| {
            let values = axis.grid();
            acc.iter()
                .flat_map(|prefix| {
                    values.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect()
        })
    }
}
