//! One-dimensional parameter sweeps and their CSV form.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::observables::{report, Backend, ObservableReport, DEFAULT_ORACLE_TOL};

/// The swept parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Lambda,
    S,
    Alpha,
    Delta,
}

impl Axis {
    pub fn name(&self) -> &'static str {
        match self {
            Axis::Lambda => "lambda",
            Axis::S => "s",
            Axis::Alpha => "alpha",
            Axis::Delta => "delta",
        }
    }

    /// `base` with this axis set to `value`, validated.
    pub fn apply(&self, base: &ModelParams, value: f64) -> Result<ModelParams> {
        let mut p = *base;
        match self {
            Axis::Lambda => p.lambda = value,
            Axis::S => p.s = value,
            Axis::Alpha => p.alpha = value,
            Axis::Delta => p.delta = value,
        }
        p.validate().map_err(|e| Error::Sweep(e.to_string()))?;
        Ok(p)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" => Ok(Axis::Lambda),
            "s" => Ok(Axis::S),
            "alpha" => Ok(Axis::Alpha),
            "delta" => Ok(Axis::Delta),
            other => Err(Error::Sweep(format!("unknown axis {other:?}"))),
        }
    }
}

/// A column a sweep can emit; names match [`ObservableReport`] fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Observable {
    Q1,
    Q2,
    UncertaintyProduct,
    G2Ab,
    I0,
    EHz,
    Epr,
    Fidelity,
    PPost,
}

impl Observable {
    pub const ALL: [Observable; 9] = [
        Observable::Q1,
        Observable::Q2,
        Observable::UncertaintyProduct,
        Observable::G2Ab,
        Observable::I0,
        Observable::EHz,
        Observable::Epr,
        Observable::Fidelity,
        Observable::PPost,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Observable::Q1 => "q1",
            Observable::Q2 => "q2",
            Observable::UncertaintyProduct => "uncertainty_product",
            Observable::G2Ab => "g2_ab",
            Observable::I0 => "i0",
            Observable::EHz => "e_hz",
            Observable::Epr => "epr",
            Observable::Fidelity => "fidelity",
            Observable::PPost => "p_post",
        }
    }

    pub fn read(&self, r: &ObservableReport) -> Option<f64> {
        r.get(self.name())
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Observable::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::Sweep(format!("unknown observable {s:?}")))
    }
}

/// Evenly spaced grid from `start` to `stop` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub n_points: usize,
}

impl Range {
    pub fn new(start: f64, stop: f64, n_points: usize) -> Result<Self> {
        let r = Self {
            start,
            stop,
            n_points,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_points < 2 {
            return Err(Error::Sweep(format!(
                "n_points must be at least 2, got {}",
                self.n_points
            )));
        }
        if !self.start.is_finite() || !self.stop.is_finite() || self.start >= self.stop {
            return Err(Error::Sweep(format!(
                "range start {} must be below stop {}",
                self.start, self.stop
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.n_points - 1) as f64;
        (0..self.n_points)
            .map(|i| {
                if i + 1 == self.n_points {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / last
                }
            })
            .collect()
    }
}

/// One curve: `outputs` along `axis`, everything else held at `fixed`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis: Axis,
    pub range: Range,
    pub fixed: ModelParams,
    pub backend: Backend,
    pub outputs: Vec<Observable>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.range.validate()?;
        if self.outputs.is_empty() {
            return Err(Error::Sweep("no outputs requested".into()));
        }
        for v in [self.range.start, self.range.stop] {
            self.axis.apply(&self.fixed, v)?;
        }
        Ok(())
    }

    /// Reports at every grid point, in axis order. Points whose
    /// postselection is degenerate yield `None`.
    pub fn reports(&self, oracle_tol: f64) -> Result<Vec<(f64, Option<ObservableReport>)>> {
        self.validate()?;
        self.range
            .values()
            .into_par_iter()
            .map(|v| {
                let p = self.axis.apply(&self.fixed, v)?;
                match report(&p, self.backend, oracle_tol) {
                    Ok(r) => Ok((v, Some(r))),
                    Err(Error::DegeneratePostselection(_)) => Ok((v, None)),
                    Err(e) => Err(e),
                }
            })
            .collect()
    }

    pub fn run(&self, oracle_tol: f64) -> Result<SweepTable> {
        let reports = self.reports(oracle_tol)?;
        let mut header = vec![self.axis.name().to_string()];
        header.extend(self.outputs.iter().map(|o| o.name().to_string()));
        let rows = reports
            .into_iter()
            .map(|(v, r)| {
                let mut row = vec![Some(v)];
                row.extend(
                    self.outputs
                        .iter()
                        .map(|o| r.as_ref().and_then(|r| o.read(r))),
                );
                row
            })
            .collect();
        Ok(SweepTable { header, rows })
    }
}

/// Header plus rows of optional numbers; `None` is written as an empty cell.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

/// 17 significant digits, which round-trips every `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

impl SweepTable {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.map(format_value).unwrap_or_default()))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is ascii"))
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// Runs `spec` with the default oracle tolerance.
pub fn sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.run(DEFAULT_ORACLE_TOL)
}
