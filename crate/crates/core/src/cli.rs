//! The `tmsv` command line: `eval`, `sweep`, `figures` and `validate`.
//!
//! Every flag can also come from a flat JSON object passed with `--config`,
//! keyed by the long flag name (`{"lambda": 1.5, "n-points": 51}`); flags
//! given on the command line win.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage, 3 backend error,
//! 4 I/O.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::observables::{report, Backend, ObservableReport, DEFAULT_ORACLE_TOL};
use crate::presets::{find_preset, write_figures};
use crate::sweep::{Axis, Observable, Range, SweepSpec};
use crate::validate::{run_validation, ValidateOptions, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BACKEND: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "tmsv",
    version,
    about = "Postselected measurement on a two-mode squeezed vacuum"
)]
pub struct Cli {
    /// Moment source [default: closed]
    #[arg(long, global = true, value_enum)]
    pub backend: Option<Backend>,

    /// Oracle truncation tolerance for eval/sweep/figures, agreement
    /// tolerance for validate
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Output file (eval, sweep, validate) or directory (figures)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Flat JSON file of flag values
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every observable at one parameter point, as JSON
    Eval(PointArgs),
    /// One observable table along one axis, as CSV
    Sweep(SweepArgs),
    /// All figure presets plus manifest.json
    Figures,
    /// Closed form against the Fock oracle and internal consistency checks
    Validate(ValidateArgs),
}

#[derive(Debug, Default, Args)]
pub struct PointArgs {
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Squeezing phase; oracle backend only
    #[arg(long)]
    pub theta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Run a figure preset instead of a custom sweep
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_enum)]
    pub axis: Option<Axis>,
    #[arg(long)]
    pub start: Option<f64>,
    #[arg(long)]
    pub stop: Option<f64>,
    #[arg(long = "n-points")]
    pub n_points: Option<usize>,
    /// Comma-separated observables [default: all]
    #[arg(long, value_enum, value_delimiter = ',')]
    pub outputs: Option<Vec<Observable>>,
    #[command(flatten)]
    pub point: PointArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Also run the λ = 3 oracle at the largest cutoff
    #[arg(long)]
    pub stretch: bool,
}

/// `eval` output: inputs echoed next to the report fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalOutput {
    pub lambda: f64,
    pub theta: f64,
    pub s: f64,
    pub alpha: f64,
    pub delta: f64,
    pub backend: Backend,
    #[serde(flatten)]
    pub report: ObservableReport,
}

/// Values from `--config`, looked up by long flag name.
struct Config(Map<String, Value>);

const CONFIG_KEYS: [&str; 16] = [
    "backend", "tol", "out", "lambda", "s", "alpha", "delta", "theta", "preset", "axis", "start",
    "stop", "n-points", "outputs", "stretch", "config",
];

impl Config {
    fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self(Map::new()));
        };
        let text = fs::read_to_string(path)?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let Value::Object(map) = value else {
            return Err(Error::Config(format!(
                "{} is not a JSON object",
                path.display()
            )));
        };
        for key in map.keys() {
            if !CONFIG_KEYS.contains(&key.as_str()) {
                return Err(Error::Config(format!("unknown key {key:?}")));
            }
            if matches!(map[key], Value::Object(_)) {
                return Err(Error::Config(format!("{key:?} must not be nested")));
            }
        }
        Ok(Self(map))
    }

    fn get<T: for<'de> Deserialize<'de>>(&self, key: &str) -> Result<Option<T>> {
        self.0
            .get(key)
            .map(|v| {
                serde_json::from_value(v.clone())
                    .map_err(|e| Error::Config(format!("{key:?}: {e}")))
            })
            .transpose()
    }

    fn f64(&self, flag: Option<f64>, key: &str) -> Result<Option<f64>> {
        Ok(match flag {
            Some(v) => Some(v),
            None => self.get(key)?,
        })
    }

    fn parsed<T: std::str::FromStr<Err = Error>>(&self, key: &str) -> Result<Option<T>> {
        self.get::<String>(key)?.map(|s| s.parse()).transpose()
    }
}

fn point(args: &PointArgs, cfg: &Config) -> Result<ModelParams> {
    let p = raw_point(args, cfg)?;
    p.validate()?;
    Ok(p)
}

fn raw_point(args: &PointArgs, cfg: &Config) -> Result<ModelParams> {
    Ok(ModelParams {
        lambda: cfg.f64(args.lambda, "lambda")?.unwrap_or(0.0),
        theta: cfg.f64(args.theta, "theta")?.unwrap_or(0.0),
        s: cfg.f64(args.s, "s")?.unwrap_or(0.0),
        alpha: cfg.f64(args.alpha, "alpha")?.unwrap_or(0.0),
        delta: cfg.f64(args.delta, "delta")?.unwrap_or(0.0),
    })
}

fn outputs_from_config(cfg: &Config) -> Result<Option<Vec<Observable>>> {
    match cfg.0.get("outputs") {
        None => Ok(None),
        Some(Value::String(s)) => s
            .split(',')
            .map(|x| x.trim().parse())
            .collect::<Result<_>>()
            .map(Some),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| match v {
                Value::String(s) => s.parse(),
                _ => Err(Error::Config("outputs must be strings".into())),
            })
            .collect::<Result<_>>()
            .map(Some),
        Some(_) => Err(Error::Config("outputs must be a string or a list".into())),
    }
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Maps a library error onto the documented exit codes.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_usage() {
        EXIT_USAGE
    } else if e.is_io() {
        EXIT_IO
    } else {
        EXIT_BACKEND
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let cfg = Config::load(cli.config.as_deref())?;
    let backend = match cli.backend {
        Some(b) => b,
        None => cfg.parsed("backend")?.unwrap_or_default(),
    };
    let tol = cfg.f64(cli.tol, "tol")?;
    if let Some(t) = tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::Domain {
                what: "tol",
                value: t,
                domain: "(0, 1)",
            });
        }
    }
    let out: Option<PathBuf> = match cli.out {
        Some(p) => Some(p),
        None => cfg.get::<String>("out")?.map(PathBuf::from),
    };

    match cli.command {
        Command::Eval(args) => {
            let p = point(&args, &cfg)?;
            let r = report(&p, backend, tol.unwrap_or(DEFAULT_ORACLE_TOL))?;
            let doc = EvalOutput {
                lambda: p.lambda,
                theta: p.theta,
                s: p.s,
                alpha: p.alpha,
                delta: p.delta,
                backend,
                report: r,
            };
            let mut text = serde_json::to_string_pretty(&doc)?;
            text.push('\n');
            emit(out.as_deref(), stdout, &text)?;
            Ok(EXIT_OK)
        }
        Command::Sweep(args) => {
            let oracle_tol = tol.unwrap_or(DEFAULT_ORACLE_TOL);
            let preset = match args.preset.clone() {
                Some(p) => Some(p),
                None => cfg.get::<String>("preset")?,
            };
            let table = if let Some(id) = preset {
                let p = find_preset(&id)
                    .ok_or_else(|| Error::Sweep(format!("unknown preset {id:?}")))?;
                p.run(backend, oracle_tol)?
            } else {
                let axis = match args.axis {
                    Some(a) => a,
                    None => cfg
                        .parsed("axis")?
                        .ok_or_else(|| Error::Sweep("--axis or --preset is required".into()))?,
                };
                let need = |v: Option<f64>, key: &str| -> Result<f64> {
                    cfg.f64(v, key)?
                        .ok_or_else(|| Error::Sweep(format!("--{key} is required")))
                };
                let n_points = match args.n_points {
                    Some(n) => n,
                    None => cfg
                        .get("n-points")?
                        .unwrap_or(crate::presets::PRESET_POINTS),
                };
                let outputs = match args.outputs.clone() {
                    Some(o) => o,
                    None => outputs_from_config(&cfg)?.unwrap_or_else(|| Observable::ALL.to_vec()),
                };
                let start = need(args.start, "start")?;
                // The swept field is overwritten per point.
                let fixed = axis.apply(&raw_point(&args.point, &cfg)?, start)?;
                let spec = SweepSpec {
                    axis,
                    range: Range::new(start, need(args.stop, "stop")?, n_points)?,
                    fixed,
                    backend,
                    outputs,
                };
                spec.run(oracle_tol)?
            };
            emit(out.as_deref(), stdout, &table.to_csv_string()?)?;
            Ok(EXIT_OK)
        }
        Command::Figures => {
            let dir = out.unwrap_or_else(|| PathBuf::from("figures"));
            let manifest = write_figures(&dir, backend, tol.unwrap_or(DEFAULT_ORACLE_TOL))?;
            writeln!(
                stderr,
                "wrote {} presets and manifest.json to {}",
                manifest.presets.len(),
                dir.display()
            )?;
            Ok(EXIT_OK)
        }
        Command::Validate(args) => {
            let stretch = args.stretch || cfg.get::<bool>("stretch")?.unwrap_or(false);
            let r = run_validation(&ValidateOptions {
                tol: tol.unwrap_or(DEFAULT_TOL),
                stretch,
            })?;
            let mut text = serde_json::to_string_pretty(&r)?;
            text.push('\n');
            emit(out.as_deref(), stdout, &text)?;
            if r.passed {
                Ok(EXIT_OK)
            } else {
                writeln!(stderr, "validation failed: {}", r.failing().join(", "))?;
                Ok(EXIT_VALIDATION)
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
