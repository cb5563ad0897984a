//! Configuration-driven front end: run recurrences, α-tables, limits,
//! steering solves, constant pipelines, and figure-style orbit data.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::analysis::{limit_report, poly_roots};
use crate::constants::{run_constant, ConstantTarget};
use crate::error::{Error, Result};
use crate::numeric::{coefficient_from_value, Coefficient};
use crate::recurrence::{compute_a, compute_alpha, RecurrenceProblem};
use crate::sequences::{spec_from_json, SequenceSpec};
use crate::solver::{build_system, scaled_limit_target, solve_system};

/// Tolerances used by CLI-level convergence verdicts; `CONVSEQ_TOL`
/// overrides both (format: `rel` or `rel,abs`).
pub fn tolerances() -> (f64, f64) {
    let defaults = (crate::numeric::DEFAULT_REL_TOL, crate::numeric::DEFAULT_ABS_TOL);
    match std::env::var("CONVSEQ_TOL") {
        Ok(s) => {
            let mut parts = s.split(',').map(|p| p.trim().parse::<f64>());
            let rel = parts.next().and_then(|r| r.ok()).unwrap_or(defaults.0);
            let abs = parts.next().and_then(|r| r.ok()).unwrap_or(defaults.1);
            (rel, abs)
        }
        Err(_) => defaults,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// One command of a run configuration: a bare string for the parameterless
/// forms, an object with a `command` tag otherwise.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum CommandSpec {
    Simple(String),
    Detailed(DetailedCommand),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase", deny_unknown_fields)]
pub enum DetailedCommand {
    Alpha,
    A,
    Limits,
    Solve {
        /// Target limit of **a** (default 1).
        limit: Option<serde_json::Value>,
    },
    Plotdata {
        #[serde(default = "default_dim")]
        dim: usize,
    },
    Constants {
        target: String,
        a: Option<serde_json::Value>,
    },
}

fn default_dim() -> usize {
    2
}

fn config_err<E: std::fmt::Display>(e: E) -> Error {
    Error::Config(e.to_string())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    b: serde_json::Value,
    m: usize,
    #[serde(rename = "N", alias = "n")]
    n_max: usize,
    initials: Option<Vec<serde_json::Value>>,
    commands: Vec<CommandSpec>,
    /// Directory for artifact files; stdout when absent.
    output: Option<PathBuf>,
    format: Option<OutputFormat>,
}

#[derive(Debug)]
pub struct RunConfig {
    pub b: SequenceSpec,
    pub m: usize,
    pub n_max: usize,
    pub initials: Option<Vec<Coefficient>>,
    pub commands: Vec<CommandSpec>,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(config_err)?;
    let raw: RawConfig = serde_json::from_value(value).map_err(config_err)?;
    let b = spec_from_json(&raw.b)?;
    let initials = raw
        .initials
        .map(|vals| vals.iter().map(coefficient_from_value).collect::<Result<Vec<_>>>())
        .transpose()?;
    Ok(RunConfig {
        b,
        m: raw.m,
        n_max: raw.n_max,
        initials,
        commands: raw.commands,
        output: raw.output,
        format: raw.format.unwrap_or(OutputFormat::Csv),
    })
}

fn float_cell(x: f64) -> String {
    // shortest round-trip decimal
    format!("{x}")
}

/// Orbit rows for the figure exports: (n, α(n), α(n+1)[, α(n+2)]) for
/// n = 0..N, using real parts.
pub fn plot_data(alpha_row: &[Coefficient], dim: usize, n_max: usize) -> Result<Vec<Vec<f64>>> {
    if dim != 2 && dim != 3 {
        return Err(Error::Param(format!("plot dimension must be 2 or 3, got {dim}")));
    }
    if alpha_row.len() < n_max + dim {
        return Err(Error::Length(format!(
            "plot data needs {} alpha values, row has {}",
            n_max + dim,
            alpha_row.len()
        )));
    }
    Ok((0..=n_max)
        .map(|n| {
            let mut row = vec![n as f64];
            for d in 0..dim {
                row.push(alpha_row[n + d].to_complex_lossy().re);
            }
            row
        })
        .collect())
}

pub fn plot_data_csv(rows: &[Vec<f64>], dim: usize) -> String {
    let mut out = String::from(if dim == 3 { "n,x,y,z\n" } else { "n,x,y\n" });
    for row in rows {
        out.push_str(&(row[0] as usize).to_string());
        for v in &row[1..] {
            out.push(',');
            out.push_str(&float_cell(*v));
        }
        out.push('\n');
    }
    out
}

fn a_values_csv(values: &[Coefficient]) -> String {
    values
        .iter()
        .map(|c| match c {
            Coefficient::Exact(r) if r.denom() == &num::BigInt::from(1) => r.numer().to_string(),
            Coefficient::Exact(r) => format!("{}/{}", r.numer(), r.denom()),
            Coefficient::Complex(z) if z.im == 0.0 => float_cell(z.re),
            Coefficient::Complex(z) => format!("{}{}{}i", z.re, if z.im < 0.0 { "" } else { "+" }, z.im),
        })
        .collect::<Vec<_>>()
        .join(",")
}

struct Emitter<'a> {
    output: Option<&'a Path>,
    stdout: Vec<String>,
}

impl<'a> Emitter<'a> {
    fn emit(&mut self, name: &str, ext: &str, content: &str) -> Result<()> {
        match self.output {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(format!("{name}.{ext}")), content)?;
            }
            None => self.stdout.push(content.to_string()),
        }
        Ok(())
    }
}

fn command_name(cmd: &CommandSpec) -> Result<DetailedCommand> {
    match cmd {
        CommandSpec::Detailed(d) => Ok(d.clone()),
        CommandSpec::Simple(s) => match s.as_str() {
            "alpha" => Ok(DetailedCommand::Alpha),
            "a" => Ok(DetailedCommand::A),
            "limits" => Ok(DetailedCommand::Limits),
            "solve" => Ok(DetailedCommand::Solve { limit: None }),
            "plotdata" => Ok(DetailedCommand::Plotdata { dim: 2 }),
            other => Err(Error::Config(format!("unknown command `{other}`"))),
        },
    }
}

/// Executes a parsed configuration; returns the stdout chunks when no
/// output directory is configured.
pub fn execute_config(cfg: &RunConfig) -> Result<Vec<String>> {
    let problem = RecurrenceProblem::new(cfg.b.clone(), cfg.m, cfg.n_max)?;
    let mut emitter = Emitter {
        output: cfg.output.as_deref(),
        stdout: Vec::new(),
    };
    for cmd in &cfg.commands {
        let cmd = command_name(cmd)?;
        match cmd {
            DetailedCommand::Alpha => {
                let table = compute_alpha(&problem);
                let content = match cfg.format {
                    OutputFormat::Csv => table.to_csv(),
                    OutputFormat::Json => serde_json::to_string_pretty(
                        &serde_json::json!({"m": table.m, "rows": table.rows}),
                    )?,
                };
                emitter.emit("alpha", ext(cfg.format), &content)?;
            }
            DetailedCommand::A => {
                let initials = cfg.initials.as_ref().ok_or_else(|| {
                    Error::Config("command `a` requires `initials` in the config".into())
                })?;
                let values = compute_a(&problem, initials)?;
                let content = match cfg.format {
                    OutputFormat::Csv => format!("{}\n", a_values_csv(&values)),
                    OutputFormat::Json => serde_json::to_string_pretty(&values)?,
                };
                emitter.emit("a", ext(cfg.format), &content)?;
            }
            DetailedCommand::Limits => {
                let report = limit_report(&cfg.b, cfg.m, cfg.n_max)?;
                emitter.emit("limits", "json", &serde_json::to_string_pretty(&report)?)?;
            }
            DetailedCommand::Solve { limit } => {
                let lim = match &limit {
                    Some(v) => coefficient_from_value(v)?,
                    None => Coefficient::one(),
                };
                let report = solve_with_computed_roots(&cfg.b, cfg.m, &lim, cfg.n_max)?;
                emitter.emit("solve", "json", &serde_json::to_string_pretty(&report)?)?;
            }
            DetailedCommand::Plotdata { dim } => {
                // the orbit needs alpha values up to N + dim - 1 to emit
                // N + 1 rows
                let extended =
                    RecurrenceProblem::new(cfg.b.clone(), cfg.m, cfg.n_max + dim - 1)?;
                let table = compute_alpha(&extended);
                let rows = plot_data(&table.rows[0], dim, cfg.n_max)?;
                emitter.emit("plotdata", "csv", &plot_data_csv(&rows, dim))?;
            }
            DetailedCommand::Constants { target, a } => {
                let t = ConstantTarget::from_name(&target)?;
                let a = a.as_ref().map(coefficient_from_value).transpose()?;
                let run = run_constant(t, a.as_ref(), cfg.n_max)?;
                emitter.emit("constants", "json", &serde_json::to_string_pretty(&run)?)?;
            }
        }
    }
    Ok(emitter.stdout)
}

fn ext(format: OutputFormat) -> &'static str {
    match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    }
}

/// Builds and solves the steering system using the computed roots of
/// B(s) − s^m (the root at 1 excluded), homogeneous root conditions, and
/// the given target limit.
pub fn solve_with_computed_roots(
    b: &SequenceSpec,
    m: usize,
    lim: &Coefficient,
    n_max: usize,
) -> Result<crate::solver::SolveReport> {
    let roots = poly_roots(b, m)?;
    if roots.repeated {
        return Err(Error::Precondition {
            hypothesis: "roots of B(s) - s^m are simple".into(),
        });
    }
    let mut usable: Vec<Coefficient> = roots
        .roots_complex()
        .into_iter()
        .filter(|z| (z - num::complex::Complex64::new(1.0, 0.0)).norm() >= 1e-8)
        .map(|z| Coefficient::from_complex(z.re, z.im))
        .collect();
    usable.truncate(m - 1);
    if usable.len() != m - 1 {
        return Err(Error::Precondition {
            hypothesis: format!("B(s) - s^m must have at least {} roots different from 1", m - 1),
        });
    }
    let l = scaled_limit_target(b, m, lim, n_max);
    let l_vec = vec![Coefficient::zero(); m - 1];
    let report = build_system(b, m, &usable, &l_vec, &l)?;
    solve_system(&report)
}

/// Runs a configuration file; artifact files land next to the configured
/// output path.
pub fn run(config_path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(config_path)?;
    let cfg = parse_config(&text)?;
    execute_config(&cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parses_and_runs_a() {
        let cfg = parse_config(
            r#"{"b":[1,-1,-1],"m":1,"N":6,"initials":[1],"commands":["a"]}"#,
        )
        .unwrap();
        let out = execute_config(&cfg).unwrap();
        assert_eq!(out, vec!["1,2,5,12,29,70,169\n".to_string()]);
    }

    #[test]
    fn unknown_key_rejected() {
        let err = parse_config(r#"{"b":[1],"m":1,"N":4,"commands":[],"zzz":1}"#).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn b0_zero_is_construction_error() {
        let err = parse_config(r#"{"b":[0,1],"m":1,"N":4,"commands":["alpha"]}"#).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("b0 must be nonzero"));
    }

    #[test]
    fn plot_data_shapes() {
        let row: Vec<Coefficient> = vec![Coefficient::one(); 4];
        let rows = plot_data(&row, 2, 2).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0], vec![0.0, 1.0, 1.0]);
        assert_eq!(rows[2], vec![2.0, 1.0, 1.0]);
        assert!(matches!(plot_data(&row, 2, 3), Err(Error::Length(_))));
    }

    #[test]
    fn plot_csv_header() {
        let rows = vec![vec![0.0, 1.0, 0.5]];
        let csv = plot_data_csv(&rows, 2);
        assert!(csv.starts_with("n,x,y\n"));
        assert!(csv.contains("0,1,0.5"));
    }

    #[test]
    fn alpha_csv_via_config() {
        let cfg = parse_config(
            r#"{"b":[5,-4,-3,3],"m":2,"N":7,"commands":["alpha"]}"#,
        )
        .unwrap();
        let out = execute_config(&cfg).unwrap();
        assert!(out[0].starts_with("n,alpha_0,alpha_1\n"));
        assert!(out[0].contains("6,1829/3125,4344/3125"));
    }

    #[test]
    fn tolerance_env_override() {
        // no env set: defaults
        let (rel, abs) = tolerances();
        assert_eq!(rel, crate::numeric::DEFAULT_REL_TOL);
        assert_eq!(abs, crate::numeric::DEFAULT_ABS_TOL);
    }
}
