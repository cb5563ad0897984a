use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use convseq::analysis::limit_report;
use convseq::cli::{self, plot_data, plot_data_csv};
use convseq::constants::{run_constant, ConstantTarget};
use convseq::error::Result;
use convseq::numeric::{coefficient_from_value, Coefficient};
use convseq::recurrence::{compute_a, compute_alpha, RecurrenceProblem};
use convseq::sequences::{spec_from_json, SequenceSpec};

#[derive(Parser)]
#[command(
    name = "convseq",
    about = "Convolution-like recurrences: alpha tables, limits, steering, and constants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a JSON configuration file.
    Run { config: PathBuf },
    /// Print the alpha table for a kernel.
    Alpha {
        #[arg(short = 'b', long)]
        b: String,
        #[arg(short = 'm', long, default_value_t = 1)]
        m: usize,
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Print the sequence a from initial values.
    A {
        #[arg(short = 'b', long)]
        b: String,
        #[arg(short = 'm', long, default_value_t = 1)]
        m: usize,
        #[arg(short = 'n', long)]
        n: usize,
        /// JSON array of m initial values.
        #[arg(short = 'i', long)]
        initials: String,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Print the limit / radius / root diagnostics as JSON.
    Limits {
        #[arg(short = 'b', long)]
        b: String,
        #[arg(short = 'm', long, default_value_t = 1)]
        m: usize,
        #[arg(short = 'n', long, default_value_t = 400)]
        n: usize,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Solve the steering system for a target limit (roots computed from
    /// B(s) - s^m, root conditions homogeneous).
    Solve {
        #[arg(short = 'b', long)]
        b: String,
        #[arg(short = 'm', long)]
        m: usize,
        #[arg(short = 'n', long, default_value_t = 400)]
        n: usize,
        /// Target limit as JSON (number, "p/q", or {re, im}).
        #[arg(short = 'l', long, default_value = "1")]
        limit: String,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Export orbit data for the figure kernels.
    Plotdata {
        #[arg(short = 'b', long)]
        b: String,
        #[arg(short = 'm', long, default_value_t = 1)]
        m: usize,
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Run a famous-constant pipeline.
    Constants {
        #[arg(long)]
        target: String,
        #[arg(long = "a-re")]
        a_re: Option<f64>,
        #[arg(long = "a-im")]
        a_im: Option<f64>,
        #[arg(short = 'n', long, default_value_t = 500)]
        n: usize,
        #[arg(short = 'o', long, alias = "out")]
        out: Option<PathBuf>,
    },
}

fn parse_b(text: &str) -> Result<SequenceSpec> {
    let v: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| convseq::Error::Config(format!("bad kernel JSON: {e}")))?;
    spec_from_json(&v)
}

fn parse_coefficient(text: &str) -> Result<Coefficient> {
    let v: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| convseq::Error::Config(format!("bad coefficient JSON: {e}")))?;
    coefficient_from_value(&v)
}

fn deliver(out: Option<&PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Run { config } => {
            for chunk in cli::run(&config)? {
                print!("{chunk}");
            }
            Ok(())
        }
        Command::Alpha { b, m, n, out } => {
            let problem = RecurrenceProblem::new(parse_b(&b)?, m, n)?;
            let table = compute_alpha(&problem);
            deliver(out.as_ref(), &table.to_csv())
        }
        Command::A {
            b,
            m,
            n,
            initials,
            out,
        } => {
            let problem = RecurrenceProblem::new(parse_b(&b)?, m, n)?;
            let vals: serde_json::Value = serde_json::from_str(&initials)
                .map_err(|e| convseq::Error::Config(format!("bad initials JSON: {e}")))?;
            let init = vals
                .as_array()
                .ok_or_else(|| convseq::Error::Config("initials must be a JSON array".into()))?
                .iter()
                .map(coefficient_from_value)
                .collect::<Result<Vec<_>>>()?;
            let a = compute_a(&problem, &init)?;
            let mut csv = String::new();
            for (i, v) in a.iter().enumerate() {
                if i > 0 {
                    csv.push(',');
                }
                csv.push_str(&v.to_string());
            }
            csv.push('\n');
            deliver(out.as_ref(), &csv)
        }
        Command::Limits { b, m, n, out } => {
            let report = limit_report(&parse_b(&b)?, m, n)?;
            deliver(out.as_ref(), &serde_json::to_string_pretty(&report)?)
        }
        Command::Solve {
            b,
            m,
            n,
            limit,
            out,
        } => {
            let lim = parse_coefficient(&limit)?;
            let report = cli::solve_with_computed_roots(&parse_b(&b)?, m, &lim, n)?;
            deliver(out.as_ref(), &serde_json::to_string_pretty(&report)?)
        }
        Command::Plotdata { b, m, n, dim, out } => {
            let problem = RecurrenceProblem::new(parse_b(&b)?, m, n + dim - 1)?;
            let table = compute_alpha(&problem);
            let rows = plot_data(&table.rows[0], dim, n)?;
            deliver(out.as_ref(), &plot_data_csv(&rows, dim))
        }
        Command::Constants {
            target,
            a_re,
            a_im,
            n,
            out,
        } => {
            let t = ConstantTarget::from_name(&target)?;
            let a = a_re.map(|re| Coefficient::from_complex(re, a_im.unwrap_or(0.0)));
            let run = run_constant(t, a.as_ref(), n)?;
            deliver(out.as_ref(), &serde_json::to_string_pretty(&run)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
