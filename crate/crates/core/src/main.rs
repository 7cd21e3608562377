use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use credit_eoq::cli::{
    cmd_compare, cmd_solve, cmd_sweep, cmd_validate, exit_code, parse_value_list, OutputFormat,
    SweepValues, ValidateOptions,
};
use credit_eoq::{Error, ParamName, Variant};

#[derive(Parser)]
#[command(version, about = "Optimal order cycle under two-level trade credit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario JSON with all twelve model fields.
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value = "json")]
    format: OutputFormat,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the optimal cycle length.
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "corrected")]
        variant: Variant,
    },
    /// Check closed forms against the numerical oracle.
    Validate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "corrected")]
        variant: Variant,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        /// Evaluate TC3 with the original earned term but keep the corrected label.
        #[arg(long, hide = true)]
        inject_original_earned: bool,
    },
    /// Re-solve while varying one parameter.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "corrected")]
        variant: Variant,
        /// Field name or symbol (e.g. M, Ie, W, supplier_credit).
        #[arg(long)]
        param: ParamName,
        /// Comma-separated values.
        #[arg(long, conflicts_with_all = ["from", "to", "steps"])]
        values: Option<String>,
        #[arg(long, requires_all = ["to", "steps"])]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Solve the corrected and original variants side by side.
    Compare {
        #[command(flatten)]
        common: Common,
    },
}

fn emit(common: &Common, text: &str) -> Result<(), Error> {
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Output(e.to_string())),
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Solve { common, variant } => {
            let text = cmd_solve(&common.config, variant, common.format)?;
            emit(&common, &text)?;
            Ok(true)
        }
        Command::Validate {
            common,
            variant,
            samples,
            tolerance,
            inject_original_earned,
        } => {
            let opts = ValidateOptions {
                samples,
                tolerance,
                variant,
                inject_original_earned,
                ..ValidateOptions::default()
            };
            let outcome = cmd_validate(&common.config, &opts, common.format)?;
            emit(&common, &outcome.rendered)?;
            for b in &outcome.summary.breaches {
                eprintln!(
                    "breach: {} {} T={} expected={} actual={} rel={:e}",
                    b.check, b.case, b.t, b.expected, b.actual, b.rel_error
                );
            }
            Ok(outcome.passed)
        }
        Command::Sweep {
            common,
            variant,
            param,
            values,
            from,
            to,
            steps,
        } => {
            let values = match (values, from, to, steps) {
                (Some(list), ..) => SweepValues::List(parse_value_list(&list)?),
                (None, Some(from), Some(to), Some(steps)) => SweepValues::Range { from, to, steps },
                _ => {
                    return Err(Error::InvalidParams(
                        "give --values or all of --from, --to and --steps".into(),
                    ))
                }
            };
            let text = cmd_sweep(&common.config, param, &values, variant, common.format)?;
            emit(&common, &text)?;
            Ok(true)
        }
        Command::Compare { common } => {
            let text = cmd_compare(&common.config, common.format)?;
            emit(&common, &text)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
