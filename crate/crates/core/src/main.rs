use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qutrit_eur::channel::{BasisConvention, ChannelParams};
use qutrit_eur::checks;
use qutrit_eur::experiment::{
    emit_csv, figure_preset, run_sweep, summarize, write_summary, LambdaReading, SweepConfig,
};

/// Entropic uncertainty of two V-type qutrits under non-Markovian damping.
/// Rates are in units of γ, times in units of 1/γ.
#[derive(Debug, Parser)]
#[command(name = "qutrit-eur", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Time series for an arbitrary parameter set.
    Sweep {
        #[arg(long, default_value_t = 1.0)]
        gamma1: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma2: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        k: f64,
        #[arg(long = "t-max")]
        t_max: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value = "kraus-order")]
        basis: BasisConvention,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time series for a named figure panel (fig2a..fig4d).
    Figure {
        name: String,
        /// Read the reservoir width of fig2/fig3 as 1000γ instead of 0.001γ.
        #[arg(long)]
        literal_lambda: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the channel, oracle and inequality property checks.
    Check {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

fn run_and_write(cfg: &SweepConfig, params: &str, out: &Path) -> qutrit_eur::Result<()> {
    let records = run_sweep(cfg)?;
    emit_csv(&records, params, out)?;
    let summary = summarize(&records)?;
    let summary_path = write_summary(&summary, params, out)?;
    println!(
        "wrote {} records to {} (u_l max {:.4}, min {:.4}, period {})",
        records.len(),
        out.display(),
        summary.ul_max.value,
        summary.ul_min.value,
        summary
            .period_estimate
            .map_or_else(|| "none".to_string(), |p| format!("{p:.2}")),
    );
    println!("summary: {}", summary_path.display());
    Ok(())
}

fn run(cli: Cli) -> qutrit_eur::Result<bool> {
    match cli.command {
        Command::Sweep {
            gamma1,
            gamma2,
            theta,
            lambda,
            k,
            t_max,
            steps,
            basis,
            out,
        } => {
            let cfg = SweepConfig {
                channel: ChannelParams {
                    gamma1,
                    gamma2,
                    theta,
                    lambda,
                },
                k,
                t_max,
                steps,
                basis,
            };
            run_and_write(&cfg, &cfg.canonical_params(), &out)?;
            Ok(true)
        }
        Command::Figure {
            name,
            literal_lambda,
            out,
        } => {
            let reading = if literal_lambda {
                LambdaReading::Literal
            } else {
                LambdaReading::Inferred
            };
            let cfg = figure_preset(&name, reading)?;
            let params = format!(
                "preset={name} lambda_reading={reading} {}",
                cfg.canonical_params()
            );
            run_and_write(&cfg, &params, &out)?;
            Ok(true)
        }
        Command::Check { seed } => {
            let reports = checks::run_all(seed)?;
            for r in &reports {
                println!("{r}");
            }
            Ok(reports.iter().all(|r| r.passed))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: property checks failed");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
