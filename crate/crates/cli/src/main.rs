use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

mod commands;
mod config;

use commands::Summary;
use config::{CommonArgs, RunConfig};

/// Orthogonal trigonometric polynomials and their periodic
/// Riemann–Hilbert problem: tables, residual reports and sweeps.
#[derive(Debug, Parser)]
#[command(name = "otp-rh", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fourier moments mu_k of the weight for k = 0..=n (moments.csv)
    Moments(CommonArgs),
    /// Monic OTP coefficients up to degree 2n and leading constants (otp_coeffs.csv, leading.csv)
    Otp(CommonArgs),
    /// Szego functions on the axis and their product residual (szego.csv)
    Szego(CommonArgs),
    /// Jump and growth residuals of Y, F, S and R at degree n (residuals.csv, stages.json)
    RhVerify(CommonArgs),
    /// ||G - I||, k_n and band residual ratios over a degree range (decay.csv)
    DecaySweep(SweepArgs),
    /// Predicted versus actual monic polynomials on the axis (asymptotics.csv)
    Asymptotics(AsymptoticArgs),
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Reference degree for the band residual (at least the top of the range)
    #[arg(long)]
    n_ref: Option<usize>,
}

#[derive(Debug, Args)]
struct AsymptoticArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Degree of the R used for the prediction
    #[arg(long, default_value_t = otp_rh::rhchain::asymptotics::DEFAULT_N_REF)]
    n_ref: usize,
    /// Comma-separated evaluation points on the axis
    #[arg(long, value_delimiter = ',')]
    x: Vec<f64>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Moments(_) => "moments",
            Command::Otp(_) => "otp",
            Command::Szego(_) => "szego",
            Command::RhVerify(_) => "rh-verify",
            Command::DecaySweep(_) => "decay-sweep",
            Command::Asymptotics(_) => "asymptotics",
        }
    }

    fn common(&self) -> &CommonArgs {
        match self {
            Command::Moments(c) | Command::Otp(c) | Command::Szego(c) | Command::RhVerify(c) => c,
            Command::DecaySweep(a) => &a.common,
            Command::Asymptotics(a) => &a.common,
        }
    }
}

enum Status {
    Passed,
    AssertionFailed(Vec<String>),
}

fn run(cli: &Cli) -> Result<Status> {
    let start = Instant::now();
    let cfg = RunConfig::resolve(cli.command.common())?;
    let outcome = match &cli.command {
        Command::Moments(_) => commands::moments(&cfg)?,
        Command::Otp(_) => commands::otp(&cfg)?,
        Command::Szego(_) => commands::szego(&cfg)?,
        Command::RhVerify(_) => commands::rh_verify(&cfg)?,
        Command::DecaySweep(a) => commands::decay_sweep(&cfg, a.n_ref)?,
        Command::Asymptotics(a) => {
            let points = if a.x.is_empty() { commands::default_points() } else { a.x.clone() };
            commands::asymptotics(&cfg, a.n_ref, &points)?
        }
    };
    let summary = Summary {
        command: cli.command.name(),
        weight_spec: cfg.weight_spec.clone(),
        n: outcome.n.clone(),
        r: outcome.contour.map(|c| c.r).or(cfg.r),
        epsilon: outcome.contour.map(|c| c.epsilon).or(cfg.epsilon),
        max_residual: outcome.max_residual,
        assertions_passed: outcome.failures.is_empty(),
        elapsed_ms: start.elapsed().as_millis(),
    };
    commands::emit(&cfg, &outcome, &summary)?;
    println!("{}", serde_json::to_string_pretty(&summary)?);
    if outcome.failures.is_empty() {
        Ok(Status::Passed)
    } else {
        Ok(Status::AssertionFailed(
            outcome
                .failures
                .iter()
                .map(|(file, detail)| commands::failure_line(&cfg, file, detail))
                .collect(),
        ))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                // --help and --version
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("{first}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(Status::Passed) => ExitCode::SUCCESS,
        Ok(Status::AssertionFailed(lines)) => {
            for line in lines {
                eprintln!("{line}");
            }
            ExitCode::from(2)
        }
        Err(e) => {
            let chain: Vec<String> = e.chain().map(|c| c.to_string()).collect();
            eprintln!("error: {}", chain.join(": ").replace('\n', " "));
            ExitCode::from(1)
        }
    }
}
