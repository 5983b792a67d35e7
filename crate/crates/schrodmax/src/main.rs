use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use schrodmax::cli::{cmd_exponents, cmd_ladder, resolve_config, LadderOverrides};
use schrodmax::verify::cmd_verify;
use schrodmax::Error;

const LADDER_LONG_ABOUT: &str = "\
Runs the tube scan, exceptional-set count, and Lp estimate at each R in the
ladder, then fits the three observables against their predicted exponents.

The supremum in time is taken over the adapted window
t = -x1/(2R) ± c_win·R^(-3/2), clipped to (0, 1/R], not over the full time
interval. Restricting the times can only under-report the supremum, so every
reported amplitude, measure, and Lp value is a certified lower bound.

Writes results.csv (one row per R, config in the first line), fits.json, and
plot.svg into --out. Reruns with the same config and seed are byte-identical.";

#[derive(Parser)]
#[command(
    name = "schrodmax",
    version,
    about = "Frequency-brick wave packets under the free Schrödinger flow: \
amplitude, exceptional-set, and Lp growth experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification suite and write verify_report.json.
    Verify {
        /// Directory for the report and the suite's scratch runs.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Corrupt a named component to prove the suite catches it.
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Run the R-ladder experiment; writes results.csv, fits.json, plot.svg.
    #[command(long_about = LADDER_LONG_ABOUT)]
    Ladder {
        /// JSON config file; command-line flags override its values.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Ambient dimension n.
        #[arg(long)]
        n: Option<usize>,
        /// Leading (base) axes m; m ≥ 2 requires --fhat.
        #[arg(long)]
        m: Option<usize>,
        /// Lebesgue exponent as a rational string, e.g. 2 or 5/2.
        #[arg(long)]
        p: Option<String>,
        /// Comma-separated frequency scales, strictly increasing.
        #[arg(long = "R", value_delimiter = ',', allow_hyphen_values = false)]
        ladder: Option<Vec<f64>>,
        /// Root seed for the Monte Carlo strata.
        #[arg(long)]
        seed: Option<u64>,
        /// Monte Carlo budget for the ball complement.
        #[arg(long)]
        mc: Option<usize>,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Frequency-grid JSON file supplying the base factor.
        #[arg(long)]
        fhat: Option<PathBuf>,
    },
    /// Write the exact exponent tables (exponents.csv, theorem_exponents.csv).
    Exponents {
        /// Largest dimension tabulated; must be ≥ 3.
        #[arg(long)]
        n_max: usize,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

/// 0 pass, 1 check failure, 2 usage/config error, 3 I/O error.
fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::InvalidArgument(_)
        | Error::Capacity(_)
        | Error::GridParse { .. }
        | Error::GridValidation { .. } => 2,
        Error::Io { .. } => 3,
        Error::LadderRung { source, .. } => exit_code_for(source),
    }
}

fn run(command: Command) -> schrodmax::Result<bool> {
    match command {
        Command::Verify { out, inject_fault } => {
            let fault = inject_fault.as_deref().map(str::parse).transpose()?;
            let outcome = cmd_verify(&out, fault)?;
            Ok(outcome.all_pass)
        }
        Command::Ladder { config, n, m, p, ladder, seed, mc, out, fhat } => {
            let overrides = LadderOverrides {
                n,
                m,
                p,
                ladder,
                seed,
                mc_samples: mc,
                out,
                fhat,
            };
            let resolved = resolve_config(config.as_deref(), &overrides)?;
            cmd_ladder(&resolved)?;
            Ok(true)
        }
        Command::Exponents { n_max, out } => {
            cmd_exponents(n_max, &out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code_for(&error))
        }
    }
}
