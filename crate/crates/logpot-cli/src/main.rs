//! Batch tool for planar charge configurations: solve equilibrium points,
//! certify the majorization relations between equilibria and charges, check
//! the Hausdorff bounds, explore truncation ladders of infinite families,
//! and run conjecture sweeps.
//!
//! Exit codes: 0 success, 1 theorem-check failure, 2 input error,
//! 3 numerical failure.

use clap::{Args, Parser, Subcommand};
use logpot_cli::run::{self, Failure};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "logpot", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Input configuration file
    input: PathBuf,
    /// Output directory for report files
    #[arg(long)]
    out: Option<PathBuf>,
    /// Residual / certification tolerance
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Merge coincident input points, summing their charges
    #[arg(long)]
    merge_coincident: bool,
    /// Seed for randomized sweeps
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker-thread cap for per-level / per-trial parallelism
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Compute equilibrium points, barycenter, and weighted deviation
    Solve {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// LP-check the level-k majorization between equilibria and charges
    Majorize {
        #[command(flatten)]
        common: CommonArgs,
        /// Hierarchy level (subset size)
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Check the reversed relation instead (expected NotDominated)
        #[arg(long)]
        swap: bool,
    },
    /// Construct and verify certificates for all levels, with the subset
    /// product identities and moment margins
    Hierarchy {
        #[command(flatten)]
        common: CommonArgs,
        /// Level to check, or all levels when omitted / `all`
        #[arg(long)]
        k: Option<String>,
    },
    /// Hausdorff-distance bounds against the weighted standard deviation
    Hausdorff {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Truncate an infinite family and track zeros across levels
    Ladder {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated strictly increasing truncation sizes
        #[arg(long, default_value = "4,8,16,32")]
        levels: String,
    },
    /// Randomized probes of the open hierarchy / inertia inequalities
    Conjecture {
        #[command(flatten)]
        common: CommonArgs,
        /// Subset size (default: sweep small k)
        #[arg(long)]
        k: Option<usize>,
        /// Symmetric-function order (default: sweep m <= k)
        #[arg(long)]
        m: Option<usize>,
        /// Moment exponent for the inertia trials
        #[arg(long)]
        alpha: Option<f64>,
        /// Number of randomized trials
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

fn dispatch(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Solve { common } => run::solve(
            &common.input,
            &run::out_dir(&common.out),
            common.tol,
            common.merge_coincident,
        ),
        Command::Majorize { common, k, swap } => run::majorize(
            &common.input,
            &run::out_dir(&common.out),
            common.tol,
            common.merge_coincident,
            k,
            swap,
        ),
        Command::Hierarchy { common, k } => {
            let k = match k.as_deref() {
                None | Some("all") => None,
                Some(text) => Some(
                    text.parse::<usize>()
                        .map_err(|_| Failure::Input(format!("bad k `{text}`")))?,
                ),
            };
            run::hierarchy(
                &common.input,
                &run::out_dir(&common.out),
                common.merge_coincident,
                &run::HierarchyOpts {
                    k,
                    tol: common.tol,
                    seed: common.seed,
                    threads: common.threads,
                },
            )
        }
        Command::Hausdorff { common } => run::hausdorff_cmd(
            &common.input,
            &run::out_dir(&common.out),
            common.tol,
            common.merge_coincident,
        ),
        Command::Ladder { common, levels } => {
            let levels = run::parse_levels(&levels)?;
            run::ladder(
                &common.input,
                &run::out_dir(&common.out),
                &levels,
                common.merge_coincident,
            )
        }
        Command::Conjecture {
            common,
            k,
            m,
            alpha,
            trials,
        } => run::conjecture(
            &common.input,
            &run::out_dir(&common.out),
            common.merge_coincident,
            &run::ConjectureOpts {
                k,
                m,
                alpha,
                trials,
                seed: common.seed,
                tol: common.tol,
                threads: common.threads,
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => {
            eprintln!("theorem-level check failed (see report files)");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
