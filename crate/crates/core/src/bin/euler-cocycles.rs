use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use euler_cocycles::cocycles::CocycleKind;
use euler_cocycles::runner::{self, EulerArgs, EvalArgs, Outcome, VerifyArgs, DEFAULT_SAMPLES};

/// Euler cocycles of volume-preserving diffeomorphism groups of S^1 and S^2.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a cocycle on tuples of named words, one JSON line per tuple.
    Eval {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        words: PathBuf,
        #[arg(long)]
        request: PathBuf,
        /// Override the request's cocycle kind.
        #[arg(long)]
        kind: Option<CocycleKind>,
        /// Override the request's k.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Check an identity on random samples.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Only check this representative (all by default).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Pair a cocycle with the homology of a finite rotation group.
    Euler {
        #[arg(long)]
        config: PathBuf,
        /// e.g. cyclic:5:axis=0,0,1, klein4, dihedral:3
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value = "c")]
        kind: CocycleKind,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                runner::EXIT_PARSE as u8
            } else {
                0
            });
        }
    };
    let outcome = match cli.command {
        Command::Eval {
            config,
            words,
            request,
            kind,
            k,
            seed,
            jobs,
        } => runner::cmd_eval(&EvalArgs {
            config,
            words,
            request,
            seed,
            kind,
            k,
            jobs,
        }),
        Command::Verify {
            config,
            suite,
            samples,
            seed,
            k,
            jobs,
        } => runner::cmd_verify(&VerifyArgs {
            config,
            suite,
            samples,
            seed,
            k,
            jobs,
        }),
        Command::Euler {
            config,
            subgroup,
            degree,
            kind,
            k,
            seed,
            jobs,
        } => runner::cmd_euler(&EulerArgs {
            config,
            subgroup,
            degree,
            kind,
            k,
            seed,
            jobs,
        }),
    };
    emit(outcome)
}

fn emit(outcome: Outcome) -> ExitCode {
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    let mut out = std::io::stdout().lock();
    if out
        .write_all(outcome.stdout.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        return ExitCode::FAILURE;
    }
    ExitCode::from(outcome.code as u8)
}
