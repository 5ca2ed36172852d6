//! `sqrtpc`: check, generate and translate algebraic proof certificates.
//!
//! Every command prints one JSON document on stdout. Exit status is 0 on
//! success, 1 when a well-formed certificate is invalid or an audit fails,
//! and 2 for unreadable input or bad flags, with an error document on stderr.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use sqrtpc::proofcore::SystemKind;

use commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "sqrtpc", version, about = "Algebraic proof certificates: checking, generation and translation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a proof (`--proof`) or a Res-Lin certificate (`--reslin`).
    #[command(group(ArgGroup::new("input").required(true).args(["proof", "reslin"])))]
    Check {
        #[arg(long)]
        proof: Option<PathBuf>,
        #[arg(long)]
        reslin: Option<PathBuf>,
        /// Res-Lin axioms, overriding those in the certificate.
        #[arg(long, requires = "reslin")]
        axioms: Option<PathBuf>,
        /// Expected proof system; must agree with the file.
        #[arg(long, conflicts_with = "reslin")]
        system: Option<SystemKind>,
        /// Report every problem, not only the first.
        #[arg(long)]
        all_errors: bool,
    },
    /// Write the BVP_n instance.
    GenBvp {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the brute-force ℤ refutation of BVP_n, ending in (2ⁿ)!.
    OracleRefute {
        #[arg(long)]
        n: u32,
        /// Instance file to refute; must be BVP_n.
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Lift the guard on n.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Translate a Res-Lin refutation into Ext-PC√ over ℚ.
    Translate {
        #[arg(long)]
        reslin: PathBuf,
        #[arg(long)]
        axioms: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert an Ext-PC√ refutation over ℚ into one over ℤ.
    Rationalize {
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the conversion constants.
        #[arg(long)]
        state: Option<PathBuf>,
        /// Scale square-root steps by the tracked constants instead of the
        /// least common denominator.
        #[arg(long)]
        faithful_constants: bool,
    },
    /// Check that every prime p ≤ 2ⁿ divides the final constant.
    Audit {
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        n: u32,
    },
    /// Replay a BVP_n refutation at x = bits(k) modulo k + 1.
    Trace {
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u64,
    },
    /// Size, degree and line count.
    Measure {
        #[arg(long)]
        proof: PathBuf,
    },
    /// Primes below N and the bit length of their product.
    Primes {
        #[arg(long)]
        below: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let f = Failure::usage(e.to_string());
            eprintln!("{}", f.to_json());
            return ExitCode::from(f.exit);
        }
    };
    match commands::run(cli.command) {
        Ok(outcome) => {
            println!("{}", outcome.json);
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(f) => {
            let doc = f.to_json();
            println!("{doc}");
            eprintln!("{doc}");
            ExitCode::from(f.exit)
        }
    }
}
