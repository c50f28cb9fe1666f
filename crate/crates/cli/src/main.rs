use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gonal_cli::commands::{self, AtlasOptions, Failure, Suite, VerifyOptions, ALL_SUITES, EXIT_VERIFICATION};
use gonal_cli::ReportEnvelope;
use gonal_core::atlas::DEFAULT_ATLAS_CAP;
use gonal_core::groupring::DEFAULT_GROUP_CAP;

#[derive(Parser)]
#[command(name = "gonal", version, about = "Exact invariants of q-homology covers of cyclic p-gonal curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    /// Odd prime order of the p-gonal automorphism
    #[arg(long)]
    p: u32,
    /// Prime q of the homology cover, q != p
    #[arg(long)]
    q: u32,
    /// Number of branch points, r >= 3
    #[arg(long)]
    r: u32,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Genera, Prym dimensions and orbit counts
    Invariants {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Conjugacy classes of maximal subgroups with their cores
    Atlas {
        #[command(flatten)]
        params: ParamArgs,
        /// List every member of each orbit
        #[arg(long)]
        orbits: bool,
        /// Print a basis for each core
        #[arg(long)]
        cores: bool,
        /// Show only the first N classes
        #[arg(long, value_name = "N")]
        limit: Option<usize>,
        /// Largest q^n to enumerate
        #[arg(long, env = "GONAL_ATLAS_CAP", default_value_t = DEFAULT_ATLAS_CAP)]
        cap: u128,
        #[command(flatten)]
        out: Output,
    },
    /// Galois closure of the cover attached to a subgroup given by generator words
    Galois {
        #[command(flatten)]
        params: ParamArgs,
        /// File with one generator word per line
        #[arg(long, value_name = "FILE")]
        subgroup: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Complex and rational irreducible representations
    Reps {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Run verification suites
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Largest group order p q^n for the group-ring suite
        #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
        cap: u128,
        /// Restrict the identity and group-ring suites to one parameter set
        #[arg(long, requires_all = ["q", "r"])]
        p: Option<u32>,
        #[arg(long, requires_all = ["p", "r"])]
        q: Option<u32>,
        #[arg(long, requires_all = ["p", "q"])]
        r: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Groupring,
    Counts,
    Identities,
    Fixtures,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Groupring => vec![Suite::Groupring],
            SuiteArg::Counts => vec![Suite::Counts],
            SuiteArg::Identities => vec![Suite::Identities],
            SuiteArg::Fixtures => vec![Suite::Fixtures],
            SuiteArg::All => ALL_SUITES.to_vec(),
        }
    }
}

fn params(a: ParamArgs) -> Result<gonal_core::CoverParams, Failure> {
    commands::params(a.p, a.q, a.r)
}

fn run(command: Command) -> Result<(ReportEnvelope, bool), Failure> {
    Ok(match command {
        Command::Invariants { params: a, out } => (commands::invariants(&params(a)?)?, out.json),
        Command::Atlas { params: a, orbits, cores, limit, cap, out } => {
            (commands::atlas(&params(a)?, AtlasOptions { orbits, cores, limit, cap })?, out.json)
        }
        Command::Galois { params: a, subgroup, out } => (commands::galois(&params(a)?, &subgroup)?, out.json),
        Command::Reps { params: a, out } => (commands::reps(&params(a)?)?, out.json),
        Command::Verify { suite, cap, p, q, r, out } => {
            let selected = match (p, q, r) {
                (Some(p), Some(q), Some(r)) => Some(commands::params(p, q, r)?),
                _ => None,
            };
            let opts = VerifyOptions { cap, max_n: 6 };
            (commands::verify(&suite.suites(), selected.as_ref(), opts)?, out.json)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((report, json)) => {
            let text = if json { report.to_json() + "\n" } else { report.to_text() };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = std::io::stdout().write_all(text.as_bytes());
            match report.first_failure() {
                None => ExitCode::SUCCESS,
                Some(c) => {
                    eprintln!(
                        "gonal: check failed: {}{}",
                        c.name,
                        c.detail.as_deref().map(|d| format!(": {d}")).unwrap_or_default()
                    );
                    ExitCode::from(EXIT_VERIFICATION)
                }
            }
        }
        Err(f) => {
            eprintln!("gonal: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
