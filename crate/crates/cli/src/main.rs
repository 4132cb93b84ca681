use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::Failure;

#[derive(Debug, Parser)]
#[command(name = "easy-diagrams", version, about = "Permutation and pairing diagram calculus")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide the class generated by a set of diagrams.
    Classify {
        #[arg(value_enum)]
        what: ClassifyKind,
        /// Generators separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
    /// Saturate generators under the category operations.
    Closure {
        #[command(subcommand)]
        of: ClosureKind,
    },
    /// Dimension of the morphism space of an easy quantum group.
    HomDim {
        #[arg(long)]
        model: String,
        #[arg(short = 'N')]
        n: usize,
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'l')]
        l: usize,
    },
    /// Gram matrix of all pairings of one shape in a family.
    Gram {
        #[arg(long)]
        family: String,
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'l')]
        l: usize,
        #[arg(short = 'N')]
        n: usize,
    },
    /// Kronecker symbol of a pairing on index tuples.
    Delta {
        #[arg(long)]
        pairing: String,
        #[arg(long, value_delimiter = ',')]
        upper: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        lower: Vec<usize>,
        #[arg(short = 'N')]
        n: usize,
    },
    /// Pass between affine and projective categories.
    Dualize {
        #[arg(long, value_enum)]
        dir: Direction,
        #[arg(long)]
        gens: String,
        /// Largest number of points per diagram.
        #[arg(long)]
        cap: usize,
        /// Report whether the round trip is exact instead of the truncation.
        #[arg(long)]
        roundtrip: bool,
    },
    /// Numerical checks of matrix models.
    Verify {
        #[command(subcommand)]
        what: VerifyKind,
    },
    /// List the pairings of one shape in a family.
    Enumerate {
        #[arg(long)]
        family: String,
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'l')]
        l: usize,
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassifyKind {
    Sphere,
    Projective,
    Easy,
    ProjEasy,
}

#[derive(Debug, Subcommand)]
enum ClosureKind {
    /// Closure of permutations under composition, padding and pair removal.
    Perms {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        cap: usize,
        /// Report a derivation of this permutation.
        #[arg(long)]
        witness: Option<String>,
        /// Report how every element was first obtained.
        #[arg(long)]
        provenance: bool,
    },
    /// Category of pairings generated by the given diagrams.
    Pairings {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        cap: usize,
        /// Compare the result with a family of pairings.
        #[arg(long)]
        compare: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Direction {
    A2p,
    P2a,
}

#[derive(Debug, Subcommand)]
enum VerifyKind {
    Model(ModelArgs),
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    kind: ModelKind,
    #[arg(short = 'N')]
    n: usize,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelKind {
    Halflib,
    ProjReal,
    ProjComplex,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match commands::run(cli.command) {
        Ok(value) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&value)
            } else {
                serde_json::to_string(&value)
            };
            println!("{}", text.expect("JSON values always serialize"));
            ExitCode::SUCCESS
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
