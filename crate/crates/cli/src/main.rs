use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod parse;

use commands::Output;

/// Exact (co)homology of balanced complexes and the cyclotomic complexes K_A.
///
/// Groups are JSON arrays of cyclic factors per color, e.g. '[[2,2],[3]]'.
/// Primes are comma lists, e.g. 2,3,5. With --groups, --set takes either a
/// JSON array of elements ('[[0,0],[1,2]]') or a comma list of element
/// positions in lexicographic order; with --primes it is a comma list of
/// indices j in 0..=φ(n). An empty --set "" is the empty set.
///
/// Exit status: 0 all checks hold, 1 a mismatch was found, 2 usage error.
#[derive(Parser, Debug)]
#[command(name = "balacyc", version, about, long_about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients c_0 … c_φ(n) of the cyclotomic polynomial Φ_n.
    Cyclo { n: String },
    /// Reduced homology and cohomology of X(A) or of K_A.
    Homology {
        #[command(flatten)]
        target: Target,
        /// The top cells; defaults to all of G (or all of 0..=φ(n)).
        #[arg(long, allow_hyphen_values = true)]
        set: Option<String>,
    },
    /// Coboundary lattice equals Fourier lattice on each selected A ⊆ G.
    VerifyProp1 {
        /// Colors as JSON, e.g. '[[2],[3]]'.
        #[arg(long)]
        groups: String,
        #[command(flatten)]
        select: Select,
    },
    /// Pulled-back coboundaries equal C_B(A) on each selected A.
    VerifyProp2 {
        #[arg(long)]
        primes: String,
        #[command(flatten)]
        select: Select,
    },
    /// Homology and cohomology of K_A match the cyclotomic table.
    VerifyTheorems {
        #[arg(long)]
        primes: String,
        #[command(flatten)]
        select: Select,
    },
    /// The truncated coefficient vector of Φ_n is a top coboundary.
    Fuchs {
        #[arg(long)]
        primes: String,
    },
    /// The standard verification campaign, or one read from --config.
    Sweep {
        /// JSON sweep configuration; see the README for the format.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = balacyc::sweep::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Target {
    /// Colors as JSON, e.g. '[[2],[3]]'.
    #[arg(long)]
    groups: Option<String>,
    /// Distinct primes, e.g. 2,3,5.
    #[arg(long)]
    primes: Option<String>,
}

/// Which subsets to check. Without any of these the whole universe is used.
#[derive(Args, Debug, Clone)]
pub struct Select {
    /// An explicit subset; may be repeated.
    #[arg(long = "set", allow_hyphen_values = true)]
    pub sets: Vec<String>,
    /// Every subset.
    #[arg(long)]
    pub all_subsets: bool,
    /// Every subset of at most this size.
    #[arg(long)]
    pub max_size: Option<usize>,
    /// This many additional distinct random subsets.
    #[arg(long, default_value_t = 0)]
    pub random: usize,
    #[arg(long, default_value_t = balacyc::sweep::DEFAULT_SEED)]
    pub seed: u64,
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("BALACYC_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| format!("BALACYC_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("BALACYC_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn dispatch(cmd: &Command) -> Result<Output, String> {
    match cmd {
        Command::Cyclo { n } => commands::cyclo(n),
        Command::Homology { target, set } => match (&target.groups, &target.primes) {
            (Some(g), _) => commands::homology_groups(g, set.as_deref()),
            (_, Some(p)) => commands::homology_primes(p, set.as_deref()),
            _ => Err("one of --groups or --primes is required".into()),
        },
        Command::VerifyProp1 { groups, select } => commands::verify_prop1(groups, select),
        Command::VerifyProp2 { primes, select } => commands::verify_prop2(primes, select),
        Command::VerifyTheorems { primes, select } => commands::verify_theorems(primes, select),
        Command::Fuchs { primes } => commands::fuchs(primes),
        Command::Sweep { config, seed } => commands::sweep(config.as_deref(), *seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let out = match dispatch(&cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.format {
        Format::Table => out.table.clone(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json).expect("JSON values serialize");
            s.push('\n');
            s
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if out.verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
