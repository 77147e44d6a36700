mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use symrank_core::Error;

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "symrank", version, about = "Symmetric ranks of G-lattices and the tables built from them")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Cap on enumerated orbit elements, box vectors and short vectors.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Directory with external data files; overrides SYMRANK_DATA_DIR.
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weyl group lattice tables.
    Rootsys {
        #[command(subcommand)]
        cmd: RootsysCmd,
    },
    /// Lower bounds on the representation dimension of n-dimensional tori.
    Rdim {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Re-run the checks behind a theorem.
    Verify {
        #[arg(value_enum)]
        name: Theorem,
        #[arg(long, default_value_t = 7)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        a: u64,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 2000)]
        horizon: u64,
    },
    /// Theta series prefix of a positive definite form.
    Theta {
        /// Use the identity form of this dimension.
        #[arg(long, conflicts_with = "gram")]
        identity: Option<usize>,
        /// JSON matrix file with the Gram matrix.
        #[arg(long)]
        gram: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        horizon: u64,
    },
    /// Factorization of x^p + 1 over GF(2) and the cyclic subspaces.
    Gf2 {
        #[command(subcommand)]
        cmd: Gf2Cmd,
    },
    /// Monomial groups of prime degree.
    Monomial {
        #[command(subcommand)]
        cmd: MonomialCmd,
    },
    /// Symmetric rank of a lattice by bounded search or from one orbit.
    Symrank {
        /// Root system such as E6; its Weyl group acts on weight coordinates.
        #[arg(long, conflicts_with = "group")]
        root_system: Option<String>,
        /// weight, root, intermediate:d or intermediate_d:i (with --root-system).
        #[arg(long, default_value = "weight")]
        lattice: String,
        /// Group JSON file: {"dim", "generators", "gram"?, "label"?}.
        #[arg(long)]
        group: Option<PathBuf>,
        /// JSON matrix whose rows span the lattice; defaults to Z^n.
        #[arg(long)]
        lattice_file: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        radius: u32,
        #[arg(long, value_enum, default_value_t = Mode::Search)]
        mode: Mode,
        /// Orbit representative for --mode orbit, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
    },
    /// Inequality certificates.
    Bounds {
        #[command(subcommand)]
        cmd: BoundsCmd,
    },
}

#[derive(Subcommand, Debug)]
enum RootsysCmd {
    /// Symmetric ranks of every Weyl group lattice up to the given rank.
    Table {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Gf2Cmd {
    FactorXp1 {
        #[arg(long)]
        p: u64,
    },
    Subspaces {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand, Debug)]
enum MonomialCmd {
    Classify {
        #[arg(long)]
        p: u64,
    },
    Prop515 {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand, Debug)]
enum BoundsCmd {
    /// Threshold scan for the prime-dimension bound.
    Prime {
        #[arg(long)]
        a: u64,
        /// II.i, II.ii, III.i or III.ii; all cases when omitted.
        #[arg(long)]
        case: Option<String>,
        #[arg(long, default_value_t = 2000)]
        horizon: u64,
    },
    /// Simple-group family scan and sporadic check.
    AlmostSimple {
        /// Data file; defaults to simple_groups.json in the data directory, then the bundled file.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        n_max: u64,
        #[arg(long, default_value_t = 128)]
        q_max: u64,
    },
    PrimeOfForm {
        #[arg(long, default_value_t = 100)]
        qmax: u64,
        #[arg(long, default_value_t = 12)]
        mmax: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Theorem {
    #[value(name = "low-dims")]
    LowDims,
    #[value(name = "prop515")]
    Prop515,
    #[value(name = "thmA")]
    ThmA,
    #[value(name = "thmA2")]
    ThmA2,
    #[value(name = "almost-simple")]
    AlmostSimple,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Search,
    Orbit,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => 4,
        Error::MissingExternalData(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context::new(cli.cap, cli.data);
    let report = match commands::run(&ctx, cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    let mut out = std::io::stdout().lock();
    if let Err(e) = report.write(cli.format, &mut out) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if report.mismatch() {
        ExitCode::from(2)
    } else if report.missing_data {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}
