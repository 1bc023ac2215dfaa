//! `indcx`: distances, independence complexes, path homology, persistence
//! and capacity bounds from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use indcomplex::{Coefficients, Window};

/// Every flag can also be set through an `INDCX_*` environment variable,
/// e.g. `INDCX_WINDOW=2:inf`.
#[derive(Debug, Parser)]
#[command(name = "indcx", version, about = "Constraint independence complexes of digraphs and graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Edge-list file, `-` for stdin, or a generator spec such as
    /// `gen:zigzag,n=8` or `cycle_digraph:r=6`.
    #[arg(long, global = true, env = "INDCX_INPUT")]
    pub input: Option<String>,

    /// Window `n:m` with `m` an integer or `inf`; admits distances n < d <= m.
    #[arg(long, global = true, env = "INDCX_WINDOW")]
    pub window: Option<Window>,

    /// Coefficients: `q`, `gf2` or `gf<p>` for a prime p.
    #[arg(long, global = true, env = "INDCX_COEFF", default_value = "q")]
    pub coeff: Coefficients,

    /// Highest simplex dimension enumerated.
    #[arg(long, global = true, env = "INDCX_DIM_CAP", default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub dim_cap: u64,

    /// Highest path degree built; homology is reported below it.
    #[arg(long, global = true, env = "INDCX_MAX_LEN", default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_len: u64,

    /// Largest strong power for capacity bounds.
    #[arg(long, global = true, env = "INDCX_PMAX", default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub pmax: u64,

    /// Worker threads; 0 lets the runtime decide.
    #[arg(long, global = true, env = "INDCX_JOBS", default_value_t = 0)]
    pub jobs: usize,

    #[arg(long, global = true, env = "INDCX_FORMAT", value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// Branch-node budget per clique search.
    #[arg(long, global = true, env = "INDCX_BUDGET", default_value_t = indcomplex::capacity::DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    /// One JSON object per line, each with a `schema` field.
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SliceKind {
    /// `m = inf`, lower threshold decreasing.
    N,
    /// Lower threshold fixed, upper threshold increasing.
    M,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symmetrized distance table.
    Dist,
    /// Window complex: simplex counts, dimension and Betti numbers.
    Ind {
        /// Also list every simplex.
        #[arg(long)]
        list: bool,
    },
    /// Betti numbers of the Inf and Sup path chain complexes.
    PathHomology,
    /// Barcode of a one-parameter slice.
    Persist {
        #[arg(long, value_enum)]
        slice: SliceKind,
        /// Lower threshold of an `m` slice (default 1).
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Ranks of all inclusions on the threshold grid.
    RankInvariant {
        /// Only `auto` (the distinct distance values) is supported.
        #[arg(long, default_value = "auto")]
        grid: String,
    },
    /// Independence numbers of strong powers and the capacity lower bound.
    Capacity,
    /// Strong power of the input, as an edge list.
    Product {
        #[arg(long, default_value_t = 2)]
        power: usize,
    },
    /// Geodesic radius of a vertex map into a target graph.
    CheckGeodesic {
        /// Target graph, in the same forms as `--input`.
        #[arg(long)]
        target: String,
        /// Images of vertices 0, 1, ... as a comma-separated list.
        #[arg(long)]
        map: String,
        /// Fail unless the map is geodesic up to this doubled radius (`inf`
        /// requires an embedding).
        #[arg(long)]
        radius: Option<indcomplex::Dist>,
    },
    /// Enumerate automorphisms and check they act invertibly.
    CheckAutomorphisms,
    /// Affine regularity of vertex coordinates on the window complex.
    CheckRegular {
        /// JSON file of rational coordinates per vertex.
        #[arg(long)]
        coords: PathBuf,
        /// Simplices with up to `k` vertices must be affinely independent.
        #[arg(long)]
        k: usize,
    },
    /// Run property suites and report pass/fail per claim.
    Verify {
        /// Claim id; repeat for several, omit for all.
        #[arg(long)]
        claim: Vec<String>,
    },
}

/// Exit status: 0 success, 1 a check failed, 2 usage error, 3 timeout.
pub enum Outcome {
    Ok,
    CheckFailed,
    Timeout,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("indcx: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = output::Sink::new(cli.format);
    match commands::run(&cli, &mut out) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Ok(Outcome::Timeout) => ExitCode::from(3),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("indcx: {e:#}");
            match e.downcast_ref::<indcomplex::Error>() {
                Some(indcomplex::Error::Timeout { .. }) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<std::io::Error>())
        .any(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}
