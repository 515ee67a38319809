use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use equispec::{
    cmd_analyze, cmd_construct, cmd_enlarge, cmd_graph, cmd_interlace, cmd_refine, CliError,
    CmdOutput, GlobalOpts, EXIT_INPUT_ERROR,
};
use equispec_core::Tolerances;

/// Equitable partitions, quotient matrices and distinct-eigenvalue capture.
///
/// Matrix files hold one whitespace-separated row per line; partition files
/// hold one cell of 1-based indices per line. The environment variable
/// EQUISPEC_SEED is reserved and currently unused.
#[derive(Parser)]
#[command(name = "equispec", version, about, max_term_width = 100)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Equitability tolerance (0 = 1e-8 * max(1, ||M||_inf)).
    #[arg(long, global = true, default_value_t = 0.0)]
    tol_equitable: f64,

    /// Eigenvalue cluster tolerance (0 = 1e-6 * max(1, rho(M))).
    #[arg(long, global = true, default_value_t = 0.0)]
    tol_cluster: f64,

    /// Numerical rank tolerance (0 = 1e-10 * max(1, sigma_max)).
    #[arg(long, global = true, default_value_t = 0.0)]
    tol_rank: f64,

    /// Use column sums instead of row sums (transposes input matrices).
    #[arg(long, global = true)]
    transpose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Capture analysis of a matrix under a partition (default: coarsest
    /// equitable refinement of the one-cell partition).
    Analyze {
        /// Matrix file.
        matrix: PathBuf,
        /// Partition file (optional).
        partition: Option<PathBuf>,
    },
    /// Coarsest equitable refinement of a seed partition.
    Refine {
        /// Matrix file.
        matrix: PathBuf,
        /// Seed partition file (default: one cell).
        seed: Option<PathBuf>,
    },
    /// Search minimal cell-split enlargements reaching full capture.
    Enlarge {
        /// Matrix file.
        matrix: PathBuf,
        /// Equitable seed partition file.
        partition: PathBuf,
        /// Split budget (1-3).
        #[arg(long, default_value_t = 2)]
        max_splits: usize,
    },
    /// Build a matrix family with prescribed spectrum.
    Construct {
        /// Family: m3 | m4triple | m4double | m4three | mn2 | mprime | mab
        /// | alphablock | atik.
        #[arg(long)]
        family: String,
        /// Comma-separated key=value parameters (e.g. c11=1,c12=-8,...).
        #[arg(long, default_value = "")]
        params: String,
        /// Run the capture analysis on the result.
        #[arg(long)]
        check: bool,
    },
    /// Build a graph matrix (and designated partition).
    Graph {
        /// Family: pendant_k3 | complete | complete_bipartite |
        /// complete_split | custom.
        #[arg(long)]
        family: String,
        /// Comma-separated key=value parameters (e.g. a=2 or omega=3,alpha=2).
        #[arg(long, default_value = "")]
        params: String,
        /// Edge-list file for --family custom.
        #[arg(long)]
        edges: Option<PathBuf>,
        /// Matrix kind: adjacency | weighted_adjacency | laplacian |
        /// signless_laplacian | distance | distance_laplacian |
        /// distance_signless_laplacian.
        #[arg(long, default_value = "adjacency")]
        kind: String,
        /// Weight preset for weighted_adjacency: unit | zagreb1 | sombor |
        /// geometric_arithmetic | abc.
        #[arg(long)]
        phi: Option<String>,
        /// Chain into the capture analysis.
        #[arg(long)]
        analyze: bool,
    },
    /// Interlacing report of a symmetric matrix against its quotient.
    Interlace {
        /// Matrix file.
        matrix: PathBuf,
        /// Partition file.
        partition: PathBuf,
    },
}

fn run(cli: &Cli) -> Result<CmdOutput, CliError> {
    let opts = GlobalOpts {
        json: cli.json,
        tol: Tolerances {
            equitable: cli.tol_equitable,
            cluster: cli.tol_cluster,
            rank: cli.tol_rank,
        },
        transpose: cli.transpose,
    };
    match &cli.command {
        Command::Analyze { matrix, partition } => cmd_analyze(matrix, partition.as_deref(), &opts),
        Command::Refine { matrix, seed } => cmd_refine(matrix, seed.as_deref(), &opts),
        Command::Enlarge {
            matrix,
            partition,
            max_splits,
        } => cmd_enlarge(matrix, partition, *max_splits, &opts),
        Command::Construct {
            family,
            params,
            check,
        } => cmd_construct(family, params, *check, &opts),
        Command::Graph {
            family,
            params,
            edges,
            kind,
            phi,
            analyze,
        } => cmd_graph(
            family,
            params,
            edges.as_deref(),
            kind,
            phi.as_deref(),
            *analyze,
            &opts,
        ),
        Command::Interlace { matrix, partition } => cmd_interlace(matrix, partition, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // Tolerate a closed pipe (e.g. `equispec ... | head`).
            use std::io::Write;
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            let _ = handle.write_all(out.stdout.as_bytes());
            if !out.stdout.ends_with('\n') && !out.stdout.is_empty() {
                let _ = handle.write_all(b"\n");
            }
            let _ = handle.flush();
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}
