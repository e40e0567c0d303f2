//! `blockcut`: benchmark generation, two-group detection, the sweep and
//! accuracy experiments, and an exhaustive-oracle cross-check.
//!
//! Exit codes: 0 success, 1 runtime failure (eigensolver non-convergence),
//! 2 invalid flags or configuration, 3 file I/O or parse failure.

mod experiments;

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blockcut::{
    brute_force_max_profile, detect, format_sig9, fraction_correct, generate, Graph, Group,
    SbmConfig, Variant,
};
use clap::{Args, Parser, Subcommand};

use experiments::{
    cin_grid, eigen_options, open_out, run_accuracy_experiment, run_sweep_experiment, AccuracySpec,
    SweepSpec,
};

#[derive(Debug)]
pub(crate) enum Failure {
    /// Exit 1: the computation itself failed.
    Runtime(String),
    /// Exit 2: flags or configuration are invalid.
    Usage(String),
    /// Exit 3: a file could not be read, written, or parsed.
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Runtime(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Runtime(m) | Failure::Usage(m) | Failure::Io(m) => m,
        }
    }
}

impl From<blockcut::Error> for Failure {
    fn from(e: blockcut::Error) -> Failure {
        use blockcut::Error as E;
        match &e {
            E::Io(_)
            | E::Parse { .. }
            | E::SelfLoop { .. }
            | E::VertexOutOfRange { .. }
            | E::MultiplicityOverflow { .. } => Failure::Io(e.to_string()),
            E::NonConvergence { .. } => Failure::Runtime(e.to_string()),
            E::InvalidConfig { .. }
            | E::InvalidParameters { .. }
            | E::TooFewVertices { .. }
            | E::TooManyVertices { .. }
            | E::InvalidGroupSize { .. }
            | E::ZeroDegree { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "blockcut",
    version,
    about = "Two-group community detection via likelihood-guided spectral min-cut sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a planted-partition benchmark graph and its true labels.
    Generate(GenerateArgs),
    /// Detect the two-group split of a graph and write a JSON result.
    Detect(DetectArgs),
    /// Sweep-curve experiment: one benchmark network per c_in value.
    Sweep(SweepArgs),
    /// Recovery-accuracy experiment over a c_in grid with replicates.
    Accuracy(AccuracyArgs),
    /// Cross-check the pipeline against the exhaustive oracle (n <= 24).
    OracleCheck(OracleCheckArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Size of planted group 1.
    #[arg(long)]
    n1: usize,
    /// Size of planted group 2.
    #[arg(long)]
    n2: usize,
    /// Mean within-group degree c_in.
    #[arg(long)]
    cin: f64,
    /// Mean between-group degree c_out.
    #[arg(long)]
    cout: f64,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path for the edge list.
    #[arg(long)]
    out: PathBuf,
    /// Output path for the true labels, one per line.
    #[arg(long)]
    truth: PathBuf,
}

#[derive(Args)]
struct DetectArgs {
    /// Path to the edge-list file.
    #[arg(long)]
    graph: PathBuf,
    /// Objective variant: standard or dc.
    #[arg(long, default_value = "dc")]
    variant: Variant,
    /// Eigensolver residual tolerance (default 1e-8).
    #[arg(long)]
    tol: Option<f64>,
    /// Eigensolver iteration cap (default 10*ceil(sqrt(n)) + 200).
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    /// Seed for the eigensolver start vector.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path for the detection result JSON.
    #[arg(long)]
    out: PathBuf,
    /// Optional output path for the full sweep curve CSV.
    #[arg(long = "sweep-csv")]
    sweep_csv: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Size of planted group 1.
    #[arg(long)]
    n1: usize,
    /// Size of planted group 2.
    #[arg(long)]
    n2: usize,
    /// Comma-separated c_in values, one benchmark network each.
    #[arg(long = "cin-list", value_delimiter = ',', required = true)]
    cin_list: Vec<f64>,
    /// Fixed c_in + c_out; c_out = csum - c_in per network.
    #[arg(long)]
    csum: f64,
    /// Base seed; per-network streams are derived from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Objective variant: standard or dc.
    #[arg(long, default_value = "dc")]
    variant: Variant,
    /// Eigensolver residual tolerance (default 1e-8).
    #[arg(long)]
    tol: Option<f64>,
    /// Eigensolver iteration cap (default 10*ceil(sqrt(n)) + 200).
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    /// Output path for the long-format CSV (c_in,size,q).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AccuracyArgs {
    /// Total vertex count; must be even (equal planted groups).
    #[arg(long)]
    n: usize,
    /// Start of the c_in grid.
    #[arg(long = "cin-from")]
    cin_from: f64,
    /// End of the c_in grid (inclusive).
    #[arg(long = "cin-to")]
    cin_to: f64,
    /// Grid step.
    #[arg(long = "cin-step", default_value_t = 2.0)]
    cin_step: f64,
    /// Fixed c_in + c_out; c_out = csum - c_in per network.
    #[arg(long)]
    csum: f64,
    /// Replicates per c_in value.
    #[arg(long)]
    reps: u64,
    /// Base seed; per-replicate streams are derived from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Objective variant: standard or dc.
    #[arg(long, default_value = "dc")]
    variant: Variant,
    /// Eigensolver residual tolerance (default 1e-8).
    #[arg(long)]
    tol: Option<f64>,
    /// Eigensolver iteration cap (default 10*ceil(sqrt(n)) + 200).
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    /// Output path for the accuracy CSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct OracleCheckArgs {
    /// Path to the edge-list file.
    #[arg(long)]
    graph: PathBuf,
    /// Objective variant: standard or dc.
    #[arg(long, default_value = "dc")]
    variant: Variant,
    /// Eigensolver residual tolerance (default 1e-8).
    #[arg(long)]
    tol: Option<f64>,
    /// Eigensolver iteration cap (default 10*ceil(sqrt(n)) + 200).
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    /// Seed for the eigensolver start vector.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Generate(args) => run_generate(&args),
        Command::Detect(args) => run_detect(&args),
        Command::Sweep(args) => run_sweep(&args),
        Command::Accuracy(args) => run_accuracy(&args),
        Command::OracleCheck(args) => run_oracle_check(&args),
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let file =
        File::open(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Graph::parse_edge_list(BufReader::new(file)).map_err(Failure::from)
}

fn write_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn run_generate(args: &GenerateArgs) -> Result<(), Failure> {
    let cfg = SbmConfig {
        n1: args.n1,
        n2: args.n2,
        c_in: args.cin,
        c_out: args.cout,
        seed: args.seed,
    };
    let (g, truth) = generate(&cfg)?;

    let mut out = open_out(&args.out)?;
    g.write_canonical(&mut out)
        .and_then(|()| out.flush())
        .map_err(|e| write_failure(&args.out, e))?;

    let mut truth_out = open_out(&args.truth)?;
    for v in 0..g.vertex_count() {
        let label = if truth.partition.group(v) == Group::One { 1 } else { 2 };
        writeln!(truth_out, "{label}").map_err(|e| write_failure(&args.truth, e))?;
    }
    truth_out.flush().map_err(|e| write_failure(&args.truth, e))?;

    let n = g.vertex_count();
    let m = g.edge_count();
    let mean_degree = 2.0 * m as f64 / n as f64;
    println!("n = {n}, m = {m}, mean degree = {}", format_sig9(mean_degree));
    Ok(())
}

fn run_detect(args: &DetectArgs) -> Result<(), Failure> {
    let g = load_graph(&args.graph)?;
    let opts = eigen_options(g.vertex_count(), args.tol, args.max_iter, args.seed);
    let result = detect(&g, args.variant, &opts)?;
    let doc = result.to_document();

    let mut out = open_out(&args.out)?;
    serde_json::to_writer_pretty(&mut out, &doc)
        .map_err(|e| Failure::Io(format!("{}: {e}", args.out.display())))?;
    writeln!(out).and_then(|()| out.flush()).map_err(|e| write_failure(&args.out, e))?;

    if let Some(path) = &args.sweep_csv {
        let mut csv = open_out(path)?;
        blockcut::write_sweep_csv(&result.sweep, &mut csv)
            .and_then(|()| csv.flush())
            .map_err(|e| write_failure(path, e))?;
    }

    println!(
        "n = {}, m = {}, variant = {}, n1 = {}, n2 = {}, q = {}",
        doc.n,
        doc.m,
        doc.variant,
        doc.n1,
        doc.n2,
        format_sig9(doc.q)
    );
    Ok(())
}

fn check_cin_values(values: &[f64], csum: f64) -> Result<(), Failure> {
    if !csum.is_finite() || csum < 0.0 {
        return Err(Failure::Usage(format!(
            "csum must be finite and non-negative, got {csum}"
        )));
    }
    for &c_in in values {
        if !c_in.is_finite() || c_in < 0.0 || c_in > csum {
            return Err(Failure::Usage(format!(
                "c_in must lie in [0, csum = {csum}], got {c_in}"
            )));
        }
    }
    Ok(())
}

fn run_sweep(args: &SweepArgs) -> Result<(), Failure> {
    check_cin_values(&args.cin_list, args.csum)?;
    run_sweep_experiment(&SweepSpec {
        n1: args.n1,
        n2: args.n2,
        cin_list: &args.cin_list,
        csum: args.csum,
        seed: args.seed,
        variant: args.variant,
        tol: args.tol,
        max_iter: args.max_iter,
        out: &args.out,
    })
}

fn run_accuracy(args: &AccuracyArgs) -> Result<(), Failure> {
    if args.n < 2 || !args.n.is_multiple_of(2) {
        return Err(Failure::Usage(format!(
            "n must be even and at least 2 for equal planted groups, got {}",
            args.n
        )));
    }
    if args.reps == 0 {
        return Err(Failure::Usage("reps must be at least 1".into()));
    }
    let cin_values = cin_grid(args.cin_from, args.cin_to, args.cin_step)?;
    check_cin_values(&cin_values, args.csum)?;
    run_accuracy_experiment(&AccuracySpec {
        n: args.n,
        csum: args.csum,
        cin_values: &cin_values,
        reps: args.reps,
        seed: args.seed,
        variant: args.variant,
        tol: args.tol,
        max_iter: args.max_iter,
        out: &args.out,
    })
}

fn run_oracle_check(args: &OracleCheckArgs) -> Result<(), Failure> {
    let g = load_graph(&args.graph)?;
    let oracle = brute_force_max_profile::<f64>(&g, args.variant)?;
    let opts = eigen_options(g.vertex_count(), args.tol, args.max_iter, args.seed);
    let result = detect(&g, args.variant, &opts)?;

    let sweep_max = result
        .sweep
        .q_values
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let dominant = result.q.to_bits() == sweep_max.to_bits();
    let agreement = fraction_correct(&result.partition, &oracle.best_partition)?;

    println!("pipeline q: {}", format_sig9(result.q));
    println!("oracle q: {}", format_sig9(oracle.best_value));
    println!("pipeline q equals sweep max: {dominant}");
    println!("fraction correct vs oracle: {}", format_sig9(agreement));
    Ok(())
}
