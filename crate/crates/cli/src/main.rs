//! `polarnet` — majority-rule opinion dynamics with zealots on networks.
//!
//! Subcommands: `sweep` (Monte Carlo grid from a TOML config), `run` (one
//! realization), `metrics` (polarization of a graph + state snapshot) and
//! `generate` (write a random graph's largest component as an edge list).
//!
//! Exit codes: 0 success, 1 runtime failure, 2 invalid input or config.

mod states;

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polarnet::experiment::{
    run_realization, stream_seed, sweep, write_histogram_csv, write_json, write_raw_csv,
    write_summary_csv, InitialCondition, Substrate, SweepConfig, SweepResult, ZealotryKind,
};
use polarnet::graph::{
    configuration_model, fix_parity, largest_component, load_edge_list, sample_poisson_degrees,
    sample_powerlaw_degrees, write_edge_list, Graph,
};
use polarnet::metrics::correlated_polarization;

#[derive(Parser)]
#[command(
    name = "polarnet",
    version,
    about = "Majority-rule opinion dynamics with zealots on networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a zealot-fraction sweep described by a TOML config file
    Sweep(SweepArgs),
    /// Run a single realization and print its report
    Run(RunArgs),
    /// Compute polarization metrics for a graph plus a state snapshot
    Metrics(MetricsArgs),
    /// Generate a random graph and write its largest component
    Generate(GenerateArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// TOML file declaring the sweep configuration
    #[arg(long)]
    config: PathBuf,
    /// Directory for the output files
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Worker threads; 0 uses all cores
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Also write per-realization values to raw.csv
    #[arg(long)]
    raw: bool,
    /// Also write a phi histogram CSV per grid point
    #[arg(long)]
    histograms: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SubstrateKind {
    Poisson,
    Powerlaw,
    EdgeList,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IcArg {
    /// Every vertex starts at +1 or -1 (alias: ric)
    #[value(alias = "ric")]
    Random,
    /// Two opposite seed vertices in a neutral sea (alias: sic)
    #[value(alias = "sic")]
    Seed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ZealotryArg {
    Uniform,
    Degree,
}

#[derive(Args)]
struct SubstrateArgs {
    /// Graph source
    #[arg(long, value_enum)]
    substrate: SubstrateKind,
    /// Vertex count for generated graphs
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// Mean degree (poisson substrate)
    #[arg(long)]
    c: Option<f64>,
    /// Degree exponent (powerlaw substrate)
    #[arg(long)]
    alpha: Option<f64>,
    /// Minimum degree (powerlaw substrate)
    #[arg(long, default_value_t = 2)]
    k_min: usize,
    /// Edge-list file (edge-list substrate)
    #[arg(long)]
    path: Option<PathBuf>,
}

impl SubstrateArgs {
    fn to_substrate(&self) -> Result<Substrate, CliError> {
        let reject = |flag: &str, valid_for: &str| -> CliError {
            CliError::Usage(anyhow!("--{flag} is only valid for the {valid_for} substrate"))
        };
        match self.substrate {
            SubstrateKind::Poisson => {
                if self.alpha.is_some() {
                    return Err(reject("alpha", "powerlaw"));
                }
                if self.path.is_some() {
                    return Err(reject("path", "edge-list"));
                }
                let c = self
                    .c
                    .ok_or_else(|| CliError::Usage(anyhow!("--c is required for poisson")))?;
                Ok(Substrate::Poisson { mean_degree: c })
            }
            SubstrateKind::Powerlaw => {
                if self.c.is_some() {
                    return Err(reject("c", "poisson"));
                }
                if self.path.is_some() {
                    return Err(reject("path", "edge-list"));
                }
                let alpha = self.alpha.ok_or_else(|| {
                    CliError::Usage(anyhow!("--alpha is required for powerlaw"))
                })?;
                Ok(Substrate::Powerlaw {
                    alpha,
                    k_min: self.k_min,
                })
            }
            SubstrateKind::EdgeList => {
                if self.c.is_some() {
                    return Err(reject("c", "poisson"));
                }
                if self.alpha.is_some() {
                    return Err(reject("alpha", "powerlaw"));
                }
                let path = self.path.clone().ok_or_else(|| {
                    CliError::Usage(anyhow!("--path is required for edge-list"))
                })?;
                Ok(Substrate::EdgeList { path })
            }
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    substrate: SubstrateArgs,
    /// Initial condition
    #[arg(long, value_enum)]
    ic: IcArg,
    /// Zealot assignment
    #[arg(long, value_enum, default_value_t = ZealotryArg::Uniform)]
    zealotry: ZealotryArg,
    /// Zealot fraction in [0, 1]
    #[arg(long)]
    pz: f64,
    /// Master seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Step cap; default is 10x the component size
    #[arg(long)]
    max_steps: Option<usize>,
    /// Explicit +1 and -1 seed vertices (seed initial condition)
    #[arg(long, num_args = 2, value_names = ["PLUS", "MINUS"])]
    seed_pair: Option<Vec<usize>>,
    /// Write the final per-vertex states to this file
    #[arg(long)]
    dump_state: Option<PathBuf>,
}

#[derive(Args)]
struct MetricsArgs {
    /// Edge-list file of the network
    #[arg(long)]
    graph: PathBuf,
    /// State snapshot file (`label state` per line)
    #[arg(long)]
    states: PathBuf,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    substrate: SubstrateArgs,
    /// Master seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output edge-list path
    #[arg(long)]
    out: PathBuf,
}

/// Distinguishes bad input (exit 2) from runtime failure (exit 1).
enum CliError {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<polarnet::Error> for CliError {
    fn from(err: polarnet::Error) -> CliError {
        match err {
            polarnet::Error::InvalidParameter { .. } | polarnet::Error::EdgeListParse { .. } => {
                CliError::Usage(err.into())
            }
            other => CliError::Runtime(other.into()),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(err: anyhow::Error) -> CliError {
        CliError::Runtime(err)
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> CliError {
        CliError::Runtime(err.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => cmd_sweep(args),
        Command::Run(args) => cmd_run(args),
        Command::Metrics(args) => cmd_metrics(args),
        Command::Generate(args) => cmd_generate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let cfg: SweepConfig =
        toml::from_str(&text).map_err(|e| CliError::Usage(anyhow!("config parse error: {e}")))?;
    cfg.validate()?;

    let result = sweep(&cfg, args.workers)?;
    fs::create_dir_all(&args.out_dir)?;

    let csv_path = args.out_dir.join("sweep.csv");
    write_summary_csv(&result, BufWriter::new(File::create(&csv_path)?))?;
    let json_path = args.out_dir.join("sweep.json");
    write_json(&result, BufWriter::new(File::create(&json_path)?))?;
    let mut written = vec![csv_path, json_path];

    if args.raw {
        let raw_path = args.out_dir.join("raw.csv");
        write_raw_csv(&result, BufWriter::new(File::create(&raw_path)?))?;
        written.push(raw_path);
    }
    if args.histograms {
        for (idx, row) in result.rows.iter().enumerate() {
            let hist_path = args.out_dir.join(format!("hist_pz_{idx}.csv"));
            write_histogram_csv(&row.phi_histogram, BufWriter::new(File::create(&hist_path)?))?;
            written.push(hist_path);
        }
    }

    print_summary_table(&result);
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn print_summary_table(result: &SweepResult) {
    println!(
        "{:>6}  {:>9} {:>9} {:>9}  {:>8}  {:>8}  {:>12}  {:>8}",
        "pz", "phi_mean", "phi_p5", "phi_p95", "R_mean", "r_mean", "flips_mean", "nonconv"
    );
    for row in &result.rows {
        println!(
            "{:>6.3}  {:>9.4} {:>9.4} {:>9.4}  {:>8.4}  {:>8.4}  {:>12.1}  {:>8.4}",
            row.pz,
            row.phi.mean,
            row.phi.p5,
            row.phi.p95,
            row.balance.mean,
            row.assortativity.mean,
            row.flips.mean,
            row.nonconverged_frac
        );
    }
}

fn cmd_run(args: RunArgs) -> Result<(), CliError> {
    let substrate = args.substrate.to_substrate()?;
    let seed_pair = args.seed_pair.as_ref().map(|pair| (pair[0], pair[1]));
    let cfg = SweepConfig {
        substrate,
        n: args.substrate.n,
        ic: match args.ic {
            IcArg::Random => InitialCondition::Random,
            IcArg::Seed => InitialCondition::Seed,
        },
        zealotry: match args.zealotry {
            ZealotryArg::Uniform => ZealotryKind::Uniform,
            ZealotryArg::Degree => ZealotryKind::Degree,
        },
        pz_grid: vec![args.pz],
        realizations: 1,
        master_seed: args.seed,
        max_steps: args.max_steps,
        histogram_bins: 1,
        seed_pair,
    };
    cfg.validate()?;
    let prepared = cfg.prepare_substrate()?;
    let result = run_realization(&cfg, &prepared, args.pz, stream_seed(args.seed, 0, 0))?;

    println!("component_vertices = {}", result.component_vertices);
    println!("component_edges = {}", result.component_edges);
    println!("converged = {}", result.outcome.converged);
    println!("period_two = {}", result.outcome.period_two);
    println!("steps = {}", result.outcome.steps);
    println!("total_flips = {}", result.outcome.total_flips);
    print_polarization(&result.summary);

    if let Some(path) = args.dump_state {
        let mut writer = BufWriter::new(File::create(&path)?);
        for (v, &state) in result.outcome.final_states.as_slice().iter().enumerate() {
            writeln!(writer, "{v} {state}")?;
        }
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn print_polarization(summary: &polarnet::PolarizationSummary) {
    println!("n_minus = {}", summary.n_minus);
    println!("n_plus = {}", summary.n_plus);
    println!("n_zero = {}", summary.n_zero);
    println!("R = {}", summary.balance);
    println!("r = {}", summary.assortativity);
    println!("phi = {}", summary.phi);
}

fn cmd_metrics(args: MetricsArgs) -> Result<(), CliError> {
    let file =
        File::open(&args.graph).with_context(|| format!("opening {}", args.graph.display()))?;
    let labeled = load_edge_list(BufReader::new(file))?;
    let text = fs::read_to_string(&args.states)
        .with_context(|| format!("reading {}", args.states.display()))?;
    let states = states::parse_state_file(&text, &labeled).map_err(CliError::Usage)?;
    let summary = correlated_polarization(&labeled.graph, &states)?;
    print_polarization(&summary);
    Ok(())
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let substrate = args.substrate.to_substrate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let graph: Graph = match substrate {
        Substrate::Poisson { mean_degree } => {
            let seq = fix_parity(
                sample_poisson_degrees(args.substrate.n, mean_degree, &mut rng)?,
                &mut rng,
            );
            configuration_model(&seq, &mut rng)?
        }
        Substrate::Powerlaw { alpha, k_min } => {
            let seq = fix_parity(
                sample_powerlaw_degrees(args.substrate.n, alpha, k_min, &mut rng)?,
                &mut rng,
            );
            configuration_model(&seq, &mut rng)?
        }
        Substrate::EdgeList { path } => {
            let file =
                File::open(&path).with_context(|| format!("opening {}", path.display()))?;
            load_edge_list(BufReader::new(file))?.graph
        }
    };
    let (component, _) = largest_component(&graph);
    write_edge_list(&component, BufWriter::new(File::create(&args.out)?))?;
    println!("vertices = {}", component.vertex_count());
    println!("edges = {}", component.edge_count());
    println!("wrote {}", args.out.display());
    Ok(())
}
