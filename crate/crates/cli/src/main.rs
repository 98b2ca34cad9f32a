//! `rough-bessel` command line tool.
//!
//! Subcommands: `simulate` (write one path as CSV), `estimate` (run an
//! estimator over a path CSV, print a JSON report), `experiment` (run a
//! Monte Carlo table from a TOML/JSON config), and `fbm` (debug dump of a
//! fractional Brownian motion path).
//!
//! Exit codes: 0 success, 2 user error (bad flags, malformed input, config
//! schema violations), 3 I/O or runtime error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rough_bessel::bessel::{simulate, ModelParams};
use rough_bessel::estimation::{
    estimate_drift, estimate_hurst, estimate_volatility, estimate_volatility_plugin,
};
use rough_bessel::experiment::run_experiment;
use rough_bessel::fbm::{FbmSampler, FgnMethod, Hurst};
use rough_bessel_cli::config;
use rough_bessel_cli::csvpath::{read_path_csv, write_bessel_csv, write_fbm_csv};
use rough_bessel_cli::report::{
    cell_console_line, estimate_report_json, write_plot_data_csv, write_table_csv, RunManifest,
};
use rough_bessel_cli::{CliError, CliResult};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const WORKERS_ENV: &str = "ROUGH_BESSEL_WORKERS";

#[derive(Parser)]
#[command(
    name = "rough-bessel",
    version,
    about = "Simulation and estimation for Bessel-type processes driven by rough fractional noise"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one path of the regularized process and write t,x,l,b CSV.
    Simulate(SimulateArgs),
    /// Run an estimator over a path CSV and emit a JSON report.
    Estimate(EstimateArgs),
    /// Run a Monte Carlo experiment from a TOML or JSON config file.
    Experiment(ExperimentArgs),
    /// Sample a fractional Brownian motion path and write t,value CSV.
    Fbm(FbmArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Initial value of the process.
    #[arg(long, default_value_t = 1.0)]
    x0: f64,
    /// Drift coefficient.
    #[arg(long, default_value_t = 2.0)]
    a: f64,
    /// Noise coefficient.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Hurst index in (0, 1).
    #[arg(long, default_value_t = 0.3)]
    hurst: f64,
    /// Drift regularization.
    #[arg(long, default_value_t = 1e-4)]
    epsilon: f64,
    /// Number of grid steps.
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    /// Time horizon.
    #[arg(long = "T", default_value_t = 1.0)]
    horizon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EstimatorArg {
    /// Hurst index from the variation ratio.
    Hurst,
    /// Volatility with a known Hurst index (requires --hurst).
    Sigma,
    /// Volatility with the Hurst index estimated first.
    SigmaPlugin,
    /// Drift coefficient from the terminal value and reciprocal integral.
    Drift,
}

#[derive(Args)]
struct EstimateArgs {
    /// Path CSV produced by `simulate` (column x) or `fbm` (column value).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    estimator: EstimatorArg,
    /// Known Hurst index for --estimator sigma.
    #[arg(long)]
    hurst: Option<f64>,
    /// Floor inside the drift estimator's reciprocal sum.
    #[arg(long, default_value_t = 1e-3)]
    floor: f64,
    /// Also write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment configuration (.toml, or .json).
    #[arg(long)]
    config: PathBuf,
    /// Output directory for the table CSV and manifest.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Worker count (overrides the config and the ROUGH_BESSEL_WORKERS env var).
    #[arg(long)]
    workers: Option<usize>,
    /// Also write per-replication raw estimates for plotting.
    #[arg(long)]
    emit_plot_data: bool,
}

#[derive(Args)]
struct FbmArgs {
    #[arg(long, default_value_t = 0.3)]
    hurst: f64,
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    #[arg(long = "T", default_value_t = 1.0)]
    horizon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Generation method.
    #[arg(long, value_enum, default_value_t = MethodArg::Circulant)]
    method: MethodArg,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Circulant,
    Cholesky,
    Hosking,
}

impl MethodArg {
    fn to_core(self) -> FgnMethod {
        match self {
            MethodArg::Circulant => FgnMethod::CirculantEmbedding,
            MethodArg::Cholesky => FgnMethod::Cholesky,
            MethodArg::Hosking => FgnMethod::Hosking,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Fbm(args) => cmd_fbm(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn write_output(
    out: Option<&Path>,
    body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> CliResult<()> {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(CliError::io(path))?;
            let mut writer = BufWriter::new(file);
            body(&mut writer).map_err(CliError::io(path))?;
            writer.flush().map_err(CliError::io(path))
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            match body(&mut lock) {
                // Downstream consumers may close the pipe early (head, less).
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other.map_err(|e| CliError::Runtime(format!("stdout: {e}"))),
            }
        }
    }
}

fn cmd_simulate(args: SimulateArgs) -> CliResult<()> {
    let hurst = Hurst::new(args.hurst)?;
    let params = ModelParams::new(args.x0, args.a, args.sigma, hurst, args.epsilon)?;
    let sampler = FbmSampler::new(args.n, args.horizon, hurst)?;
    let driver = sampler.sample(args.seed);
    let path = simulate(&params, &driver)?;
    write_output(args.out.as_deref(), |w| write_bessel_csv(&path, w))
}

fn cmd_fbm(args: FbmArgs) -> CliResult<()> {
    let hurst = Hurst::new(args.hurst)?;
    let sampler = FbmSampler::with_method(args.n, args.horizon, hurst, args.method.to_core())?;
    let path = sampler.sample(args.seed);
    write_output(args.out.as_deref(), |w| write_fbm_csv(&path, w))
}

fn cmd_estimate(args: EstimateArgs) -> CliResult<()> {
    let file = File::open(&args.input).map_err(CliError::io(&args.input))?;
    let parsed = read_path_csv(BufReader::new(file))?;
    let result = match args.estimator {
        EstimatorArg::Hurst => estimate_hurst(&parsed.observed)?,
        EstimatorArg::Sigma => {
            let known = args.hurst.ok_or_else(|| {
                CliError::Usage("--estimator sigma requires --hurst <known value>".into())
            })?;
            estimate_volatility(&parsed.observed, Hurst::new(known)?)
        }
        EstimatorArg::SigmaPlugin => estimate_volatility_plugin(&parsed.observed)?,
        EstimatorArg::Drift => estimate_drift(&parsed.observed, args.floor)?,
    };
    let report = estimate_report_json(&result);
    println!("{report}");
    if let Some(out) = &args.out {
        std::fs::write(out, format!("{report}\n")).map_err(CliError::io(out))?;
    }
    Ok(())
}

fn resolve_workers(flag: Option<usize>, config_hint: usize) -> CliResult<usize> {
    if let Some(w) = flag {
        return Ok(w);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(raw) => raw
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("{WORKERS_ENV}={raw:?} is not a worker count"))),
        Err(_) => Ok(config_hint),
    }
}

fn cmd_experiment(args: ExperimentArgs) -> CliResult<()> {
    let file = config::load_file(&args.config)?;
    let resolved = config::resolve(&file)?;
    let workers = resolve_workers(args.workers, file.workers)?;
    let core_config = resolved.to_core(workers)?;
    let summary = run_experiment(&core_config)?;

    let stem = args
        .config
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("experiment")
        .to_string();
    std::fs::create_dir_all(&args.out_dir).map_err(CliError::io(&args.out_dir))?;

    let table_path = args.out_dir.join(format!("{stem}.csv"));
    let table_file = File::create(&table_path).map_err(CliError::io(&table_path))?;
    let mut writer = BufWriter::new(table_file);
    write_table_csv(&resolved, &summary, &mut writer).map_err(CliError::io(&table_path))?;
    writer.flush().map_err(CliError::io(&table_path))?;
    let mut outputs = vec![table_path.display().to_string()];

    if args.emit_plot_data {
        let plot_path = args.out_dir.join(format!("{stem}_estimates.csv"));
        let plot_file = File::create(&plot_path).map_err(CliError::io(&plot_path))?;
        let mut writer = BufWriter::new(plot_file);
        write_plot_data_csv(&resolved, &summary, &mut writer).map_err(CliError::io(&plot_path))?;
        writer.flush().map_err(CliError::io(&plot_path))?;
        outputs.push(plot_path.display().to_string());
    }

    let manifest_path = args.out_dir.join(format!("{stem}_manifest.json"));
    let manifest = RunManifest::new(&resolved, outputs.clone(), &summary);
    std::fs::write(&manifest_path, format!("{}\n", manifest.to_json()))
        .map_err(CliError::io(&manifest_path))?;

    for outcome in &summary.cells {
        println!("{}", cell_console_line(&resolved, outcome));
    }
    println!("wrote {}", table_path.display());
    println!("wrote {}", manifest_path.display());
    Ok(())
}
