//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a certified property failed, 2 invalid input,
//! 3 unmet precondition (degenerate distribution or unsupported backend).

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fuzzy_depth::certify::{certify_theorems, CertifyOptions};
use fuzzy_depth::io::{self, DatasetDocument, DepthRecord, DocumentError};
use fuzzy_depth::median::{median_gr_from_band, median_si_from_band, support_median_band};
use fuzzy_depth::{depth_batch, AlphaGrid, Backend, DepthMethod, Error, MetricOrder};

#[derive(Parser)]
#[command(
    name = "fuzzy-depth",
    version,
    about = "Depth functions and medians for fuzzy data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Depth of each query fuzzy number.
    Depth(DepthArgs),
    /// Support-median band or a named median.
    Median(MedianArgs),
    /// Same as `median --method band`.
    Band(SourceOutput),
    /// Check the median equivalences on a seeded candidate pool.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Source {
    /// Dataset document (JSON).
    #[arg(long, conflicts_with = "cdf", required_unless_present = "cdf")]
    data: Option<PathBuf>,
    /// Piecewise-linear CDF document (JSON) of a crisp variable.
    #[arg(long)]
    cdf: Option<PathBuf>,
    /// Number of levels for a CDF backend.
    #[arg(long, default_value_t = 101)]
    alpha_levels: usize,
}

#[derive(Args)]
struct Output {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct SourceOutput {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct DepthArgs {
    #[command(flatten)]
    source: Source,
    /// Query document (dataset format; weights ignored).
    #[arg(long)]
    query: PathBuf,
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Order of the metric for the l1 method.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct MedianArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = MedianMethod::Band)]
    method: MedianMethod,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    L1,
    Tukey,
    Projection,
    Msimplicial,
    Fsimplicial,
}

impl From<MethodArg> for DepthMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::L1 => DepthMethod::L1,
            MethodArg::Tukey => DepthMethod::Tukey,
            MethodArg::Projection => DepthMethod::Projection,
            MethodArg::Msimplicial => DepthMethod::ModifiedSimplicial,
            MethodArg::Fsimplicial => DepthMethod::FuzzySimplicial,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MedianMethod {
    Band,
    Si,
    Gr,
}

enum Failure {
    Property,
    Input(String),
    Precondition(String),
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        match e.library_error() {
            Some(Error::Degenerate(_) | Error::Unsupported(_)) => {
                Failure::Precondition(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        DocumentError::from(e).into()
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn load_backend(source: &Source) -> Result<(Backend, AlphaGrid), Failure> {
    if let Some(path) = &source.cdf {
        let cdf = io::read_cdf(path)?.to_cdf()?;
        let grid = AlphaGrid::uniform(source.alpha_levels)?;
        return Ok((Backend::Crisp(cdf), grid));
    }
    let path = source.data.as_ref().expect("clap requires --data or --cdf");
    let sample = io::read_dataset(path)?.to_sample()?;
    let grid = sample.grid().clone();
    Ok((Backend::Sample(sample), grid))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => io::write_atomic(path, text.as_bytes())?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Input(format!("cannot write to stdout: {e}")))?;
        }
    }
    Ok(())
}

fn run_depth(args: &DepthArgs) -> Outcome {
    let (backend, _) = load_backend(&args.source)?;
    let queries = io::read_dataset(&args.query)?.numbers()?;
    let r = MetricOrder::new(args.r)?;
    let reports = depth_batch(&queries, &backend, args.method.into(), r);
    let mut records = Vec::with_capacity(reports.len());
    for (index, rep) in reports.into_iter().enumerate() {
        let rep = rep.map_err(|source| match source {
            Error::Degenerate(_) | Error::Unsupported(_) => DocumentError::Invalid(source),
            _ => DocumentError::Item { index, source },
        })?;
        records.push(DepthRecord::new(index, &rep));
    }
    let text = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => serde_json::to_string_pretty(&records)? + "\n",
        Format::Csv => io::depth_records_csv(&records),
    };
    emit(&args.output.out, &text)
}

fn run_median(source: &Source, method: MedianMethod, output: &Output) -> Outcome {
    let (backend, grid) = load_backend(source)?;
    let band = support_median_band(&backend, &grid);
    let text = match method {
        MedianMethod::Band => match output.format.unwrap_or(Format::Csv) {
            Format::Csv => io::band_csv(&band),
            Format::Json => serde_json::to_string_pretty(&io::band_rows(&band))? + "\n",
        },
        MedianMethod::Si | MedianMethod::Gr => {
            let m = if method == MedianMethod::Si {
                median_si_from_band(&band)
            } else {
                median_gr_from_band(&band)
            };
            match output.format.unwrap_or(Format::Json) {
                Format::Json => {
                    serde_json::to_string_pretty(&DatasetDocument::from_numbers(
                        std::slice::from_ref(&m),
                    ))? + "\n"
                }
                Format::Csv => {
                    let mut s = String::from("alpha,lower,upper\n");
                    for ((a, lo), hi) in m.grid().levels().iter().zip(m.lower()).zip(m.upper()) {
                        let _ = writeln!(s, "{a},{lo},{hi}");
                    }
                    s
                }
            }
        }
    };
    emit(&output.out, &text)
}

fn run_verify(args: &VerifyArgs) -> Outcome {
    let (backend, grid) = load_backend(&args.source)?;
    let options = CertifyOptions {
        trials: args.trials,
        seed: args.seed,
        levels: grid,
    };
    let report = certify_theorems(&backend, &options)?;
    emit(&args.out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Property)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Depth(args) => run_depth(args),
        Command::Median(args) => run_median(&args.source, args.method, &args.output),
        Command::Band(args) => run_median(&args.source, MedianMethod::Band, &args.output),
        Command::Verify(args) => run_verify(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property) => {
            eprintln!("fuzzy-depth: verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("fuzzy-depth: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("fuzzy-depth: {msg}");
            ExitCode::from(3)
        }
    }
}
