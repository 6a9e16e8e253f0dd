//! `tropfm`: tropical Fréchet means from the command line.
//!
//! Exit codes: 0 success, 1 other failure, 2 parse error, 3 not optimal,
//! 4 search budget exceeded.

mod commands;
mod error;
mod input;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tropfm::parse_rational;

use commands::{BenchArgs, MeanArgs, Mode, Outcome, PolytropeSource};
use error::CliError;
use input::{parse_document, parse_matrix, parse_vector, InputDocument};

#[derive(Parser)]
#[command(name = "tropfm", version, about = "Exact tropical Fréchet means and optimality certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tropical distance between two input points.
    Distance {
        /// Point file (JSON or CSV).
        file: PathBuf,
        /// Zero-based indices of the two points.
        #[arg(long, num_args = 2, value_names = ["A", "B"], default_values_t = [0, 1])]
        pair: Vec<usize>,
    },
    /// Fréchet mean, its distances and the polytrope of all means, as JSON.
    Mean {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Stopping tolerance of the greedy descent.
        #[arg(long)]
        tol: Option<String>,
        #[arg(long)]
        max_iter: Option<usize>,
        /// Limit on the number of piece assignments the exhaustive search may visit.
        #[arg(long)]
        budget: Option<u64>,
        /// Keep greedy iterates exact (slow beyond a few hundred iterations).
        #[arg(long)]
        rational: bool,
    },
    /// Polytrope of Fréchet means (or of a given matrix): h-description,
    /// tropical vertices and pseudovertices.
    Polytrope {
        /// Point file; not needed with --matrix.
        #[arg(required_unless_present = "matrix")]
        file: Option<PathBuf>,
        /// A mean to build the polytrope around, e.g. `--mean=0,0,-1`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "matrix")]
        mean: Option<String>,
        /// Skip the optimality check of --mean.
        #[arg(long, requires = "mean")]
        trust: bool,
        /// Matrix file instead of points.
        #[arg(long, conflicts_with = "file")]
        matrix: Option<PathBuf>,
    },
    /// Certificate of optimality for a point, as JSON.
    Certify {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Timings of greedy mean plus polytrope on seeded random samples, as CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "5,10,15,20")]
        dims: Vec<usize>,
        /// Sample sizes as multiples of the dimension.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        multipliers: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
        /// Leave the time column empty so output is byte-for-byte reproducible.
        #[arg(long)]
        no_timing: bool,
        /// Also write the objective after every accepted greedy step.
        #[arg(long)]
        trace: bool,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load(path: &Path) -> Result<InputDocument, CliError> {
    parse_document(&read(path)?)
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Distance { file, pair } => commands::distance(&load(&file)?, pair[0], pair[1]),
        Command::Mean {
            file,
            mode,
            tol,
            max_iter,
            budget,
            rational,
        } => {
            let tol = tol
                .map(|t| parse_rational(&t))
                .transpose()
                .map_err(|e| CliError::Parse(format!("--tol: {e}")))?;
            let args = MeanArgs {
                mode,
                tol,
                max_iter,
                budget,
                rational,
            };
            commands::mean(&load(&file)?, &args)
        }
        Command::Polytrope {
            file,
            mean,
            trust,
            matrix,
        } => match (matrix, file) {
            (Some(m), _) => commands::polytrope(PolytropeSource::Matrix(parse_matrix(&read(&m)?)?)),
            (None, Some(f)) => {
                let doc = load(&f)?;
                let mean = mean.as_deref().map(parse_vector).transpose()?;
                commands::polytrope(PolytropeSource::Samples {
                    doc: &doc,
                    mean,
                    trust,
                })
            }
            (None, None) => Err(CliError::Usage("a point file or --matrix is required".into())),
        },
        Command::Certify { file, point } => commands::certify(&load(&file)?, parse_vector(&point)?),
        Command::Bench {
            dims,
            multipliers,
            reps,
            seed,
            max_iter,
            no_timing,
            trace,
        } => commands::bench(&BenchArgs {
            dims,
            multipliers,
            reps,
            seed,
            max_iter,
            timing: !no_timing,
            trace,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(error::EXIT_OTHER);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit()
        }
    }
}
