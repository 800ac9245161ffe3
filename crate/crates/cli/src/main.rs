use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tue_core::harness::output::{self, Table};
use tue_core::harness::{
    self, ClosedFormReport, Discards, ExperimentConfig, FactorMode, OutputFormat, VerificationReport,
};
use tue_core::Error;

/// Maximum relative error tolerated by `verify` between the two overlap routes.
const VERIFY_THRESHOLD: f64 = 1e-6;
/// Solver failure rate above which a run exits with code 3.
const MAX_SOLVER_FAILURE_RATE: f64 = 0.10;

#[derive(Parser)]
#[command(name = "tue", version, about = "Eigenvector overlap experiments for truncated Haar unitary matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues and diagonal overlaps of sampled TUE(N, M) matrices.
    Sample(Common),
    /// Numeric against closed-form q-overlaps (M = 1).
    Verify(Common),
    /// Binned diagonal overlaps against the exact conditional expectation (M = 1).
    Expectation(Common),
    /// Matrix-sampled against synthetic diagonal overlaps.
    Conjecture {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "edge_corrected")]
        factor: Factor,
    },
    /// Order statistics of squared eigenvalue moduli against independent Beta draws.
    Kostlan(Common),
    /// Spectrum of one Haar unitary and of its truncation.
    Figure1(Common),
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "q-max", default_value_t = 3)]
    q_max: usize,
    #[arg(long = "gap-tol", default_value_t = 1e-8)]
    gap_tol: f64,
    #[arg(long, default_value_t = 40)]
    bins: usize,
    /// Random cycles per trial in `verify`, on top of the diagonal ones.
    #[arg(long, default_value_t = 20)]
    cycles: usize,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    /// Record wall-clock time in JSON reports (makes them non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(ValueEnum, Clone, Copy)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy)]
#[value(rename_all = "snake_case")]
enum Factor {
    AsWritten,
    EdgeCorrected,
}

impl Common {
    fn config(&self) -> ExperimentConfig {
        let workers = self
            .workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        ExperimentConfig {
            n: self.n,
            m: self.m,
            trials: self.trials,
            seed: self.seed,
            q_max: self.q_max,
            gap_tol: self.gap_tol,
            bins: self.bins,
            random_cycles: self.cycles,
            output_path: self.out.clone(),
            format: match self.format {
                Format::Csv => OutputFormat::Csv,
                Format::Json => OutputFormat::Json,
            },
            workers,
        }
    }
}

#[derive(Serialize)]
struct VerifyResults<'a> {
    overlaps: &'a VerificationReport,
    border_moduli: &'a ClosedFormReport,
    closed_forms: &'a ClosedFormReport,
}

/// What a subcommand hands back for writing.
struct Run {
    table: Table,
    results: serde_json::Value,
    discards: Discards,
    status: u8,
}

fn solver_status(cfg: &ExperimentConfig, discards: &Discards, otherwise: u8) -> u8 {
    if discards.solver_failure_rate(cfg.trials) > MAX_SOLVER_FAILURE_RATE {
        3
    } else {
        otherwise
    }
}

fn run(command: &Command, cfg: &ExperimentConfig) -> tue_core::Result<Run> {
    Ok(match command {
        Command::Sample(_) => {
            let r = harness::sample_spectra(cfg)?;
            Run {
                table: output::sample_table(&r),
                discards: r.discards,
                status: solver_status(cfg, &r.discards, 0),
                results: serde_json::to_value(&r.rows)?,
            }
        }
        Command::Verify(_) => {
            let overlaps = harness::verify_overlaps(cfg)?;
            let border = harness::border_moduli_check(cfg)?;
            let closed = harness::closed_form_check(cfg)?;
            let discards = overlaps.discards();
            // NaN counts as a violation
            let violated = overlaps.max_rel_error.is_nan() || overlaps.max_rel_error >= VERIFY_THRESHOLD;
            let results = serde_json::to_value(VerifyResults {
                overlaps: &overlaps,
                border_moduli: &border,
                closed_forms: &closed,
            })?;
            Run {
                table: output::verification_table(&overlaps),
                discards,
                status: solver_status(cfg, &discards, u8::from(violated)),
                results,
            }
        }
        Command::Expectation(_) => {
            let r = harness::expectation_scan(cfg)?;
            Run {
                table: output::expectation_table(&r),
                discards: r.discards,
                status: solver_status(cfg, &r.discards, 0),
                results: serde_json::to_value(&r.bins)?,
            }
        }
        Command::Conjecture { factor, .. } => {
            let mode = match factor {
                Factor::AsWritten => FactorMode::AsWritten,
                Factor::EdgeCorrected => FactorMode::EdgeCorrected,
            };
            let r = harness::conjecture_test(cfg, mode)?;
            let discards = Discards {
                degenerate: r.numeric_discards.degenerate + r.synthetic_discards.degenerate,
                solver_failures: r.numeric_discards.solver_failures + r.synthetic_discards.solver_failures,
            };
            Run {
                table: output::conjecture_table(&r),
                discards,
                status: solver_status(cfg, &discards, 0),
                results: serde_json::to_value(&r)?,
            }
        }
        Command::Kostlan(_) => {
            let r = harness::kostlan_check(cfg)?;
            Run {
                table: output::kostlan_table(&r),
                discards: r.discards,
                status: solver_status(cfg, &r.discards, u8::from(!r.all_passed())),
                results: serde_json::to_value(&r)?,
            }
        }
        Command::Figure1(_) => {
            let d = harness::figure1_data(cfg.n, cfg.seed)?;
            Run {
                table: output::figure1_table(&d),
                discards: Discards::default(),
                status: 0,
                results: serde_json::to_value(&d)?,
            }
        }
    })
}

fn write(run: &Run, cfg: &ExperimentConfig, runtime: Option<f64>) -> tue_core::Result<()> {
    let sink: Box<dyn Write> = match &cfg.output_path {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    match cfg.format {
        OutputFormat::Csv => output::write_csv(sink, &run.table),
        OutputFormat::Json => output::write_json(sink, cfg, &run.results, &run.discards, runtime),
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Config(_) | Error::Io(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Sample(c)
        | Command::Verify(c)
        | Command::Expectation(c)
        | Command::Kostlan(c)
        | Command::Figure1(c) => c,
        Command::Conjecture { common, .. } => common,
    };
    let cfg = common.config();
    if let Err(e) = cfg.validate() {
        eprintln!("tue: {e}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let result = run(&cli.command, &cfg).and_then(|r| {
        let elapsed = start.elapsed().as_secs_f64();
        write(&r, &cfg, common.timing.then_some(elapsed))?;
        eprintln!("tue: finished in {elapsed:.3} s");
        Ok(r.status)
    });
    match result {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("tue: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
