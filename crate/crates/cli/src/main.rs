use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use cpack_cli::{analyze, parse_curve_file, run_dataset, AlgorithmChoice, AnalysisOptions, DatasetOptions, Format, Report};
use cpack_core::oracle::grid_lower_bound;

#[derive(Parser)]
#[command(name = "cpack", version, about = "Approximate packedness of polygonal curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Leave wall_ms empty so repeated runs are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// 2-approximation for one curve in any dimension.
    Approx2 {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// (6 + eps)-approximation for one planar curve.
    Approx6 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Analyze every curve file in a directory.
    Report {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, value_enum)]
        algorithm: AlgorithmChoice,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        /// Analyze a seeded uniform sample of N files.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        parallelism: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Certified lower bound from a grid of cube centers.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
    },
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn single(input: &Path, algorithm: AlgorithmChoice, eps: f64, output: &Output) -> anyhow::Result<()> {
    let curve = parse_curve_file(input)?;
    let id = input.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let opts = AnalysisOptions { algorithm, eps, timing: !output.no_timing };
    let report = Report::new(vec![analyze(&id, &curve, &opts)?], Vec::new());
    emit(&report.render(output.format)?, output.out.as_deref())
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Approx2 { input, output } => single(&input, AlgorithmChoice::Approx2, 1.0, &output),
        Command::Approx6 { input, eps, output } => single(&input, AlgorithmChoice::Approx6, eps, &output),
        Command::Report { dataset, algorithm, eps, sample, seed, parallelism, output } => {
            let opts = DatasetOptions {
                analysis: AnalysisOptions { algorithm, eps, timing: !output.no_timing },
                sample,
                seed,
                parallelism,
            };
            let report = run_dataset(&dataset, &opts)?;
            emit(&report.render(output.format)?, output.out.as_deref())
        }
        Command::Oracle { input, resolution } => {
            let curve = parse_curve_file(&input)?;
            let b = grid_lower_bound(&curve, resolution)?;
            let v = serde_json::json!({
                "n": curve.len(),
                "resolution": resolution,
                "lower": b.lower,
                "witness_center": b.witness.center.coords(),
                "witness_radius": b.witness.radius,
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
            Ok(())
        }
    }
}
