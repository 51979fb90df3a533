//! Per-curve records, dataset aggregates and their JSON/CSV encodings.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use cpack_core::{approx2, approx6, Curve, PackednessResult};
use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum AlgorithmChoice {
    Approx2,
    Approx6,
}

impl AlgorithmChoice {
    pub fn name(self) -> &'static str {
        match self {
            AlgorithmChoice::Approx2 => "approx2",
            AlgorithmChoice::Approx6 => "approx6",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One analyzed curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub n: usize,
    pub c: f64,
    pub c_over_n: f64,
    pub algorithm: String,
    pub eps: Option<f64>,
    pub witness_center: Vec<f64>,
    pub witness_radius: f64,
    /// `None` when timing is disabled.
    pub wall_ms: Option<f64>,
}

/// Summary over all records; every field but `count` is `None` when empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregates {
    pub count: usize,
    pub max_n: Option<usize>,
    pub min_c: Option<f64>,
    pub max_c: Option<f64>,
    pub avg_c: Option<f64>,
    pub avg_c_over_n: Option<f64>,
}

impl Aggregates {
    pub fn from_records(records: &[Record]) -> Aggregates {
        let count = records.len();
        if count == 0 {
            return Aggregates {
                count,
                max_n: None,
                min_c: None,
                max_c: None,
                avg_c: None,
                avg_c_over_n: None,
            };
        }
        let cs = records.iter().map(|r| r.c);
        Aggregates {
            count,
            max_n: records.iter().map(|r| r.n).max(),
            min_c: cs.clone().reduce(f64::min),
            max_c: cs.clone().reduce(f64::max),
            avg_c: Some(cs.sum::<f64>() / count as f64),
            avg_c_over_n: Some(records.iter().map(|r| r.c_over_n).sum::<f64>() / count as f64),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorEntry {
    pub id: String,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub records: Vec<Record>,
    pub aggregates: Aggregates,
    pub errors: Vec<ErrorEntry>,
}

impl Report {
    pub fn new(records: Vec<Record>, errors: Vec<ErrorEntry>) -> Report {
        let aggregates = Aggregates::from_records(&records);
        Report { records, aggregates, errors }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> anyhow::Result<Report> {
        Ok(serde_json::from_str(text)?)
    }

    /// The records as CSV; the witness center is a space separated list.
    pub fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(CsvRow::from(r))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    id: String,
    n: usize,
    c: f64,
    c_over_n: f64,
    algorithm: String,
    eps: Option<f64>,
    witness_center: String,
    witness_radius: f64,
    wall_ms: Option<f64>,
}

impl From<&Record> for CsvRow {
    fn from(r: &Record) -> Self {
        let center: Vec<String> = r.witness_center.iter().map(f64::to_string).collect();
        CsvRow {
            id: r.id.clone(),
            n: r.n,
            c: r.c,
            c_over_n: r.c_over_n,
            algorithm: r.algorithm.clone(),
            eps: r.eps,
            witness_center: center.join(" "),
            witness_radius: r.witness_radius,
            wall_ms: r.wall_ms,
        }
    }
}

/// Parses CSV produced by [`Report::to_csv`].
pub fn records_from_csv(text: &str) -> anyhow::Result<Vec<Record>> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in rd.deserialize() {
        let row: CsvRow = row?;
        let witness_center = row
            .witness_center
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<f64>, _>>()
            .context("witness_center")?;
        out.push(Record {
            id: row.id,
            n: row.n,
            c: row.c,
            c_over_n: row.c_over_n,
            algorithm: row.algorithm,
            eps: row.eps,
            witness_center,
            witness_radius: row.witness_radius,
            wall_ms: row.wall_ms,
        });
    }
    Ok(out)
}

/// Settings shared by single-curve and dataset runs.
#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub algorithm: AlgorithmChoice,
    pub eps: f64,
    pub timing: bool,
}

/// Runs the chosen algorithm on one curve.
pub fn analyze(id: &str, curve: &Curve, opts: &AnalysisOptions) -> anyhow::Result<Record> {
    let start = Instant::now();
    let res: PackednessResult = match opts.algorithm {
        AlgorithmChoice::Approx2 => approx2(curve),
        AlgorithmChoice::Approx6 => approx6(curve, opts.eps)?,
    };
    let wall_ms = opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let n = curve.len();
    Ok(Record {
        id: id.to_string(),
        n,
        c: res.value,
        c_over_n: res.value / n as f64,
        algorithm: opts.algorithm.name().to_string(),
        eps: res.eps,
        witness_center: res.witness.center.coords().to_vec(),
        witness_radius: res.witness.radius,
        wall_ms,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct DatasetOptions {
    pub analysis: AnalysisOptions,
    /// Analyze a seeded uniform sample of this many files.
    pub sample: Option<usize>,
    pub seed: u64,
    /// Worker threads; `None` uses the default pool.
    pub parallelism: Option<usize>,
}

/// Regular files of `dir` sorted by file name.
pub fn dataset_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let entry = entry?;
        if entry.file_type()?.is_file() {
            files.push(entry.path());
        }
    }
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

fn choose_sample(files: Vec<PathBuf>, n: usize, seed: u64) -> Vec<PathBuf> {
    if n >= files.len() {
        return files;
    }
    let mut rng = cpack_core::synth::rng(seed);
    let mut idx = sample(&mut rng, files.len(), n).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| files[i].clone()).collect()
}

fn analyze_file(path: &Path, opts: &AnalysisOptions) -> Result<Record, ErrorEntry> {
    let id = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let curve = crate::parse::parse_curve_file(path).map_err(|e| ErrorEntry { id: id.clone(), error: e.to_string() })?;
    analyze(&id, &curve, opts).map_err(|e| ErrorEntry { id, error: e.to_string() })
}

/// Analyzes every curve file in `dir`. Failures become error entries.
pub fn run_dataset(dir: &Path, opts: &DatasetOptions) -> anyhow::Result<Report> {
    if opts.parallelism == Some(0) {
        bail!("parallelism must be positive");
    }
    let mut files = dataset_files(dir)?;
    if let Some(n) = opts.sample {
        files = choose_sample(files, n, opts.seed);
    }
    let results = map_files(&files, opts)?;
    let mut records = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(rec) => records.push(rec),
            Err(e) => errors.push(e),
        }
    }
    Ok(Report::new(records, errors))
}

#[cfg(feature = "parallel")]
fn map_files(files: &[PathBuf], opts: &DatasetOptions) -> anyhow::Result<Vec<Result<Record, ErrorEntry>>> {
    use rayon::prelude::*;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = opts.parallelism {
        builder = builder.num_threads(k);
    }
    let pool = builder.build()?;
    Ok(pool.install(|| files.par_iter().map(|f| analyze_file(f, &opts.analysis)).collect()))
}

#[cfg(not(feature = "parallel"))]
fn map_files(files: &[PathBuf], opts: &DatasetOptions) -> anyhow::Result<Vec<Result<Record, ErrorEntry>>> {
    Ok(files.iter().map(|f| analyze_file(f, &opts.analysis)).collect())
}
