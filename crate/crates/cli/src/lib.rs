//! Curve file ingestion and dataset reports for the `cpack` binary.

pub mod parse;
pub mod report;

pub use parse::{parse_curve, parse_curve_file, parse_curve_reader, ParseError};
pub use report::{
    analyze, records_from_csv, run_dataset, AlgorithmChoice, Aggregates, AnalysisOptions, DatasetOptions,
    ErrorEntry, Format, Record, Report,
};
