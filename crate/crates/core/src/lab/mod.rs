//! Declarative experiments: configuration, deterministic execution and CSV/JSON output.

pub mod config;
pub mod corpus;
mod experiments;
pub mod histogram;
pub mod interlacing;
pub mod polyspec;

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};

pub use config::{ExperimentConfig, ExperimentKind, FamilyName, OutputFormat, RawConfig};
pub use experiments::run;
pub use histogram::{emit_histogram, write_histogram_csv, Chart, HistogramRow};
pub use polyspec::parse_polynomial;

/// One result row. `param` is a `;`-separated list of `key=value` pairs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRecord {
    pub experiment: String,
    pub param: String,
    pub metric: String,
    pub value: f64,
    pub pass: bool,
}

impl ResultRecord {
    pub fn new(kind: ExperimentKind, param: impl Into<String>, metric: &str, value: f64, pass: bool) -> Self {
        ResultRecord { experiment: kind.name().into(), param: param.into(), metric: metric.into(), value, pass }
    }
}

pub fn all_pass(records: &[ResultRecord]) -> bool {
    records.iter().all(|r| r.pass)
}

/// CSV with header `experiment,param,metric,value,pass`, or a JSON array.
pub fn write_records<W: Write>(mut out: W, records: &[ResultRecord], format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if records.is_empty() {
                w.write_record(["experiment", "param", "metric", "value", "pass"])
                    .map_err(|e| Error::Io(e.to_string()))?;
            }
            for r in records {
                w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, records).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}
