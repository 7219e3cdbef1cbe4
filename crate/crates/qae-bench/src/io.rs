use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{BenchError, ExperimentRecord, Method, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// `.json` selects JSON, anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

/// Flat CSV row; `covered` is written as 0 or 1.
#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    method: Method,
    a_true: f64,
    epsilon: f64,
    alpha: f64,
    rep: u64,
    seed: u64,
    n_oracle_k: u64,
    #[serde(rename = "n_oracle_K")]
    n_oracle_big_k: u64,
    n_shots: u64,
    lo: f64,
    hi: f64,
    point: f64,
    covered: u8,
    stages: usize,
    max_k: u64,
    wall_ns: u64,
}

pub const CSV_HEADER: &str =
    "method,a_true,epsilon,alpha,rep,seed,n_oracle_k,n_oracle_K,n_shots,lo,hi,point,covered,stages,max_k,wall_ns";

impl From<&ExperimentRecord> for CsvRow {
    fn from(r: &ExperimentRecord) -> Self {
        Self {
            method: r.method,
            a_true: r.a_true,
            epsilon: r.epsilon,
            alpha: r.alpha,
            rep: r.rep,
            seed: r.seed,
            n_oracle_k: r.n_oracle_k,
            n_oracle_big_k: r.n_oracle_big_k,
            n_shots: r.n_shots,
            lo: r.lo,
            hi: r.hi,
            point: r.point,
            covered: u8::from(r.covered),
            stages: r.stages,
            max_k: r.max_k,
            wall_ns: r.wall_ns,
        }
    }
}

impl CsvRow {
    fn into_record(self) -> Result<ExperimentRecord> {
        let covered = match self.covered {
            0 => false,
            1 => true,
            other => {
                return Err(BenchError::Invalid(format!(
                    "covered must be 0 or 1, got {other}"
                )))
            }
        };
        Ok(ExperimentRecord {
            method: self.method,
            a_true: self.a_true,
            epsilon: self.epsilon,
            alpha: self.alpha,
            rep: self.rep,
            seed: self.seed,
            n_oracle_k: self.n_oracle_k,
            n_oracle_big_k: self.n_oracle_big_k,
            n_shots: self.n_shots,
            lo: self.lo,
            hi: self.hi,
            point: self.point,
            covered,
            stages: self.stages,
            max_k: self.max_k,
            wall_ns: self.wall_ns,
            stage_radii: Vec::new(),
            failure: None,
            trace: None,
        })
    }
}

/// Writes records as CSV (flat columns only) or JSON (full records).
/// `path` only labels errors.
pub fn write_records<W: Write>(
    records: &[ExperimentRecord],
    format: Format,
    out: W,
    path: &Path,
) -> Result<()> {
    let io_err = |source| BenchError::Io {
        path: path.to_owned(),
        source,
    };
    let mut out = BufWriter::new(out);
    match format {
        Format::Csv => {
            let csv_err = |source| BenchError::Csv {
                path: path.to_owned(),
                source,
            };
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(&mut out);
            w.write_record(CSV_HEADER.split(',')).map_err(csv_err)?;
            for r in records {
                w.serialize(CsvRow::from(r)).map_err(csv_err)?;
            }
            w.flush().map_err(io_err)?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, records).map_err(|source| BenchError::Json {
                path: path.to_owned(),
                source,
            })?;
            writeln!(out).map_err(io_err)?;
        }
    }
    out.flush().map_err(io_err)
}

pub fn export_records(records: &[ExperimentRecord], format: Format, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|source| BenchError::Io {
        path: path.to_owned(),
        source,
    })?;
    write_records(records, format, file, path)
}

pub fn read_records<R: Read>(
    input: R,
    format: Format,
    path: &Path,
) -> Result<Vec<ExperimentRecord>> {
    match format {
        Format::Csv => {
            let mut reader = csv::Reader::from_reader(input);
            let header = reader.headers().map_err(|source| BenchError::Csv {
                path: path.to_owned(),
                source,
            })?;
            if header.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
                return Err(BenchError::Invalid(format!(
                    "{}: unexpected CSV header",
                    path.display()
                )));
            }
            reader
                .deserialize::<CsvRow>()
                .map(|row| {
                    row.map_err(|source| BenchError::Csv {
                        path: path.to_owned(),
                        source,
                    })?
                    .into_record()
                })
                .collect()
        }
        Format::Json => serde_json::from_reader(input).map_err(|source| BenchError::Json {
            path: path.to_owned(),
            source,
        }),
    }
}

pub fn import_records(path: &Path, format: Format) -> Result<Vec<ExperimentRecord>> {
    let file = File::open(path).map_err(|source| BenchError::Io {
        path: path.to_owned(),
        source,
    })?;
    read_records(BufReader::new(file), format, path)
}
