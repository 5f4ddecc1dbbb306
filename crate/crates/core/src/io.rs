//! Sample files.
//!
//! A sample is a UTF-8 CSV with the header `id,score,response`, one record per
//! row, a decimal score and a response of exactly `0` or `1`.

use std::collections::HashSet;
use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::sample::ScoredRecord;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    MalformedRow { line: u64, reason: String },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("line {line}: response must be 0 or 1")]
    BadResponseValue { line: u64 },
    #[error("sample file has no records")]
    EmptySample,
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

const HEADER: [&str; 3] = ["id", "score", "response"];

/// Reads a sample file. Row order is preserved.
pub fn parse_sample_csv(path: impl AsRef<Path>) -> Result<Vec<ScoredRecord>, IoError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| IoError::File {
        path: path.to_owned(),
        source,
    })?;
    parse_sample_reader(file)
}

pub fn parse_sample_reader(reader: impl Read) -> Result<Vec<ScoredRecord>, IoError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut rows = rdr.records();

    let header = match rows.next() {
        None => return Err(IoError::EmptySample),
        Some(row) => row?,
    };
    let header: Vec<&str> = header.iter().collect();
    let header_ok = header.len() == 3
        && header
            .iter()
            .zip(HEADER)
            .all(|(got, want)| got.trim_start_matches('\u{feff}') == want);
    if !header_ok {
        return Err(IoError::MalformedRow {
            line: 1,
            reason: format!("expected header `id,score,response`, found `{}`", header.join(",")),
        });
    }

    let mut seen = HashSet::new();
    let mut records = Vec::new();
    for row in rows {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != 3 {
            return Err(IoError::MalformedRow {
                line,
                reason: format!("expected 3 fields, found {}", row.len()),
            });
        }
        let id = &row[0];
        if id.is_empty() {
            return Err(IoError::MalformedRow {
                line,
                reason: "empty id".into(),
            });
        }
        let score: f64 = row[1].parse().map_err(|_| IoError::MalformedRow {
            line,
            reason: format!("score `{}` is not a decimal number", &row[1]),
        })?;
        if !score.is_finite() {
            return Err(IoError::MalformedRow {
                line,
                reason: format!("score `{}` is not finite", &row[1]),
            });
        }
        let responder = match &row[2] {
            "0" => false,
            "1" => true,
            _ => return Err(IoError::BadResponseValue { line }),
        };
        if !seen.insert(id.to_owned()) {
            return Err(IoError::DuplicateId(id.to_owned()));
        }
        records.push(ScoredRecord::new(id, score, responder));
    }
    if records.is_empty() {
        return Err(IoError::EmptySample);
    }
    Ok(records)
}

/// Writes records in the sample format. Scores use the shortest
/// representation that parses back to the same value.
pub fn write_sample_csv(records: &[ScoredRecord], writer: impl Write) -> Result<(), IoError> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(HEADER)?;
    for r in records {
        wtr.write_record([r.id.as_str(), &r.score.to_string(), if r.responder { "1" } else { "0" }])?;
    }
    wtr.flush().map_err(|source| IoError::File {
        path: PathBuf::from("<output>"),
        source,
    })?;
    Ok(())
}
