//! Trace CSV serialization.
//!
//! Normative schema: header `k,x,u,y,z,step_norm,phi_gap,resolvent_violation`;
//! vector-valued columns are semicolon-joined decimals with 17 significant
//! digits; `phi_gap` is empty when no reference solution was supplied.
//! The format round-trips: reading a written trace recovers every value
//! bit-for-bit.

use crate::solver::IterationRecord;
use std::path::Path;
use thiserror::Error;

/// The normative column set, in order.
pub const TRACE_HEADER: [&str; 8] = [
    "k",
    "x",
    "u",
    "y",
    "z",
    "step_norm",
    "phi_gap",
    "resolvent_violation",
];

/// Errors from trace I/O.
#[derive(Debug, Error)]
pub enum TraceError {
    #[error("cannot access trace {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unexpected trace header {found:?} (expected {expected:?})")]
    Header { found: String, expected: String },
    #[error("row {row}, column {column}: cannot parse {value:?} as a number")]
    Parse {
        row: usize,
        column: &'static str,
        value: String,
    },
}

/// One parsed trace row; the file-format twin of
/// [`IterationRecord`](crate::solver::IterationRecord) with plain
/// coordinate vectors instead of space-tagged points.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub k: usize,
    pub x: Vec<f64>,
    pub u: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    pub step_norm: f64,
    pub phi_gap: Option<f64>,
    pub resolvent_violation: f64,
}

impl From<&IterationRecord> for TraceRow {
    fn from(record: &IterationRecord) -> Self {
        TraceRow {
            k: record.k,
            x: record.x.coords().to_vec(),
            u: record.u.coords().to_vec(),
            y: record.y.coords().to_vec(),
            z: record.z.coords().to_vec(),
            step_norm: record.step_norm,
            phi_gap: record.phi_gap,
            resolvent_violation: record.resolvent_violation,
        }
    }
}

fn format_scalar(v: f64) -> String {
    // 17 significant digits: enough to reproduce any f64 exactly.
    format!("{v:.16e}")
}

fn format_vector(coords: &[f64]) -> String {
    coords
        .iter()
        .map(|&v| format_scalar(v))
        .collect::<Vec<_>>()
        .join(";")
}

fn parse_scalar(text: &str, row: usize, column: &'static str) -> Result<f64, TraceError> {
    text.trim().parse::<f64>().map_err(|_| TraceError::Parse {
        row,
        column,
        value: text.to_string(),
    })
}

fn parse_vector(text: &str, row: usize, column: &'static str) -> Result<Vec<f64>, TraceError> {
    text.split(';')
        .map(|part| parse_scalar(part, row, column))
        .collect()
}

/// Write iteration records as a trace CSV.
pub fn write_trace<'a, I>(path: &Path, records: I) -> Result<(), TraceError>
where
    I: IntoIterator<Item = &'a IterationRecord>,
{
    let file = std::fs::File::create(path).map_err(|source| TraceError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut writer = csv::Writer::from_writer(file);
    writer.write_record(TRACE_HEADER)?;
    for record in records {
        writer.write_record([
            record.k.to_string(),
            format_vector(record.x.coords()),
            format_vector(record.u.coords()),
            format_vector(record.y.coords()),
            format_vector(record.z.coords()),
            format_scalar(record.step_norm),
            record.phi_gap.map(format_scalar).unwrap_or_default(),
            format_scalar(record.resolvent_violation),
        ])?;
    }
    writer.flush().map_err(|source| TraceError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(())
}

/// Read a trace CSV written by [`write_trace`].
pub fn read_trace(path: &Path) -> Result<Vec<TraceRow>, TraceError> {
    let file = std::fs::File::open(path).map_err(|source| TraceError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(file);
    let header = reader.headers()?.clone();
    let expected = TRACE_HEADER.join(",");
    let found = header.iter().collect::<Vec<_>>().join(",");
    if found != expected {
        return Err(TraceError::Header { found, expected });
    }
    let mut rows = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record?;
        let row_number = index + 2; // 1-based, after the header line
        let field = |i: usize| record.get(i).unwrap_or_default();
        let k = field(0)
            .trim()
            .parse::<usize>()
            .map_err(|_| TraceError::Parse {
                row: row_number,
                column: "k",
                value: field(0).to_string(),
            })?;
        let phi_text = field(6);
        let phi_gap = if phi_text.trim().is_empty() {
            None
        } else {
            Some(parse_scalar(phi_text, row_number, "phi_gap")?)
        };
        rows.push(TraceRow {
            k,
            x: parse_vector(field(1), row_number, "x")?,
            u: parse_vector(field(2), row_number, "u")?,
            y: parse_vector(field(3), row_number, "y")?,
            z: parse_vector(field(4), row_number, "z")?,
            step_norm: parse_scalar(field(5), row_number, "step_norm")?,
            phi_gap,
            resolvent_violation: parse_scalar(field(7), row_number, "resolvent_violation")?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::presets::Preset;

    #[test]
    fn round_trip_is_lossless() {
        let result = Preset::Paper35.run();
        let dir = std::env::temp_dir();
        let path = dir.join("exgrad-trace-roundtrip-test.csv");
        write_trace(&path, &result.trace).unwrap();

        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "k,x,u,y,z,step_norm,phi_gap,resolvent_violation"
        );
        let first = lines.next().unwrap();
        assert!(first.starts_with("1,3.5000000000000000e0,1.7500000000000000e0,"));

        let rows = read_trace(&path).unwrap();
        assert_eq!(rows.len(), result.trace.len());
        for (row, record) in rows.iter().zip(&result.trace) {
            assert_eq!(row, &TraceRow::from(record), "row {} diverged", row.k);
        }
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn multidimensional_rows_join_with_semicolons() {
        let result = Preset::KorpelevichDemo.run();
        let dir = std::env::temp_dir();
        let path = dir.join("exgrad-trace-vector-test.csv");
        write_trace(&path, result.trace.iter().take(3)).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let first_row = text.lines().nth(1).unwrap();
        assert!(
            first_row.contains("1.0000000000000000e0;1.0000000000000000e0"),
            "{first_row}"
        );
        // Baseline traces have no reference solution: phi_gap is empty.
        assert!(first_row.contains(",,"), "{first_row}");
        let rows = read_trace(&path).unwrap();
        assert_eq!(rows[0].x, vec![1.0, 1.0]);
        assert_eq!(rows[0].phi_gap, None);
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn malformed_inputs_are_reported() {
        let dir = std::env::temp_dir();
        let path = dir.join("exgrad-trace-malformed-test.csv");

        std::fs::write(&path, "k,x,wrong\n").unwrap();
        assert!(matches!(
            read_trace(&path),
            Err(TraceError::Header { .. })
        ));

        std::fs::write(
            &path,
            "k,x,u,y,z,step_norm,phi_gap,resolvent_violation\n1,oops,0,0,0,0,,0\n",
        )
        .unwrap();
        match read_trace(&path) {
            Err(TraceError::Parse { row, column, .. }) => {
                assert_eq!(row, 2);
                assert_eq!(column, "x");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        std::fs::remove_file(&path).ok();

        assert!(matches!(
            read_trace(Path::new("/definitely/not/here.csv")),
            Err(TraceError::Io { .. })
        ));
    }
}
