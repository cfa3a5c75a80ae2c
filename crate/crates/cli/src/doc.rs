//! On-disk matrix documents: CSV (entries only) and JSON (entries plus
//! optional metadata). Entries are exact rational strings in both.

use serde::{Deserialize, Serialize};
use ssr_core::{ConstructionTrace, Mat, Scalar, SignPattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<SignPattern>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<ConstructionTrace>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl MatrixDocument {
    pub fn new(m: &Mat, metadata: Option<Metadata>) -> Self {
        MatrixDocument {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.to_rows(),
            metadata,
        }
    }

    pub fn matrix(&self) -> Result<Mat, String> {
        if self.rows == 0 || self.cols == 0 {
            return Err("matrix must have at least one row and one column".into());
        }
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(format!(
                "entries do not form a {}x{} grid",
                self.rows, self.cols
            ));
        }
        Mat::from_rows(self.entries.clone()).map_err(|e| e.to_string())
    }

    /// Reads JSON if the text starts with `{`, CSV otherwise.
    pub fn parse(text: &str) -> Result<Self, String> {
        if text.trim_start().starts_with('{') {
            let doc: MatrixDocument =
                serde_json::from_str(text).map_err(|e| format!("invalid JSON document: {e}"))?;
            doc.matrix()?;
            Ok(doc)
        } else {
            Self::parse_csv(text)
        }
    }

    fn parse_csv(text: &str) -> Result<Self, String> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut entries = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| format!("invalid CSV: {e}"))?;
            if record.iter().all(str::is_empty) {
                continue;
            }
            let row = record
                .iter()
                .map(|cell| {
                    parse_cell(cell).ok_or_else(|| format!("row {}: invalid entry `{cell}`", i + 1))
                })
                .collect::<Result<Vec<_>, _>>()?;
            entries.push(row);
        }
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        let doc = MatrixDocument {
            rows,
            cols,
            entries,
            metadata: None,
        };
        doc.matrix()?;
        Ok(doc)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .has_headers(false)
                    .from_writer(Vec::new());
                for row in &self.entries {
                    w.write_record(row.iter().map(Scalar::to_string))
                        .expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
        }
    }
}

/// `-?[0-9]+(/[1-9][0-9]*)?`
fn parse_cell(cell: &str) -> Option<Scalar> {
    let (num, den) = match cell.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (cell, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if let Some(d) = den {
        if d.is_empty() || d.starts_with('0') || !d.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
    }
    cell.parse().ok()
}
