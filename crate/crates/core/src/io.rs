//! Input formats: a labeled distance-matrix CSV and an edge-list JSON
//! document `{"points": [...], "edges": [["u", "v", w], ...]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metric::{FiniteMetricSpace, MetricError};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("row {row}, column {col}: cannot parse {value:?} as a number")]
    Number { row: usize, col: usize, value: String },
    #[error("header lists {header} labels but row {row} is labeled {label:?}")]
    RowLabel { row: usize, header: usize, label: String },
    #[error("matrix has no header row")]
    NoHeader,
    #[error(transparent)]
    Metric(#[from] MetricError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeList {
    pub points: Vec<String>,
    pub edges: Vec<(String, String, f64)>,
}

impl EdgeList {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_space(&self) -> Result<FiniteMetricSpace, MetricError> {
        FiniteMetricSpace::from_weighted_graph(self.points.clone(), &self.edges)
    }

    /// JSON with one edge per line.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"points\": ");
        out.push_str(&enc(&self.points));
        out.push_str(",\n  \"edges\": [");
        for (i, e) in self.edges.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            out.push_str(&enc(e));
        }
        out.push_str(if self.edges.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
        out
    }
}

fn enc<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

/// Parses a square distance matrix whose first row and first column hold
/// the labels (the top-left cell is ignored).
pub fn read_matrix_csv(text: &str, require_triangle: bool) -> Result<FiniteMetricSpace, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = records.next().ok_or(InputError::NoHeader)??;
    let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut matrix = Vec::with_capacity(labels.len());
    for (r, rec) in records.enumerate() {
        let rec = rec?;
        let label = rec.get(0).unwrap_or_default();
        if labels.get(r).map(String::as_str) != Some(label) {
            return Err(InputError::RowLabel {
                row: r + 1,
                header: labels.len(),
                label: label.to_string(),
            });
        }
        let row = rec
            .iter()
            .enumerate()
            .skip(1)
            .map(|(c, v)| {
                v.parse::<f64>().map_err(|_| InputError::Number {
                    row: r + 1,
                    col: c,
                    value: v.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        matrix.push(row);
    }
    Ok(FiniteMetricSpace::from_distance_matrix(labels, &matrix, require_triangle)?)
}
