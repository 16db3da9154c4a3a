// SPDX-License-Identifier: Apache-2.0

//! Text, TSV and JSON rendering of command results.

use std::cmp::Ordering;

use clap::ValueEnum;
use serde::Serialize;

/// Version of the JSON document layout. Bump on any breaking change.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Aligned columns.
    #[default]
    Table,
    /// Tab-separated values with a header line.
    Tsv,
    /// One JSON document.
    Json,
}

/// Header plus string cells; numbers are formatted before they get here.
#[derive(Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.headers).chain(&self.rows) {
            out.push_str(&line.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        for line in std::iter::once(&self.headers).chain(&self.rows) {
            let last = line.len().saturating_sub(1);
            for (i, cell) in line.iter().enumerate() {
                if i == last {
                    out.push_str(cell);
                } else {
                    out.push_str(&format!("{cell:<w$}  ", w = widths[i]));
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn real(x: f64) -> String {
    format!("{x:.6}")
}

/// Envelope shared by every JSON document.
#[derive(Debug, Serialize)]
pub struct Document<'a, T: Serialize> {
    pub schema_version: u32,
    pub command: &'a str,
    pub graph: GraphSummary,
    #[serde(flatten)]
    pub body: T,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub source: String,
    pub nodes: usize,
    pub edges: usize,
}

pub fn json<T: Serialize>(command: &str, graph: GraphSummary, body: T) -> String {
    let doc = Document {
        schema_version: SCHEMA_VERSION,
        command,
        graph,
        body,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

/// Orders labels as integers when both parse, integers before other
/// labels, and otherwise lexically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

pub fn sorted_labels<'a>(labels: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let mut v: Vec<&str> = labels.into_iter().collect();
    v.sort_by(|a, b| natural_cmp(a, b));
    v.into_iter().map(str::to_string).collect()
}
