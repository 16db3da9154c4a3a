// SPDX-License-Identifier: Apache-2.0

use super::Parsed;
use crate::error::{Error, Result};
use crate::graph::GraphBuilder;

#[derive(Debug, Clone)]
pub struct EdgeListOptions {
    /// Lines starting with this prefix (after leading whitespace) are skipped.
    pub comment_prefix: String,
    /// Field separator; `None` splits on any run of whitespace.
    pub delimiter: Option<char>,
}

impl Default for EdgeListOptions {
    fn default() -> Self {
        Self {
            comment_prefix: "#".to_string(),
            delimiter: None,
        }
    }
}

/// Parses one edge per line. Labels are kept verbatim and indexed in order
/// of first appearance. Blank lines are ignored.
pub fn parse_edge_list(text: &str, options: &EdgeListOptions) -> Result<Parsed> {
    let mut builder = GraphBuilder::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty()
            || (!options.comment_prefix.is_empty() && trimmed.starts_with(&options.comment_prefix))
        {
            continue;
        }
        let fields: Vec<&str> = match options.delimiter {
            None => trimmed.split_whitespace().collect(),
            Some(d) => trimmed
                .split(d)
                .map(str::trim)
                .filter(|f| !f.is_empty())
                .collect(),
        };
        match fields.as_slice() {
            [a, b] => {
                builder.add_edge(a, b);
            }
            _ => {
                return Err(Error::parse(
                    lineno + 1,
                    format!("expected two node labels, found {} field(s)", fields.len()),
                ))
            }
        }
    }
    let self_loops_dropped = builder.self_loops();
    let duplicate_edges = builder.duplicates();
    Ok(Parsed {
        graph: builder.build(),
        self_loops_dropped,
        duplicate_edges,
        declared_directed: false,
    })
}
