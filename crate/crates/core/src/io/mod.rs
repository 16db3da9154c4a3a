// SPDX-License-Identifier: Apache-2.0

//! Reading network files into [`Graph`] and writing graphs back out.

mod edge_list;
mod gml;
mod write;

use std::path::Path;

pub use edge_list::{parse_edge_list, EdgeListOptions};
pub use gml::{parse_gml, GmlLabels};
pub use write::{write_graph, OutputFormat};

use crate::error::Result;
use crate::graph::Graph;

/// A parsed graph together with the normalizations applied while reading it.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub graph: Graph,
    pub self_loops_dropped: usize,
    pub duplicate_edges: usize,
    /// Set when a GML file declared `directed 1`; arcs are read as undirected edges.
    pub declared_directed: bool,
}

impl Parsed {
    pub(crate) fn warn(&self, source: &str) {
        if self.self_loops_dropped > 0 {
            log::warn!("{source}: dropped {} self-loop(s)", self.self_loops_dropped);
        }
        if self.duplicate_edges > 0 {
            log::warn!(
                "{source}: collapsed {} duplicate edge(s)",
                self.duplicate_edges
            );
        }
        if self.declared_directed {
            log::warn!("{source}: directed graph read as undirected");
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    EdgeList,
    Gml,
}

impl InputFormat {
    /// Guesses the format from the file extension, defaulting to edge list.
    pub fn from_path(path: &Path) -> InputFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("gml") => InputFormat::Gml,
            _ => InputFormat::EdgeList,
        }
    }
}

/// Reads and parses a graph file.
pub fn read_graph(path: &Path, format: Option<InputFormat>, labels: GmlLabels) -> Result<Parsed> {
    let text = std::fs::read_to_string(path)?;
    let parsed = match format.unwrap_or_else(|| InputFormat::from_path(path)) {
        InputFormat::EdgeList => parse_edge_list(&text, &EdgeListOptions::default())?,
        InputFormat::Gml => parse_gml(&text, labels)?,
    };
    parsed.warn(&path.display().to_string());
    Ok(parsed)
}
