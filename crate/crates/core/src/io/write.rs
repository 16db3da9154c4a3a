// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    EdgeList,
    Dot,
}

/// Serializes `g`. Edge lists carry one `label label` line per edge, each
/// edge once; isolated nodes are not representable there and are dropped.
pub fn write_graph(g: &Graph, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::EdgeList => {
            for (u, v) in g.edges() {
                let _ = writeln!(out, "{} {}", g.label(u), g.label(v));
            }
        }
        OutputFormat::Dot => {
            if g.is_empty() {
                return out;
            }
            out.push_str("graph G {\n");
            for label in g.labels() {
                let _ = writeln!(out, "  {};", quote(label));
            }
            for (u, v) in g.edges() {
                let _ = writeln!(out, "  {} -- {};", quote(g.label(u)), quote(g.label(v)));
            }
            out.push_str("}\n");
        }
    }
    out
}

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}
