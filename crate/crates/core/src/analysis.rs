// SPDX-License-Identifier: Apache-2.0

//! Kernel extraction: the induced subgraph on the top equivalence classes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pareto::EquivalenceClasses;

#[derive(Debug, Clone)]
pub struct KernelReport {
    pub kernel: Graph,
    pub classes_included: usize,
    pub stats: KernelStats,
}

/// Summary numbers of a kernel. Both degree conventions are kept:
/// `avg_degree_*` is 2E/N, `edges_per_node_*` is E/N.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub avg_degree_kernel: f64,
    pub edges_per_node_kernel: f64,
    pub full_node_count: usize,
    pub full_edge_count: usize,
    pub avg_degree_full: f64,
    pub edges_per_node_full: f64,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

pub fn extract_kernel(
    g: &Graph,
    classes: &EquivalenceClasses,
    top_k: usize,
) -> Result<KernelReport> {
    if classes.node_count() != g.node_count() {
        return Err(Error::NodeSetMismatch(format!(
            "classes cover {} nodes, graph has {}",
            classes.node_count(),
            g.node_count()
        )));
    }
    if top_k == 0 || top_k > classes.len() {
        return Err(Error::InvalidParameter(format!(
            "top_k must be in 1..={}, got {top_k}",
            classes.len()
        )));
    }
    let members: Vec<usize> = classes.classes()[..top_k]
        .iter()
        .flatten()
        .copied()
        .collect();
    let kernel = g.induced_subgraph(&members);
    let (n, e) = (kernel.node_count(), kernel.edge_count());
    let stats = KernelStats {
        node_count: n,
        edge_count: e,
        avg_degree_kernel: ratio(2 * e, n),
        edges_per_node_kernel: ratio(e, n),
        full_node_count: g.node_count(),
        full_edge_count: g.edge_count(),
        avg_degree_full: ratio(2 * g.edge_count(), g.node_count()),
        edges_per_node_full: ratio(g.edge_count(), g.node_count()),
    };
    Ok(KernelReport {
        kernel,
        classes_included: top_k,
        stats,
    })
}

/// Whether the nodes with these labels are pairwise adjacent.
pub fn completeness_check<'a>(
    g: &Graph,
    labels: impl IntoIterator<Item = &'a str>,
) -> Result<bool> {
    let nodes = g.indices_of(labels)?;
    Ok(is_clique(g, &nodes))
}

pub fn is_clique(g: &Graph, nodes: &[usize]) -> bool {
    nodes
        .iter()
        .enumerate()
        .all(|(i, &u)| nodes[i + 1..].iter().all(|&v| u == v || g.has_edge(u, v)))
}
