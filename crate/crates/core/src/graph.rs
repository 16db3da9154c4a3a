// SPDX-License-Identifier: Apache-2.0

//! Undirected simple graph with stable external labels.
//!
//! Nodes are addressed internally by contiguous indices `0..node_count()`.
//! The index order is the order in which labels were first seen by the
//! builder, so the same input always yields the same indexing.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from labels and index pairs. Self-loops and duplicate
    /// edges are dropped silently; use [`GraphBuilder`] to count them.
    pub fn from_edges<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph> {
        let mut builder = GraphBuilder::new();
        for label in labels {
            let label = label.into();
            if builder.index.contains_key(&label) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate node label {label:?}"
                )));
            }
            builder.add_node(label);
        }
        let n = builder.labels.len();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) references a node outside 0..{n}"
                )));
            }
            builder.add_edge_by_index(u, v);
        }
        Ok(builder.build())
    }

    pub fn empty() -> Graph {
        GraphBuilder::new().build()
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Resolves labels to indices, failing on the first unknown label.
    pub fn indices_of<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Result<Vec<usize>> {
        labels
            .into_iter()
            .map(|l| {
                self.index_of(l)
                    .ok_or_else(|| Error::UnknownLabel(l.to_string()))
            })
            .collect()
    }

    /// Sorted neighbor indices of `node`.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Each edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Subgraph induced by `nodes`. The result keeps the original labels and
    /// orders its nodes by ascending original index.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Graph {
        let mut keep: Vec<usize> = nodes.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut remap = vec![usize::MAX; self.node_count()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let mut builder = GraphBuilder::new();
        for &old in &keep {
            builder.add_node(self.labels[old].clone());
        }
        for &old in &keep {
            for &nb in &self.adjacency[old] {
                if nb > old && remap[nb] != usize::MAX {
                    builder.add_edge_by_index(remap[old], remap[nb]);
                }
            }
        }
        builder.build()
    }

    /// Connected components, each sorted by index, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut component = Vec::new();
            while let Some(u) = queue.pop_front() {
                component.push(u);
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Induced subgraph on the largest connected component. Ties between
    /// equally large components go to the one containing the smallest index.
    pub fn largest_component(&self) -> Graph {
        let components = self.connected_components();
        match components
            .iter()
            .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
        {
            Some(c) if c.len() < self.node_count() => self.induced_subgraph(c),
            _ => self.clone(),
        }
    }
}

/// Outcome of inserting an edge into a [`GraphBuilder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeInsert {
    Added,
    Duplicate,
    SelfLoop,
}

/// Incrementally assembles a [`Graph`], normalizing away self-loops and
/// parallel edges while counting them.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
    edge_set: std::collections::HashSet<(usize, usize)>,
    self_loops: usize,
    duplicates: usize,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the index of `label`, inserting it if unseen.
    pub fn add_node(&mut self, label: impl Into<String>) -> usize {
        let label = label.into();
        if let Some(&i) = self.index.get(&label) {
            return i;
        }
        let i = self.labels.len();
        self.index.insert(label.clone(), i);
        self.labels.push(label);
        self.adjacency.push(Vec::new());
        i
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> EdgeInsert {
        let u = self.add_node(a);
        let v = self.add_node(b);
        self.add_edge_by_index(u, v)
    }

    pub fn add_edge_by_index(&mut self, u: usize, v: usize) -> EdgeInsert {
        if u == v {
            self.self_loops += 1;
            return EdgeInsert::SelfLoop;
        }
        let key = (u.min(v), u.max(v));
        if !self.edge_set.insert(key) {
            self.duplicates += 1;
            return EdgeInsert::Duplicate;
        }
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        EdgeInsert::Added
    }

    pub fn self_loops(&self) -> usize {
        self.self_loops
    }

    pub fn duplicates(&self) -> usize {
        self.duplicates
    }

    pub fn build(self) -> Graph {
        let mut adjacency = self.adjacency;
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Graph {
            labels: self.labels,
            index: self.index,
            adjacency,
            edge_count: self.edge_set.len(),
        }
    }
}
