// SPDX-License-Identifier: Apache-2.0

//! The four node indicators: degree, betweenness, closeness and the
//! neighbor-degree aggregate. All are "larger is better".
//!
//! Betweenness and closeness run one breadth-first search per source node.
//! Sources are split into contiguous blocks, one per worker; each worker
//! accumulates into its own buffer and the buffers are summed in block
//! order, so results are reproducible for a fixed worker count.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Indicator {
    Degree,
    Betweenness,
    Closeness,
    Neighbors,
}

impl Indicator {
    pub const ALL: [Indicator; 4] = [
        Indicator::Degree,
        Indicator::Betweenness,
        Indicator::Closeness,
        Indicator::Neighbors,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Indicator::Degree => "degree",
            Indicator::Betweenness => "betweenness",
            Indicator::Closeness => "closeness",
            Indicator::Neighbors => "neighbors",
        }
    }

    pub fn from_name(name: &str) -> Option<Indicator> {
        Indicator::ALL.into_iter().find(|i| i.name() == name)
    }
}

/// Options shared by the indicator computations.
#[derive(Debug, Clone, Copy)]
pub struct IndicatorOptions {
    /// Exponent of the neighbor-degree aggregate.
    pub nk: f64,
    /// Worker threads for the all-sources passes; 1 runs inline.
    pub threads: usize,
}

impl Default for IndicatorOptions {
    fn default() -> Self {
        Self {
            nk: 1.0,
            threads: 1,
        }
    }
}

/// Per-node scores for a set of named indicators, stored column-wise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreTable {
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
}

impl ScoreTable {
    /// Builds a table from named columns. Every column must have the same
    /// length and contain only finite values.
    pub fn new(names: Vec<String>, columns: Vec<Vec<f64>>) -> Result<ScoreTable> {
        if names.len() != columns.len() {
            return Err(Error::InvalidParameter(format!(
                "{} names for {} columns",
                names.len(),
                columns.len()
            )));
        }
        if let Some(first) = columns.first() {
            let n = first.len();
            for (name, col) in names.iter().zip(&columns) {
                if col.len() != n {
                    return Err(Error::LengthMismatch(n, col.len()));
                }
                if let Some(bad) = col.iter().find(|x| !x.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "column {name} has non-finite score {bad}"
                    )));
                }
            }
        }
        Ok(ScoreTable { names, columns })
    }

    /// Degree, betweenness, closeness and neighbors, in that order.
    pub fn indicators(g: &Graph, options: IndicatorOptions) -> Result<ScoreTable> {
        let degree = degree(g);
        require_connected(g)?;
        let (betweenness, distance_sums) = brandes(g, options.threads);
        let closeness = distance_sums.into_iter().map(reciprocal).collect();
        let neighbors = neighbors_score(g, options.nk)?;
        ScoreTable::new(
            Indicator::ALL
                .iter()
                .map(|i| i.name().to_string())
                .collect(),
            vec![degree, betweenness, closeness, neighbors],
        )
    }

    pub fn node_count(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.columns[i].as_slice())
    }

    pub fn row(&self, node: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[node]).collect()
    }

    /// Replaces column `index` by `f` applied elementwise.
    pub fn map_column(&self, index: usize, f: impl Fn(f64) -> f64) -> Result<ScoreTable> {
        let mut columns = self.columns.clone();
        for x in &mut columns[index] {
            *x = f(*x);
        }
        ScoreTable::new(self.names.clone(), columns)
    }
}

/// Shorthand for [`ScoreTable::indicators`] on one thread.
pub fn score_table(g: &Graph, nk: f64) -> Result<ScoreTable> {
    ScoreTable::indicators(g, IndicatorOptions { nk, threads: 1 })
}

pub fn degree(g: &Graph) -> Vec<f64> {
    (0..g.node_count()).map(|u| g.degree(u) as f64).collect()
}

/// Shortest-path betweenness, each unordered pair of endpoints counted once
/// and the endpoints themselves excluded.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    betweenness_parallel(g, 1)
}

pub fn betweenness_parallel(g: &Graph, threads: usize) -> Vec<f64> {
    brandes(g, threads).0
}

/// Betweenness plus, per source, the summed distance to the nodes it reaches.
fn brandes(g: &Graph, threads: usize) -> (Vec<f64>, Vec<u64>) {
    let n = g.node_count();
    let csr = Csr::new(g);
    let partials = for_each_source(
        n,
        threads,
        || BrandesScratch::new(n),
        |scratch, s| scratch.accumulate(&csr, s),
    );
    let mut total = vec![0.0; n];
    let mut sums = vec![0; n];
    for p in partials {
        for (t, x) in total.iter_mut().zip(p.centrality) {
            *t += x;
        }
        for (s, d) in p.distance_sums {
            sums[s] = d;
        }
    }
    // Every pair {s, t} was visited from both endpoints.
    for t in &mut total {
        *t /= 2.0;
    }
    (total, sums)
}

fn require_connected(g: &Graph) -> Result<()> {
    let components = g.connected_components().len();
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    Ok(())
}

fn reciprocal(total: u64) -> f64 {
    if total == 0 {
        0.0
    } else {
        1.0 / total as f64
    }
}

/// Reciprocal of the summed hop distance to every other node.
///
/// Fails on disconnected graphs. A single node gets 0.
pub fn closeness(g: &Graph) -> Result<Vec<f64>> {
    closeness_parallel(g, 1)
}

pub fn closeness_parallel(g: &Graph, threads: usize) -> Result<Vec<f64>> {
    let n = g.node_count();
    require_connected(g)?;
    let partials = for_each_source(
        n,
        threads,
        || BfsScratch::new(n),
        |scratch, s| {
            let total = scratch.distance_sum(g, s);
            scratch.out.push((s, total));
        },
    );
    let mut result = vec![0.0; n];
    for p in partials {
        for (s, total) in p.out {
            result[s] = reciprocal(total);
        }
    }
    Ok(result)
}

/// `(sum over neighbors of degree^nk)^(1/nk)`; 0 for isolated nodes.
pub fn neighbors_score(g: &Graph, nk: f64) -> Result<Vec<f64>> {
    if !(nk > 0.0 && nk.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "nk must be positive, got {nk}"
        )));
    }
    Ok((0..g.node_count())
        .map(|u| {
            let nbrs = g.neighbors(u);
            if nk == 1.0 {
                nbrs.iter().map(|&v| g.degree(v)).sum::<usize>() as f64
            } else {
                let sum: f64 = nbrs.iter().map(|&v| (g.degree(v) as f64).powf(nk)).sum();
                if sum == 0.0 {
                    0.0
                } else {
                    sum.powf(1.0 / nk)
                }
            }
        })
        .collect())
}

/// Runs `visit` for every source in `0..n`, splitting sources into
/// contiguous blocks across `threads` workers. Returns each worker's state
/// in block order.
fn for_each_source<S, M, F>(n: usize, threads: usize, make: M, visit: F) -> Vec<S>
where
    S: Send,
    M: Fn() -> S + Sync,
    F: Fn(&mut S, usize) + Sync,
{
    let threads = threads.clamp(1, n.max(1));
    if threads == 1 {
        let mut state = make();
        for s in 0..n {
            visit(&mut state, s);
        }
        return vec![state];
    }
    let block = n.div_ceil(threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                let (make, visit) = (&make, &visit);
                scope.spawn(move || {
                    let mut state = make();
                    for s in (w * block)..((w + 1) * block).min(n) {
                        visit(&mut state, s);
                    }
                    state
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("centrality worker panicked"))
            .collect()
    })
}

struct BfsScratch {
    dist: Vec<u32>,
    queue: Vec<usize>,
    out: Vec<(usize, u64)>,
}

impl BfsScratch {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![u32::MAX; n],
            queue: Vec::with_capacity(n),
            out: Vec::new(),
        }
    }

    fn distance_sum(&mut self, g: &Graph, s: usize) -> u64 {
        self.queue.clear();
        self.queue.push(s);
        self.dist[s] = 0;
        let mut head = 0;
        let mut total = 0u64;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            let du = self.dist[u];
            total += du as u64;
            for &v in g.neighbors(u) {
                if self.dist[v] == u32::MAX {
                    self.dist[v] = du + 1;
                    self.queue.push(v);
                }
            }
        }
        for &u in &self.queue {
            self.dist[u] = u32::MAX;
        }
        total
    }
}

/// Compressed adjacency with 32-bit targets for the all-sources passes.
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Csr {
    fn new(g: &Graph) -> Self {
        let mut offsets = Vec::with_capacity(g.node_count() + 1);
        let mut targets = Vec::with_capacity(2 * g.edge_count());
        offsets.push(0);
        for u in 0..g.node_count() {
            targets.extend(g.neighbors(u).iter().map(|&v| v as u32));
            offsets.push(targets.len());
        }
        Self { offsets, targets }
    }

    fn neighbors(&self, u: usize) -> &[u32] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }
}

struct BrandesScratch {
    dist: Vec<u32>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    order: Vec<u32>,
    centrality: Vec<f64>,
    distance_sums: Vec<(usize, u64)>,
}

impl BrandesScratch {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![u32::MAX; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
            centrality: vec![0.0; n],
            distance_sums: Vec::new(),
        }
    }

    fn accumulate(&mut self, g: &Csr, s: usize) {
        self.order.clear();
        self.order.push(s as u32);
        self.dist[s] = 0;
        self.sigma[s] = 1.0;
        let mut head = 0;
        let mut distance_sum = 0u64;
        while head < self.order.len() {
            let u = self.order[head] as usize;
            head += 1;
            let du = self.dist[u];
            distance_sum += du as u64;
            for &v in g.neighbors(u) {
                let v = v as usize;
                if self.dist[v] == u32::MAX {
                    self.dist[v] = du + 1;
                    self.order.push(v as u32);
                }
                if self.dist[v] == du + 1 {
                    self.sigma[v] += self.sigma[u];
                }
            }
        }
        // Dependencies flow back from the farthest nodes; predecessors of w
        // are exactly its neighbors one hop closer to s.
        self.distance_sums.push((s, distance_sum));
        for &w in self.order.iter().rev() {
            let w = w as usize;
            let dw = self.dist[w];
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            if dw > 0 {
                for &v in g.neighbors(w) {
                    let v = v as usize;
                    if self.dist[v] == dw - 1 {
                        self.delta[v] += self.sigma[v] * coeff;
                    }
                }
            }
            if w != s {
                self.centrality[w] += self.delta[w];
            }
        }
        for &u in &self.order {
            let u = u as usize;
            self.dist[u] = u32::MAX;
            self.sigma[u] = 0.0;
            self.delta[u] = 0.0;
        }
    }
}
