// SPDX-License-Identifier: Apache-2.0

//! PageRank and HITS on an undirected graph read as pairs of opposite arcs,
//! plus conversion of any score vector into a ranked sequence of tie groups.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_JUMP: f64 = 0.15;
pub const DEFAULT_PAGERANK_ITERATIONS: usize = 200;
pub const DEFAULT_HITS_MAX_ITERATIONS: usize = 500;
pub const DEFAULT_HITS_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-12;

/// PageRank by power iteration for exactly `iterations` sweeps.
///
/// `jump` is the teleport probability. Mass held by isolated nodes is spread
/// uniformly over all nodes, so the result always sums to 1.
pub fn pagerank(g: &Graph, jump: f64, iterations: usize) -> Result<Vec<f64>> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(jump > 0.0 && jump < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "jump must be in (0, 1), got {jump}"
        )));
    }
    if iterations == 0 {
        return Err(Error::InvalidParameter(
            "iterations must be at least 1".into(),
        ));
    }
    let nf = n as f64;
    let mut rank = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut share = vec![0.0; n];
    for _ in 0..iterations {
        let mut dangling = 0.0;
        for u in 0..n {
            let d = g.degree(u);
            if d == 0 {
                dangling += rank[u];
                share[u] = 0.0;
            } else {
                share[u] = rank[u] / d as f64;
            }
        }
        let base = jump / nf + (1.0 - jump) * dangling / nf;
        for (u, slot) in next.iter_mut().enumerate() {
            let inflow: f64 = g.neighbors(u).iter().map(|&v| share[v]).sum();
            *slot = base + (1.0 - jump) * inflow;
        }
        std::mem::swap(&mut rank, &mut next);
    }
    Ok(rank)
}

/// HITS authority scores, L2-normalized.
///
/// Each step computes authority = Aᵀ·hub and hub = A·authority from the
/// previous step's vectors, then normalizes both. With opposite arc pairs
/// A is symmetric, so authority and hub stay equal throughout. Iteration
/// stops once the L1 change of the authority vector drops to `tol` or after
/// `max_iterations` steps. On a graph without edges the uniform start
/// vector is returned.
pub fn hits(g: &Graph, max_iterations: usize, tol: f64) -> Result<Vec<f64>> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if max_iterations == 0 {
        return Err(Error::InvalidParameter(
            "max_iterations must be at least 1".into(),
        ));
    }
    let start = 1.0 / (n as f64).sqrt();
    let mut authority = vec![start; n];
    let mut hub = vec![start; n];
    let mut next_authority = vec![0.0; n];
    let mut next_hub = vec![0.0; n];
    for _ in 0..max_iterations {
        for u in 0..n {
            let nbrs = g.neighbors(u);
            next_authority[u] = nbrs.iter().map(|&v| hub[v]).sum();
            next_hub[u] = nbrs.iter().map(|&v| authority[v]).sum();
        }
        if !normalize(&mut next_authority) || !normalize(&mut next_hub) {
            break;
        }
        let change: f64 = authority
            .iter()
            .zip(&next_authority)
            .map(|(a, b)| (a - b).abs())
            .sum();
        std::mem::swap(&mut authority, &mut next_authority);
        std::mem::swap(&mut hub, &mut next_hub);
        if change <= tol {
            break;
        }
    }
    Ok(authority)
}

fn normalize(v: &mut [f64]) -> bool {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return false;
    }
    for x in v.iter_mut() {
        *x /= norm;
    }
    true
}

/// How close two scores must be to fall into the same tie group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum TieTolerance {
    /// `|a - b| <= tol`.
    Absolute(f64),
    /// `|a - b| <= tol * max(|a|, |b|)`.
    Relative(f64),
}

impl TieTolerance {
    pub fn tied(self, a: f64, b: f64) -> bool {
        let diff = (a - b).abs();
        match self {
            TieTolerance::Absolute(tol) => diff <= tol,
            TieTolerance::Relative(tol) => diff <= tol * a.abs().max(b.abs()),
        }
    }
}

/// A compared algorithm's output: groups of tied nodes, most important first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedSequence {
    groups: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    source_scores: Option<Vec<f64>>,
}

impl RankedSequence {
    /// Wraps explicit groups. They must partition `0..node_count`.
    pub fn from_groups(groups: Vec<Vec<usize>>, node_count: usize) -> Result<RankedSequence> {
        check_partition(&groups, node_count)?;
        Ok(RankedSequence {
            groups,
            source_scores: None,
        })
    }

    /// A totally ordered sequence: every node in its own group.
    pub fn from_order(order: Vec<usize>, node_count: usize) -> Result<RankedSequence> {
        Self::from_groups(order.into_iter().map(|u| vec![u]).collect(), node_count)
    }

    /// Sorts nodes by descending score and chains neighbors in that order
    /// into one group while consecutive scores are tied under `tolerance`.
    /// Equal scores keep ascending index order.
    pub fn from_scores(scores: &[f64], tolerance: TieTolerance) -> Result<RankedSequence> {
        if let Some(bad) = scores.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite score {bad}")));
        }
        let mut order: Vec<usize> = (0..scores.len()).collect();
        order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut prev: Option<usize> = None;
        for u in order {
            match (prev, groups.last_mut()) {
                (Some(p), Some(group)) if tolerance.tied(scores[p], scores[u]) => group.push(u),
                _ => groups.push(vec![u]),
            }
            prev = Some(u);
        }
        Ok(RankedSequence {
            groups,
            source_scores: Some(scores.to_vec()),
        })
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn source_scores(&self) -> Option<&[f64]> {
        self.source_scores.as_deref()
    }

    pub fn node_count(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn is_total(&self) -> bool {
        self.groups.iter().all(|g| g.len() == 1)
    }
}

/// [`RankedSequence::from_scores`] with an absolute tolerance.
pub fn to_ranked_sequence(scores: &[f64], tie_tol: f64) -> Result<RankedSequence> {
    RankedSequence::from_scores(scores, TieTolerance::Absolute(tie_tol))
}

pub(crate) fn check_partition(groups: &[Vec<usize>], node_count: usize) -> Result<()> {
    let mut seen = vec![false; node_count];
    let mut total = 0;
    for group in groups {
        if group.is_empty() {
            return Err(Error::NodeSetMismatch("empty group".into()));
        }
        for &u in group {
            if u >= node_count {
                return Err(Error::NodeSetMismatch(format!(
                    "node {u} outside 0..{node_count}"
                )));
            }
            if std::mem::replace(&mut seen[u], true) {
                return Err(Error::NodeSetMismatch(format!("node {u} appears twice")));
            }
            total += 1;
        }
    }
    if total != node_count {
        return Err(Error::NodeSetMismatch(format!(
            "{total} of {node_count} nodes present"
        )));
    }
    Ok(())
}
