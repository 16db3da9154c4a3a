// SPDX-License-Identifier: Apache-2.0

//! End-to-end helpers: build the benchmark classes for a graph and score
//! compared algorithms against them.

use std::str::FromStr;

use serde::Serialize;

use crate::centrality::{Indicator, IndicatorOptions, ScoreTable};
use crate::coverage::{coverage_report, CoverageReport};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::link_analysis::{self, RankedSequence, TieTolerance};
use crate::pareto::{self, EquivalenceClasses, ImportanceVector, Strategy};

#[derive(Debug, Clone, Copy)]
pub struct BenchmarkOptions {
    pub indicators: IndicatorOptions,
    /// Relative tolerance for grouping indicator values into one ordinal.
    pub score_tol: f64,
    pub strategy: Strategy,
}

impl Default for BenchmarkOptions {
    fn default() -> Self {
        Self {
            indicators: IndicatorOptions::default(),
            score_tol: pareto::DEFAULT_SCORE_TOLERANCE,
            strategy: Strategy::Reference,
        }
    }
}

/// The indicator table, its ordinals and the resulting classes for one graph.
#[derive(Debug, Clone)]
pub struct Benchmark {
    pub table: ScoreTable,
    pub vectors: Vec<ImportanceVector>,
    pub classes: EquivalenceClasses,
    pub score_tol: f64,
}

impl Benchmark {
    pub fn compute(g: &Graph, options: &BenchmarkOptions) -> Result<Benchmark> {
        if g.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let table = ScoreTable::indicators(g, options.indicators)?;
        let vectors = pareto::ordinalize(&table, options.score_tol);
        let classes = pareto::rank_vectors(&vectors, options.strategy)?;
        Ok(Benchmark {
            table,
            vectors,
            classes,
            score_tol: options.score_tol,
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LinkAnalysisOptions {
    pub jump: f64,
    pub pagerank_iterations: usize,
    pub hits_max_iterations: usize,
    pub hits_tol: f64,
    /// Absolute tolerance for tying PageRank, HITS and external scores.
    pub tie_tol: f64,
}

impl Default for LinkAnalysisOptions {
    fn default() -> Self {
        Self {
            jump: link_analysis::DEFAULT_JUMP,
            pagerank_iterations: link_analysis::DEFAULT_PAGERANK_ITERATIONS,
            hits_max_iterations: link_analysis::DEFAULT_HITS_MAX_ITERATIONS,
            hits_tol: link_analysis::DEFAULT_HITS_TOLERANCE,
            tie_tol: link_analysis::DEFAULT_TIE_TOLERANCE,
        }
    }
}

/// A ranking algorithm that can be scored against the benchmark.
#[derive(Debug, Clone, PartialEq)]
pub enum Algorithm {
    PageRank,
    Hits,
    Indicator(Indicator),
    /// Scores read from a `label<TAB>score` file.
    External {
        name: String,
        scores: Vec<f64>,
    },
}

impl Algorithm {
    pub fn name(&self) -> &str {
        match self {
            Algorithm::PageRank => "pagerank",
            Algorithm::Hits => "hits",
            Algorithm::Indicator(i) => i.name(),
            Algorithm::External { name, .. } => name,
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    /// Parses built-in names; `file:PATH` specs need a graph and go through
    /// [`parse_score_file`] instead.
    fn from_str(s: &str) -> Result<Algorithm> {
        match s {
            "pagerank" => Ok(Algorithm::PageRank),
            "hits" => Ok(Algorithm::Hits),
            other => Indicator::from_name(other)
                .map(Algorithm::Indicator)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub algorithm: String,
    pub report: CoverageReport,
    pub groups: usize,
}

/// The ranked sequence `algorithm` produces on `g`.
///
/// Indicator columns are tied with the benchmark's relative tolerance so
/// that they see exactly the ties the ordinals saw; everything else uses
/// the absolute `tie_tol`.
pub fn ranked_sequence(
    g: &Graph,
    benchmark: &Benchmark,
    algorithm: &Algorithm,
    options: &LinkAnalysisOptions,
) -> Result<RankedSequence> {
    let absolute = TieTolerance::Absolute(options.tie_tol);
    match algorithm {
        Algorithm::PageRank => {
            let scores = link_analysis::pagerank(g, options.jump, options.pagerank_iterations)?;
            RankedSequence::from_scores(&scores, absolute)
        }
        Algorithm::Hits => {
            let scores = link_analysis::hits(g, options.hits_max_iterations, options.hits_tol)?;
            RankedSequence::from_scores(&scores, absolute)
        }
        Algorithm::Indicator(indicator) => {
            let column = benchmark
                .table
                .column(indicator.name())
                .expect("benchmark table holds every indicator");
            RankedSequence::from_scores(column, TieTolerance::Relative(benchmark.score_tol))
        }
        Algorithm::External { scores, .. } => {
            if scores.len() != g.node_count() {
                return Err(Error::NodeSetMismatch(format!(
                    "{} external scores for {} nodes",
                    scores.len(),
                    g.node_count()
                )));
            }
            RankedSequence::from_scores(scores, absolute)
        }
    }
}

pub fn compare(
    g: &Graph,
    benchmark: &Benchmark,
    algorithm: &Algorithm,
    options: &LinkAnalysisOptions,
) -> Result<Comparison> {
    let sequence = ranked_sequence(g, benchmark, algorithm, options)?;
    Ok(Comparison {
        algorithm: algorithm.name().to_string(),
        report: coverage_report(&sequence, &benchmark.classes)?,
        groups: sequence.groups().len(),
    })
}

/// Reads `label<TAB>score` lines (any whitespace separates the two fields;
/// `#` lines and blank lines are skipped) into a per-node score vector for
/// `g`. Every node must appear exactly once.
pub fn parse_score_file(text: &str, g: &Graph) -> Result<Vec<f64>> {
    let mut scores = vec![None; g.node_count()];
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (label, value) = match line.split_once('\t') {
            Some((l, v)) => (l.trim(), v.trim()),
            None => {
                let mut it = trimmed.split_whitespace();
                match (it.next(), it.next(), it.next()) {
                    (Some(l), Some(v), None) => (l, v),
                    _ => return Err(Error::parse(line_no, "expected label<TAB>score")),
                }
            }
        };
        let node = g
            .index_of(label)
            .ok_or_else(|| Error::parse(line_no, format!("unknown node label {label:?}")))?;
        let score: f64 = value
            .parse()
            .map_err(|_| Error::parse(line_no, format!("invalid score {value:?}")))?;
        if !score.is_finite() {
            return Err(Error::parse(line_no, format!("non-finite score {value:?}")));
        }
        if scores[node].replace(score).is_some() {
            return Err(Error::parse(
                line_no,
                format!("duplicate node label {label:?}"),
            ));
        }
    }
    scores
        .into_iter()
        .enumerate()
        .map(|(u, s)| {
            s.ok_or_else(|| Error::NodeSetMismatch(format!("no score for node {:?}", g.label(u))))
        })
        .collect()
}
