// SPDX-License-Identifier: Apache-2.0

//! Node importance ranking by equivalence classes.
//!
//! Four indicators (degree, betweenness, closeness, neighbor degrees) are
//! turned into per-rule ordinals; nodes are then layered by repeatedly
//! removing the non-dominated set. The resulting classes serve as a
//! benchmark partial order against which any ranking (PageRank, HITS, a
//! single indicator, an external score file) is scored by its coverage.
//!
//! ```
//! use eqrank::{datasets, Benchmark, BenchmarkOptions};
//!
//! let g = datasets::zachary();
//! let bench = Benchmark::compute(&g, &BenchmarkOptions::default()).unwrap();
//! let top: Vec<&str> = bench.classes.class(1).iter().map(|&u| g.label(u)).collect();
//! assert_eq!(top, ["1", "34"]);
//! ```

pub mod analysis;
pub mod centrality;
pub mod coverage;
pub mod datasets;
mod error;
pub mod graph;
pub mod io;
pub mod link_analysis;
pub mod pareto;
pub mod pipeline;

pub use analysis::{completeness_check, extract_kernel, KernelReport, KernelStats};
pub use centrality::{score_table, Indicator, IndicatorOptions, ScoreTable};
pub use coverage::{coverage_report, max_distance, sequence_distance, CoverageReport};
pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder};
pub use link_analysis::{hits, pagerank, to_ranked_sequence, RankedSequence, TieTolerance};
pub use pareto::{
    dominates, equivalence_classes, equivalence_classes_fast, ordinalize, EquivalenceClasses,
    ImportanceVector, Strategy,
};
pub use pipeline::{
    compare, Algorithm, Benchmark, BenchmarkOptions, Comparison, LinkAnalysisOptions,
};
