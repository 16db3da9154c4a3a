// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: argument model, graph loading and the five
//! subcommands. `main.rs` only maps [`run`]'s result to an exit status.

pub mod render;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use eqrank::analysis::extract_kernel;
use eqrank::io::{read_graph, write_graph, GmlLabels, InputFormat, OutputFormat as GraphFormat};
use eqrank::link_analysis::{self, RankedSequence, TieTolerance};
use eqrank::pipeline::{
    compare, parse_score_file, Algorithm, Benchmark, BenchmarkOptions, LinkAnalysisOptions,
};
use eqrank::{datasets, CoverageReport, Graph, Indicator, IndicatorOptions, ScoreTable, Strategy};
use serde::Serialize;
use thiserror::Error;

use render::{json, real, sorted_labels, GraphSummary, OutputFormat, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] eqrank::Error),
    #[error("writing output: {0}")]
    Output(std::io::Error),
}

impl CliError {
    /// 2 for computational preconditions (a disconnected graph), 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_precondition() => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Rank graph nodes by equivalence classes of centrality indicators and
/// score other rankings against them.
#[derive(Debug, Parser)]
#[command(name = "eqrank", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    /// Worker threads for the all-pairs indicators (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Input format (default: from the file extension).
    #[arg(long, global = true, value_enum)]
    pub input_format: Option<InputKind>,
    /// Which GML field becomes the node label.
    #[arg(long, global = true, value_enum, default_value_t = LabelPolicy::Label)]
    pub gml_labels: LabelPolicy,
    /// What to do with a disconnected graph.
    #[arg(long, global = true, value_enum, default_value_t = ComponentPolicy::RequireConnected)]
    pub component: ComponentPolicy,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print degree, betweenness, closeness and neighbors for every node.
    Indicators {
        graph: String,
        #[arg(long, default_value_t = 1.0)]
        nk: f64,
    },
    /// Print the equivalence classes, most important first.
    Rank {
        graph: String,
        #[command(flatten)]
        bench: BenchArgs,
    },
    /// Print one algorithm's scores and the ranked sequence they induce.
    Score {
        graph: String,
        /// pagerank, hits, degree, betweenness, closeness or neighbors.
        #[arg(long, default_value = "pagerank")]
        algo: String,
        #[arg(long, default_value_t = 1.0)]
        nk: f64,
        /// Relative tolerance for tying indicator values.
        #[arg(long, default_value_t = eqrank::pareto::DEFAULT_SCORE_TOLERANCE)]
        tol: f64,
        #[command(flatten)]
        link: LinkArgs,
    },
    /// Score algorithms against the equivalence classes.
    Compare {
        graph: String,
        /// Comma-separated algorithms; `file:PATH` reads `label<TAB>score` lines.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "pagerank,hits,degree,betweenness,closeness,neighbors"
        )]
        against: Vec<String>,
        #[command(flatten)]
        bench: BenchArgs,
        #[command(flatten)]
        link: LinkArgs,
    },
    /// Extract the subgraph induced by the top K equivalence classes.
    Kernel {
        graph: String,
        #[arg(long)]
        top: usize,
        /// Format of the kernel graph.
        #[arg(long, value_enum, default_value_t = KernelFormat::Edgelist)]
        out: KernelFormat,
        /// Write the kernel graph here instead of after the statistics.
        #[arg(long)]
        graph_file: Option<PathBuf>,
        #[command(flatten)]
        bench: BenchArgs,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct BenchArgs {
    /// Exponent of the neighbors indicator.
    #[arg(long, default_value_t = 1.0)]
    pub nk: f64,
    /// Relative tolerance for grouping indicator values into one ordinal.
    #[arg(long, default_value_t = eqrank::pareto::DEFAULT_SCORE_TOLERANCE)]
    pub tol: f64,
    /// Use the presorted front search instead of repeated set extraction.
    #[arg(long)]
    pub fast: bool,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct LinkArgs {
    /// PageRank random-jump probability.
    #[arg(long, default_value_t = link_analysis::DEFAULT_JUMP)]
    pub jump: f64,
    /// PageRank sweeps.
    #[arg(long, default_value_t = link_analysis::DEFAULT_PAGERANK_ITERATIONS)]
    pub iters: usize,
    #[arg(long, default_value_t = link_analysis::DEFAULT_HITS_MAX_ITERATIONS)]
    pub hits_iters: usize,
    /// HITS stops once the L1 change drops to this value.
    #[arg(long, default_value_t = link_analysis::DEFAULT_HITS_TOLERANCE)]
    pub hits_tol: f64,
    /// Absolute tolerance for tying PageRank, HITS and file scores.
    #[arg(long, default_value_t = link_analysis::DEFAULT_TIE_TOLERANCE)]
    pub tie_tol: f64,
}

impl From<LinkArgs> for LinkAnalysisOptions {
    fn from(a: LinkArgs) -> Self {
        LinkAnalysisOptions {
            jump: a.jump,
            pagerank_iterations: a.iters,
            hits_max_iterations: a.hits_iters,
            hits_tol: a.hits_tol,
            tie_tol: a.tie_tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    Edgelist,
    Gml,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LabelPolicy {
    Label,
    Id,
    Ordinal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComponentPolicy {
    RequireConnected,
    Largest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelFormat {
    Dot,
    Edgelist,
}

struct Loaded {
    graph: Graph,
    summary: GraphSummary,
}

fn load(input: &str, global: &GlobalArgs) -> Result<Loaded> {
    let path = Path::new(input);
    let graph = if !path.exists() && input == "zachary" {
        datasets::zachary()
    } else {
        let path = if path.exists() {
            path.to_path_buf()
        } else {
            datasets::locate(input).ok_or_else(|| {
                CliError::Config(format!(
                    "{input}: no such file, and no dataset of that name in {}",
                    datasets::data_dir().display()
                ))
            })?
        };
        let format = global.input_format.map(|k| match k {
            InputKind::Edgelist => InputFormat::EdgeList,
            InputKind::Gml => InputFormat::Gml,
        });
        let labels = match global.gml_labels {
            LabelPolicy::Label => GmlLabels::Label,
            LabelPolicy::Id => GmlLabels::Id,
            LabelPolicy::Ordinal => GmlLabels::Ordinal,
        };
        read_graph(&path, format, labels)?.graph
    };
    if graph.is_empty() {
        return Err(eqrank::Error::EmptyGraph.into());
    }
    let graph = match global.component {
        _ if graph.is_connected() => graph,
        ComponentPolicy::Largest => {
            let largest = graph.largest_component();
            log::warn!(
                "{input}: keeping the largest component ({} of {} nodes)",
                largest.node_count(),
                graph.node_count()
            );
            largest
        }
        ComponentPolicy::RequireConnected => {
            let components = graph.connected_components().len();
            return Err(eqrank::Error::Disconnected { components }.into());
        }
    };
    let summary = GraphSummary {
        source: input.to_string(),
        nodes: graph.node_count(),
        edges: graph.edge_count(),
    };
    Ok(Loaded { graph, summary })
}

fn threads(global: &GlobalArgs) -> Result<usize> {
    match global.threads {
        Some(0) => Err(CliError::Config("--threads must be at least 1".into())),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn check_tolerance(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(CliError::Config(format!(
            "{name} must be a non-negative number, got {x}"
        )))
    }
}

fn benchmark(g: &Graph, bench: BenchArgs, global: &GlobalArgs) -> Result<Benchmark> {
    check_tolerance("--tol", bench.tol)?;
    let options = BenchmarkOptions {
        indicators: IndicatorOptions {
            nk: bench.nk,
            threads: threads(global)?,
        },
        score_tol: bench.tol,
        strategy: if bench.fast {
            Strategy::Fast
        } else {
            Strategy::Reference
        },
    };
    Ok(Benchmark::compute(g, &options)?)
}

fn labels_of(g: &Graph, nodes: &[usize]) -> Vec<String> {
    sorted_labels(nodes.iter().map(|&u| g.label(u)))
}

/// Executes one command and writes its output to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let text = match &config.command {
        Command::Indicators { graph, nk } => indicators(graph, *nk, &config.global)?,
        Command::Rank { graph, bench } => rank(graph, *bench, &config.global)?,
        Command::Score {
            graph,
            algo,
            nk,
            tol,
            link,
        } => score(graph, algo, *nk, *tol, *link, &config.global)?,
        Command::Compare {
            graph,
            against,
            bench,
            link,
        } => compare_cmd(graph, against, *bench, *link, &config.global)?,
        Command::Kernel {
            graph,
            top,
            out: kernel_format,
            graph_file,
            bench,
        } => kernel(
            graph,
            *top,
            *kernel_format,
            graph_file.as_deref(),
            *bench,
            &config.global,
        )?,
    };
    out.write_all(text.as_bytes()).map_err(CliError::Output)
}

fn format_table(format: OutputFormat, table: &Table) -> String {
    match format {
        OutputFormat::Tsv => table.to_tsv(),
        _ => table.to_text(),
    }
}

#[derive(Serialize)]
struct IndicatorRow {
    label: String,
    degree: f64,
    betweenness: f64,
    closeness: f64,
    neighbors: f64,
}

fn indicators(input: &str, nk: f64, global: &GlobalArgs) -> Result<String> {
    let Loaded { graph: g, summary } = load(input, global)?;
    let table = ScoreTable::indicators(
        &g,
        IndicatorOptions {
            nk,
            threads: threads(global)?,
        },
    )?;
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_by(|&a, &b| render::natural_cmp(g.label(a), g.label(b)));
    let rows: Vec<IndicatorRow> = order
        .iter()
        .map(|&u| {
            let r = table.row(u);
            IndicatorRow {
                label: g.label(u).to_string(),
                degree: r[0],
                betweenness: r[1],
                closeness: r[2],
                neighbors: r[3],
            }
        })
        .collect();
    if global.format == OutputFormat::Json {
        #[derive(Serialize)]
        struct Body {
            nk: f64,
            nodes: Vec<IndicatorRow>,
        }
        return Ok(json("indicators", summary, Body { nk, nodes: rows }));
    }
    let mut t = Table::new(["node", "degree", "betweenness", "closeness", "neighbors"]);
    for r in rows {
        t.push(vec![
            r.label,
            real(r.degree),
            real(r.betweenness),
            real(r.closeness),
            real(r.neighbors),
        ]);
    }
    Ok(format_table(global.format, &t))
}

#[derive(Serialize)]
struct ClassRow {
    rank: usize,
    nodes: Vec<String>,
}

fn rank(input: &str, bench: BenchArgs, global: &GlobalArgs) -> Result<String> {
    let Loaded { graph: g, summary } = load(input, global)?;
    let b = benchmark(&g, bench, global)?;
    let classes: Vec<ClassRow> = b
        .classes
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| ClassRow {
            rank: i + 1,
            nodes: labels_of(&g, c),
        })
        .collect();
    if global.format == OutputFormat::Json {
        #[derive(Serialize)]
        struct Body {
            nk: f64,
            score_tol: f64,
            classes: Vec<ClassRow>,
        }
        return Ok(json(
            "rank",
            summary,
            Body {
                nk: bench.nk,
                score_tol: bench.tol,
                classes,
            },
        ));
    }
    let mut t = Table::new(["rank", "size", "nodes"]);
    for c in classes {
        t.push(vec![
            c.rank.to_string(),
            c.nodes.len().to_string(),
            c.nodes.join(" "),
        ]);
    }
    Ok(format_table(global.format, &t))
}

#[derive(Serialize)]
struct ScoreRow {
    group: usize,
    label: String,
    score: f64,
}

fn score(
    input: &str,
    algo: &str,
    nk: f64,
    tol: f64,
    link: LinkArgs,
    global: &GlobalArgs,
) -> Result<String> {
    let Loaded { graph: g, summary } = load(input, global)?;
    check_tolerance("--tol", tol)?;
    check_tolerance("--tie-tol", link.tie_tol)?;
    let algorithm: Algorithm = algo.parse()?;
    let (scores, tolerance) = match algorithm {
        Algorithm::PageRank => (
            link_analysis::pagerank(&g, link.jump, link.iters)?,
            TieTolerance::Absolute(link.tie_tol),
        ),
        Algorithm::Hits => (
            link_analysis::hits(&g, link.hits_iters, link.hits_tol)?,
            TieTolerance::Absolute(link.tie_tol),
        ),
        Algorithm::Indicator(indicator) => (
            indicator_column(&g, indicator, nk, threads(global)?)?,
            TieTolerance::Relative(tol),
        ),
        Algorithm::External { .. } => unreachable!("FromStr never yields external scores"),
    };
    let sequence = RankedSequence::from_scores(&scores, tolerance)?;
    let rows: Vec<ScoreRow> = sequence
        .groups()
        .iter()
        .enumerate()
        .flat_map(|(i, group)| {
            let mut members = group.clone();
            members.sort_by(|&a, &b| render::natural_cmp(g.label(a), g.label(b)));
            members.into_iter().map(move |u| (i, u))
        })
        .map(|(i, u)| ScoreRow {
            group: i + 1,
            label: g.label(u).to_string(),
            score: scores[u],
        })
        .collect();
    if global.format == OutputFormat::Json {
        #[derive(Serialize)]
        struct Body<'a> {
            algorithm: &'a str,
            groups: usize,
            scores: Vec<ScoreRow>,
        }
        return Ok(json(
            "score",
            summary,
            Body {
                algorithm: algorithm.name(),
                groups: sequence.groups().len(),
                scores: rows,
            },
        ));
    }
    let mut t = Table::new(["group", "node", "score"]);
    for r in rows {
        t.push(vec![r.group.to_string(), r.label, real(r.score)]);
    }
    Ok(format_table(global.format, &t))
}

fn indicator_column(g: &Graph, indicator: Indicator, nk: f64, threads: usize) -> Result<Vec<f64>> {
    use eqrank::centrality;
    Ok(match indicator {
        Indicator::Degree => centrality::degree(g),
        Indicator::Betweenness => centrality::betweenness_parallel(g, threads),
        Indicator::Closeness => centrality::closeness_parallel(g, threads)?,
        Indicator::Neighbors => centrality::neighbors_score(g, nk)?,
    })
}

fn parse_algorithm(arg: &str, g: &Graph) -> Result<Algorithm> {
    let Some(path) = arg.strip_prefix("file:") else {
        return Ok(arg.parse()?);
    };
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{path}: {e}")))?;
    let scores =
        parse_score_file(&text, g).map_err(|e| CliError::Config(format!("{path}: {e}")))?;
    Ok(Algorithm::External {
        name: arg.to_string(),
        scores,
    })
}

#[derive(Serialize)]
struct ComparisonRow {
    algorithm: String,
    groups: usize,
    #[serde(flatten)]
    report: CoverageReport,
}

fn compare_cmd(
    input: &str,
    against: &[String],
    bench: BenchArgs,
    link: LinkArgs,
    global: &GlobalArgs,
) -> Result<String> {
    let Loaded { graph: g, summary } = load(input, global)?;
    check_tolerance("--tie-tol", link.tie_tol)?;
    if against.is_empty() {
        return Err(CliError::Config(
            "--against needs at least one algorithm".into(),
        ));
    }
    let algorithms = against
        .iter()
        .map(|arg| parse_algorithm(arg.trim(), &g))
        .collect::<Result<Vec<_>>>()?;
    let b = benchmark(&g, bench, global)?;
    let options = LinkAnalysisOptions::from(link);
    let rows = algorithms
        .iter()
        .map(|alg| {
            let c = compare(&g, &b, alg, &options)?;
            Ok(ComparisonRow {
                algorithm: c.algorithm,
                groups: c.groups,
                report: c.report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if global.format == OutputFormat::Json {
        #[derive(Serialize)]
        struct Body {
            classes: usize,
            comparisons: Vec<ComparisonRow>,
        }
        return Ok(json(
            "compare",
            summary,
            Body {
                classes: b.classes.len(),
                comparisons: rows,
            },
        ));
    }
    let mut t = Table::new([
        "algorithm",
        "best",
        "worst",
        "certratio",
        "dist_best",
        "dist_worst",
        "max_dist",
    ]);
    for r in rows {
        let c = &r.report;
        t.push(vec![
            r.algorithm,
            real(c.best_coverage),
            real(c.worst_coverage),
            real(c.certratio),
            c.distance_best.to_string(),
            c.distance_worst.to_string(),
            c.max_distance.to_string(),
        ]);
    }
    Ok(format_table(global.format, &t))
}

fn kernel(
    input: &str,
    top: usize,
    format: KernelFormat,
    graph_file: Option<&Path>,
    bench: BenchArgs,
    global: &GlobalArgs,
) -> Result<String> {
    let Loaded { graph: g, summary } = load(input, global)?;
    let b = benchmark(&g, bench, global)?;
    let report = extract_kernel(&g, &b.classes, top)?;
    let kernel_text = write_graph(
        &report.kernel,
        match format {
            KernelFormat::Dot => GraphFormat::Dot,
            KernelFormat::Edgelist => GraphFormat::EdgeList,
        },
    );
    if let Some(path) = graph_file {
        std::fs::write(path, &kernel_text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    }
    let s = &report.stats;
    if global.format == OutputFormat::Json {
        #[derive(Serialize)]
        struct Body<'a> {
            classes_included: usize,
            stats: &'a eqrank::KernelStats,
            nodes: Vec<String>,
            #[serde(skip_serializing_if = "Option::is_none")]
            graph_file: Option<String>,
            #[serde(skip_serializing_if = "Option::is_none")]
            kernel_graph: Option<String>,
        }
        let nodes = sorted_labels(report.kernel.labels().iter().map(String::as_str));
        return Ok(json(
            "kernel",
            summary,
            Body {
                classes_included: report.classes_included,
                stats: s,
                nodes,
                graph_file: graph_file.map(|p| p.display().to_string()),
                kernel_graph: graph_file.is_none().then_some(kernel_text),
            },
        ));
    }
    let mut t = Table::new(["statistic", "value"]);
    let stats = [
        ("classes_included", report.classes_included.to_string()),
        ("kernel_nodes", s.node_count.to_string()),
        ("kernel_edges", s.edge_count.to_string()),
        ("kernel_avg_degree", real(s.avg_degree_kernel)),
        ("kernel_edges_per_node", real(s.edges_per_node_kernel)),
        ("full_nodes", s.full_node_count.to_string()),
        ("full_edges", s.full_edge_count.to_string()),
        ("full_avg_degree", real(s.avg_degree_full)),
        ("full_edges_per_node", real(s.edges_per_node_full)),
    ];
    for (k, v) in stats {
        t.push(vec![k.to_string(), v]);
    }
    let mut text = format_table(global.format, &t);
    if graph_file.is_none() {
        text.push('\n');
        text.push_str(&kernel_text);
    }
    Ok(text)
}
