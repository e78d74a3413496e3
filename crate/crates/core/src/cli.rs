// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: argument parsing, the five subcommands and their
//! reports. Exit codes: 0 success, 2 parse or configuration error, 3 search
//! budget exceeded, 4 component too large for the exhaustive searches.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::clique::{clique_based_enum, CliqueConfig, DEFAULT_CLIQUE_BUDGET};
use crate::enumeration::{advanced_enum, naive_enum, EnumConfig, EnumResult, DEFAULT_NAIVE_CAP};
use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, VertexSubset};
use crate::io::{load_inputs, write_cores, AttrMode};
use crate::maximum::{find_maximum, BoundKind, MaxConfig};
use crate::oracle::brute_force_mkrc;
use crate::ordering::{OrderStrategy, DEFAULT_LAMBDA};
use crate::search::{preprocess, KrCore, Query, SearchStats, DEFAULT_NODE_BUDGET};
use crate::similarity::{Similarity, SimilarityMetric};

/// Environment variable capping the worker threads used across components.
pub const THREADS_ENV: &str = "KRCORE_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Enumerate,
    Maximum,
    Oracle,
    Bench,
    Stats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Jaccard,
    Euclidean,
    Haversine,
}

impl From<MetricArg> for SimilarityMetric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Jaccard => SimilarityMetric::WeightedJaccard,
            MetricArg::Euclidean => SimilarityMetric::Euclidean,
            MetricArg::Haversine => SimilarityMetric::Haversine,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AttrModeArg {
    Keywords,
    Geo,
}

impl From<AttrModeArg> for AttrMode {
    fn from(m: AttrModeArg) -> Self {
        match m {
            AttrModeArg::Keywords => AttrMode::Keywords,
            AttrModeArg::Geo => AttrMode::Geo,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    /// Largest drop in dissimilar pairs, then smallest edge loss.
    D1d2,
    /// `lambda * delta1 - delta2`.
    Lambda,
    /// Highest degree first.
    Degree,
    /// Seeded random choice.
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundArg {
    Naive,
    Color,
    Kcore,
    Kkcore,
}

impl From<BoundArg> for BoundKind {
    fn from(b: BoundArg) -> Self {
        match b {
            BoundArg::Naive => BoundKind::Naive,
            BoundArg::Color => BoundKind::Color,
            BoundArg::Kcore => BoundKind::KCore,
            BoundArg::Kkcore => BoundKind::KKCore,
        }
    }
}

/// Enumeration algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Early termination, promotion and maximality checks.
    Advanced,
    /// Candidate pruning only.
    Basic,
    /// Full binary tree, no pruning.
    Naive,
    /// Maximal cliques of the similarity graph.
    Clique,
}

/// Everything a run needs, independent of how it was parsed.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub graph_path: PathBuf,
    pub attr_path: PathBuf,
    pub attr_mode: AttrMode,
    pub metric: SimilarityMetric,
    pub r: f64,
    pub k: usize,
    pub algorithm: Algorithm,
    pub order: OrderStrategy,
    pub bound: BoundKind,
    pub node_budget: u64,
    pub naive_cap: usize,
    pub threads: Option<usize>,
    pub output_path: Option<PathBuf>,
    pub stats_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn query(&self) -> Result<Query> {
        let compatible = matches!(
            (self.attr_mode, self.metric),
            (AttrMode::Keywords, SimilarityMetric::WeightedJaccard)
                | (AttrMode::Geo, SimilarityMetric::Euclidean | SimilarityMetric::Haversine)
        );
        if !compatible {
            return Err(Error::Config(format!(
                "metric {:?} does not apply to {} attributes",
                self.metric, self.attr_mode
            )));
        }
        Query::new(self.k, Similarity::new(self.metric, self.r)?)
    }
}

#[derive(Debug, Parser)]
#[command(name = "krcore", version, about = "Mine maximal and maximum (k,r)-cores of attributed graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Write every maximal (k,r)-core.
    Enumerate {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value = "advanced")]
        algo: Algorithm,
    },
    /// Write the largest (k,r)-core.
    Maximum(RunArgs),
    /// Exhaustive reference enumeration for small graphs.
    Oracle(RunArgs),
    /// Run the maximum search once per bound and write a CSV table.
    Bench(RunArgs),
    /// Describe the graph and its preprocessed components.
    Stats(RunArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Edge list, two vertex ids per line.
    #[arg(long)]
    pub graph: PathBuf,
    /// Attribute file.
    #[arg(long)]
    pub attrs: PathBuf,
    #[arg(long, value_enum, default_value = "geo")]
    pub attr_mode: AttrModeArg,
    #[arg(long, value_enum, default_value = "euclidean")]
    pub metric: MetricArg,
    /// Similarity threshold (a minimum score for jaccard, a maximum distance
    /// otherwise; kilometres for haversine).
    #[arg(long)]
    pub r: f64,
    /// Minimum number of neighbours inside a core.
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum)]
    pub order: Option<OrderArg>,
    #[arg(long, value_enum, default_value = "kkcore")]
    pub bound: BoundArg,
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    pub lambda: f64,
    /// Seed for the random order.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
    /// Largest component the exhaustive searches accept.
    #[arg(long, default_value_t = DEFAULT_NAIVE_CAP)]
    pub naive_cap: usize,
    /// Results file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Statistics report; standard error when absent.
    #[arg(long)]
    pub stats: Option<PathBuf>,
}

impl Cli {
    /// Resolves the parsed arguments. `threads` normally comes from
    /// [`THREADS_ENV`].
    pub fn into_config(self, threads: Option<usize>) -> RunConfig {
        let (command, args, algorithm) = match self.command {
            CliCommand::Enumerate { run, algo } => (Command::Enumerate, run, algo),
            CliCommand::Maximum(a) => (Command::Maximum, a, Algorithm::Advanced),
            CliCommand::Oracle(a) => (Command::Oracle, a, Algorithm::Naive),
            CliCommand::Bench(a) => (Command::Bench, a, Algorithm::Advanced),
            CliCommand::Stats(a) => (Command::Stats, a, Algorithm::Advanced),
        };
        let default_order = if command == Command::Enumerate {
            OrderArg::D1d2
        } else {
            OrderArg::Lambda
        };
        let order = match args.order.unwrap_or(default_order) {
            OrderArg::D1d2 => OrderStrategy::D1ThenD2,
            OrderArg::Lambda => OrderStrategy::LambdaScore(args.lambda),
            OrderArg::Degree => OrderStrategy::DegreeGreedy,
            OrderArg::Random => OrderStrategy::Random(args.seed),
        };
        RunConfig {
            command,
            graph_path: args.graph,
            attr_path: args.attrs,
            attr_mode: args.attr_mode.into(),
            metric: args.metric.into(),
            r: args.r,
            k: args.k,
            algorithm,
            order,
            bound: args.bound.into(),
            node_budget: args.node_budget,
            naive_cap: args.naive_cap,
            threads,
            output_path: args.out,
            stats_path: args.stats,
        }
    }
}

/// Reads [`THREADS_ENV`]; unset, empty or zero means no cap.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) if v.trim().is_empty() => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) => Ok(None),
            Ok(n) => Ok(Some(n)),
            Err(_) => Err(Error::Config(format!("{THREADS_ENV} must be a non-negative integer, got {v:?}"))),
        },
    }
}

#[derive(Debug, Serialize)]
pub struct StatsReport {
    pub command: String,
    pub wall_seconds: f64,
    pub core_count: usize,
    pub avg_size: f64,
    pub max_size: usize,
    #[serde(flatten)]
    pub search: SearchStats,
}

impl StatsReport {
    fn new(command: &str, started: Instant, cores: &[KrCore], search: SearchStats) -> Self {
        let core_count = cores.len();
        let total: usize = cores.iter().map(KrCore::len).sum();
        StatsReport {
            command: command.to_string(),
            wall_seconds: started.elapsed().as_secs_f64(),
            core_count,
            avg_size: if core_count == 0 { 0.0 } else { total as f64 / core_count as f64 },
            max_size: cores.iter().map(KrCore::len).max().unwrap_or(0),
            search,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GraphReport {
    pub vertices: usize,
    pub edges: usize,
    pub self_loops_dropped: usize,
    pub duplicate_edges_dropped: usize,
    pub dissimilar_edges: usize,
    pub components: usize,
    pub component_vertices: usize,
    pub largest_component: usize,
    pub dissimilar_pairs_in_components: usize,
    pub max_degree: usize,
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_stats<T: Serialize>(path: &Option<PathBuf>, report: &T) -> Result<()> {
    let text = serde_json::to_string(report).expect("plain data serializes");
    match path {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => eprintln!("{text}"),
    }
    Ok(())
}

/// Executes one run; errors carry their exit code.
pub fn execute(cfg: &RunConfig) -> Result<()> {
    cfg.order.validate()?;
    let query = cfg.query()?;
    let g = load_inputs(&cfg.graph_path, &cfg.attr_path, cfg.attr_mode)?;
    let started = Instant::now();
    match cfg.command {
        Command::Enumerate => {
            let result = enumerate(cfg, &g, &query)?;
            let mut out = open_output(&cfg.output_path)?;
            write_cores(&mut out, &g, &result.cores)?;
            out.flush()?;
            write_stats(&cfg.stats_path, &StatsReport::new("enumerate", started, &result.cores, result.stats))
        }
        Command::Maximum => {
            let result = find_maximum(&g, &query, &max_config(cfg, cfg.bound))?;
            let cores: Vec<KrCore> = result.best.into_iter().collect();
            let mut out = open_output(&cfg.output_path)?;
            write_cores(&mut out, &g, &cores)?;
            out.flush()?;
            write_stats(&cfg.stats_path, &StatsReport::new("maximum", started, &cores, result.stats))
        }
        Command::Oracle => {
            let cores = brute_force_mkrc(&g, &query, cfg.naive_cap)?;
            let mut out = open_output(&cfg.output_path)?;
            write_cores(&mut out, &g, &cores)?;
            out.flush()?;
            write_stats(&cfg.stats_path, &StatsReport::new("oracle", started, &cores, SearchStats::default()))
        }
        Command::Bench => {
            let mut out = open_output(&cfg.output_path)?;
            writeln!(out, "bound,best_size,nodes_visited,bound_cutoffs,early_terminations,wall_seconds")?;
            for bound in BoundKind::ALL {
                let t = Instant::now();
                let r = find_maximum(&g, &query, &max_config(cfg, bound))?;
                writeln!(
                    out,
                    "{bound},{},{},{},{},{:.6}",
                    r.size(),
                    r.stats.nodes_visited,
                    r.stats.bound_cutoffs,
                    r.stats.early_terminations,
                    t.elapsed().as_secs_f64()
                )?;
            }
            out.flush()?;
            Ok(())
        }
        Command::Stats => {
            let report = graph_report(&g, &query)?;
            let mut out = open_output(&cfg.output_path)?;
            writeln!(out, "{}", serde_json::to_string(&report).expect("plain data serializes"))?;
            out.flush()?;
            Ok(())
        }
    }
}

fn max_config(cfg: &RunConfig, bound: BoundKind) -> MaxConfig {
    MaxConfig {
        bound,
        order: cfg.order,
        node_budget: cfg.node_budget,
    }
}

fn enumerate(cfg: &RunConfig, g: &AttributedGraph, query: &Query) -> Result<EnumResult> {
    let ecfg = EnumConfig {
        order: cfg.order,
        node_budget: cfg.node_budget,
        verify_invariants: false,
        threads: cfg.threads,
        naive_cap: cfg.naive_cap,
    };
    match cfg.algorithm {
        Algorithm::Advanced => advanced_enum(g, query, &ecfg),
        Algorithm::Basic => naive_enum(g, query, true, &ecfg),
        Algorithm::Naive => naive_enum(g, query, false, &ecfg),
        Algorithm::Clique => clique_based_enum(
            g,
            query,
            &CliqueConfig {
                clique_budget: DEFAULT_CLIQUE_BUDGET,
                threads: cfg.threads,
            },
        ),
    }
}

pub fn graph_report(g: &AttributedGraph, query: &Query) -> Result<GraphReport> {
    let mut dissimilar_edges = 0;
    for (u, v) in g.graph().edges() {
        if !query.similarity.is_similar(g, u, v)? {
            dissimilar_edges += 1;
        }
    }
    let comps = preprocess(g, query)?;
    Ok(GraphReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        self_loops_dropped: g.dropped().self_loops,
        duplicate_edges_dropped: g.dropped().duplicates,
        dissimilar_edges,
        components: comps.len(),
        component_vertices: comps.iter().map(|c| c.len()).sum(),
        largest_component: comps.iter().map(|c| c.len()).max().unwrap_or(0),
        dissimilar_pairs_in_components: comps
            .iter()
            .map(|c| c.index().dp_total(&VertexSubset::full(c.len())))
            .sum(),
        max_degree: (0..g.vertex_count() as u32).map(|u| g.graph().degree(u)).max().unwrap_or(0),
    })
}

/// Parses `args`, runs, reports errors on standard error and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = threads_from_env().and_then(|threads| execute(&cli.into_config(threads)));
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("krcore: {e}");
            e.exit_code()
        }
    }
}

