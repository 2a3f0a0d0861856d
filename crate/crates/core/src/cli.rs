//! Command-line front end: `synth`, `build`, `query`, `bench` and `stats`.
//!
//! Every flag can also be set through an environment variable named
//! `POLYMINHASH_<FLAG>` (upper case, dashes as underscores); an explicit
//! flag wins over the environment.

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::wkt::{parse_record, parse_wkt, Adjustment};
use crate::geometry::{Polygon, Rect};
use crate::index::{Index, IndexStats};
use crate::minhash::{SamplingDomain, DEFAULT_BASE_SEED, DEFAULT_MAX_ATTEMPTS, DEFAULT_SIGNATURE_LEN};
use crate::query::{
    evaluate, knn_approx, select_queries, Dataset, EvalConfig, EvalReport, GroundTruth, QueryOptions,
    QueryResult,
};
use crate::synth::{generate, write_wkt, ShapeFamily, SynthParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    #[default]
    Json,
    Text,
}

/// Which polygons act as queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuerySpec {
    /// First `n` dataset records, or a seeded sample when `--query-seed` is set.
    Count(usize),
    /// Specific dataset ids.
    Ids(Vec<u64>),
    /// A separate WKT file.
    File(PathBuf),
}

impl Default for QuerySpec {
    fn default() -> Self {
        QuerySpec::Count(100)
    }
}

impl FromStr for QuerySpec {
    type Err = Error;

    /// `500`, `ids:3,8,21` or `file:queries.wkt` (a bare existing path also works).
    fn from_str(s: &str) -> Result<Self> {
        if let Some(list) = s.strip_prefix("ids:") {
            let ids = list
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::InvalidParameter(format!("bad id list {list:?}: {e}")))?;
            return Ok(QuerySpec::Ids(ids));
        }
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(QuerySpec::File(PathBuf::from(path)));
        }
        if let Ok(n) = s.parse::<usize>() {
            return Ok(QuerySpec::Count(n));
        }
        if Path::new(s).exists() {
            return Ok(QuerySpec::File(PathBuf::from(s)));
        }
        Err(Error::InvalidParameter(format!("query spec {s:?} is not a count, ids:<list> or file:<path>")))
    }
}

/// Experimental knobs shared by the commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub dataset: Option<PathBuf>,
    pub index: Option<PathBuf>,
    pub queries: QuerySpec,
    pub query_seed: Option<u64>,
    /// Signature lengths; `build` uses the first, `bench` sweeps all. Empty means default.
    pub m: Vec<usize>,
    pub base_seed: Option<u64>,
    pub max_attempts: u64,
    pub k: Vec<usize>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub threads: Option<usize>,
    pub prefix_relax: bool,
    pub gt_cache: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dataset: None,
            index: None,
            queries: QuerySpec::default(),
            query_seed: None,
            m: Vec::new(),
            base_seed: None,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            k: vec![10],
            out: None,
            format: OutputFormat::default(),
            threads: None,
            prefix_relax: false,
            gt_cache: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m.contains(&0) {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        if self.k.is_empty() || self.k.contains(&0) {
            return Err(Error::InvalidParameter("k values must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidParameter("threads must be at least 1".into()));
        }
        if self.max_attempts == 0 {
            return Err(Error::InvalidParameter("max_attempts must be positive".into()));
        }
        Ok(())
    }

    fn m_or_default(&self) -> Vec<usize> {
        if self.m.is_empty() {
            vec![DEFAULT_SIGNATURE_LEN]
        } else {
            self.m.clone()
        }
    }

    fn base_seed(&self) -> u64 {
        self.base_seed.unwrap_or(DEFAULT_BASE_SEED)
    }

    fn require_dataset(&self) -> Result<&Path> {
        self.dataset.as_deref().ok_or_else(|| Error::InvalidParameter("--dataset is required".into()))
    }

    fn require_index(&self) -> Result<&Path> {
        self.index.as_deref().ok_or_else(|| Error::InvalidParameter("--index is required".into()))
    }

    fn query_options(&self) -> QueryOptions {
        QueryOptions { prefix_relax: self.prefix_relax }
    }
}

/// Accepted polygons (centred) plus ingestion counts.
#[derive(Debug, Clone)]
pub struct Ingested {
    pub dataset: Dataset,
    pub accepted: usize,
    pub rejected: usize,
    pub adjusted: usize,
}

pub fn ingest(path: &Path) -> Result<Ingested> {
    let report = parse_wkt(BufReader::new(File::open(path)?))?;
    for r in &report.rejected {
        warn!("{}:{}: skipped: {}", path.display(), r.line + 1, r.reason);
    }
    let accepted = report.accepted();
    let rejected = report.rejected_count();
    let adjusted = report.adjustments.len();
    let dataset = Dataset::centered(report.polygons)?;
    Ok(Ingested { dataset, accepted, rejected, adjusted })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthReport {
    pub path: Option<PathBuf>,
    pub count: usize,
    pub family: ShapeFamily,
    pub seed: u64,
}

pub fn cmd_synth(params: &SynthParams, out: Option<&Path>) -> Result<SynthReport> {
    let polygons = generate(params)?;
    match out {
        Some(path) => write_wkt(&polygons, BufWriter::new(File::create(path)?))?,
        None => write_wkt(&polygons, io::stdout().lock())?,
    }
    Ok(SynthReport { path: out.map(Path::to_path_buf), count: polygons.len(), family: params.family, seed: params.seed })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BuildReport {
    pub index_path: PathBuf,
    pub accepted: usize,
    pub rejected: usize,
    pub adjusted: usize,
    pub m: usize,
    pub base_seed: u64,
    pub max_attempts: u64,
    pub global_mbr: Rect,
    pub stats: IndexStats,
    pub build_wall_s: f64,
    /// CRC-32 of the written index file.
    pub file_crc32: String,
}

pub fn cmd_build(config: &RunConfig) -> Result<BuildReport> {
    config.validate()?;
    let start = Instant::now();
    let ingested = ingest(config.require_dataset()?)?;
    let index_path = config.require_index()?.to_path_buf();
    let m = config.m_or_default()[0];
    let domain =
        SamplingDomain::for_dataset(ingested.dataset.polygons(), m, config.base_seed(), config.max_attempts)?;
    let global_mbr = domain.global_mbr();
    let index = Index::build(ingested.dataset.polygons(), domain)?;
    let bytes = index.to_bytes();
    fs::write(&index_path, &bytes)?;
    let build_wall_s = start.elapsed().as_secs_f64();
    info!("indexed {} polygons into {} buckets", index.dataset_size(), index.bucket_count());
    Ok(BuildReport {
        index_path,
        accepted: ingested.accepted,
        rejected: ingested.rejected,
        adjusted: ingested.adjusted,
        m,
        base_seed: config.base_seed(),
        max_attempts: config.max_attempts,
        global_mbr,
        stats: index.stats(),
        build_wall_s,
        file_crc32: format!("{:08x}", crc32fast::hash(&bytes)),
    })
}

pub fn cmd_stats(config: &RunConfig) -> Result<IndexStats> {
    Ok(Index::load(config.require_index()?)?.stats())
}

/// A single query: an indexed id or a WKT geometry (centred before hashing).
#[derive(Debug, Clone, PartialEq)]
pub enum QueryTarget {
    Id(u64),
    Wkt(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryReport {
    pub query_id: u64,
    pub k: usize,
    #[serde(flatten)]
    pub result: QueryResult,
}

/// Refuses to answer when the caller pinned `m` or the seed and they differ
/// from what the index was built with.
fn check_index_matches(config: &RunConfig, index: &Index) -> Result<()> {
    if let Some(&m) = config.m.first() {
        if config.m.len() > 1 || m != index.m() {
            return Err(Error::ConfigMismatch(format!("index has m={}, config asks for {:?}", index.m(), config.m)));
        }
    }
    if let Some(seed) = config.base_seed {
        if seed != index.domain().base_seed() {
            return Err(Error::ConfigMismatch(format!(
                "index was built with seed {}, config asks for {seed}",
                index.domain().base_seed()
            )));
        }
    }
    if config.max_attempts != index.domain().max_attempts() && config.max_attempts != DEFAULT_MAX_ATTEMPTS {
        return Err(Error::ConfigMismatch(format!(
            "index was built with max_attempts {}, config asks for {}",
            index.domain().max_attempts(),
            config.max_attempts
        )));
    }
    Ok(())
}

pub fn cmd_query(config: &RunConfig, target: &QueryTarget) -> Result<QueryReport> {
    config.validate()?;
    let index = Index::load(config.require_index()?)?;
    check_index_matches(config, &index)?;
    let ingested = ingest(config.require_dataset()?)?;
    if ingested.dataset.len() != index.dataset_size() {
        return Err(Error::ConfigMismatch(format!(
            "dataset has {} polygons, index was built over {}",
            ingested.dataset.len(),
            index.dataset_size()
        )));
    }
    let query: Polygon = match target {
        QueryTarget::Id(id) => ingested.dataset.get(*id).cloned().ok_or(Error::UnknownId(*id))?,
        QueryTarget::Wkt(text) => parse_record(text, u64::MAX, &mut Vec::<Adjustment>::new())
            .map_err(|e| Error::InvalidParameter(format!("query geometry: {e}")))?
            .center(),
    };
    let k = *config.k.iter().max().expect("validated non-empty");
    let result = knn_approx(&query, &index, &ingested.dataset, k, config.query_options())?;
    Ok(QueryReport { query_id: query.id(), k, result })
}

/// Query polygons for a benchmark, centred.
pub fn resolve_queries(config: &RunConfig, dataset: &Dataset) -> Result<Vec<Polygon>> {
    match &config.queries {
        QuerySpec::Count(n) => Ok(select_queries(dataset, *n, config.query_seed)),
        QuerySpec::Ids(ids) => ids.iter().map(|&id| dataset.get(id).cloned().ok_or(Error::UnknownId(id))).collect(),
        QuerySpec::File(path) => Ok(ingest(path)?.dataset.polygons().to_vec()),
    }
}

pub fn cmd_bench(config: &RunConfig) -> Result<EvalReport> {
    config.validate()?;
    let path = config.require_dataset()?;
    let ingested = ingest(path)?;
    let dataset = ingested.dataset;
    let queries = resolve_queries(config, &dataset)?;
    let k_max = *config.k.iter().max().expect("validated non-empty");
    let truth = match &config.gt_cache {
        Some(cache) => GroundTruth::cached(cache, &dataset, &queries, k_max)?,
        None => GroundTruth::compute(&dataset, &queries, k_max)?,
    };
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let eval = EvalConfig {
        dataset_name: name,
        m_values: config.m_or_default(),
        k_values: config.k.clone(),
        base_seed: config.base_seed(),
        max_attempts: config.max_attempts,
        options: config.query_options(),
    };
    let report = evaluate(&dataset, &queries, &eval, &truth)?;
    if let Some(out) = &config.out {
        write_report(&report, config.format, out)?;
    }
    Ok(report)
}

/// Column order of the benchmark CSV.
pub const REPORT_COLUMNS: [&str; 13] = [
    "dataset",
    "m",
    "k",
    "recall",
    "mean_pruning_percent",
    "minhash_time_s",
    "lookup_refine_time_s",
    "total_s",
    "bf_time_s",
    "speedup",
    "mean_candidates",
    "approx_wall_s",
    "bf_wall_s",
];

pub fn report_csv<W: Write>(report: &EvalReport, w: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    for row in &report.rows {
        csv.serialize(row)?;
    }
    csv.flush()?;
    Ok(())
}

/// Writes the report. CSV output also gets two sidecar files with the
/// recall-vs-pruning and pruning-vs-m series.
pub fn write_report(report: &EvalReport, format: OutputFormat, out: &Path) -> Result<()> {
    match format {
        OutputFormat::Json | OutputFormat::Text => {
            fs::write(out, serde_json::to_string_pretty(&json_report(report))?)?;
        }
        OutputFormat::Csv => {
            report_csv(report, BufWriter::new(File::create(out)?))?;
            let mut rp = csv::Writer::from_path(sidecar(out, "recall_pruning"))?;
            rp.write_record(["m", "k", "recall", "mean_pruning_percent"])?;
            for r in &report.rows {
                rp.write_record([r.m.to_string(), r.k.to_string(), r.recall.to_string(), r.mean_pruning_percent.to_string()])?;
            }
            rp.flush()?;
            let mut pm = csv::Writer::from_path(sidecar(out, "pruning_m"))?;
            pm.write_record(["m", "mean_pruning_percent", "bucket_count"])?;
            for s in &report.sweeps {
                pm.write_record([s.m.to_string(), s.mean_pruning_percent.to_string(), s.bucket_count.to_string()])?;
            }
            pm.flush()?;
        }
    }
    Ok(())
}

fn sidecar(out: &Path, tag: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "report".into());
    out.with_file_name(format!("{stem}.{tag}.csv"))
}

pub fn json_report(report: &EvalReport) -> serde_json::Value {
    let mut value = serde_json::to_value(report).expect("report serializes");
    let by_k: Vec<_> = {
        let mut ks: Vec<usize> = report.rows.iter().map(|r| r.k).collect();
        ks.dedup();
        ks.sort_unstable();
        ks.dedup();
        ks.into_iter()
            .map(|k| serde_json::json!({ "k": k, "pairs": report.recall_vs_pruning(k) }))
            .collect()
    };
    value["recall_vs_pruning"] = serde_json::Value::Array(by_k);
    value["pruning_vs_m"] = serde_json::to_value(report.pruning_vs_m()).expect("pairs serialize");
    value
}

// ---------------------------------------------------------------------------
// Argument parsing

#[derive(Debug, Parser)]
#[command(name = "polyminhash", version, about = "MinHash-based polygon similarity search")]
pub struct Cli {
    /// Worker threads (default: all hardware threads).
    #[arg(long, global = true, env = "POLYMINHASH_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic WKT corpus.
    Synth(SynthArgs),
    /// Ingest a WKT dataset and write a signature index.
    Build(BuildArgs),
    /// Answer one k-ANN query against an index.
    Query(QueryArgs),
    /// Sweep signature lengths and report recall, pruning and timings.
    Bench(BenchArgs),
    /// Print bucket statistics of an index.
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, env = "POLYMINHASH_COUNT", default_value_t = 1000)]
    pub count: usize,
    #[arg(long, env = "POLYMINHASH_MIN_VERTICES", default_value_t = 4)]
    pub min_vertices: usize,
    #[arg(long, env = "POLYMINHASH_MAX_VERTICES", default_value_t = 12)]
    pub max_vertices: usize,
    /// convex, star, rect or mixed.
    #[arg(long, env = "POLYMINHASH_FAMILY", default_value = "mixed")]
    pub family: ShapeFamily,
    /// Decades of area covered by the corpus.
    #[arg(long, env = "POLYMINHASH_AREA_SPREAD", default_value_t = 2.0)]
    pub area_spread: f64,
    #[arg(long, env = "POLYMINHASH_MAX_ASPECT", default_value_t = 3.0)]
    pub max_aspect: f64,
    #[arg(long, env = "POLYMINHASH_SEED", default_value_t = 7)]
    pub seed: u64,
    /// Output file (stdout when omitted).
    #[arg(long, env = "POLYMINHASH_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HashArgs {
    /// Signature length(s), comma separated.
    #[arg(long, env = "POLYMINHASH_M", value_delimiter = ',')]
    pub m: Vec<usize>,
    /// Base seed; slot i uses seed + i.
    #[arg(long, env = "POLYMINHASH_SEED")]
    pub seed: Option<u64>,
    #[arg(long, env = "POLYMINHASH_MAX_ATTEMPTS", default_value_t = DEFAULT_MAX_ATTEMPTS)]
    pub max_attempts: u64,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long, env = "POLYMINHASH_DATASET")]
    pub dataset: PathBuf,
    /// Where to write the index.
    #[arg(long, env = "POLYMINHASH_INDEX")]
    pub index: PathBuf,
    #[command(flatten)]
    pub hash: HashArgs,
    /// Also write the build report here.
    #[arg(long, env = "POLYMINHASH_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long, env = "POLYMINHASH_DATASET")]
    pub dataset: PathBuf,
    #[arg(long, env = "POLYMINHASH_INDEX")]
    pub index: PathBuf,
    /// Id of an indexed polygon to use as the query.
    #[arg(long, conflicts_with = "wkt", required_unless_present = "wkt")]
    pub id: Option<u64>,
    /// Query geometry as WKT.
    #[arg(long)]
    pub wkt: Option<String>,
    #[arg(long, env = "POLYMINHASH_K", default_value_t = 10)]
    pub k: usize,
    #[command(flatten)]
    pub hash: HashArgs,
    #[arg(long, env = "POLYMINHASH_FORMAT", value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[arg(long, env = "POLYMINHASH_PREFIX_RELAX")]
    pub prefix_relax: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, env = "POLYMINHASH_DATASET")]
    pub dataset: PathBuf,
    /// Count, `ids:1,2,3` or `file:path.wkt`.
    #[arg(long, env = "POLYMINHASH_QUERIES", default_value = "100")]
    pub queries: QuerySpec,
    /// Sample the query records with this seed instead of taking the first ones.
    #[arg(long, env = "POLYMINHASH_QUERY_SEED")]
    pub query_seed: Option<u64>,
    #[arg(long, env = "POLYMINHASH_K", value_delimiter = ',', default_value = "10")]
    pub k: Vec<usize>,
    #[command(flatten)]
    pub hash: HashArgs,
    #[arg(long, env = "POLYMINHASH_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, env = "POLYMINHASH_FORMAT", value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[arg(long, env = "POLYMINHASH_PREFIX_RELAX")]
    pub prefix_relax: bool,
    /// Reuse brute-force results stored at this path.
    #[arg(long, env = "POLYMINHASH_GT_CACHE")]
    pub gt_cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long, env = "POLYMINHASH_INDEX")]
    pub index: PathBuf,
}

impl clap::builder::ValueParserFactory for QuerySpec {
    type Parser = clap::builder::ValueParser;

    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<QuerySpec>().map_err(|e| e.to_string()))
    }
}

impl clap::builder::ValueParserFactory for ShapeFamily {
    type Parser = clap::builder::ValueParser;

    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<ShapeFamily>().map_err(|e| e.to_string()))
    }
}

impl HashArgs {
    fn apply(&self, config: &mut RunConfig) {
        config.m = self.m.clone();
        config.base_seed = self.seed;
        config.max_attempts = self.max_attempts;
    }
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => fs::write(path, text + "\n")?,
        None => write_stdout(&(text + "\n"))?,
    }
    Ok(())
}

fn write_stdout(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// Ranked neighbours, one `rank id JD` row each.
pub fn format_query_text(report: &QueryReport) -> String {
    let r = &report.result;
    let mut s = format!(
        "query {}  k={}  candidates={}  signature={:?}  hash={:.6}s  lookup+refine={:.6}s\n",
        report.query_id,
        report.k,
        r.candidate_count,
        r.signature,
        r.hash_time.as_secs_f64(),
        r.lookup_refine_time.as_secs_f64()
    );
    s.push_str("rank\tid\tJD\n");
    for (rank, n) in r.neighbors.iter().enumerate() {
        s.push_str(&format!("{}\t{}\t{:.6}\n", rank + 1, n.id, n.distance));
    }
    s
}

/// Runs a parsed command line and writes its output.
pub fn run(cli: Cli) -> Result<()> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Error::InvalidParameter("threads must be at least 1".into()));
        }
        // Fails only if a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let mut config = RunConfig { threads: cli.threads, ..RunConfig::default() };
    match cli.command {
        Command::Synth(a) => {
            let params = SynthParams {
                count: a.count,
                min_vertices: a.min_vertices,
                max_vertices: a.max_vertices,
                family: a.family,
                area_spread: a.area_spread,
                max_aspect: a.max_aspect,
                seed: a.seed,
                ..SynthParams::default()
            };
            let report = cmd_synth(&params, a.out.as_deref())?;
            if a.out.is_some() {
                emit(&report, None)?;
            }
        }
        Command::Build(a) => {
            config.dataset = Some(a.dataset);
            config.index = Some(a.index);
            a.hash.apply(&mut config);
            let report = cmd_build(&config)?;
            emit(&report, None)?;
            if let Some(out) = a.out {
                emit(&report, Some(&out))?;
            }
        }
        Command::Query(a) => {
            config.dataset = Some(a.dataset);
            config.index = Some(a.index);
            config.k = vec![a.k];
            config.format = a.format;
            config.prefix_relax = a.prefix_relax;
            a.hash.apply(&mut config);
            let target = match (a.id, a.wkt) {
                (Some(id), _) => QueryTarget::Id(id),
                (None, Some(wkt)) => QueryTarget::Wkt(wkt),
                (None, None) => unreachable!("clap requires --id or --wkt"),
            };
            let report = cmd_query(&config, &target)?;
            match config.format {
                OutputFormat::Json => emit(&report, None)?,
                OutputFormat::Text | OutputFormat::Csv => write_stdout(&format_query_text(&report))?,
            }
        }
        Command::Bench(a) => {
            config.dataset = Some(a.dataset);
            config.queries = a.queries;
            config.query_seed = a.query_seed;
            config.k = a.k;
            config.out = a.out;
            config.format = a.format;
            config.prefix_relax = a.prefix_relax;
            config.gt_cache = a.gt_cache;
            a.hash.apply(&mut config);
            if config.m.is_empty() {
                config.m = vec![1, 3, 5];
            }
            let report = cmd_bench(&config)?;
            if config.out.is_none() {
                match config.format {
                    OutputFormat::Csv => report_csv(&report, io::stdout().lock())?,
                    _ => write_stdout(&(serde_json::to_string_pretty(&json_report(&report))? + "\n"))?,
                }
            }
        }
        Command::Stats(a) => {
            config.index = Some(a.index);
            emit(&cmd_stats(&config)?, None)?;
        }
    }
    Ok(())
}

/// Process entry point: parses `std::env::args`, runs, and maps errors to a
/// one-line `error[<class>]: <message>` on stderr with exit status 1.
pub fn main_entry() -> std::process::ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        // Downstream reader closed the pipe (e.g. `| head`).
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {}", e.class(), e);
            std::process::ExitCode::FAILURE
        }
    }
}
