//! Recall, pruning and speedup over a sweep of signature lengths.
//!
//!     cargo run --release --example benchmark -- [count] [queries]

use polyminhash::cli::report_csv;
use polyminhash::query::select_queries;
use polyminhash::synth::{generate, SynthParams};
use polyminhash::{evaluate, Dataset, EvalConfig, GroundTruth, QueryOptions};

fn main() -> polyminhash::Result<()> {
    let mut args = std::env::args().skip(1);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let query_count = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);

    let dataset = Dataset::centered(generate(&SynthParams { count, ..SynthParams::default() })?)?;
    let queries = select_queries(&dataset, query_count, None);
    let truth = GroundTruth::compute(&dataset, &queries, 10)?;
    let config = EvalConfig {
        dataset_name: format!("synthetic-{count}"),
        m_values: vec![1, 2, 3, 5],
        k_values: vec![1, 10],
        base_seed: 42,
        max_attempts: 10_000_000,
        options: QueryOptions::default(),
    };
    let report = evaluate(&dataset, &queries, &config, &truth)?;
    report_csv(&report, std::io::stdout().lock())?;
    eprintln!("recall@10 vs pruning: {:?}", report.recall_vs_pruning(10));
    Ok(())
}
