//! Build a signature index over a synthetic corpus, save it and reload it.
//!
//!     cargo run --release --example build_index -- [count] [m]

use polyminhash::synth::{generate, SynthParams};
use polyminhash::{Dataset, Index, SamplingDomain};

fn main() -> polyminhash::Result<()> {
    let mut args = std::env::args().skip(1);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let m = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);

    let dataset = Dataset::centered(generate(&SynthParams { count, ..SynthParams::default() })?)?;
    let domain = SamplingDomain::for_dataset(dataset.polygons(), m, 42, 10_000_000)?;
    let index = Index::build(dataset.polygons(), domain)?;
    let stats = index.stats();
    println!(
        "{} polygons, m = {m}: {} buckets, sizes {}..{} (mean {:.2})",
        stats.dataset_size, stats.bucket_count, stats.min_bucket, stats.max_bucket, stats.mean_bucket
    );
    for (size, n) in stats.histogram.iter().rev().take(5) {
        println!("  {n} bucket(s) of size {size}");
    }

    let path = std::env::temp_dir().join("polyminhash-example.idx");
    index.save(&path)?;
    let loaded = Index::load(&path)?;
    println!(
        "saved {} bytes to {}, reloaded identical: {}",
        std::fs::metadata(&path)?.len(),
        path.display(),
        loaded == index
    );
    std::fs::remove_file(path)?;
    Ok(())
}
