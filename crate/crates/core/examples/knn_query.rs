//! Approximate top-k search next to the exact answer.
//!
//!     cargo run --release --example knn_query -- [query id] [k]

use polyminhash::synth::{generate, SynthParams};
use polyminhash::{knn_approx, knn_brute_force, recall_at_k, Dataset, Error, Index, QueryOptions, SamplingDomain};

fn main() -> polyminhash::Result<()> {
    let mut args = std::env::args().skip(1);
    let id: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(17);
    let k: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);

    let dataset = Dataset::centered(generate(&SynthParams { count: 20_000, ..SynthParams::default() })?)?;
    let domain = SamplingDomain::for_dataset(dataset.polygons(), 2, 42, 10_000_000)?;
    let index = Index::build(dataset.polygons(), domain)?;
    let q = dataset.get(id).ok_or(Error::UnknownId(id))?;

    let approx = knn_approx(q, &index, &dataset, k, QueryOptions::default())?;
    let exact = knn_brute_force(q, &dataset, k)?;
    println!(
        "query {id}: signature {:?}, {} candidates of {}, hash {:?}, lookup+refine {:?}",
        approx.signature,
        approx.candidate_count,
        dataset.len(),
        approx.hash_time,
        approx.lookup_refine_time
    );
    println!("rank  approx            exact");
    for rank in 0..k {
        let cell = |n: Option<&polyminhash::Neighbor>| {
            n.map(|n| format!("{:>6} {:.4}", n.id, n.distance)).unwrap_or_else(|| "     -".into())
        };
        println!("{:>4}  {}  {}", rank + 1, cell(approx.neighbors.get(rank)), cell(exact.neighbors.get(rank)));
    }
    let exact_ids: Vec<u64> = exact.neighbors.iter().map(|n| n.id).collect();
    println!("recall@{k} = {:.2}", recall_at_k(&approx.ids(), &exact_ids, k));
    Ok(())
}
