//! k-nearest-neighbour search under the area Jaccard distance.
//!
//! [`knn_approx`] filters the dataset down to the query's signature bucket
//! and ranks only those candidates exactly; [`knn_brute_force`] ranks every
//! polygon. Both share [`rank_candidates`], so for any query the approximate
//! answer is the brute-force answer restricted to the bucket.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use log::warn;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{jaccard_distance, Polygon};
use crate::index::Index;
use crate::minhash::{minhash_signature, SamplingDomain};

/// Centred polygons addressable by id.
#[derive(Debug, Clone)]
pub struct Dataset {
    polygons: Vec<Polygon>,
    by_id: HashMap<u64, usize>,
}

impl Dataset {
    /// Takes polygons as they are; callers are expected to have centred them.
    pub fn new(polygons: Vec<Polygon>) -> Result<Self> {
        let mut by_id = HashMap::with_capacity(polygons.len());
        for (i, p) in polygons.iter().enumerate() {
            if by_id.insert(p.id(), i).is_some() {
                return Err(Error::DuplicateId(p.id()));
            }
        }
        Ok(Dataset { polygons, by_id })
    }

    /// Centres every polygon, then builds the dataset.
    pub fn centered(polygons: Vec<Polygon>) -> Result<Self> {
        Dataset::new(polygons.iter().map(Polygon::center).collect())
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn len(&self) -> usize {
        self.polygons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polygons.is_empty()
    }

    pub fn get(&self, id: u64) -> Option<&Polygon> {
        self.by_id.get(&id).map(|&i| &self.polygons[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Neighbor {
    pub id: u64,
    pub distance: f64,
}

/// Ascending distance, then ascending id.
pub fn neighbor_order(a: &Neighbor, b: &Neighbor) -> Ordering {
    a.distance.total_cmp(&b.distance).then(a.id.cmp(&b.id))
}

/// Exact top-`k` of `candidates` by Jaccard distance to `q`.
pub fn rank_candidates<'a, I>(q: &Polygon, candidates: I, k: usize) -> Result<Vec<Neighbor>>
where
    I: IntoIterator<Item = &'a Polygon>,
{
    let mut scored = candidates
        .into_iter()
        .map(|p| jaccard_distance(q, p).map(|distance| Neighbor { id: p.id(), distance }))
        .collect::<Result<Vec<_>>>()?;
    if k == 0 {
        return Ok(Vec::new());
    }
    if scored.len() > k {
        scored.select_nth_unstable_by(k - 1, neighbor_order);
        scored.truncate(k);
    }
    scored.sort_unstable_by(neighbor_order);
    Ok(scored)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BruteForceResult {
    pub neighbors: Vec<Neighbor>,
    /// Set when `k` exceeded the dataset size and every polygon was returned.
    pub truncated: bool,
}

pub fn knn_brute_force(q: &Polygon, dataset: &Dataset, k: usize) -> Result<BruteForceResult> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let neighbors = rank_candidates(q, dataset.polygons(), k)?;
    Ok(BruteForceResult { neighbors, truncated: k > dataset.len() })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryOptions {
    /// Fall back to shorter signature prefixes when the exact bucket is empty.
    /// Off by default; not part of the baseline method.
    pub prefix_relax: bool,
}

fn secs<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryResult {
    pub neighbors: Vec<Neighbor>,
    pub candidate_count: usize,
    pub signature: Vec<u64>,
    /// Signature slots that had to match; `m` unless prefix relaxation kicked in.
    pub matched_len: usize,
    /// Part of the query lies outside the index's sampling box.
    pub outside_domain: bool,
    #[serde(rename = "hash_time_s", serialize_with = "secs")]
    pub hash_time: Duration,
    #[serde(rename = "lookup_refine_time_s", serialize_with = "secs")]
    pub lookup_refine_time: Duration,
}

impl QueryResult {
    pub fn total_time(&self) -> Duration {
        self.hash_time + self.lookup_refine_time
    }

    pub fn ids(&self) -> Vec<u64> {
        self.neighbors.iter().map(|n| n.id).collect()
    }
}

/// Filter-and-refine search: hash `q`, look up its bucket, rank the bucket.
pub fn knn_approx(
    q: &Polygon,
    index: &Index,
    dataset: &Dataset,
    k: usize,
    opts: QueryOptions,
) -> Result<QueryResult> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let domain = index.domain();
    let outside_domain = !domain.global_mbr().contains_rect(&q.mbr());
    if outside_domain {
        warn!("query {} extends outside the sampling box; the excess area is never sampled", q.id());
    }

    let start = Instant::now();
    let sig = minhash_signature(q, domain)?;
    let hash_time = start.elapsed();

    let start = Instant::now();
    let (ids, matched_len): (std::borrow::Cow<'_, [u64]>, usize) = if opts.prefix_relax {
        let relaxed = index.lookup_relaxed(&sig)?;
        (relaxed.ids.into(), relaxed.matched_len)
    } else {
        (index.lookup(&sig)?.into(), sig.len())
    };
    let candidates =
        ids.iter().map(|&id| dataset.get(id).ok_or(Error::UnknownId(id))).collect::<Result<Vec<_>>>()?;
    let neighbors = rank_candidates(q, candidates, k)?;
    let lookup_refine_time = start.elapsed();

    Ok(QueryResult {
        neighbors,
        candidate_count: ids.len(),
        signature: sig.values().to_vec(),
        matched_len,
        outside_domain,
        hash_time,
        lookup_refine_time,
    })
}

/// Share of the exact top-`k` found in the approximate top-`k`. Missing
/// approximate entries count as misses. When the exact list is shorter than
/// `k` the denominator is its length.
pub fn recall_at_k(approx: &[u64], exact: &[u64], k: usize) -> f64 {
    let denom = k.min(exact.len());
    if denom == 0 {
        return 1.0;
    }
    let truth: HashSet<u64> = exact[..denom].iter().copied().collect();
    let hits = approx.iter().take(k).filter(|id| truth.contains(id)).count();
    hits as f64 / denom as f64
}

/// Percentage of the dataset excluded from refinement.
pub fn pruning_percent(candidate_count: usize, dataset_size: usize) -> f64 {
    assert!(dataset_size >= 1 && candidate_count <= dataset_size);
    100.0 * (1.0 - candidate_count as f64 / dataset_size as f64)
}

/// First `count` polygons, or a seeded uniform sample without replacement.
pub fn select_queries(dataset: &Dataset, count: usize, seed: Option<u64>) -> Vec<Polygon> {
    let count = count.min(dataset.len());
    match seed {
        None => dataset.polygons()[..count].to_vec(),
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked = sample(&mut rng, dataset.len(), count).into_vec();
            picked.sort_unstable();
            picked.into_iter().map(|i| dataset.polygons()[i].clone()).collect()
        }
    }
}

/// Exact top-`k_max` ids per query plus the cost of computing them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub fingerprint: String,
    pub k_max: usize,
    pub neighbors: Vec<Vec<u64>>,
    /// Sum of per-query brute-force times.
    pub bf_time_s: f64,
    pub bf_wall_s: f64,
}

impl GroundTruth {
    pub fn compute(dataset: &Dataset, queries: &[Polygon], k_max: usize) -> Result<Self> {
        let wall = Instant::now();
        let per_query = queries
            .par_iter()
            .map(|q| {
                let start = Instant::now();
                let bf = knn_brute_force(q, dataset, k_max)?;
                Ok((bf.neighbors.iter().map(|n| n.id).collect::<Vec<_>>(), start.elapsed()))
            })
            .collect::<Result<Vec<_>>>()?;
        let bf_wall_s = wall.elapsed().as_secs_f64();
        let bf_time_s = per_query.iter().map(|(_, t)| t.as_secs_f64()).sum();
        Ok(GroundTruth {
            fingerprint: fingerprint(dataset, queries, k_max),
            k_max,
            neighbors: per_query.into_iter().map(|(ids, _)| ids).collect(),
            bf_time_s,
            bf_wall_s,
        })
    }

    /// Reuses a cached result at `path` when its fingerprint matches,
    /// otherwise computes and writes it.
    pub fn cached(path: &Path, dataset: &Dataset, queries: &[Polygon], k_max: usize) -> Result<Self> {
        let want = fingerprint(dataset, queries, k_max);
        if let Ok(text) = fs::read_to_string(path) {
            match serde_json::from_str::<GroundTruth>(&text) {
                Ok(gt) if gt.fingerprint == want => return Ok(gt),
                Ok(_) => warn!("ground-truth cache {} is stale; recomputing", path.display()),
                Err(e) => warn!("ignoring unreadable ground-truth cache {}: {e}", path.display()),
            }
        }
        let gt = GroundTruth::compute(dataset, queries, k_max)?;
        fs::write(path, serde_json::to_string(&gt)?)?;
        Ok(gt)
    }
}

/// Identifies a (dataset, query set, k_max) triple by checksumming coordinates and ids.
pub fn fingerprint(dataset: &Dataset, queries: &[Polygon], k_max: usize) -> String {
    let digest = |polys: &[Polygon]| {
        let mut h = crc32fast::Hasher::new();
        for p in polys {
            h.update(&p.id().to_le_bytes());
            for v in p.vertices() {
                h.update(&v.x.to_le_bytes());
                h.update(&v.y.to_le_bytes());
            }
        }
        h.finalize()
    };
    format!(
        "n{}-{:08x}-q{}-{:08x}-k{}",
        dataset.len(),
        digest(dataset.polygons()),
        queries.len(),
        digest(queries),
        k_max
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig {
    pub dataset_name: String,
    pub m_values: Vec<usize>,
    pub k_values: Vec<usize>,
    pub base_seed: u64,
    pub max_attempts: u64,
    pub options: QueryOptions,
}

/// One row per (m, k), laid out like a recall/runtime comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub dataset: String,
    pub m: usize,
    pub k: usize,
    pub recall: f64,
    pub mean_pruning_percent: f64,
    pub minhash_time_s: f64,
    pub lookup_refine_time_s: f64,
    pub total_s: f64,
    pub bf_time_s: f64,
    pub speedup: f64,
    pub mean_candidates: f64,
    pub approx_wall_s: f64,
    pub bf_wall_s: f64,
}

/// Per-m details that do not fit the row layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MSweep {
    pub m: usize,
    pub bucket_count: usize,
    pub build_time_s: f64,
    pub candidate_counts: Vec<usize>,
    pub mean_pruning_percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub dataset: String,
    pub dataset_size: usize,
    pub query_count: usize,
    /// Queries drawn from the dataset may retrieve themselves.
    pub self_match_allowed: bool,
    pub rows: Vec<EvalRow>,
    pub sweeps: Vec<MSweep>,
}

impl EvalReport {
    pub fn row(&self, m: usize, k: usize) -> Option<&EvalRow> {
        self.rows.iter().find(|r| r.m == m && r.k == k)
    }

    /// (recall@k, mean pruning %) per m.
    pub fn recall_vs_pruning(&self, k: usize) -> Vec<(f64, f64)> {
        self.rows.iter().filter(|r| r.k == k).map(|r| (r.recall, r.mean_pruning_percent)).collect()
    }

    /// (m, mean pruning %).
    pub fn pruning_vs_m(&self) -> Vec<(usize, f64)> {
        self.sweeps.iter().map(|s| (s.m, s.mean_pruning_percent)).collect()
    }
}

/// Builds an index per `m`, answers every query, and scores the answers
/// against `truth`.
pub fn evaluate(
    dataset: &Dataset,
    queries: &[Polygon],
    config: &EvalConfig,
    truth: &GroundTruth,
) -> Result<EvalReport> {
    if queries.is_empty() {
        return Err(Error::InvalidParameter("no queries".into()));
    }
    if config.m_values.is_empty() || config.k_values.is_empty() {
        return Err(Error::InvalidParameter("need at least one m and one k".into()));
    }
    if config.k_values.contains(&0) {
        return Err(Error::InvalidParameter("k values must be at least 1".into()));
    }
    let k_max = *config.k_values.iter().max().unwrap();
    if truth.k_max < k_max || truth.neighbors.len() != queries.len() {
        return Err(Error::InvalidParameter(format!(
            "ground truth covers {} queries at k={}, need {} at k={k_max}",
            truth.neighbors.len(),
            truth.k_max,
            queries.len()
        )));
    }
    let self_match_allowed = queries.iter().any(|q| dataset.get(q.id()).is_some());

    let mut rows = Vec::new();
    let mut sweeps = Vec::new();
    for &m in &config.m_values {
        let build_start = Instant::now();
        let domain = SamplingDomain::for_dataset(dataset.polygons(), m, config.base_seed, config.max_attempts)?;
        let index = Index::build(dataset.polygons(), domain)?;
        let build_time_s = build_start.elapsed().as_secs_f64();

        let wall = Instant::now();
        let results = queries
            .par_iter()
            .map(|q| knn_approx(q, &index, dataset, k_max, config.options))
            .collect::<Result<Vec<_>>>()?;
        let approx_wall_s = wall.elapsed().as_secs_f64();

        let minhash_time_s: f64 = results.iter().map(|r| r.hash_time.as_secs_f64()).sum();
        let lookup_refine_time_s: f64 = results.iter().map(|r| r.lookup_refine_time.as_secs_f64()).sum();
        let total_s = minhash_time_s + lookup_refine_time_s;
        let candidate_counts: Vec<usize> = results.iter().map(|r| r.candidate_count).collect();
        let mean_pruning_percent = candidate_counts
            .iter()
            .map(|&c| pruning_percent(c, dataset.len()))
            .sum::<f64>()
            / queries.len() as f64;
        let mean_candidates = candidate_counts.iter().sum::<usize>() as f64 / queries.len() as f64;

        for &k in &config.k_values {
            let recall = results
                .iter()
                .zip(&truth.neighbors)
                .map(|(r, exact)| recall_at_k(&r.ids(), exact, k))
                .sum::<f64>()
                / queries.len() as f64;
            rows.push(EvalRow {
                dataset: config.dataset_name.clone(),
                m,
                k,
                recall,
                mean_pruning_percent,
                minhash_time_s,
                lookup_refine_time_s,
                total_s,
                bf_time_s: truth.bf_time_s,
                speedup: if total_s > 0.0 { truth.bf_time_s / total_s } else { f64::INFINITY },
                mean_candidates,
                approx_wall_s,
                bf_wall_s: truth.bf_wall_s,
            });
        }
        sweeps.push(MSweep { m, bucket_count: index.bucket_count(), build_time_s, candidate_counts, mean_pruning_percent });
    }
    Ok(EvalReport {
        dataset: config.dataset_name.clone(),
        dataset_size: dataset.len(),
        query_count: queries.len(),
        self_match_allowed,
        rows,
        sweeps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recall_examples() {
        assert!((recall_at_k(&[1, 2, 3], &[1, 2, 4], 3) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(recall_at_k(&[1, 2, 3], &[1, 2, 3], 3), 1.0);
        assert_eq!(recall_at_k(&[], &[1, 2, 3], 3), 0.0);
        assert_eq!(recall_at_k(&[3, 1], &[1, 2, 3], 3), 2.0 / 3.0);
        // Only the first k of each list count.
        assert_eq!(recall_at_k(&[9, 1], &[1, 2], 1), 0.0);
    }

    #[test]
    fn pruning_examples() {
        assert_eq!(pruning_percent(300, 1000), 70.0);
        assert_eq!(pruning_percent(0, 1000), 100.0);
        assert_eq!(pruning_percent(1000, 1000), 0.0);
    }

    #[test]
    fn order_breaks_ties_by_id() {
        let mut v = [
            Neighbor { id: 5, distance: 0.5 },
            Neighbor { id: 2, distance: 0.5 },
            Neighbor { id: 9, distance: 0.1 },
        ];
        v.sort_by(neighbor_order);
        assert_eq!(v.iter().map(|n| n.id).collect::<Vec<_>>(), vec![9, 2, 5]);
    }
}
