//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use polyminhash::geometry::{Point, Polygon, Rect};
use polyminhash::minhash::{sample_point, SamplingDomain};
use polyminhash::query::Dataset;
use polyminhash::synth::{generate, ShapeFamily, SynthParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Winding-number point-in-polygon (non-zero rule); agrees with even-odd on simple rings.
pub fn winding_contains(p: &Polygon, pt: Point) -> bool {
    let vs = p.vertices();
    let n = vs.len();
    let mut wn = 0i32;
    for i in 0..n {
        let (a, b) = (vs[i], vs[(i + 1) % n]);
        let side = (b.x - a.x) * (pt.y - a.y) - (pt.x - a.x) * (b.y - a.y);
        if a.y <= pt.y {
            if b.y > pt.y && side > 0.0 {
                wn += 1;
            }
        } else if b.y <= pt.y && side < 0.0 {
            wn -= 1;
        }
    }
    wn != 0
}

/// Hash value of one slot by walking `sample_point` attempt by attempt.
pub fn walk_slot(p: &Polygon, domain: &SamplingDomain, slot: usize) -> u64 {
    (1..).find(|&j| winding_contains(p, sample_point(domain, slot, j))).unwrap()
}

pub fn rect(id: u64, x0: f64, x1: f64, y0: f64, y1: f64) -> Polygon {
    Polygon::rectangle(id, Rect::new(x0, x1, y0, y1)).unwrap()
}

/// Centred synthetic corpus.
pub fn corpus(count: usize, family: ShapeFamily, seed: u64) -> Dataset {
    let params = SynthParams { count, family, seed, ..SynthParams::default() };
    Dataset::centered(generate(&params).unwrap()).unwrap()
}

/// Pairs of centred shapes of one family, the second nudged by a small random
/// offset so that every pair overlaps partially.
pub fn random_pairs(count: usize, family: ShapeFamily, seed: u64) -> Vec<(Polygon, Polygon)> {
    let params = SynthParams { count: 2 * count, family, seed, area_spread: 1.0, ..SynthParams::default() };
    let polys = generate(&params).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    polys
        .chunks(2)
        .map(|pair| {
            let a = pair[0].center();
            let b = pair[1].center();
            let reach = (a.area().sqrt() + b.area().sqrt()) * 0.2;
            let b = b.translate(rng.gen_range(-reach..reach), rng.gen_range(-reach..reach));
            (a, b)
        })
        .collect()
}

/// Quadratic reference k-NN: full distance row, insertion into an ordered list.
pub fn reference_knn(q: &Polygon, polygons: &[Polygon], k: usize) -> Vec<(u64, f64)> {
    let mut best: Vec<(u64, f64)> = Vec::new();
    for p in polygons {
        let d = polyminhash::jaccard_distance(q, p).unwrap();
        let pos = best
            .iter()
            .position(|&(id, bd)| d < bd || (d == bd && p.id() < id))
            .unwrap_or(best.len());
        best.insert(pos, (p.id(), d));
        best.truncate(k);
    }
    best
}

pub fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// Fraction of fresh-seed single-slot trials in which `a` and `b` collide.
pub fn collision_rate(a: &Polygon, b: &Polygon, sampling_box: Rect, trials: u64) -> f64 {
    let hits = (0..trials)
        .filter(|&t| {
            let d = SamplingDomain::new(sampling_box, 1, t.wrapping_mul(7919), 10_000_000).unwrap();
            let ha = polyminhash::minhash_signature(a, &d).unwrap();
            let hb = polyminhash::minhash_signature(b, &d).unwrap();
            ha == hb
        })
        .count();
    hits as f64 / trials as f64
}

/// Single-slot attempt counts of `p` over `trials` fresh seeds.
pub fn attempt_samples(p: &Polygon, sampling_box: Rect, trials: u64) -> Vec<f64> {
    (0..trials)
        .map(|t| {
            let d = SamplingDomain::new(sampling_box, 1, 1_000_003 + t * 13, 10_000_000).unwrap();
            polyminhash::minhash_signature(p, &d).unwrap().values()[0] as f64
        })
        .collect()
}

pub fn ids(neighbors: &[polyminhash::Neighbor]) -> Vec<u64> {
    neighbors.iter().map(|n| n.id).collect()
}

pub fn is_permutation(ids: &[u64], dataset: &Dataset) -> bool {
    let set: HashSet<u64> = ids.iter().copied().collect();
    set.len() == dataset.len() && dataset.polygons().iter().all(|p| set.contains(&p.id()))
}
