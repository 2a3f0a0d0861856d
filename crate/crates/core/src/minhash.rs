//! Rejection-sampling MinHash over a shared sampling box.
//!
//! Every signature slot owns a deterministic stream of points drawn uniformly
//! from the global bounding rectangle. The stream is restarted from the slot's
//! seed for every polygon, so all polygons hashed under one
//! [`SamplingDomain`] see the same point sequence. A slot's hash value is the
//! 1-based index of the first point that falls inside the polygon; the chance
//! that two polygons share that index equals their area Jaccard similarity.

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, Polygon, Rect};

pub const DEFAULT_SIGNATURE_LEN: usize = 3;
pub const DEFAULT_BASE_SEED: u64 = 42;
pub const DEFAULT_MAX_ATTEMPTS: u64 = 10_000_000;

/// ChaCha words consumed per attempt: two `u64` draws (x then y).
const WORDS_PER_ATTEMPT: u128 = 4;

/// Per-slot generator seeds, `base_seed + i` for slot `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedArray(Vec<u64>);

impl SeedArray {
    pub fn from_base(base_seed: u64, m: usize) -> Self {
        SeedArray((0..m as u64).map(|i| base_seed.wrapping_add(i)).collect())
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Length-`m` vector of attempt counts. Every entry is at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature(Vec<u64>);

impl Signature {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() || values.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "signature values must be non-empty and positive, got {values:?}"
            )));
        }
        Ok(Signature(values))
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// First `len` slots. Signatures from a domain with the same base seed
    /// and `m = len` are exactly these prefixes.
    pub fn prefix(&self, len: usize) -> Signature {
        Signature(self.0[..len.min(self.0.len())].to_vec())
    }
}

/// Everything needed to hash a polygon consistently: the sampling box, the
/// per-slot seeds and the attempt cap. Immutable once built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingDomain {
    global_mbr: Rect,
    base_seed: u64,
    seeds: SeedArray,
    max_attempts: u64,
}

impl SamplingDomain {
    pub fn new(global_mbr: Rect, m: usize, base_seed: u64, max_attempts: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("signature length m must be at least 1".into()));
        }
        if max_attempts == 0 {
            return Err(Error::InvalidParameter("max_attempts must be positive".into()));
        }
        if !(global_mbr.width() > 0.0 && global_mbr.height() > 0.0)
            || !global_mbr.area().is_finite()
        {
            return Err(Error::InvalidParameter(format!(
                "sampling box must have positive finite extent, got {global_mbr:?}"
            )));
        }
        Ok(SamplingDomain { global_mbr, base_seed, seeds: SeedArray::from_base(base_seed, m), max_attempts })
    }

    /// Domain over the global MBR of `polygons`, which should already be centred.
    pub fn for_dataset(polygons: &[Polygon], m: usize, base_seed: u64, max_attempts: u64) -> Result<Self> {
        SamplingDomain::new(global_mbr(polygons)?, m, base_seed, max_attempts)
    }

    pub fn global_mbr(&self) -> Rect {
        self.global_mbr
    }

    pub fn m(&self) -> usize {
        self.seeds.len()
    }

    pub fn base_seed(&self) -> u64 {
        self.base_seed
    }

    pub fn seeds(&self) -> &SeedArray {
        &self.seeds
    }

    pub fn max_attempts(&self) -> u64 {
        self.max_attempts
    }

    /// Point stream of `slot` (0-based), starting at attempt 1.
    pub fn slot_stream(&self, slot: usize) -> SlotStream {
        SlotStream {
            rng: ChaCha8Rng::seed_from_u64(self.seeds.as_slice()[slot]),
            bounds: self.global_mbr,
        }
    }
}

/// Endless uniform point sequence over the sampling box for one slot.
#[derive(Debug, Clone)]
pub struct SlotStream {
    rng: ChaCha8Rng,
    bounds: Rect,
}

#[inline]
fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    // 53 high bits -> [0, 1).
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

impl Iterator for SlotStream {
    type Item = Point;

    #[inline]
    fn next(&mut self) -> Option<Point> {
        let b = &self.bounds;
        let x = b.x_min + unit_f64(&mut self.rng) * (b.x_max - b.x_min);
        let y = b.y_min + unit_f64(&mut self.rng) * (b.y_max - b.y_min);
        Some(Point::new(x, y))
    }
}

/// Smallest axis-aligned rectangle enclosing every polygon.
pub fn global_mbr(polygons: &[Polygon]) -> Result<Rect> {
    let (first, rest) = polygons.split_first().ok_or(Error::EmptyDataset)?;
    Ok(rest.iter().fold(first.mbr(), |acc, p| acc.union(&p.mbr())))
}

/// The `attempt`-th (1-based) point of slot `slot`'s sequence, by seeking the
/// generator directly rather than replaying earlier attempts.
pub fn sample_point(domain: &SamplingDomain, slot: usize, attempt: u64) -> Point {
    assert!(attempt >= 1, "attempts are 1-based");
    let mut stream = domain.slot_stream(slot);
    stream.rng.set_word_pos((attempt as u128 - 1) * WORDS_PER_ATTEMPT);
    stream.next().expect("endless stream")
}

/// Attempt count for a single slot. Points outside the polygon's local MBR
/// are rejected without a point-in-polygon test but still count as attempts.
pub fn slot_value(p: &Polygon, domain: &SamplingDomain, slot: usize) -> Result<u64> {
    let mbr = p.mbr();
    let cap = domain.max_attempts();
    for (attempt, pt) in (1..=cap).zip(domain.slot_stream(slot)) {
        if mbr.contains_point(pt) && p.contains(pt) {
            return Ok(attempt);
        }
    }
    Err(Error::MaxAttemptsExceeded { id: p.id(), slot, max_attempts: cap })
}

pub fn minhash_signature(p: &Polygon, domain: &SamplingDomain) -> Result<Signature> {
    let values = (0..domain.m()).map(|slot| slot_value(p, domain, slot)).collect::<Result<Vec<_>>>()?;
    Ok(Signature(values))
}

/// Probability that one uniform sample from the box lands in `p`.
pub fn sparsity(p: &Polygon, domain: &SamplingDomain) -> f64 {
    p.area() / domain.global_mbr().area()
}

/// Mean and variance of the geometric attempt count for acceptance probability `s`.
pub fn attempt_moments(s: f64) -> Result<(f64, f64)> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::InvalidParameter(format!("sparsity must lie in (0, 1], got {s}")));
    }
    Ok((1.0 / s, (1.0 - s) / (s * s)))
}
