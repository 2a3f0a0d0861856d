//! Signature-keyed bucket index.
//!
//! # File format
//!
//! All integers little-endian.
//!
//! ```text
//! magic          8 bytes  "PMHINDEX"
//! version        u32      (currently 1)
//! m              u32
//! base_seed      u64
//! max_attempts   u64
//! global MBR     4 × f64  x_min, x_max, y_min, y_max
//! dataset_size   u64
//! bucket_count   u64
//! bucket × bucket_count, ascending by signature:
//!     signature  m × u64
//!     len        u64
//!     ids        len × u64, ascending
//! crc32          u32      over every preceding byte
//! ```

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Polygon, Rect};
use crate::minhash::{minhash_signature, SamplingDomain, Signature};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &[u8; 8] = b"PMHINDEX";

#[derive(Debug, Clone, PartialEq)]
pub struct Index {
    buckets: HashMap<Signature, Vec<u64>>,
    domain: SamplingDomain,
    dataset_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexStats {
    pub dataset_size: usize,
    pub bucket_count: usize,
    pub min_bucket: usize,
    pub mean_bucket: f64,
    pub max_bucket: usize,
    /// bucket size → number of buckets with that size
    pub histogram: BTreeMap<usize, usize>,
}

/// Outcome of a prefix-relaxed lookup.
#[derive(Debug, Clone, PartialEq)]
pub struct RelaxedLookup {
    pub ids: Vec<u64>,
    /// Number of leading slots that had to match.
    pub matched_len: usize,
}

impl Index {
    /// Hashes every polygon (in parallel) and groups ids by signature.
    /// Fails on the first polygon, in input order, that cannot be hashed.
    pub fn build(polygons: &[Polygon], domain: SamplingDomain) -> Result<Index> {
        let gmbr = domain.global_mbr();
        let mut seen = HashSet::with_capacity(polygons.len());
        for p in polygons {
            if !seen.insert(p.id()) {
                return Err(Error::DuplicateId(p.id()));
            }
            if !gmbr.contains_rect(&p.mbr()) {
                return Err(Error::OutsideDomain { id: p.id() });
            }
        }
        let signatures: Vec<Result<Signature>> =
            polygons.par_iter().map(|p| minhash_signature(p, &domain)).collect();

        let mut buckets: HashMap<Signature, Vec<u64>> = HashMap::new();
        for (p, sig) in polygons.iter().zip(signatures) {
            buckets.entry(sig?).or_default().push(p.id());
        }
        for ids in buckets.values_mut() {
            ids.sort_unstable();
        }
        Ok(Index { buckets, domain, dataset_size: polygons.len() })
    }

    pub fn domain(&self) -> &SamplingDomain {
        &self.domain
    }

    pub fn m(&self) -> usize {
        self.domain.m()
    }

    pub fn dataset_size(&self) -> usize {
        self.dataset_size
    }

    pub fn bucket_count(&self) -> usize {
        self.buckets.len()
    }

    pub fn buckets(&self) -> impl Iterator<Item = (&Signature, &[u64])> {
        self.buckets.iter().map(|(k, v)| (k, v.as_slice()))
    }

    /// Exact-match bucket contents; empty when the signature was never inserted.
    pub fn lookup(&self, sig: &Signature) -> Result<&[u64]> {
        if sig.len() != self.m() {
            return Err(Error::SignatureLength { expected: self.m(), got: sig.len() });
        }
        Ok(self.buckets.get(sig).map(Vec::as_slice).unwrap_or(&[]))
    }

    /// Extension: drops trailing slots until some bucket shares the prefix,
    /// and returns the union of all such buckets.
    pub fn lookup_relaxed(&self, sig: &Signature) -> Result<RelaxedLookup> {
        let exact = self.lookup(sig)?;
        if !exact.is_empty() {
            return Ok(RelaxedLookup { ids: exact.to_vec(), matched_len: sig.len() });
        }
        for len in (1..sig.len()).rev() {
            let prefix = &sig.values()[..len];
            let mut ids: Vec<u64> = self
                .buckets
                .iter()
                .filter(|(k, _)| &k.values()[..len] == prefix)
                .flat_map(|(_, v)| v.iter().copied())
                .collect();
            if !ids.is_empty() {
                ids.sort_unstable();
                return Ok(RelaxedLookup { ids, matched_len: len });
            }
        }
        Ok(RelaxedLookup { ids: Vec::new(), matched_len: 0 })
    }

    pub fn stats(&self) -> IndexStats {
        let mut histogram = BTreeMap::new();
        for ids in self.buckets.values() {
            *histogram.entry(ids.len()).or_insert(0) += 1;
        }
        let bucket_count = self.buckets.len();
        IndexStats {
            dataset_size: self.dataset_size,
            bucket_count,
            min_bucket: histogram.keys().next().copied().unwrap_or(0),
            mean_bucket: if bucket_count == 0 { 0.0 } else { self.dataset_size as f64 / bucket_count as f64 },
            max_bucket: histogram.keys().next_back().copied().unwrap_or(0),
            histogram,
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let m = self.m();
        let mut out = Vec::with_capacity(80 + self.dataset_size * 8 + self.buckets.len() * (m + 1) * 8);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        out.extend_from_slice(&(m as u32).to_le_bytes());
        out.extend_from_slice(&self.domain.base_seed().to_le_bytes());
        out.extend_from_slice(&self.domain.max_attempts().to_le_bytes());
        let g = self.domain.global_mbr();
        for v in [g.x_min, g.x_max, g.y_min, g.y_max] {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out.extend_from_slice(&(self.dataset_size as u64).to_le_bytes());
        out.extend_from_slice(&(self.buckets.len() as u64).to_le_bytes());

        let mut keys: Vec<&Signature> = self.buckets.keys().collect();
        keys.sort_unstable();
        for key in keys {
            for v in key.values() {
                out.extend_from_slice(&v.to_le_bytes());
            }
            let ids = &self.buckets[key];
            out.extend_from_slice(&(ids.len() as u64).to_le_bytes());
            for id in ids {
                out.extend_from_slice(&id.to_le_bytes());
            }
        }
        let crc = crc32fast::hash(&out);
        out.extend_from_slice(&crc.to_le_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Index> {
        if bytes.len() < MAGIC.len() + 4 || &bytes[..MAGIC.len()] != MAGIC {
            return Err(Error::CorruptIndex("missing magic header".into()));
        }
        let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
        if version != FORMAT_VERSION {
            return Err(Error::VersionMismatch(version));
        }
        if bytes.len() < 16 {
            return Err(Error::CorruptIndex("truncated header".into()));
        }
        let (payload, tail) = bytes.split_at(bytes.len() - 4);
        let stored = u32::from_le_bytes(tail.try_into().unwrap());
        if crc32fast::hash(payload) != stored {
            return Err(Error::CorruptIndex("checksum mismatch".into()));
        }

        let mut r = Reader { buf: payload, pos: 12 };
        let m = r.u32()? as usize;
        let base_seed = r.u64()?;
        let max_attempts = r.u64()?;
        let gmbr = [r.f64()?, r.f64()?, r.f64()?, r.f64()?];
        if !(gmbr[0] <= gmbr[1] && gmbr[2] <= gmbr[3]) {
            return Err(Error::CorruptIndex("inverted global MBR".into()));
        }
        let domain = SamplingDomain::new(Rect::new(gmbr[0], gmbr[1], gmbr[2], gmbr[3]), m, base_seed, max_attempts)
            .map_err(|e| Error::CorruptIndex(e.to_string()))?;
        let dataset_size = r.u64()? as usize;
        let bucket_count = r.u64()? as usize;

        let mut buckets = HashMap::with_capacity(bucket_count.min(payload.len() / 8));
        let mut seen = HashSet::new();
        let mut total = 0usize;
        for _ in 0..bucket_count {
            let values = (0..m).map(|_| r.u64()).collect::<Result<Vec<_>>>()?;
            let sig = Signature::new(values).map_err(|e| Error::CorruptIndex(e.to_string()))?;
            let len = r.u64()? as usize;
            if len == 0 {
                return Err(Error::CorruptIndex("empty bucket".into()));
            }
            let ids = (0..len).map(|_| r.u64()).collect::<Result<Vec<_>>>()?;
            for &id in &ids {
                if !seen.insert(id) {
                    return Err(Error::CorruptIndex(format!("id {id} appears twice")));
                }
            }
            total += len;
            if buckets.insert(sig, ids).is_some() {
                return Err(Error::CorruptIndex("repeated bucket key".into()));
            }
        }
        if r.pos != payload.len() {
            return Err(Error::CorruptIndex("trailing bytes".into()));
        }
        if total != dataset_size {
            return Err(Error::CorruptIndex(format!("bucket sizes sum to {total}, header says {dataset_size}")));
        }
        Ok(Index { buckets, domain, dataset_size })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Index> {
        Index::from_bytes(&fs::read(path)?)
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take<const N: usize>(&mut self) -> Result<[u8; N]> {
        let end = self.pos + N;
        let slice = self.buf.get(self.pos..end).ok_or_else(|| Error::CorruptIndex("truncated".into()))?;
        self.pos = end;
        Ok(slice.try_into().unwrap())
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take()?))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take()?))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take()?))
    }
}
