//! Area-Jaccard-preserving MinHash for planar polygons, and a filter-and-refine
//! k-nearest-neighbour search built on it.
//!
//! A polygon's signature slot is the number of uniform samples from a shared
//! bounding box needed before one lands inside the polygon. Two polygons agree
//! on a slot with probability equal to their area Jaccard similarity, so
//! grouping polygons by signature gives a cheap candidate filter; candidates
//! are then ranked by exact Jaccard distance.
//!
//! ```
//! use polyminhash::{Dataset, Index, Polygon, QueryOptions, SamplingDomain, knn_approx};
//!
//! let squares: Vec<Polygon> = (0..4)
//!     .map(|i| Polygon::from_coords(i, &[(0.0, 0.0), (1.0 + i as f64, 0.0), (1.0 + i as f64, 1.0), (0.0, 1.0)]).unwrap())
//!     .collect();
//! let dataset = Dataset::centered(squares).unwrap();
//! let domain = SamplingDomain::for_dataset(dataset.polygons(), 2, 42, 1_000_000).unwrap();
//! let index = Index::build(dataset.polygons(), domain).unwrap();
//!
//! let query = dataset.get(2).unwrap();
//! let result = knn_approx(query, &index, &dataset, 3, QueryOptions::default()).unwrap();
//! assert_eq!(result.neighbors[0].id, 2);
//! assert_eq!(result.neighbors[0].distance, 0.0);
//! ```

pub mod cli;
pub mod error;
pub mod geometry;
pub mod index;
pub mod minhash;
pub mod query;
pub mod synth;

pub use error::{Error, InvalidPolygon, Result};
pub use geometry::wkt::{parse_wkt, parse_wkt_str, ParseReport};
pub use geometry::{
    area, center, centroid, contains, intersection_area, jaccard_distance, jaccard_exact, jaccard_mc,
    local_mbr, Point, Polygon, Rect,
};
pub use index::{Index, IndexStats};
pub use minhash::{
    attempt_moments, global_mbr, minhash_signature, sample_point, sparsity, SamplingDomain, SeedArray,
    Signature,
};
pub use query::{
    evaluate, knn_approx, knn_brute_force, pruning_percent, recall_at_k, Dataset, EvalConfig, EvalReport,
    GroundTruth, Neighbor, QueryOptions, QueryResult,
};
