use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{intersection_area, Point, Polygon};
use crate::error::{Error, Result};

/// Relative slack tolerated before an intersection area is declared impossible.
const CLIP_TOLERANCE: f64 = 1e-9;

/// Area Jaccard similarity `|p ∩ q| / |p ∪ q|` from exact clipping.
pub fn jaccard_exact(p: &Polygon, q: &Polygon) -> Result<f64> {
    if p.vertices() == q.vertices() {
        return Ok(1.0);
    }
    let (ap, aq) = (p.area(), q.area());
    let inter = intersection_area(p, q);
    let bound = ap.min(aq);
    let slack = CLIP_TOLERANCE * ap.max(aq);
    if !inter.is_finite() || inter < -slack || inter > bound + slack {
        return Err(Error::Clipping { a: p.id(), b: q.id(), area: inter, bound });
    }
    let inter = inter.clamp(0.0, bound);
    Ok(inter / (ap + aq - inter))
}

/// `1 − jaccard_exact(p, q)`.
pub fn jaccard_distance(p: &Polygon, q: &Polygon) -> Result<f64> {
    jaccard_exact(p, q).map(|j| 1.0 - j)
}

/// Monte Carlo estimate of the area Jaccard similarity from `n` uniform
/// samples over the joint bounding rectangle. Uses only point-in-polygon
/// tests, so it is independent of the clipping code.
pub fn jaccard_mc(p: &Polygon, q: &Polygon, n: u64, seed: u64) -> f64 {
    let b = p.mbr().union(&q.mbr());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut both, mut either) = (0u64, 0u64);
    for _ in 0..n {
        let pt = Point::new(
            b.x_min + rng.gen::<f64>() * b.width(),
            b.y_min + rng.gen::<f64>() * b.height(),
        );
        let (in_p, in_q) = (p.contains(pt), q.contains(pt));
        if in_p && in_q {
            both += 1;
        }
        if in_p || in_q {
            either += 1;
        }
    }
    if either == 0 {
        0.0
    } else {
        both as f64 / either as f64
    }
}
