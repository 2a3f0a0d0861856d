//! Seeded synthetic polygon corpora.
//!
//! Three families, all simple by construction:
//! - `convex`: vertices on a rotated ellipse at strictly increasing angles;
//! - `star`: the same angular layout with per-vertex radii, star-shaped about the centre;
//! - `rect`: axis-aligned rectangles with small per-corner jitter.
//!
//! Sizes are log-uniform so polygon areas span `area_spread` decades.

use std::f64::consts::TAU;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, Polygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeFamily {
    Convex,
    Star,
    Rect,
    Mixed,
}

impl FromStr for ShapeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "convex" => Ok(ShapeFamily::Convex),
            "star" => Ok(ShapeFamily::Star),
            "rect" | "rectangle" | "rectangles" => Ok(ShapeFamily::Rect),
            "mixed" => Ok(ShapeFamily::Mixed),
            other => Err(Error::InvalidParameter(format!("unknown shape family {other:?}"))),
        }
    }
}

impl fmt::Display for ShapeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeFamily::Convex => "convex",
            ShapeFamily::Star => "star",
            ShapeFamily::Rect => "rect",
            ShapeFamily::Mixed => "mixed",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthParams {
    pub count: usize,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub family: ShapeFamily,
    /// log10 of the ratio between the largest and smallest nominal area.
    pub area_spread: f64,
    /// Largest aspect ratio (long side over short side).
    pub max_aspect: f64,
    /// Polygons are scattered over `[0, extent]²` before any centring.
    pub extent: f64,
    pub seed: u64,
}

impl Default for SynthParams {
    fn default() -> Self {
        SynthParams {
            count: 1000,
            min_vertices: 4,
            max_vertices: 12,
            family: ShapeFamily::Mixed,
            area_spread: 2.0,
            max_aspect: 3.0,
            extent: 1000.0,
            seed: 7,
        }
    }
}

impl SynthParams {
    fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidParameter("count must be at least 1".into()));
        }
        if self.min_vertices < 3 || self.max_vertices < self.min_vertices {
            return Err(Error::InvalidParameter(format!(
                "vertex range ({}, {}) must satisfy 3 <= min <= max",
                self.min_vertices, self.max_vertices
            )));
        }
        if self.family == ShapeFamily::Rect && self.min_vertices > 4 {
            return Err(Error::InvalidParameter("rectangles have 4 vertices".into()));
        }
        if !(self.area_spread >= 0.0 && self.max_aspect >= 1.0 && self.extent >= 0.0) {
            return Err(Error::InvalidParameter("area_spread >= 0, max_aspect >= 1, extent >= 0".into()));
        }
        Ok(())
    }
}

/// Generates `params.count` polygons with ids `0..count`.
pub fn generate(params: &SynthParams) -> Result<Vec<Polygon>> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let rect_allowed = params.min_vertices <= 4 && params.max_vertices >= 4;
    let mut out = Vec::with_capacity(params.count);
    for id in 0..params.count as u64 {
        let family = match params.family {
            ShapeFamily::Mixed => {
                let pick = rng.gen_range(0..if rect_allowed { 3 } else { 2 });
                [ShapeFamily::Convex, ShapeFamily::Star, ShapeFamily::Rect][pick]
            }
            f => f,
        };
        let radius = 10f64.powf(rng.gen_range(0.0..=params.area_spread) / 2.0);
        let aspect = rng.gen_range(1.0..=params.max_aspect).sqrt();
        let (rx, ry) = if rng.gen_bool(0.5) { (radius * aspect, radius / aspect) } else { (radius / aspect, radius * aspect) };
        let ox = rng.gen_range(0.0..=params.extent);
        let oy = rng.gen_range(0.0..=params.extent);

        let ring = match family {
            ShapeFamily::Rect => {
                let j = 0.05 * rx.min(ry);
                [(-rx, -ry), (rx, -ry), (rx, ry), (-rx, ry)]
                    .into_iter()
                    .map(|(x, y)| Point::new(ox + x + rng.gen_range(-j..=j), oy + y + rng.gen_range(-j..=j)))
                    .collect::<Vec<_>>()
            }
            ShapeFamily::Convex | ShapeFamily::Star => {
                let n = rng.gen_range(params.min_vertices..=params.max_vertices);
                let rotation = rng.gen_range(0.0..TAU);
                let (sin_r, cos_r) = rotation.sin_cos();
                let star = family == ShapeFamily::Star;
                (0..n)
                    .map(|i| {
                        let t = (i as f64 + rng.gen_range(0.0..0.8)) * TAU / n as f64;
                        let scale = if star { rng.gen_range(0.45..=1.0) } else { 1.0 };
                        let (x, y) = (rx * scale * t.cos(), ry * scale * t.sin());
                        Point::new(ox + x * cos_r - y * sin_r, oy + x * sin_r + y * cos_r)
                    })
                    .collect()
            }
            ShapeFamily::Mixed => unreachable!(),
        };
        let poly = Polygon::new(id, ring)
            .map_err(|reason| Error::InvalidPolygon { id, reason })?;
        out.push(poly);
    }
    Ok(out)
}

/// One `id<TAB>WKT` line per polygon.
pub fn write_wkt<W: Write>(polygons: &[Polygon], mut w: W) -> Result<()> {
    for p in polygons {
        writeln!(w, "{}\t{}", p.id(), p.to_wkt())?;
    }
    w.flush()?;
    Ok(())
}
