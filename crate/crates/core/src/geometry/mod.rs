//! Planar polygon primitives.
//!
//! A [`Polygon`] is a single closed ring. Construction validates the ring
//! (finite coordinates, at least three distinct vertices, non-zero area and,
//! below [`SELF_INTERSECTION_SCAN_LIMIT`] vertices, no self-intersections) and
//! caches the signed area and bounding rectangle, so every later operation can
//! assume a well-formed ring.

mod clip;
mod jaccard;
pub mod wkt;

pub use clip::intersection_area;
pub use jaccard::{jaccard_distance, jaccard_exact, jaccard_mc};

use serde::{Deserialize, Serialize};

use crate::error::InvalidPolygon;

/// Rings with at least this many vertices are accepted without the quadratic
/// self-intersection scan. Defects in them surface as clipping errors.
pub const SELF_INTERSECTION_SCAN_LIMIT: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point { x, y }
    }
}

/// Axis-aligned rectangle `[x_min, x_max] × [y_min, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Rect {
    /// Panics if the bounds are inverted.
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        assert!(x_min <= x_max && y_min <= y_max, "inverted rectangle bounds");
        Rect { x_min, x_max, y_min, y_max }
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    /// Closed-interval membership on both axes.
    #[inline]
    pub fn contains_point(&self, pt: Point) -> bool {
        pt.x >= self.x_min && pt.x <= self.x_max && pt.y >= self.y_min && pt.y <= self.y_max
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        other.x_min >= self.x_min
            && other.x_max <= self.x_max
            && other.y_min >= self.y_min
            && other.y_max <= self.y_max
    }

    #[inline]
    pub fn intersects(&self, other: &Rect) -> bool {
        self.x_min <= other.x_max
            && other.x_min <= self.x_max
            && self.y_min <= other.y_max
            && other.y_min <= self.y_max
    }

    pub fn union(&self, other: &Rect) -> Rect {
        Rect {
            x_min: self.x_min.min(other.x_min),
            x_max: self.x_max.max(other.x_max),
            y_min: self.y_min.min(other.y_min),
            y_max: self.y_max.max(other.y_max),
        }
    }

    /// Tight bounds of a non-empty point set.
    pub fn bounding(points: &[Point]) -> Option<Rect> {
        let first = points.first()?;
        let mut r = Rect { x_min: first.x, x_max: first.x, y_min: first.y, y_max: first.y };
        for p in &points[1..] {
            r.x_min = r.x_min.min(p.x);
            r.x_max = r.x_max.max(p.x);
            r.y_min = r.y_min.min(p.y);
            r.y_max = r.y_max.max(p.y);
        }
        Some(r)
    }
}

/// A simple polygon given by one closed ring of vertices.
///
/// The closing vertex is implicit: a ring whose last vertex repeats the first
/// is stored without the repeat. Vertex order is preserved as given, so both
/// orientations are accepted.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    id: u64,
    vertices: Vec<Point>,
    signed_area: f64,
    mbr: Rect,
}

impl Polygon {
    pub fn new(id: u64, vertices: impl IntoIterator<Item = Point>) -> Result<Self, InvalidPolygon> {
        let mut ring: Vec<Point> = Vec::new();
        for v in vertices {
            if !v.is_finite() {
                return Err(InvalidPolygon::NonFinite);
            }
            if ring.last() != Some(&v) {
                ring.push(v);
            }
        }
        while ring.len() > 1 && ring.first() == ring.last() {
            ring.pop();
        }
        if ring.len() < 3 {
            return Err(InvalidPolygon::TooFewVertices(ring.len()));
        }
        let signed_area = shoelace(&ring);
        if signed_area == 0.0 || !signed_area.is_finite() {
            return Err(InvalidPolygon::ZeroArea);
        }
        if ring.len() < SELF_INTERSECTION_SCAN_LIMIT {
            if let Some((i, j)) = find_self_intersection(&ring) {
                return Err(InvalidPolygon::SelfIntersecting(i, j));
            }
        }
        let mbr = Rect::bounding(&ring).expect("non-empty ring");
        Ok(Polygon { id, vertices: ring, signed_area, mbr })
    }

    /// Polygon from `(x, y)` pairs, mostly for tests and examples.
    pub fn from_coords(id: u64, coords: &[(f64, f64)]) -> Result<Self, InvalidPolygon> {
        Polygon::new(id, coords.iter().copied().map(Point::from))
    }

    /// Axis-aligned rectangle polygon, counter-clockwise from the lower-left corner.
    pub fn rectangle(id: u64, rect: Rect) -> Result<Self, InvalidPolygon> {
        Polygon::from_coords(
            id,
            &[
                (rect.x_min, rect.y_min),
                (rect.x_max, rect.y_min),
                (rect.x_max, rect.y_max),
                (rect.x_min, rect.y_max),
            ],
        )
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn with_id(mut self, id: u64) -> Self {
        self.id = id;
        self
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Positive for counter-clockwise rings.
    pub fn signed_area(&self) -> f64 {
        self.signed_area
    }

    pub fn is_ccw(&self) -> bool {
        self.signed_area > 0.0
    }

    /// Enclosed area, independent of orientation.
    pub fn area(&self) -> f64 {
        self.signed_area.abs()
    }

    /// Local minimum bounding rectangle.
    pub fn mbr(&self) -> Rect {
        self.mbr
    }

    /// Area-weighted centroid (first moment of area over the ring).
    pub fn centroid(&self) -> Point {
        let n = self.vertices.len();
        // Moments are taken relative to the first vertex to limit cancellation
        // on rings far from the origin.
        let o = self.vertices[0];
        let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let (px, py) = (p.x - o.x, p.y - o.y);
            let (qx, qy) = (q.x - o.x, q.y - o.y);
            let cross = px * qy - qx * py;
            a2 += cross;
            cx += (px + qx) * cross;
            cy += (py + qy) * cross;
        }
        Point::new(o.x + cx / (3.0 * a2), o.y + cy / (3.0 * a2))
    }

    pub fn translate(&self, dx: f64, dy: f64) -> Polygon {
        let vertices: Vec<Point> =
            self.vertices.iter().map(|v| Point::new(v.x + dx, v.y + dy)).collect();
        let mbr = Rect::bounding(&vertices).expect("non-empty ring");
        Polygon { id: self.id, signed_area: shoelace(&vertices), vertices, mbr }
    }

    /// Translate so the centroid sits at the origin.
    pub fn center(&self) -> Polygon {
        let c = self.centroid();
        self.translate(-c.x, -c.y)
    }

    /// Same ring traversed in the opposite direction.
    pub fn reversed(&self) -> Polygon {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Polygon { id: self.id, signed_area: -self.signed_area, vertices, mbr: self.mbr }
    }

    /// Even-odd ray casting with half-open edges: an edge counts when exactly
    /// one endpoint lies strictly above the test point's horizontal line.
    #[inline]
    pub fn contains(&self, pt: Point) -> bool {
        let vs = &self.vertices;
        let mut inside = false;
        let mut j = vs.len() - 1;
        for i in 0..vs.len() {
            let (a, b) = (vs[i], vs[j]);
            if (a.y > pt.y) != (b.y > pt.y)
                && pt.x < (b.x - a.x) * (pt.y - a.y) / (b.y - a.y) + a.x
            {
                inside = !inside;
            }
            j = i;
        }
        inside
    }

    /// Well-Known Text rendering of the ring, closed explicitly.
    pub fn to_wkt(&self) -> String {
        let mut s = String::from("POLYGON ((");
        for (i, v) in self.vertices.iter().chain(std::iter::once(&self.vertices[0])).enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            s.push_str(&format!("{} {}", v.x, v.y));
        }
        s.push_str("))");
        s
    }
}

pub fn area(p: &Polygon) -> f64 {
    p.area()
}

pub fn centroid(p: &Polygon) -> Point {
    p.centroid()
}

pub fn center(p: &Polygon) -> Polygon {
    p.center()
}

pub fn local_mbr(p: &Polygon) -> Rect {
    p.mbr()
}

pub fn contains(p: &Polygon, pt: Point) -> bool {
    p.contains(pt)
}

pub(crate) fn shoelace(ring: &[Point]) -> f64 {
    let n = ring.len();
    if n < 3 {
        return 0.0;
    }
    let o = ring[0];
    let mut sum = 0.0;
    for i in 1..n - 1 {
        let (a, b) = (ring[i], ring[i + 1]);
        sum += (a.x - o.x) * (b.y - o.y) - (b.x - o.x) * (a.y - o.y);
    }
    sum * 0.5
}

#[inline]
pub(crate) fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

fn segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

/// First pair of edges that cross or touch outside their shared vertex.
/// Adjacent edges only conflict when they fold back onto each other.
fn find_self_intersection(ring: &[Point]) -> Option<(usize, usize)> {
    let n = ring.len();
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        let c = ring[(i + 2) % n];
        if orient(a, b, c) == 0.0 {
            let back = (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y);
            if back < 0.0 {
                return Some((i, (i + 1) % n));
            }
        }
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = (ring[j], ring[(j + 1) % n]);
            if segments_touch(a, b, c, d) {
                return Some((i, j));
            }
        }
    }
    None
}
