//! Exact intersection area of two simple polygons.
//!
//! One ring (the "fan" ring) is split into the signed triangles
//! `(v0, v_i, v_{i+1})`. Their signed indicator functions sum to the ring's
//! winding number, so
//!
//! ```text
//! area(P ∩ Q) = Σ_i sign(T_i) · area(P ∩ T_i)
//! ```
//!
//! and each `P ∩ T_i` is a Sutherland–Hodgman clip of `P` against a convex
//! triangle. For a concave subject the clip output can contain zero-width
//! bridges along the triangle edges, but its signed shoelace area is still the
//! integral of the subject's winding number over the triangle, which is all we
//! need.

use super::{orient, shoelace, Point, Polygon, Rect};

/// Signed-orientation-corrected intersection area. For valid simple rings the
/// result lies in `[0, min(area(p), area(q))]` up to rounding.
pub fn intersection_area(p: &Polygon, q: &Polygon) -> f64 {
    if !p.mbr().intersects(&q.mbr()) {
        return 0.0;
    }
    // Fan the ring with fewer vertices; clip the other.
    let (subject, fan) = if q.len() <= p.len() { (p, q) } else { (q, p) };
    let subject_mbr = subject.mbr();
    let fv = fan.vertices();
    let apex = fv[0];

    let mut buf_a: Vec<Point> = Vec::with_capacity(subject.len() + 8);
    let mut buf_b: Vec<Point> = Vec::with_capacity(subject.len() + 8);
    let mut total = 0.0;
    for i in 1..fv.len() - 1 {
        let (b, c) = (fv[i], fv[i + 1]);
        let o = orient(apex, b, c);
        if o == 0.0 {
            continue;
        }
        let tri_mbr = Rect {
            x_min: apex.x.min(b.x).min(c.x),
            x_max: apex.x.max(b.x).max(c.x),
            y_min: apex.y.min(b.y).min(c.y),
            y_max: apex.y.max(b.y).max(c.y),
        };
        if !tri_mbr.intersects(&subject_mbr) {
            continue;
        }
        let tri = if o > 0.0 { [apex, b, c] } else { [apex, c, b] };
        let clipped = if tri_mbr.contains_rect(&subject_mbr) && triangle_contains_all(&tri, subject)
        {
            subject.signed_area()
        } else {
            clip_to_triangle(subject.vertices(), &tri, &mut buf_a, &mut buf_b);
            shoelace(&buf_a)
        };
        total += if o > 0.0 { clipped } else { -clipped };
    }
    // Undo the orientation of both rings so the result is an unsigned area.
    let sign = subject.signed_area().signum() * fan.signed_area().signum();
    total * sign
}

fn triangle_contains_all(tri: &[Point; 3], subject: &Polygon) -> bool {
    subject.vertices().iter().all(|&v| {
        orient(tri[0], tri[1], v) >= 0.0
            && orient(tri[1], tri[2], v) >= 0.0
            && orient(tri[2], tri[0], v) >= 0.0
    })
}

/// Clips `subject` against a counter-clockwise triangle; the result is left in `out`.
fn clip_to_triangle(subject: &[Point], tri: &[Point; 3], out: &mut Vec<Point>, tmp: &mut Vec<Point>) {
    out.clear();
    out.extend_from_slice(subject);
    for k in 0..3 {
        if out.is_empty() {
            return;
        }
        let (a, b) = (tri[k], tri[(k + 1) % 3]);
        std::mem::swap(out, tmp);
        out.clear();
        clip_half_plane(tmp, a, b, out);
    }
}

/// Keeps the part of `input` to the left of the directed line `a → b`.
#[inline]
fn clip_half_plane(input: &[Point], a: Point, b: Point, out: &mut Vec<Point>) {
    let n = input.len();
    let (ex, ey) = (b.x - a.x, b.y - a.y);
    let side = |p: Point| ex * (p.y - a.y) - ey * (p.x - a.x);
    let mut prev = input[n - 1];
    let mut prev_side = side(prev);
    for &cur in input {
        let cur_side = side(cur);
        if cur_side >= 0.0 {
            if prev_side < 0.0 {
                out.push(crossing(prev, cur, prev_side, cur_side));
            }
            out.push(cur);
        } else if prev_side >= 0.0 {
            out.push(crossing(prev, cur, prev_side, cur_side));
        }
        prev = cur;
        prev_side = cur_side;
    }
}

#[inline]
fn crossing(s: Point, e: Point, ds: f64, de: f64) -> Point {
    let t = ds / (ds - de);
    Point::new(s.x + t * (e.x - s.x), s.y + t * (e.y - s.y))
}
