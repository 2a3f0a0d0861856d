//! Line-oriented WKT ingestion.
//!
//! Each non-blank line holds one geometry, optionally preceded by an integer
//! id and a tab. Without an id column the 0-based line number is the id.
//! `POLYGON` keeps its exterior ring; `MULTIPOLYGON` keeps the exterior ring
//! of its largest member. Lines that fail are skipped and reported.

use std::collections::HashSet;
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use log::{debug, warn};
use wkt::Wkt;

use super::{Point, Polygon};
use crate::error::{InvalidPolygon, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum RejectReason {
    Syntax(String),
    UnsupportedGeometry(&'static str),
    BadId(String),
    DuplicateId(u64),
    Invalid(InvalidPolygon),
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::Syntax(msg) => write!(f, "malformed WKT: {msg}"),
            RejectReason::UnsupportedGeometry(kind) => write!(f, "unsupported geometry {kind}"),
            RejectReason::BadId(s) => write!(f, "id column {s:?} is not an unsigned integer"),
            RejectReason::DuplicateId(id) => write!(f, "duplicate id {id}"),
            RejectReason::Invalid(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rejected {
    /// 0-based line number.
    pub line: usize,
    pub reason: RejectReason,
}

/// Lossy but accepted conversions, logged per record.
#[derive(Debug, Clone, PartialEq)]
pub enum Adjustment {
    HolesDiscarded { id: u64, holes: usize },
    MultiPolygonReduced { id: u64, members: usize },
}

#[derive(Debug, Default)]
pub struct ParseReport {
    pub polygons: Vec<Polygon>,
    pub rejected: Vec<Rejected>,
    pub adjustments: Vec<Adjustment>,
}

impl ParseReport {
    pub fn accepted(&self) -> usize {
        self.polygons.len()
    }

    pub fn rejected_count(&self) -> usize {
        self.rejected.len()
    }
}

/// Parses a whole WKT stream. Only I/O failures are errors; bad records are
/// collected in [`ParseReport::rejected`].
pub fn parse_wkt<R: BufRead>(reader: R) -> Result<ParseReport> {
    let mut report = ParseReport::default();
    let mut seen = HashSet::new();
    for (line_no, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        match parse_record(text, line_no as u64, &mut report.adjustments) {
            Ok(poly) => {
                if !seen.insert(poly.id()) {
                    warn!("line {line_no}: duplicate id {}", poly.id());
                    report
                        .rejected
                        .push(Rejected { line: line_no, reason: RejectReason::DuplicateId(poly.id()) });
                } else {
                    report.polygons.push(poly);
                }
            }
            Err(reason) => {
                debug!("line {line_no}: skipped: {reason}");
                report.rejected.push(Rejected { line: line_no, reason });
            }
        }
    }
    Ok(report)
}

pub fn parse_wkt_str(text: &str) -> Result<ParseReport> {
    parse_wkt(text.as_bytes())
}

/// Parses one record (`[id\t]WKT`); `default_id` is used when no id column is present.
pub fn parse_record(
    text: &str,
    default_id: u64,
    adjustments: &mut Vec<Adjustment>,
) -> Result<Polygon, RejectReason> {
    let (id, geometry) = match text.split_once('\t') {
        Some((id, rest)) => {
            let id = id.trim();
            (id.parse::<u64>().map_err(|_| RejectReason::BadId(id.to_string()))?, rest.trim())
        }
        None => (default_id, text),
    };
    let parsed = Wkt::<f64>::from_str(geometry).map_err(|e| RejectReason::Syntax(e.to_string()))?;
    match parsed {
        Wkt::Polygon(poly) => {
            let rings = poly.rings();
            let exterior = rings.first().ok_or(RejectReason::Invalid(InvalidPolygon::TooFewVertices(0)))?;
            if rings.len() > 1 {
                warn!("polygon {id}: discarded {} interior ring(s)", rings.len() - 1);
                adjustments.push(Adjustment::HolesDiscarded { id, holes: rings.len() - 1 });
            }
            ring_to_polygon(id, exterior.coords())
        }
        Wkt::MultiPolygon(multi) => {
            let members = multi.polygons();
            let mut best: Option<Polygon> = None;
            let mut last_err = InvalidPolygon::TooFewVertices(0);
            for member in members {
                let Some(exterior) = member.rings().first() else { continue };
                match ring_to_polygon(id, exterior.coords()) {
                    Ok(p) => {
                        if best.as_ref().is_none_or(|b| p.area() > b.area()) {
                            best = Some(p);
                        }
                    }
                    Err(RejectReason::Invalid(e)) => last_err = e,
                    Err(other) => return Err(other),
                }
            }
            let has_holes = members.iter().any(|m| m.rings().len() > 1);
            if members.len() > 1 || has_holes {
                warn!("polygon {id}: multipolygon with {} member(s) reduced to its largest exterior ring", members.len());
                adjustments.push(Adjustment::MultiPolygonReduced { id, members: members.len() });
            }
            best.ok_or(RejectReason::Invalid(last_err))
        }
        Wkt::Point(_) => Err(RejectReason::UnsupportedGeometry("POINT")),
        Wkt::LineString(_) => Err(RejectReason::UnsupportedGeometry("LINESTRING")),
        Wkt::MultiPoint(_) => Err(RejectReason::UnsupportedGeometry("MULTIPOINT")),
        Wkt::MultiLineString(_) => Err(RejectReason::UnsupportedGeometry("MULTILINESTRING")),
        Wkt::GeometryCollection(_) => Err(RejectReason::UnsupportedGeometry("GEOMETRYCOLLECTION")),
    }
}

fn ring_to_polygon(id: u64, coords: &[wkt::types::Coord<f64>]) -> Result<Polygon, RejectReason> {
    Polygon::new(id, coords.iter().map(|c| Point::new(c.x, c.y))).map_err(RejectReason::Invalid)
}
