//! Ingest a WKT file (or a built-in sample) and report what was kept.
//!
//!     cargo run --example parse_wkt -- [path.wkt]

use std::fs::File;
use std::io::BufReader;

use polyminhash::geometry::wkt::Adjustment;
use polyminhash::{parse_wkt, parse_wkt_str};

const SAMPLE: &str = "\
1\tPOLYGON((0 0,4 0,4 3,0 3,0 0))
2\tPOLYGON((0 0,10 0,10 10,0 10,0 0),(2 2,4 2,4 4,2 4,2 2))
3\tMULTIPOLYGON(((0 0,1 0,1 1,0 1,0 0)),((5 5,9 5,9 9,5 9,5 5)))
4\tPOLYGON((0 0,2 2,2 0,0 1,0 0))
5\tLINESTRING(0 0,1 1)
6\tPOLYGON((0 0,1 0))
";

fn main() -> polyminhash::Result<()> {
    let report = match std::env::args().nth(1) {
        Some(path) => parse_wkt(BufReader::new(File::open(path)?))?,
        None => parse_wkt_str(SAMPLE)?,
    };
    println!("accepted {}, rejected {}", report.accepted(), report.rejected_count());
    for p in report.polygons.iter().take(10) {
        let c = p.centroid();
        println!("  id {:>4}  vertices {:>3}  area {:>12.3}  centroid ({:.3}, {:.3})", p.id(), p.len(), p.area(), c.x, c.y);
    }
    for r in &report.rejected {
        println!("  line {} rejected: {}", r.line, r.reason);
    }
    for a in &report.adjustments {
        match a {
            Adjustment::HolesDiscarded { id, holes } => println!("  id {id}: dropped {holes} hole(s)"),
            Adjustment::MultiPolygonReduced { id, members } => {
                println!("  id {id}: kept the largest of {members} parts")
            }
        }
    }
    Ok(())
}
