//! Exact polygon Jaccard against a Monte Carlo estimate.
//!
//!     cargo run --release --example jaccard

use polyminhash::{intersection_area, jaccard_distance, jaccard_exact, jaccard_mc, Error, Polygon};

fn poly(id: u64, coords: &[(f64, f64)]) -> polyminhash::Result<Polygon> {
    Polygon::from_coords(id, coords).map_err(|reason| Error::InvalidPolygon { id, reason })
}

fn main() -> polyminhash::Result<()> {
    let c_shape = poly(
        1,
        &[(0.0, 0.0), (3.0, 0.0), (3.0, 1.0), (1.0, 1.0), (1.0, 2.0), (3.0, 2.0), (3.0, 3.0), (0.0, 3.0)],
    )?;
    let hexagon = poly(
        2,
        &[(1.0, -0.5), (2.5, -0.5), (3.5, 1.5), (2.5, 3.5), (1.0, 3.5), (0.5, 1.5)],
    )?;
    let square = poly(3, &[(0.0, 0.0), (3.0, 0.0), (3.0, 3.0), (0.0, 3.0)])?;

    for (a, b) in [(&c_shape, &hexagon), (&c_shape, &square), (&hexagon, &square)] {
        let exact = jaccard_exact(a, b)?;
        let mc = jaccard_mc(a, b, 1_000_000, 7);
        println!(
            "{} vs {}: |A∩B| = {:.4}, J = {exact:.5}, Monte Carlo {mc:.5}, distance {:.5}",
            a.id(),
            b.id(),
            intersection_area(a, b),
            jaccard_distance(a, b)?
        );
    }
    Ok(())
}
