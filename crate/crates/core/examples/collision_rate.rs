//! Signatures of overlapping rectangles agree slot by slot at a rate equal to
//! their Jaccard similarity.
//!
//!     cargo run --release --example collision_rate

use polyminhash::{jaccard_exact, minhash_signature, sparsity, Error, Polygon, Rect, SamplingDomain};

fn rect(id: u64, r: Rect) -> polyminhash::Result<Polygon> {
    Polygon::rectangle(id, r).map_err(|reason| Error::InvalidPolygon { id, reason })
}

fn main() -> polyminhash::Result<()> {
    let sampling_box = Rect::new(-2.0, 2.0, -1.0, 1.0);
    let a = rect(0, Rect::new(0.0, 1.0, 0.0, 1.0))?;
    let slots = 20_000;
    let domain = SamplingDomain::new(sampling_box, slots, 1, 10_000_000)?;
    let sig_a = minhash_signature(&a, &domain)?;
    println!("slot values of A begin {:?}", &sig_a.values()[..8]);
    println!("sparsity of A {:.3}, mean slot value {:.3}", sparsity(&a, &domain), {
        sig_a.values().iter().sum::<u64>() as f64 / slots as f64
    });

    for dx in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let b = rect(1, Rect::new(dx, dx + 1.0, 0.0, 1.0))?;
        let sig_b = minhash_signature(&b, &domain)?;
        let agree = sig_a.values().iter().zip(sig_b.values()).filter(|(x, y)| x == y).count();
        println!(
            "shift {dx:.2}: J = {:.4}, matching slots {:.4}",
            jaccard_exact(&a, &b)?,
            agree as f64 / slots as f64
        );
    }
    Ok(())
}
