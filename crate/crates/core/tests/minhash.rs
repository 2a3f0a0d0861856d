mod support;

use polyminhash::geometry::{Point, Polygon, Rect};
use polyminhash::minhash::{sample_point, slot_value, SamplingDomain};
use polyminhash::{attempt_moments, minhash_signature, sparsity, Index, Signature};
use proptest::prelude::*;
use support::{attempt_samples, collision_rate, mean_var, rect, walk_slot};

fn unit_box() -> Rect {
    Rect::new(-2.0, 2.0, -1.0, 1.0)
}

#[test]
fn collision_rate_tracks_jaccard() {
    let a = rect(0, 0.0, 1.0, 0.0, 1.0);
    let cases = [
        (rect(1, -1.5, -0.5, 0.0, 1.0), 0.0),
        (rect(1, 0.5, 1.5, 0.0, 1.0), 1.0 / 3.0),
        (rect(1, 0.0, 1.0, 0.0, 0.5), 0.5),
        (a.clone().with_id(1), 1.0),
    ];
    let n = 20_000;
    for (b, j) in cases {
        assert!((polyminhash::jaccard_exact(&a, &b).unwrap() - j).abs() < 1e-12);
        let rate = collision_rate(&a, &b, unit_box(), n);
        let tol = 3.0 * (j * (1.0 - j) / n as f64).sqrt();
        assert!((rate - j).abs() <= tol, "J={j}: rate {rate}");
    }
}

#[test]
fn attempt_count_moments() {
    let b = Rect::new(-1.0, 1.0, -1.0, 1.0);
    for s in [0.5, 0.25, 0.1] {
        let p = rect(0, -1.0, 1.0, -s, s);
        let d = SamplingDomain::new(b, 1, 0, 10_000_000).unwrap();
        let s_exact = sparsity(&p, &d);
        let (mean_th, var_th) = attempt_moments(s_exact).unwrap();
        let samples = attempt_samples(&p, b, 100_000);
        let (mean, var) = mean_var(&samples);
        assert!((mean - mean_th).abs() <= 3.0 * (var_th / samples.len() as f64).sqrt(), "s={s}: mean {mean}");
        assert!((var - var_th).abs() <= 0.05 * var_th, "s={s}: var {var} vs {var_th}");
    }
}

#[test]
fn quarter_box_square_mean_is_four() {
    let b = Rect::new(0.0, 2.0, 0.0, 2.0);
    let p = rect(0, 0.5, 1.5, 0.5, 1.5);
    let (mean, _) = mean_var(&attempt_samples(&p, b, 100_000));
    assert!((mean - 4.0).abs() <= 0.05, "{mean}");
}

#[test]
fn sixth_point_scenario() {
    // A tiny square around sample 6 that excludes samples 1 to 5 must hash to 6,
    // independent of how many earlier samples its local box would reject.
    let b = Rect::new(0.0, 100.0, 0.0, 100.0);
    let d = SamplingDomain::new(b, 1, 2024, 1000).unwrap();
    let pts: Vec<Point> = (1..=6).map(|j| sample_point(&d, 0, j)).collect();
    let gap = pts[..5]
        .iter()
        .map(|p| (p.x - pts[5].x).abs().max((p.y - pts[5].y).abs()))
        .fold(f64::INFINITY, f64::min);
    let h = (gap / 2.0).min(0.5);
    let sq = rect(0, pts[5].x - h, pts[5].x + h, pts[5].y - h, pts[5].y + h);
    assert_eq!(slot_value(&sq, &d, 0).unwrap(), 6);
    assert_eq!(walk_slot(&sq, &d, 0), 6);
}

#[test]
fn samples_are_uniform_over_the_box() {
    let b = Rect::new(-3.0, 5.0, 10.0, 12.0);
    let d = SamplingDomain::new(b, 1, 77, 1).unwrap();
    let n = 1_000_000u64;
    let (mut sx, mut sy) = (0.0, 0.0);
    for p in d.slot_stream(0).take(n as usize) {
        assert!(b.contains_point(p));
        sx += p.x;
        sy += p.y;
    }
    let (mx, my) = (sx / n as f64, sy / n as f64);
    let sd_x = b.width() / 12f64.sqrt() / (n as f64).sqrt();
    let sd_y = b.height() / 12f64.sqrt() / (n as f64).sqrt();
    assert!((mx - 1.0).abs() <= 3.0 * sd_x, "{mx}");
    assert!((my - 11.0).abs() <= 3.0 * sd_y, "{my}");
}

#[test]
fn slot_stream_matches_random_access() {
    let d = SamplingDomain::new(unit_box(), 3, 5, 100).unwrap();
    for slot in 0..3 {
        for (j, p) in d.slot_stream(slot).take(50).enumerate() {
            assert_eq!(p, sample_point(&d, slot, j as u64 + 1));
        }
    }
}

#[test]
fn nested_shapes_hash_no_lower_for_the_inner_one() {
    let d = SamplingDomain::new(unit_box(), 8, 99, 10_000_000).unwrap();
    let outer = rect(0, -1.0, 1.0, -0.8, 0.8);
    let inner = rect(1, -0.3, 0.2, -0.1, 0.3);
    let so = minhash_signature(&outer, &d).unwrap();
    let si = minhash_signature(&inner, &d).unwrap();
    for (o, i) in so.values().iter().zip(si.values()) {
        assert!(o <= i);
    }
}

#[test]
fn disjoint_corpus_buckets_match_direct_sampler_walk() {
    let polys: Vec<Polygon> = (0..40)
        .map(|i| {
            let (x, y) = ((i % 8) as f64 * 2.0, (i / 8) as f64 * 2.0);
            rect(i, x, x + 1.0 + 0.02 * i as f64, y, y + 1.0)
        })
        .collect();
    let domain = SamplingDomain::for_dataset(&polys, 1, 3, 10_000_000).unwrap();
    let index = Index::build(&polys, domain.clone()).unwrap();
    let mut expected = std::collections::BTreeMap::<u64, Vec<u64>>::new();
    for p in &polys {
        expected.entry(walk_slot(p, &domain, 0)).or_default().push(p.id());
    }
    assert_eq!(index.bucket_count(), expected.len());
    for (h, ids) in expected {
        assert_eq!(index.lookup(&Signature::new(vec![h]).unwrap()).unwrap(), ids.as_slice());
    }
}

#[test]
fn attempt_cap_is_reported() {
    let d = SamplingDomain::new(Rect::new(0.0, 1000.0, 0.0, 1000.0), 1, 1, 5).unwrap();
    let speck = rect(3, 1.0, 1.001, 1.0, 1.001);
    let err = minhash_signature(&speck, &d).unwrap_err();
    assert_eq!(err.class(), "max_attempts");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signatures_are_positive_deterministic_and_prefix_stable(
        x0 in -1.9f64..0.0, w in 0.2f64..1.8, y0 in -0.9f64..0.0, h in 0.2f64..0.9, seed in any::<u32>(),
    ) {
        let p = rect(0, x0, x0 + w, y0, y0 + h);
        let long = SamplingDomain::new(unit_box(), 5, seed as u64, 10_000_000).unwrap();
        let short = SamplingDomain::new(unit_box(), 2, seed as u64, 10_000_000).unwrap();
        let s5 = minhash_signature(&p, &long).unwrap();
        prop_assert_eq!(&s5, &minhash_signature(&p, &long).unwrap());
        prop_assert!(s5.values().iter().all(|&v| v >= 1));
        prop_assert_eq!(s5.prefix(2), minhash_signature(&p, &short).unwrap());
        for slot in 0..5 {
            prop_assert_eq!(s5.values()[slot], walk_slot(&p, &long, slot));
        }
    }
}
