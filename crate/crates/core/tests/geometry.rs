mod support;

use polyminhash::geometry::{Point, Polygon, Rect};
use polyminhash::synth::ShapeFamily;
use polyminhash::{intersection_area, jaccard_distance, jaccard_exact, jaccard_mc};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::{corpus, random_pairs, rect, winding_contains};

fn c_shape() -> Polygon {
    Polygon::from_coords(
        0,
        &[(0.0, 0.0), (3.0, 0.0), (3.0, 1.0), (1.0, 1.0), (1.0, 2.0), (3.0, 2.0), (3.0, 3.0), (0.0, 3.0)],
    )
    .unwrap()
}

#[test]
fn c_shape_point_in_polygon_matches_winding_oracle() {
    let c = c_shape();
    assert!(!c.contains(Point::new(2.0, 1.5)));
    assert!(c.contains(Point::new(0.5, 1.5)));
    assert!(c.contains(Point::new(2.0, 0.5)));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20_000 {
        let pt = Point::new(rng.gen_range(-0.5..3.5), rng.gen_range(-0.5..3.5));
        assert_eq!(c.contains(pt), winding_contains(&c, pt), "{pt:?}");
    }
}

#[test]
fn point_in_polygon_agrees_with_oracle_on_random_shapes() {
    let data = corpus(200, ShapeFamily::Mixed, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in data.polygons() {
        let b = p.mbr();
        for _ in 0..200 {
            let pt = Point::new(rng.gen_range(b.x_min..b.x_max), rng.gen_range(b.y_min..b.y_max));
            assert_eq!(p.contains(pt), winding_contains(p, pt));
        }
    }
}

#[test]
fn c_shape_intersections() {
    let c = c_shape();
    assert!((c.area() - 7.0).abs() < 1e-12);
    // The notch [1,3]x[1,2] is outside the C.
    let notch = rect(1, 1.0, 3.0, 1.0, 2.0);
    assert!(intersection_area(&c, &notch).abs() < 1e-12);
    assert_eq!(jaccard_exact(&c, &notch).unwrap(), 0.0);
    let bar = rect(2, 0.0, 3.0, 0.5, 2.5);
    // Bar covers [0,1]x[0.5,2.5] (2.0) plus the two arms' slices (2 * 2 * 0.5).
    assert!((intersection_area(&c, &bar) - 4.0).abs() < 1e-12);
}

#[test]
fn containment_gives_area_ratio() {
    let data = corpus(100, ShapeFamily::Star, 9);
    for p in data.polygons() {
        let b = p.mbr();
        let outer = Polygon::rectangle(1, Rect::new(b.x_min - 1.0, b.x_max + 1.0, b.y_min - 1.0, b.y_max + 1.0)).unwrap();
        let j = jaccard_exact(p, &outer).unwrap();
        assert!((j - p.area() / outer.area()).abs() < 1e-12);
    }
}

#[test]
fn triangle_inequality_on_random_triples() {
    let data = corpus(300, ShapeFamily::Mixed, 21);
    let polys: Vec<Polygon> = data.polygons().iter().map(|p| p.center()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1500 {
        let a = &polys[rng.gen_range(0..polys.len())];
        let b = &polys[rng.gen_range(0..polys.len())];
        let c = &polys[rng.gen_range(0..polys.len())];
        let ab = jaccard_distance(a, b).unwrap();
        let bc = jaccard_distance(b, c).unwrap();
        let ac = jaccard_distance(a, c).unwrap();
        assert!(ac <= ab + bc + 1e-9, "{ac} > {ab} + {bc}");
    }
}

#[test]
fn exact_agrees_with_monte_carlo() {
    for (i, (a, b)) in random_pairs(10, ShapeFamily::Convex, 31).iter().enumerate() {
        let exact = jaccard_exact(a, b).unwrap();
        let mc = jaccard_mc(a, b, 200_000, i as u64);
        assert!((exact - mc).abs() < 0.01, "pair {i}: exact {exact} mc {mc}");
    }
}

fn arb_convex() -> impl Strategy<Value = Polygon> {
    (3usize..10, 0.5f64..20.0, 0.3f64..1.0, 0.0f64..std::f64::consts::TAU, -50.0f64..50.0, -50.0f64..50.0).prop_map(
        |(n, r, squash, rot, ox, oy)| {
            let ring: Vec<(f64, f64)> = (0..n)
                .map(|i| {
                    let t = rot + i as f64 * std::f64::consts::TAU / n as f64;
                    (ox + r * t.cos(), oy + r * squash * t.sin())
                })
                .collect();
            Polygon::from_coords(0, &ring).unwrap()
        },
    )
}

fn arb_pair() -> impl Strategy<Value = (Polygon, Polygon)> {
    (arb_convex(), arb_convex(), -10.0f64..10.0, -10.0f64..10.0)
        .prop_map(|(a, b, dx, dy)| (a.center(), b.center().translate(dx, dy)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jaccard_is_symmetric_and_bounded((a, b) in arb_pair()) {
        let ab = jaccard_exact(&a, &b).unwrap();
        let ba = jaccard_exact(&b, &a).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(jaccard_exact(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn jaccard_ignores_orientation_and_joint_translation((a, b) in arb_pair(), dx in -1e3f64..1e3, dy in -1e3f64..1e3) {
        let j = jaccard_exact(&a, &b).unwrap();
        prop_assert!((jaccard_exact(&a.reversed(), &b).unwrap() - j).abs() < 1e-9);
        prop_assert!((jaccard_exact(&a, &b.reversed()).unwrap() - j).abs() < 1e-9);
        prop_assert!((jaccard_exact(&a.translate(dx, dy), &b.translate(dx, dy)).unwrap() - j).abs() < 1e-9);
    }

    #[test]
    fn area_and_centroid_follow_translation(p in arb_convex(), dx in -1e3f64..1e3, dy in -1e3f64..1e3) {
        let moved = p.translate(dx, dy);
        prop_assert!((moved.area() - p.area()).abs() <= 1e-9 * p.area().max(1.0));
        prop_assert!((moved.reversed().area() - p.area()).abs() <= 1e-9 * p.area().max(1.0));
        let (c0, c1) = (p.centroid(), moved.centroid());
        prop_assert!((c1.x - c0.x - dx).abs() < 1e-7 && (c1.y - c0.y - dy).abs() < 1e-7);
        let centred = p.center().centroid();
        prop_assert!(centred.x.abs() < 1e-9 && centred.y.abs() < 1e-9);
    }

    #[test]
    fn intersection_bounded_by_smaller_area((a, b) in arb_pair()) {
        let i = intersection_area(&a, &b);
        prop_assert!(i >= -1e-9 && i <= a.area().min(b.area()) + 1e-9);
    }
}

