use cpack_core::{clip_length, psi, upsilon, Cube, Curve, Point, Segment};
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -50.0..50.0f64
}

fn point(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(coord(), d)
}

fn seg(a: &[f64], b: &[f64]) -> Option<Segment> {
    Segment::new(Point::new(a.to_vec()).ok()?, Point::new(b.to_vec()).ok()?).ok()
}

fn cube(c: &[f64], r: f64) -> Cube {
    Cube::new(Point::new(c.to_vec()).unwrap(), r).unwrap()
}

fn dim_case() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>)> {
    (2usize..=3).prop_flat_map(|d| (point(d), point(d), point(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn clip_is_monotone_in_radius((a, b, c) in dim_case(), r1 in 0.01..40.0f64, dr in 0.0..40.0f64) {
        let s = seg(&a, &b).unwrap();
        let small = clip_length(&s, &cube(&c, r1)).unwrap();
        let big = clip_length(&s, &cube(&c, r1 + dr)).unwrap();
        prop_assert!(small <= big + 1e-12 * s.length());
    }

    #[test]
    fn clip_is_translation_invariant((a, b, c) in dim_case(), t in point(3), r in 0.01..40.0f64) {
        let d = a.len();
        let shift = |p: &[f64]| -> Vec<f64> { p.iter().zip(&t).map(|(x, y)| x + y).collect() };
        let s = seg(&a, &b).unwrap();
        let moved = seg(&shift(&a), &shift(&b)).unwrap();
        let v1 = clip_length(&s, &cube(&c, r)).unwrap();
        let v2 = clip_length(&moved, &cube(&shift(&c)[..d], r)).unwrap();
        prop_assert!((v1 - v2).abs() <= 1e-9 * v1.max(s.length()), "{v1} vs {v2}");
    }

    #[test]
    fn psi_is_scale_invariant(pts in prop::collection::vec(point(2), 2..8), c in point(2), r in 0.1..40.0f64, lambda in 0.01..100.0f64) {
        let Ok(pi) = Curve::new(pts.into_iter().map(|p| Point::new(p).unwrap()).collect()) else {
            return Ok(());
        };
        let h = cube(&c, r);
        let scaled = pi.transformed(lambda, &[0.0, 0.0]);
        let hs = cube(&[c[0] * lambda, c[1] * lambda], r * lambda);
        let v1 = psi(&pi, &h).unwrap();
        let v2 = psi(&scaled, &hs).unwrap();
        let scale = pi.total_length() / r;
        prop_assert!((v1 - v2).abs() <= 1e-9 * v1.max(scale), "{v1} vs {v2}");
        let u1 = upsilon(&pi, &h).unwrap();
        let u2 = upsilon(&scaled, &hs).unwrap();
        prop_assert!((lambda * u1 - u2).abs() <= 1e-9 * u2.max(lambda * pi.total_length()));
    }

    #[test]
    fn splitting_a_segment_keeps_upsilon((a, b, c) in dim_case(), t in 0.01..0.99f64, r in 0.01..40.0f64) {
        prop_assume!(a != b);
        let mid: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + t * (y - x)).collect();
        let whole = Curve::new(vec![Point::new(a.clone()).unwrap(), Point::new(b.clone()).unwrap()]).unwrap();
        let split = Curve::new(vec![
            Point::new(a.clone()).unwrap(),
            Point::new(mid).unwrap(),
            Point::new(b.clone()).unwrap(),
        ])
        .unwrap();
        let h = cube(&c, r);
        let u1 = upsilon(&whole, &h).unwrap();
        let u2 = upsilon(&split, &h).unwrap();
        prop_assert!((u1 - u2).abs() <= 1e-9 * whole.total_length(), "{u1} vs {u2}");
    }

    #[test]
    fn clip_is_bounded_by_length_and_diagonal((a, b, c) in dim_case(), r in 0.01..40.0f64) {
        let s = seg(&a, &b).unwrap();
        let d = a.len() as f64;
        let v = clip_length(&s, &cube(&c, r)).unwrap();
        prop_assert!(v >= 0.0);
        prop_assert!(v <= s.length().min(d.sqrt() * 2.0 * r) * (1.0 + 1e-12));
    }
}

#[test]
fn face_segments_count_in_full() {
    let s = seg(&[-1.0, 1.0], &[1.0, 1.0]).unwrap();
    assert_eq!(clip_length(&s, &cube(&[0.0, 0.0], 1.0)).unwrap(), 2.0);
}
