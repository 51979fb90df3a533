use cpack_core::oracle::{dense_psi_scan, grid_lower_bound, naive_psi, naive_sandwich_check, OracleMethod};
use cpack_core::{approx2, best_radius_at_center, psi, synth, Cube, Curve, Point};

#[test]
fn grid_bound_is_achieved_and_dominates_vertices() {
    let mut rng = synth::rng(71);
    for (n, d) in [(2, 2), (10, 2), (25, 2), (6, 3)] {
        let pi = synth::random_curve(&mut rng, n, d, 5.0);
        let g = grid_lower_bound(&pi, 64).unwrap();
        assert_eq!(g.method, OracleMethod::Grid);
        assert_eq!(g.lower, naive_psi(&pi, &g.witness).unwrap());
        let a = approx2(&pi).value;
        assert!(g.lower >= a * (1.0 - 1e-12), "{} < {a}", g.lower);
        assert!(g.lower / 2.0 <= a * (1.0 + 1e-9), "n={n} d={d}: {} vs {a} witness {:?}", g.lower, g.witness);
    }
}

#[test]
fn nested_grids_never_decrease() {
    let mut rng = synth::rng(72);
    for _ in 0..10 {
        let pi = synth::random_curve(&mut rng, 8, 2, 3.0);
        let mut prev = 0.0;
        for res in [2, 3, 5, 9, 17, 33, 65] {
            let v = grid_lower_bound(&pi, res).unwrap().lower;
            assert!(v >= prev * (1.0 - 1e-12), "res {res}: {v} < {prev}");
            prev = v;
        }
    }
}

#[test]
fn segment_midpoint_is_found() {
    let pi = Curve::from_points2(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
    assert!((grid_lower_bound(&pi, 33).unwrap().lower - 2.0).abs() <= 1e-9);
    assert!(grid_lower_bound(&pi, 2).unwrap().lower >= 1.0);
}

#[test]
fn dense_scan_agrees_with_direct_evaluation() {
    let mut rng = synth::rng(73);
    let pi = synth::random_curve(&mut rng, 12, 2, 5.0);
    let p = Point::from([2.0, 2.5]);
    for (r, v) in dense_psi_scan(&pi, &p, 50).unwrap() {
        let h = Cube::new(p.clone(), r).unwrap();
        assert_eq!(v.to_bits(), psi(&pi, &h).unwrap().to_bits());
    }
    let diag = Curve::from_points2(&[[0.0, 0.0], [2.0, 2.0]]).unwrap();
    let origin = Point::from([0.0, 0.0]);
    let best = best_radius_at_center(&diag, &origin).unwrap().1;
    for (_, v) in dense_psi_scan(&diag, &origin, 100).unwrap() {
        assert!(v <= best + 1e-9);
    }
    assert!(dense_psi_scan(&diag, &origin, 2).is_err());
}

#[test]
fn sandwich_check_examples() {
    let pi = Curve::from_points2(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
    let far = Cube::new(Point::from([10.0, 10.0]), 1.0).unwrap();
    assert!(naive_sandwich_check(&pi, &far, &far.expanded(0.1), 0.0).unwrap());
    let s = Cube::new(Point::from([0.5, 0.0]), 1.0).unwrap();
    let splus = s.expanded(0.1);
    assert!(naive_sandwich_check(&pi, &s, &splus, 1.0).unwrap());
    assert!(!naive_sandwich_check(&pi, &s, &splus, 2.0).unwrap());
    assert!(!naive_sandwich_check(&pi, &s, &splus, 0.5).unwrap());
}
