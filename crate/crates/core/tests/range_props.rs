use std::collections::BTreeSet;

use cpack_core::oracle::{brute_force_counts, naive_sandwich_check, naive_upsilon};
use cpack_core::range::{
    BruteForceCounter, ClassTree, CountingBackend, FormSegment, IntersectionCounter, Resolution, Seg2, SweepCounter,
};
use cpack_core::{
    approx2, approx6, candidate_squares, partition_by_slope, synth, Curve, RangeStructure, SlopeClass,
};
use proptest::prelude::*;
use rand::Rng;

fn check_all_squares(pi: &Curve, eps: f64) -> Result<(), TestCaseError> {
    let cands = candidate_squares(pi, eps).unwrap();
    let st = RangeStructure::new(pi, eps, &cands).unwrap();
    for (id, sq) in cands.squares.iter().enumerate() {
        let ans = st.query(id).unwrap();
        prop_assert!(ans.expansion <= eps / 4.0 * sq.radius * (1.0 + 1e-12));
        let (s, splus) = (sq.cube(), ans.expanded(sq));
        prop_assert!(
            naive_sandwich_check(pi, &s, &splus, ans.m).unwrap(),
            "square {id}: {} vs [{}, {}]",
            ans.m,
            naive_upsilon(pi, &s).unwrap(),
            naive_upsilon(pi, &splus).unwrap()
        );
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn queries_are_sandwiched(seed in any::<u64>(), n in 2usize..20, eps in prop::sample::select(vec![1.0, 0.5, 0.25])) {
        let mut rng = synth::rng(seed);
        let pi = if seed % 3 == 0 {
            synth::random_walk(&mut rng, n, 2, 1.0)
        } else {
            synth::random_curve(&mut rng, n, 2, 10.0)
        };
        check_all_squares(&pi, eps)?;
    }

    #[test]
    fn approx6_brackets_approx2(seed in any::<u64>(), n in 2usize..25, eps in prop::sample::select(vec![1.0, 0.5])) {
        let pi = synth::random_curve(&mut synth::rng(seed), n, 2, 10.0);
        let a = approx2(&pi).value;
        let v = approx6(&pi, eps).unwrap().value;
        prop_assert!(v >= a / (6.0 + eps / 8.0) && v <= 2.0 * (1.0 + eps / 4.0) * a, "{v} vs {a}");
    }
}

#[test]
fn axis_parallel_and_grid_curves_are_sandwiched() {
    let stairs: Vec<[f64; 2]> = (0..12).map(|i| [(i / 2) as f64, ((i + 1) / 2) as f64]).collect();
    let zigzag: Vec<[f64; 2]> = (0..10).map(|i| [i as f64, (i % 2) as f64]).collect();
    let diag: Vec<[f64; 2]> = (0..8).map(|i| [i as f64, if i % 2 == 0 { i as f64 } else { -(i as f64) }]).collect();
    for pts in [stairs, zigzag, diag] {
        let pi = Curve::from_points2(&pts).unwrap();
        for eps in [1.0, 0.25] {
            check_all_squares(&pi, eps).unwrap();
        }
    }
}

fn random_form_segments(rng: &mut synth::SynthRng, n: usize) -> Vec<FormSegment> {
    (0..n)
        .map(|index| {
            let x0: f64 = rng.gen_range(0.0..10.0);
            let len: f64 = rng.gen_range(0.1..6.0);
            let y0: f64 = rng.gen_range(0.0..10.0);
            let slope: f64 = rng.gen_range(0.0..1.0);
            FormSegment { a: [x0, y0], b: [x0 + len, y0 + slope * len], index }
        })
        .collect()
}

fn clip(s: &FormSegment, xl: f64, xr: f64, y: f64, y2: f64) -> f64 {
    let (a, b) = (s.a, s.b);
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for (k, lo, hi) in [(0, xl, xr), (1, y, y2)] {
        let d = b[k] - a[k];
        if d == 0.0 {
            if a[k] < lo || a[k] > hi {
                return 0.0;
            }
            continue;
        }
        let (p, q) = ((lo - a[k]) / d, (hi - a[k]) / d);
        t0 = t0.max(p.min(q));
        t1 = t1.min(p.max(q));
    }
    if t0 > t1 {
        return 0.0;
    }
    (t1 - t0) * ((b[0] - a[0]).hypot(b[1] - a[1]))
}

#[test]
fn tree_sets_are_consistent() {
    let mut rng = synth::rng(61);
    for n in [1usize, 2, 7, 30] {
        let segs = random_form_segments(&mut rng, n);
        let tree = ClassTree::build(&segs, Resolution::new(0.5));
        fn walk(tree: &ClassTree, v: usize, above: &BTreeSet<usize>) -> BTreeSet<usize> {
            let f: BTreeSet<usize> = tree.spanning(v).iter().copied().collect();
            assert!(f.is_disjoint(above), "spanning sets repeat along a path");
            let (xl, xr) = tree.interval(v);
            for &i in &f {
                let s = &tree.segments()[i];
                assert!(s.a[0] <= xl && xr <= s.b[0]);
            }
            let mut union = f.clone();
            if let Some((a, b)) = tree.children(v) {
                assert_eq!(tree.interval(a).0, xl);
                assert_eq!(tree.interval(b).1, xr);
                assert_eq!(tree.interval(a).1, tree.interval(b).0);
                let below: BTreeSet<usize> = above.union(&f).copied().collect();
                union.extend(walk(tree, a, &below));
                union.extend(walk(tree, b, &below));
            }
            let l: BTreeSet<usize> = tree.subtree(v).iter().copied().collect();
            assert_eq!(l, union);
            union
        }
        let all = walk(&tree, 0, &BTreeSet::new());
        assert_eq!(all.len(), n);
    }
}

#[test]
fn spanned_nodes_report_exact_band_lengths() {
    let mut rng = synth::rng(62);
    let segs = random_form_segments(&mut rng, 25);
    let tree = ClassTree::build(&segs, Resolution::new(1.0));
    for v in 0..tree.node_count() {
        let (xl, xr) = tree.interval(v);
        if !xl.is_finite() || !xr.is_finite() {
            continue;
        }
        for _ in 0..5 {
            let y: f64 = rng.gen_range(-1.0..12.0);
            let y2 = y + rng.gen_range(0.0..6.0);
            let direct: f64 = tree.subtree(v).iter().map(|&i| clip(&segs[i], xl, xr, y, y2)).sum();
            let got = tree.band_length(v, y, y2);
            assert!((got - direct).abs() <= 1e-9 * direct.max(1e-3), "node {v}: {got} vs {direct}");
        }
    }
}

#[test]
fn type_c_entries_appear_once_per_level() {
    let mut rng = synth::rng(63);
    for n in [10usize, 25] {
        let pi = synth::random_curve(&mut rng, n, 2, 10.0);
        let cands = candidate_squares(&pi, 0.5).unwrap();
        let st = RangeStructure::new(&pi, 0.5, &cands).unwrap();
        for class in SlopeClass::ALL {
            let tree = st.class_tree(class);
            for id in 0..cands.len() {
                let depths: Vec<usize> = st.type_c_nodes(class, id).iter().map(|&v| tree.depth(v)).collect();
                let unique: BTreeSet<usize> = depths.iter().copied().collect();
                assert_eq!(unique.len(), depths.len());
            }
        }
    }
}

#[test]
fn slope_partition_covers_every_segment_once() {
    let pi = synth::random_curve(&mut synth::rng(64), 40, 2, 10.0);
    let part = partition_by_slope(&pi);
    let mut seen: Vec<usize> = part.classes.iter().flatten().map(|s| s.index).collect();
    seen.sort_unstable();
    assert_eq!(seen, (0..pi.segment_count()).collect::<Vec<_>>());
    for class in SlopeClass::ALL {
        for s in part.class(class) {
            let (a, b) = pi.segment(s.index);
            assert_eq!(SlopeClass::of([a[0], a[1]], [b[0], b[1]]), class);
            assert!(s.a[0] < s.b[0] && s.a[1] <= s.b[1] && s.b[1] - s.a[1] <= s.b[0] - s.a[0]);
        }
    }
}

fn random_segs(rng: &mut synth::SynthRng, n: usize) -> Vec<Seg2> {
    (0..n)
        .map(|_| {
            let a = [rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0)];
            let b = [a[0] + rng.gen_range(-3.0..3.0), a[1] + rng.gen_range(-3.0..3.0)];
            [a, b]
        })
        .collect()
}

#[test]
fn every_backend_matches_brute_force() {
    let mut rng = synth::rng(65);
    let sweep = SweepCounter;
    let backends: [&dyn IntersectionCounter; 2] = [&BruteForceCounter, &sweep];
    for _ in 0..40 {
        let mut red = random_segs(&mut rng, 50);
        let blue = random_segs(&mut rng, 50);
        red.push([blue[0][0], blue[0][0]]);
        red.push([[1.0, 1.0], [1.0, 1.0]]);
        let expected = brute_force_counts(&red, &blue);
        for b in backends {
            assert_eq!(b.count(&red, &blue), expected);
        }
        for kind in [CountingBackend::BruteForce, CountingBackend::Sweep, CountingBackend::Hybrid] {
            assert_eq!(kind.counter().count(&red, &blue), expected);
        }
    }
}
