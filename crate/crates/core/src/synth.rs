//! Seeded generators for test and benchmark inputs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Curve, Point};

pub type SynthRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SynthRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` points uniform in `[0, extent]^dim`.
pub fn random_points(rng: &mut SynthRng, n: usize, dim: usize, extent: f64) -> Vec<Point> {
    (0..n)
        .map(|_| Point::new((0..dim).map(|_| rng.gen::<f64>() * extent).collect()).unwrap())
        .collect()
}

/// `n` points on the unit circle at random angles.
pub fn circle_points(rng: &mut SynthRng, n: usize) -> Vec<Point> {
    (0..n)
        .map(|_| {
            let a: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
            Point::from([a.cos(), a.sin()])
        })
        .collect()
}

/// A curve through `n` vertices uniform in `[0, extent]^dim`.
pub fn random_curve(rng: &mut SynthRng, n: usize, dim: usize, extent: f64) -> Curve {
    assert!(n >= 2);
    let coords: Vec<f64> = (0..n * dim).map(|_| rng.gen::<f64>() * extent).collect();
    Curve::from_flat(dim, coords).expect("random vertices are distinct")
}

/// A random walk with `n` vertices and step lengths in `(0, step]`.
pub fn random_walk(rng: &mut SynthRng, n: usize, dim: usize, step: f64) -> Curve {
    assert!(n >= 2);
    let mut coords = vec![0.0; dim];
    for i in 1..n {
        for k in 0..dim {
            let prev = coords[(i - 1) * dim + k];
            coords.push(prev + (rng.gen::<f64>() * 2.0 - 1.0) * step);
        }
    }
    Curve::from_flat(dim, coords).expect("walk steps are nonzero")
}

/// A straight polyline with `n` vertices at increasing positions along a
/// random coordinate axis, traversed in a random direction.
pub fn collinear_curve(rng: &mut SynthRng, n: usize, dim: usize) -> Curve {
    assert!(n >= 2);
    let origin: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>() * 10.0 - 5.0).collect();
    let axis = rng.gen_range(0..dim);
    let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
    let mut t = 0.0;
    let mut coords = Vec::with_capacity(n * dim);
    for _ in 0..n {
        let mut p = origin.clone();
        p[axis] += sign * t;
        coords.extend(p);
        t += 0.1 + rng.gen::<f64>();
    }
    Curve::from_flat(dim, coords).expect("positions are increasing")
}
