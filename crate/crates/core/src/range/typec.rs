//! Precomputed bounds for squares nested inside a node's slab.
//!
//! Every spanning piece that meets such a square enters it through the left
//! side or the bottom. Both sides are cut into cells, the pieces crossing each
//! cell are counted with the red-blue backend, and each count is weighted by
//! the longest chord a piece of the bucket can have from that cell.

use super::chord::{max_forward, min_chord_through, rect_clip};
use super::counting::{IntersectionCounter, Seg2};
use super::tree::Resolution;
use super::typeb::Bucket;

/// Geometry of one square relative to one node and bucket.
struct Chain {
    /// `2 * kappa2 + 1` points: left side top to bottom, then bottom left to right.
    points: Vec<[f64; 2]>,
}

impl Chain {
    fn new((x, x2, y, y2): (f64, f64, f64, f64), kappa2: usize) -> Chain {
        let k2 = kappa2 as f64;
        let mut points = Vec::with_capacity(2 * kappa2 + 1);
        for k in 0..=kappa2 {
            let py = match k {
                0 => y2,
                k if k == kappa2 => y,
                k => y2 - (y2 - y) * k as f64 / k2,
            };
            points.push([x, py]);
        }
        for k in 1..=kappa2 {
            let px = if k == kappa2 { x2 } else { x + (x2 - x) * k as f64 / k2 };
            points.push([px, y]);
        }
        Chain { points }
    }

    fn cells(&self) -> usize {
        self.points.len() - 1
    }

    /// Lower-left and upper-right ends of cell `i`.
    fn cell(&self, i: usize, kappa2: usize) -> ([f64; 2], [f64; 2]) {
        if i < kappa2 {
            (self.points[i + 1], self.points[i])
        } else {
            (self.points[i], self.points[i + 1])
        }
    }
}

fn push_reds(chain: &Chain, red: &mut Vec<Seg2>) {
    let cells = chain.cells();
    for i in 0..cells {
        red.push([chain.points[i], chain.points[i + 1]]);
    }
    for i in 1..cells {
        red.push([chain.points[i], chain.points[i]]);
    }
}

/// Bounds for every square of `squares` (all inside the slab `[x_l, x_r]`)
/// against one bucket of spanning pieces.
pub(crate) fn bucket_values(
    bucket: &Bucket,
    (x_l, x_r): (f64, f64),
    res: Resolution,
    squares: &[(f64, f64, f64, f64)],
    counter: &dyn IntersectionCounter,
) -> Vec<f64> {
    let kappa2 = res.kappa2;
    let step = std::f64::consts::FRAC_PI_4 / res.kappa1 as f64;
    let (mua, mub) = (bucket.j as f64 * step, (bucket.j + 1) as f64 * step);

    let chains: Vec<Chain> = squares.iter().map(|&s| Chain::new(s, kappa2)).collect();
    let per_square = 4 * kappa2 - 1;
    let mut red = Vec::with_capacity(chains.len() * per_square);
    for c in &chains {
        push_reds(c, &mut red);
    }
    let blue: Vec<Seg2> = bucket.pieces.iter().map(|&(a, b)| [a, b]).collect();
    let counts = counter.count(&red, &blue);

    let mut m = vec![0.0; 2 * kappa2];
    squares
        .iter()
        .zip(&chains)
        .enumerate()
        .map(|(s, (&(x, x2, y, y2), chain))| {
            let cnt = &counts[s * per_square..(s + 1) * per_square];
            let (cells, points) = cnt.split_at(chain.cells());
            let e = res.expansion(x2 - x);
            let cert_box = ((x - e).max(x_l), (x2 + e).min(x_r), y - e, y2 + e);
            let mut certified = true;
            for (i, mi) in m.iter_mut().enumerate() {
                let (qa, qb) = chain.cell(i, kappa2);
                *mi = max_forward(qa, mua, mub, x2, y2);
                if cells[i] > 0 && *mi > min_chord_through(qa, qb, mua, mub, cert_box) {
                    certified = false;
                }
            }
            if !certified {
                return bucket.pieces.iter().map(|&(a, b)| rect_clip(a, b, x, x2, y, y2)).sum();
            }
            let mut total = 0.0;
            for i in 0..m.len() {
                total += cells[i] as f64 * m[i];
            }
            for (i, &q) in points.iter().enumerate() {
                total -= q as f64 * m[i].min(m[i + 1]);
            }
            total.max(0.0)
        })
        .collect()
}
