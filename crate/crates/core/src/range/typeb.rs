//! Angle buckets of a node's spanning set and the one-sided bound.

use super::chord::{max_chord_from_right, min_chord_from_right, rect_clip};

pub(crate) type Piece = ([f64; 2], [f64; 2]);

/// The pieces of one bucket sorted by the height of their end on one slab
/// boundary, expressed in a frame where that boundary is on the right.
#[derive(Clone, Debug, Default)]
pub(crate) struct View {
    pub keys: Vec<f64>,
    pub pieces: Vec<Piece>,
}

impl View {
    fn new(mut items: Vec<(f64, Piece)>) -> Self {
        items.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (keys, pieces) = items.into_iter().unzip();
        View { keys, pieces }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Bucket {
    /// Zero-based bucket index; inclinations in `[j, j+1] * pi / (4 kappa1)`.
    pub j: usize,
    /// Pieces clipped to the slab, in the canonical frame.
    pub pieces: Vec<Piece>,
    /// Keyed by right-end height.
    pub right: View,
    /// Rotated by 180 degrees and keyed by the rotated right-end height.
    pub left: View,
}

fn rotate(p: [f64; 2]) -> [f64; 2] {
    [-p[0], -p[1]]
}

pub(crate) fn bucket_of(piece: &Piece, kappa1: usize) -> usize {
    let (a, b) = piece;
    let mu = (b[1] - a[1]).atan2(b[0] - a[0]);
    let step = std::f64::consts::FRAC_PI_4 / kappa1 as f64;
    ((mu / step).floor().max(0.0) as usize).min(kappa1 - 1)
}

/// Groups slab-clipped spanning pieces by inclination.
pub(crate) fn build_buckets(pieces: &[Piece], kappa1: usize) -> Vec<Bucket> {
    let mut groups: Vec<(usize, Vec<Piece>)> = Vec::new();
    let mut ids: Vec<(usize, usize)> = pieces.iter().enumerate().map(|(i, p)| (bucket_of(p, kappa1), i)).collect();
    ids.sort_unstable();
    for (j, i) in ids {
        match groups.last_mut() {
            Some((g, v)) if *g == j => v.push(pieces[i]),
            _ => groups.push((j, vec![pieces[i]])),
        }
    }
    groups
        .into_iter()
        .map(|(j, ps)| {
            let right = View::new(ps.iter().map(|&(a, b)| (b[1], (a, b))).collect());
            let left = View::new(
                ps.iter()
                    .map(|&(a, b)| {
                        let (ra, rb) = (rotate(b), rotate(a));
                        (rb[1], (ra, rb))
                    })
                    .collect(),
            );
            Bucket { j, pieces: ps, right, left }
        })
        .collect()
}

/// Bound for one bucket when the square `[x, ..] x [y, y2]` crosses the right
/// slab boundary `x_r` and its expansion `e` stays right of the left one.
pub(crate) fn bucket_bound(
    view: &View,
    j: usize,
    (kappa1, kappa2): (usize, usize),
    x: f64,
    x_r: f64,
    y: f64,
    y2: f64,
    e: f64,
) -> f64 {
    let step = std::f64::consts::FRAC_PI_4 / kappa1 as f64;
    let (mua, mub) = (j as f64 * step, (j + 1) as f64 * step);
    let w = x_r - x;
    let h = y2 - y;
    let ybar = w * mub.tan();
    let first = view.keys.partition_point(|&k| k < y);
    if first == view.keys.len() || view.keys[first] > y2 + ybar {
        return 0.0;
    }

    let mut bounds = Vec::with_capacity(2 * kappa2 + 2);
    let lower_span = ybar.min(h);
    for k in 0..=kappa2 {
        bounds.push(if k == kappa2 { y + lower_span } else { y + lower_span * k as f64 / kappa2 as f64 });
    }
    if ybar < h {
        bounds.push(y2);
    }
    for k in 1..=kappa2 {
        bounds.push(y2 + ybar * k as f64 / kappa2 as f64);
    }

    let mut total = 0.0;
    let last = bounds.len() - 2;
    for c in 0..=last {
        let (ca, cb) = (bounds[c], bounds[c + 1]);
        if cb < ca {
            continue;
        }
        let lo = view.keys.partition_point(|&k| k < ca);
        let hi = if c == last {
            view.keys.partition_point(|&k| k <= cb)
        } else {
            view.keys.partition_point(|&k| k < cb)
        };
        if hi <= lo {
            continue;
        }
        let up = max_chord_from_right(ca, cb, mua, mub, w, y, y2);
        let floor = min_chord_from_right(ca, cb, mua, mub, w + e, y - e, y2 + e);
        if up <= floor {
            total += (hi - lo) as f64 * up;
        } else {
            total += view.pieces[lo..hi]
                .iter()
                .map(|&(a, b)| rect_clip(a, b, x, x_r, y, y2))
                .sum::<f64>();
        }
    }
    total
}
