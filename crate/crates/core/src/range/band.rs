//! Length of a set of non-decreasing pieces inside a horizontal band.
//!
//! `δ(Y)` is the total length of the pieces below height `Y`. Pieces with
//! positive slope contribute a linear ramp between their end heights and
//! horizontal pieces a point mass at their height, so the length inside
//! `[y, y']` is `δ(y' incl.) - δ(y excl.)`.

use crate::exec::KahanSum;

#[derive(Clone, Debug, Default)]
pub(crate) struct BandLength {
    ys: Vec<f64>,
    vals: Vec<f64>,
    slopes: Vec<f64>,
    flat_ys: Vec<f64>,
    flat_prefix: Vec<f64>,
}

impl BandLength {
    /// Pieces as `(left, right)` endpoint pairs with `left.y <= right.y`.
    pub fn new(pieces: impl IntoIterator<Item = ([f64; 2], [f64; 2])>) -> Self {
        let mut ramps: Vec<(f64, f64, i32)> = Vec::new();
        let mut flats: Vec<(f64, f64)> = Vec::new();
        for (a, b) in pieces {
            let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
            if len == 0.0 {
                continue;
            }
            let (y0, y1) = (a[1].min(b[1]), a[1].max(b[1]));
            if y1 > y0 {
                let dens = len / (y1 - y0);
                ramps.push((y0, dens, 1));
                ramps.push((y1, -dens, -1));
            } else {
                flats.push((y0, len));
            }
        }
        ramps.sort_by(|p, q| p.0.total_cmp(&q.0));
        flats.sort_by(|p, q| p.0.total_cmp(&q.0));

        let mut out = BandLength::default();
        let mut val = KahanSum::default();
        let mut slope = KahanSum::default();
        let mut active = 0i32;
        let mut i = 0;
        while i < ramps.len() {
            let y = ramps[i].0;
            if let Some(&py) = out.ys.last() {
                val.add(out.slopes.last().unwrap() * (y - py));
            }
            while i < ramps.len() && ramps[i].0 == y {
                slope.add(ramps[i].1);
                active += ramps[i].2;
                i += 1;
            }
            if active == 0 {
                slope = KahanSum::default();
            }
            out.ys.push(y);
            out.vals.push(val.value());
            out.slopes.push(slope.value());
        }
        let mut acc = KahanSum::default();
        out.flat_prefix.push(0.0);
        for (y, len) in flats {
            acc.add(len);
            out.flat_ys.push(y);
            out.flat_prefix.push(acc.value());
        }
        out
    }

    fn ramp_below(&self, y: f64) -> f64 {
        let i = self.ys.partition_point(|&v| v <= y);
        if i == 0 {
            0.0
        } else {
            self.vals[i - 1] + self.slopes[i - 1] * (y - self.ys[i - 1])
        }
    }

    /// Length inside the closed band `[y, y']`.
    pub fn query(&self, y: f64, y2: f64) -> f64 {
        if y2 < y {
            return 0.0;
        }
        let ramp = self.ramp_below(y2) - self.ramp_below(y);
        let hi = self.flat_ys.partition_point(|&v| v <= y2);
        let lo = self.flat_ys.partition_point(|&v| v < y);
        let flat = self.flat_prefix[hi] - self.flat_prefix[lo.min(hi)];
        (ramp + flat).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramps_and_flats() {
        let b = BandLength::new([([0.0, 0.0], [1.0, 1.0]), ([0.0, 0.5], [2.0, 0.5])]);
        let s2 = 2f64.sqrt();
        assert!((b.query(0.0, 1.0) - (s2 + 2.0)).abs() < 1e-12);
        assert!((b.query(0.0, 0.25) - s2 / 4.0).abs() < 1e-12);
        assert!((b.query(0.5, 0.5) - 2.0).abs() < 1e-12);
        assert_eq!(b.query(2.0, 3.0), 0.0);
        assert_eq!(b.query(-3.0, -2.0), 0.0);
    }

    #[test]
    fn gap_between_pieces_is_exactly_zero() {
        let b = BandLength::new([([0.0, 0.0], [1.0, 1.0]), ([0.0, 3.0], [1.0, 4.0])]);
        assert_eq!(b.query(1.5, 2.5), 0.0);
    }
}
