//! Red-blue segment intersection counting.
//!
//! For every red segment, the number of blue segments it meets. Segments are
//! closed, and a red segment may be a single point.

use robust::{orient2d, Coord};

pub type Seg2 = [[f64; 2]; 2];

pub trait IntersectionCounter: Send + Sync {
    fn count(&self, red: &[Seg2], blue: &[Seg2]) -> Vec<u32>;
}

/// Tests every red-blue pair.
#[derive(Clone, Copy, Debug, Default)]
pub struct BruteForceCounter;

/// Sweeps a vertical line over both sets and tests only pairs whose
/// x-extents overlap.
#[derive(Clone, Copy, Debug, Default)]
pub struct SweepCounter;

/// Brute force below `threshold` red-blue products, sweep above.
#[derive(Clone, Copy, Debug)]
pub struct HybridCounter {
    pub threshold: usize,
}

impl Default for HybridCounter {
    fn default() -> Self {
        HybridCounter { threshold: 5000 }
    }
}

/// Counts with the default backend.
pub fn count_intersections(red: &[Seg2], blue: &[Seg2]) -> Vec<u32> {
    HybridCounter::default().count(red, blue)
}

fn coord(p: [f64; 2]) -> Coord<f64> {
    Coord { x: p[0], y: p[1] }
}

fn on_segment(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

pub(crate) fn segments_meet(r: &Seg2, b: &Seg2) -> bool {
    let (p, q) = (r[0], r[1]);
    let (u, v) = (b[0], b[1]);
    let d1 = orient2d(coord(u), coord(v), coord(p));
    let d2 = orient2d(coord(u), coord(v), coord(q));
    if (d1 > 0.0 && d2 > 0.0) || (d1 < 0.0 && d2 < 0.0) {
        return false;
    }
    let d3 = orient2d(coord(p), coord(q), coord(u));
    let d4 = orient2d(coord(p), coord(q), coord(v));
    let degenerate_red = p == q;
    if !degenerate_red && ((d3 > 0.0 && d4 > 0.0) || (d3 < 0.0 && d4 < 0.0)) {
        return false;
    }
    if d1 != 0.0 || d2 != 0.0 {
        if degenerate_red {
            return false;
        }
        if d3 != 0.0 || d4 != 0.0 {
            return true;
        }
    }
    // collinear, or a point red on the blue line
    if degenerate_red {
        return d1 == 0.0 && on_segment(u, v, p);
    }
    on_segment(u, v, p) || on_segment(u, v, q) || on_segment(p, q, u) || on_segment(p, q, v)
}

impl IntersectionCounter for BruteForceCounter {
    fn count(&self, red: &[Seg2], blue: &[Seg2]) -> Vec<u32> {
        red.iter()
            .map(|r| blue.iter().filter(|b| segments_meet(r, b)).count() as u32)
            .collect()
    }
}

fn x_extent(s: &Seg2) -> (f64, f64) {
    (s[0][0].min(s[1][0]), s[0][0].max(s[1][0]))
}

fn y_overlap(r: &Seg2, b: &Seg2) -> bool {
    let (r0, r1) = (r[0][1].min(r[1][1]), r[0][1].max(r[1][1]));
    let (b0, b1) = (b[0][1].min(b[1][1]), b[0][1].max(b[1][1]));
    r0 <= b1 && b0 <= r1
}

impl IntersectionCounter for SweepCounter {
    fn count(&self, red: &[Seg2], blue: &[Seg2]) -> Vec<u32> {
        // (x_min, is_blue, index)
        let mut events: Vec<(f64, bool, usize)> = red
            .iter()
            .enumerate()
            .map(|(i, s)| (x_extent(s).0, false, i))
            .chain(blue.iter().enumerate().map(|(i, s)| (x_extent(s).0, true, i)))
            .collect();
        events.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut counts = vec![0u32; red.len()];
        let mut active_red: Vec<usize> = Vec::new();
        let mut active_blue: Vec<usize> = Vec::new();
        for (x, is_blue, i) in events {
            active_red.retain(|&r| x_extent(&red[r]).1 >= x);
            active_blue.retain(|&b| x_extent(&blue[b]).1 >= x);
            if is_blue {
                let b = &blue[i];
                for &r in &active_red {
                    if y_overlap(&red[r], b) && segments_meet(&red[r], b) {
                        counts[r] += 1;
                    }
                }
                active_blue.push(i);
            } else {
                let r = &red[i];
                for &b in &active_blue {
                    if y_overlap(r, &blue[b]) && segments_meet(r, &blue[b]) {
                        counts[i] += 1;
                    }
                }
                active_red.push(i);
            }
        }
        counts
    }
}

impl IntersectionCounter for HybridCounter {
    fn count(&self, red: &[Seg2], blue: &[Seg2]) -> Vec<u32> {
        if red.len().saturating_mul(blue.len()) < self.threshold {
            BruteForceCounter.count(red, blue)
        } else {
            SweepCounter.count(red, blue)
        }
    }
}

/// Backend selector for the range structure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CountingBackend {
    BruteForce,
    Sweep,
    #[default]
    Hybrid,
}

impl CountingBackend {
    pub fn counter(self) -> Box<dyn IntersectionCounter> {
        match self {
            CountingBackend::BruteForce => Box::new(BruteForceCounter),
            CountingBackend::Sweep => Box::new(SweepCounter),
            CountingBackend::Hybrid => Box::new(HybridCounter::default()),
        }
    }
}
