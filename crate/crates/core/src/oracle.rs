//! Brute-force reference bounds.
//!
//! Clipping here is done independently of [`crate::geometry`]: each segment
//! is cut against the cube's half-spaces one at a time by moving endpoints,
//! rather than by intersecting parameter ranges.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{GeometryError, PackError};
use crate::exec::{map_indexed, Execution};
use crate::geometry::{check_dim, psi, Cube, Curve, Point};
use crate::radial::{sweep_profile, touch_radius, Sweeper};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMethod {
    Grid,
    VertexEvents,
    DenseScan,
}

/// A lower bound on the packedness achieved by `witness`.
#[derive(Clone, Debug)]
pub struct OracleBound {
    pub lower: f64,
    pub witness: Cube,
    pub method: OracleMethod,
}

/// Length of segment `ab` inside the closed cube `(c, r)`.
pub fn naive_clip(a: &[f64], b: &[f64], c: &[f64], r: f64) -> f64 {
    let mut p = a.to_vec();
    let mut q = b.to_vec();
    for k in 0..p.len() {
        for (plane, keep_below) in [(c[k] + r, true), (c[k] - r, false)] {
            let out = |x: f64| if keep_below { x > plane } else { x < plane };
            match (out(p[k]), out(q[k])) {
                (true, true) => return 0.0,
                (false, false) => {}
                (p_out, _) => {
                    let (moving, fixed) = if p_out { (&mut p, &q) } else { (&mut q, &p) };
                    let s = (plane - fixed[k]) / (moving[k] - fixed[k]);
                    for j in 0..moving.len() {
                        moving[j] = if j == k {
                            plane
                        } else {
                            fixed[j] + s * (moving[j] - fixed[j])
                        };
                    }
                }
            }
        }
    }
    p.iter().zip(&q).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Total length of `pi` inside `h`, by [`naive_clip`].
pub fn naive_upsilon(pi: &Curve, h: &Cube) -> Result<f64, GeometryError> {
    check_dim(pi.dim(), h.dim())?;
    let c = h.center.coords();
    Ok(pi.segments().map(|(a, b)| naive_clip(a, b, c, h.radius)).sum())
}

pub fn naive_psi(pi: &Curve, h: &Cube) -> Result<f64, GeometryError> {
    Ok(naive_upsilon(pi, h)? / h.radius)
}

/// Whether `Υ(S) <= m <= Υ(S⁺)` up to a relative slack of `1e-9 * Υ(S⁺)`.
pub fn naive_sandwich_check(pi: &Curve, s: &Cube, splus: &Cube, m: f64) -> Result<bool, GeometryError> {
    let lo = naive_upsilon(pi, s)?;
    let hi = naive_upsilon(pi, splus)?;
    let slack = 1e-9 * hi;
    Ok(lo - slack <= m && m <= hi + slack)
}

/// `ψ_p` at `r_samples` log-spaced radii between the smallest and largest
/// event radius at `p`.
pub fn dense_psi_scan(pi: &Curve, p: &Point, r_samples: usize) -> Result<Vec<(f64, f64)>, PackError> {
    if r_samples < 3 {
        return Err(PackError::InvalidSampleCount(r_samples));
    }
    let prof = sweep_profile(pi, p)?;
    let lo = prof.values.first().map_or(1.0, |v| v.radius);
    let hi = prof.values.last().map_or(1.0, |v| v.radius);
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..r_samples)
        .map(|i| {
            let t = i as f64 / (r_samples - 1) as f64;
            let r = if i + 1 == r_samples { hi } else if i == 0 { lo } else { (llo + t * (lhi - llo)).exp() };
            let cube = Cube::new(p.clone(), r)?;
            Ok((r, psi(pi, &cube)?))
        })
        .collect()
}

/// Exact per-red counts of intersecting blue segments, by testing all pairs.
pub fn brute_force_counts(red: &[[[f64; 2]; 2]], blue: &[[[f64; 2]; 2]]) -> Vec<u32> {
    red.iter()
        .map(|r| blue.iter().filter(|b| closed_segments_meet(r, b)).count() as u32)
        .collect()
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    robust::orient2d(
        robust::Coord { x: a[0], y: a[1] },
        robust::Coord { x: b[0], y: b[1] },
        robust::Coord { x: c[0], y: c[1] },
    )
}

fn within_box(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    a[0].min(b[0]) <= p[0] && p[0] <= a[0].max(b[0]) && a[1].min(b[1]) <= p[1] && p[1] <= a[1].max(b[1])
}

fn closed_segments_meet(s: &[[f64; 2]; 2], t: &[[f64; 2]; 2]) -> bool {
    let (a, b, c, d) = (s[0], s[1], t[0], t[1]);
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return true;
    }
    (o1 == 0.0 && within_box(a, b, c))
        || (o2 == 0.0 && within_box(a, b, d))
        || (o3 == 0.0 && within_box(c, d, a))
        || (o4 == 0.0 && within_box(c, d, b))
}

/// Points per axis of the inflated grid.
fn axis_values(lo: f64, hi: f64, resolution: usize) -> Vec<f64> {
    if hi <= lo {
        return vec![lo];
    }
    let cell = (hi - lo) / (resolution - 1) as f64;
    (0..resolution + 2).map(|i| lo + (i as f64 - 1.0) * cell).collect()
}

/// A box of grid indices `[lo_k, hi_k]` per axis with an upper bound on `ψ`
/// over all its points.
#[derive(Clone, Debug)]
struct IndexBox {
    lo: Vec<usize>,
    hi: Vec<usize>,
    bound: f64,
    seq: usize,
}

impl PartialEq for IndexBox {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for IndexBox {}
impl PartialOrd for IndexBox {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for IndexBox {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound.total_cmp(&other.bound).then(other.seq.cmp(&self.seq))
    }
}

struct GridCtx<'a> {
    pi: &'a Curve,
    axes: Vec<Vec<f64>>,
    /// Longest chord of each segment's line through a cube of radius 1:
    /// `2 |u|_2 / |u|_inf`.
    chord: Vec<f64>,
    total: f64,
}

#[derive(Default)]
struct Scratch {
    sweeper: Sweeper,
    steps: Vec<(f64, f64)>,
    touches: Vec<(f64, f64)>,
}

impl GridCtx<'_> {
    fn point(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter().zip(&self.axes).map(|(&i, ax)| ax[i]).collect()
    }

    /// Upper bound on `ψ_q(r)` over all `q` in the box and all `r > 0`.
    fn bound(&self, sc: &mut Scratch, lo: &[usize], hi: &[usize]) -> f64 {
        let d = lo.len();
        let mut c = vec![0.0; d];
        let mut h = 0.0f64;
        for k in 0..d {
            let (a, b) = (self.axes[k][lo[k]], self.axes[k][hi[k]]);
            c[k] = 0.5 * (a + b);
            h = h.max(0.5 * (b - a));
        }
        sc.sweeper.upsilon_steps(self.pi, &c, &mut sc.steps);
        sc.touches.clear();
        for (i, (a, b)) in self.pi.segments().enumerate() {
            sc.touches.push((touch_radius(a, b, &c).0, self.chord[i]));
        }
        sc.touches.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut best = 0.0f64;
        let mut ti = 0;
        let mut k_sum = 0.0;
        let mut prev = 0.0;
        let n = sc.steps.len();
        for i in 0..=n {
            // interval r + h in [prev, next]
            let (next, ups_next) = if i < n { sc.steps[i] } else { (f64::INFINITY, self.total) };
            if next > h {
                while ti < sc.touches.len() && sc.touches[ti].0 <= next {
                    k_sum += sc.touches[ti].1;
                    ti += 1;
                }
                let b1 = if prev > h { ups_next / (prev - h) } else { f64::INFINITY };
                let b = if ups_next == 0.0 { 0.0 } else { b1.min(k_sum) };
                best = best.max(b);
            }
            prev = next;
        }
        best * (1.0 + 1e-9)
    }
}

/// Best cube centered at a vertex or at a point of an inflated
/// `resolution^d` grid over the bounding box.
///
/// The grid has spacing `extent / (resolution - 1)` per axis and extends one
/// cell beyond the bounding box on each side. Grid points are searched by
/// branch and bound over index boxes, which finds the same maximum as
/// evaluating every point.
pub fn grid_lower_bound(pi: &Curve, resolution: usize) -> Result<OracleBound, PackError> {
    grid_lower_bound_with(pi, resolution, Execution::default())
}

pub fn grid_lower_bound_with(pi: &Curve, resolution: usize, exec: Execution) -> Result<OracleBound, PackError> {
    if resolution < 2 {
        return Err(PackError::InvalidResolution(resolution));
    }
    let d = pi.dim();
    let axes: Vec<Vec<f64>> = pi
        .bounding_box()
        .into_iter()
        .map(|(lo, hi)| axis_values(lo, hi, resolution))
        .collect();
    let chord = pi
        .segments()
        .map(|(a, b)| {
            let (mut l2, mut linf) = (0.0f64, 0.0f64);
            for k in 0..d {
                let u = b[k] - a[k];
                l2 += u * u;
                linf = linf.max(u.abs());
            }
            2.0 * l2.sqrt() / linf
        })
        .collect();
    let ctx = GridCtx {
        pi,
        axes,
        chord,
        total: pi.total_length(),
    };

    let per_vertex = map_indexed(exec, pi.len(), Sweeper::default, |sw, i| sw.best(pi, pi.vertex(i)));
    let mut best_val = f64::NEG_INFINITY;
    let mut best_center = pi.vertex(0).to_vec();
    let mut best_r = 1.0;
    let mut method = OracleMethod::VertexEvents;
    for (i, &(r, v)) in per_vertex.iter().enumerate() {
        if v > best_val {
            best_val = v;
            best_center = pi.vertex(i).to_vec();
            best_r = r;
        }
    }

    const BATCH: usize = 32;
    let leaf_size = 1usize << d;
    let mut seq = 0;
    let mut heap = BinaryHeap::new();
    let lo0 = vec![0; d];
    let hi0: Vec<usize> = ctx.axes.iter().map(|a| a.len() - 1).collect();
    let b0 = ctx.bound(&mut Scratch::default(), &lo0, &hi0);
    heap.push(IndexBox { lo: lo0, hi: hi0, bound: b0, seq });

    enum Outcome {
        Evaluated(Vec<(Vec<f64>, f64, f64)>),
        Split(Vec<IndexBox>),
    }

    while let Some(top) = heap.peek() {
        if top.bound <= best_val {
            break;
        }
        let mut batch = Vec::with_capacity(BATCH);
        while batch.len() < BATCH {
            match heap.pop() {
                Some(b) if b.bound > best_val => batch.push(b),
                Some(_) | None => break,
            }
        }
        let outcomes = map_indexed(exec, batch.len(), Scratch::default, |sc, i| {
            let b = &batch[i];
            let count: usize = b.lo.iter().zip(&b.hi).map(|(l, h)| h - l + 1).product();
            if count <= leaf_size {
                let mut out = Vec::with_capacity(count);
                let mut idx = b.lo.clone();
                loop {
                    let p = ctx.point(&idx);
                    let (r, v) = sc.sweeper.best(pi, &p);
                    out.push((p, r, v));
                    let mut k = 0;
                    while k < d {
                        if idx[k] < b.hi[k] {
                            idx[k] += 1;
                            break;
                        }
                        idx[k] = b.lo[k];
                        k += 1;
                    }
                    if k == d {
                        break;
                    }
                }
                Outcome::Evaluated(out)
            } else {
                let axis = (0..d).max_by_key(|&k| (b.hi[k] - b.lo[k], d - k)).unwrap();
                let mid = (b.lo[axis] + b.hi[axis]) / 2;
                let mut left_hi = b.hi.clone();
                left_hi[axis] = mid;
                let mut right_lo = b.lo.clone();
                right_lo[axis] = mid + 1;
                let children = [(b.lo.clone(), left_hi), (right_lo, b.hi.clone())]
                    .into_iter()
                    .map(|(lo, hi)| {
                        let bound = ctx.bound(sc, &lo, &hi);
                        IndexBox { lo, hi, bound, seq: 0 }
                    })
                    .collect();
                Outcome::Split(children)
            }
        });
        for o in outcomes {
            match o {
                Outcome::Evaluated(points) => {
                    for (p, r, v) in points {
                        if v > best_val {
                            best_val = v;
                            best_center = p;
                            best_r = r;
                            method = OracleMethod::Grid;
                        }
                    }
                }
                Outcome::Split(children) => {
                    for mut c in children {
                        seq += 1;
                        c.seq = seq;
                        heap.push(c);
                    }
                }
            }
        }
    }

    let witness = Cube::new(Point::new(best_center)?, best_r)?;
    let lower = naive_psi(pi, &witness)?;
    Ok(OracleBound { lower, witness, method })
}

/// Maximum of `ψ` over every point of the inflated grid, evaluated one point
/// at a time. Only practical for small resolutions.
pub fn exhaustive_grid_max(pi: &Curve, resolution: usize) -> Result<f64, PackError> {
    if resolution < 2 {
        return Err(PackError::InvalidResolution(resolution));
    }
    let axes: Vec<Vec<f64>> = pi
        .bounding_box()
        .into_iter()
        .map(|(lo, hi)| axis_values(lo, hi, resolution))
        .collect();
    let d = axes.len();
    let mut sw = Sweeper::default();
    let mut best = pi
        .vertices()
        .map(|v| sw.best(pi, v).1)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut idx = vec![0usize; d];
    loop {
        let p: Vec<f64> = idx.iter().zip(&axes).map(|(&i, ax)| ax[i]).collect();
        best = best.max(sw.best(pi, &p).1);
        let mut k = 0;
        while k < d {
            if idx[k] + 1 < axes[k].len() {
                idx[k] += 1;
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == d {
            return Ok(best);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::upsilon;
    use crate::synth;

    fn unit() -> Curve {
        Curve::from_points2(&[[0.0, 0.0], [1.0, 0.0]]).unwrap()
    }

    #[test]
    fn naive_clip_matches_hand_values() {
        assert!((naive_clip(&[0.0, 0.0], &[2.0, 2.0], &[0.0, 0.0], 1.0) - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(naive_clip(&[5.0, 5.0], &[6.0, 6.0], &[0.0, 0.0], 1.0), 0.0);
        assert!((naive_clip(&[-3.0, 0.5], &[3.0, 0.5], &[0.0, 0.0], 1.0) - 2.0).abs() < 1e-12);
        assert!((naive_clip(&[-3.0, 1.0], &[3.0, 1.0], &[0.0, 0.0], 1.0) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn naive_clip_agrees_with_geometry() {
        let mut rng = synth::rng(5);
        for _ in 0..200 {
            let pi = synth::random_curve(&mut rng, 6, 3, 4.0);
            let c = synth::random_points(&mut rng, 1, 3, 4.0).remove(0);
            let h = Cube::new(c, 1.3).unwrap();
            let a = naive_upsilon(&pi, &h).unwrap();
            let b = upsilon(&pi, &h).unwrap();
            assert!((a - b).abs() <= 1e-9 * a.max(b).max(1e-12));
        }
    }

    #[test]
    fn grid_examples() {
        let g = grid_lower_bound(&unit(), 33).unwrap();
        assert!((g.lower - 2.0).abs() < 1e-9);
        assert_eq!(g.method, OracleMethod::Grid);
        let g = grid_lower_bound(&unit(), 2).unwrap();
        assert!(g.lower >= 1.0);
        assert!(grid_lower_bound(&unit(), 1).is_err());
    }

    #[test]
    fn branch_and_bound_matches_exhaustive() {
        let mut rng = synth::rng(21);
        for res in [5, 9, 16] {
            for _ in 0..5 {
                let pi = synth::random_curve(&mut rng, 7, 2, 3.0);
                let g = grid_lower_bound_with(&pi, res, Execution::Sequential).unwrap();
                let e = exhaustive_grid_max(&pi, res).unwrap();
                assert!((g.lower - e).abs() <= 1e-9 * e, "{} vs {}", g.lower, e);
            }
        }
    }

    #[test]
    fn sandwich_examples() {
        let s = Cube::new(Point::from([10.0, 10.0]), 1.0).unwrap();
        let sp = s.expanded(0.1);
        assert!(naive_sandwich_check(&unit(), &s, &sp, 0.0).unwrap());
        let s = Cube::new(Point::from([0.5, 0.0]), 1.0).unwrap();
        let sp = s.expanded(0.1);
        assert!(naive_sandwich_check(&unit(), &s, &sp, 1.0).unwrap());
        assert!(!naive_sandwich_check(&unit(), &s, &sp, 2.0).unwrap());
    }

    #[test]
    fn dense_scan_examples() {
        let scan = dense_psi_scan(&unit(), &Point::from([0.5, 0.0]), 3).unwrap();
        assert!(scan.iter().all(|&(_, v)| v <= 2.0));
        let pi = Curve::from_points2(&[[0.0, 0.0], [2.0, 2.0]]).unwrap();
        let p = Point::from([0.0, 0.0]);
        let scan = dense_psi_scan(&pi, &p, 100).unwrap();
        let (_, best) = crate::radial::best_radius_at_center(&pi, &p).unwrap();
        for &(r, v) in &scan {
            assert_eq!(v, psi(&pi, &Cube::new(p.clone(), r).unwrap()).unwrap());
            assert!(v <= best + 1e-9);
        }
        assert!(dense_psi_scan(&pi, &p, 2).is_err());
    }

    #[test]
    fn brute_force_count_examples() {
        let red = [[[0.0, 0.0], [0.0, 2.0]]];
        assert_eq!(brute_force_counts(&red, &[[[-1.0, 1.0], [1.0, 1.0]]]), vec![1]);
        assert_eq!(brute_force_counts(&red, &[[[1.0, 1.0], [2.0, 1.0]]]), vec![0]);
        let point = [[[0.5, 0.5], [0.5, 0.5]]];
        assert_eq!(brute_force_counts(&point, &[[[0.0, 0.0], [1.0, 1.0]]]), vec![1]);
    }
}
