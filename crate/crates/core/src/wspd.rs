//! Fair split tree, well-separated pair decomposition and candidate squares.

use std::collections::HashMap;

use crate::error::PackError;
use crate::geometry::{distance, Cube, Curve, Point};

/// Relative margin added to the separation test so the certified distance
/// bounds survive rounding.
const SEPARATION_MARGIN: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SplitNode {
    /// Members are `perm[lo..hi]`.
    pub lo: usize,
    pub hi: usize,
    pub bbox: Vec<(f64, f64)>,
    pub children: Option<(usize, usize)>,
    /// Lowest original index among the members.
    pub rep: usize,
    pub center: Vec<f64>,
    /// Half the bounding-box diagonal.
    pub radius: f64,
}

impl SplitNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    pub fn size(&self) -> usize {
        self.hi - self.lo
    }
}

/// A fair split tree over a set of distinct points.
#[derive(Clone, Debug)]
pub struct SplitTree {
    dim: usize,
    coords: Vec<f64>,
    /// Lowest input index of each distinct point.
    original: Vec<usize>,
    perm: Vec<usize>,
    nodes: Vec<SplitNode>,
}

impl SplitTree {
    pub fn build(points: &[Point]) -> Result<Self, PackError> {
        let dim = points.first().ok_or(PackError::EmptyPointSet)?.dim();
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in points {
            crate::geometry::check_dim(dim, p.dim())?;
            coords.extend_from_slice(p.coords());
        }
        Self::from_flat(dim, &coords)
    }

    pub(crate) fn from_flat(dim: usize, flat: &[f64]) -> Result<Self, PackError> {
        if flat.is_empty() {
            return Err(PackError::EmptyPointSet);
        }
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut coords = Vec::new();
        let mut original = Vec::new();
        for (i, p) in flat.chunks_exact(dim).enumerate() {
            // +0.0 normalizes negative zero
            let key: Vec<u64> = p.iter().map(|x| (x + 0.0).to_bits()).collect();
            seen.entry(key).or_insert_with(|| {
                coords.extend_from_slice(p);
                original.push(i);
                original.len() - 1
            });
        }
        let n = original.len();
        let mut tree = SplitTree {
            dim,
            coords,
            original,
            perm: (0..n).collect(),
            nodes: Vec::with_capacity(2 * n),
        };
        let root = tree.make_node(0, n);
        let mut stack = vec![root];
        let mut scratch = Vec::new();
        while let Some(v) = stack.pop() {
            if tree.nodes[v].size() < 2 {
                continue;
            }
            let (lo, hi) = (tree.nodes[v].lo, tree.nodes[v].hi);
            let (axis, mid) = {
                let bb = &tree.nodes[v].bbox;
                let axis = (0..dim)
                    .max_by(|&a, &b| {
                        (bb[a].1 - bb[a].0)
                            .total_cmp(&(bb[b].1 - bb[b].0))
                            .then(b.cmp(&a))
                    })
                    .unwrap();
                (axis, 0.5 * (bb[axis].0 + bb[axis].1))
            };
            scratch.clear();
            let slice = &tree.perm[lo..hi];
            scratch.extend(slice.iter().copied().filter(|&i| tree.coords[i * dim + axis] <= mid));
            let split = lo + scratch.len();
            scratch.extend(slice.iter().copied().filter(|&i| tree.coords[i * dim + axis] > mid));
            tree.perm[lo..hi].copy_from_slice(&scratch);
            let left = tree.make_node(lo, split);
            let right = tree.make_node(split, hi);
            tree.nodes[v].children = Some((left, right));
            stack.push(right);
            stack.push(left);
        }
        Ok(tree)
    }

    fn make_node(&mut self, lo: usize, hi: usize) -> usize {
        let dim = self.dim;
        let mut bbox = vec![(f64::INFINITY, f64::NEG_INFINITY); dim];
        let mut rep = usize::MAX;
        for &i in &self.perm[lo..hi] {
            rep = rep.min(self.original[i]);
            for (k, b) in bbox.iter_mut().enumerate() {
                let x = self.coords[i * dim + k];
                b.0 = b.0.min(x);
                b.1 = b.1.max(x);
            }
        }
        let center: Vec<f64> = bbox.iter().map(|b| 0.5 * (b.0 + b.1)).collect();
        let radius = 0.5 * bbox.iter().map(|b| (b.1 - b.0) * (b.1 - b.0)).sum::<f64>().sqrt();
        self.nodes.push(SplitNode {
            lo,
            hi,
            bbox,
            children: None,
            rep,
            center,
            radius,
        });
        self.nodes.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn nodes(&self) -> &[SplitNode] {
        &self.nodes
    }

    pub fn node(&self, v: usize) -> &SplitNode {
        &self.nodes[v]
    }

    /// Number of distinct points.
    pub fn point_count(&self) -> usize {
        self.original.len()
    }

    /// Coordinates of distinct point `i`.
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    /// Lowest input index at which distinct point `i` occurs.
    pub fn original_index(&self, i: usize) -> usize {
        self.original[i]
    }

    /// Distinct-point indices stored below `v`.
    pub fn members(&self, v: usize) -> &[usize] {
        let n = &self.nodes[v];
        &self.perm[n.lo..n.hi]
    }
}

/// Radii and center distance of the two enclosing balls of a pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationCertificate {
    /// Common radius of both balls.
    pub radius: f64,
    pub center_distance: f64,
}

impl SeparationCertificate {
    /// Gap between the two balls.
    pub fn gap(&self) -> f64 {
        self.center_distance - 2.0 * self.radius
    }

    pub fn is_separated(&self, s: f64) -> bool {
        self.gap() >= s * self.radius * (1.0 + SEPARATION_MARGIN)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WspdPair {
    /// Split-tree node holding `A`.
    pub a: usize,
    /// Split-tree node holding `B`.
    pub b: usize,
    pub certificate: SeparationCertificate,
}

fn certificate(tree: &SplitTree, v: usize, w: usize) -> SeparationCertificate {
    let (nv, nw) = (tree.node(v), tree.node(w));
    SeparationCertificate {
        radius: nv.radius.max(nw.radius),
        center_distance: distance(&nv.center, &nw.center),
    }
}

/// Well-separated pair decomposition with separation ratio `s`.
pub fn wspd_pairs(tree: &SplitTree, s: f64) -> Result<Vec<WspdPair>, PackError> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(PackError::InvalidSeparation(s));
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for node in tree.nodes() {
        let Some((l, r)) = node.children else { continue };
        stack.push((l, r));
        while let Some((v, w)) = stack.pop() {
            let cert = certificate(tree, v, w);
            let both_leaves = tree.node(v).is_leaf() && tree.node(w).is_leaf();
            if both_leaves || cert.is_separated(s) {
                out.push(WspdPair { a: v, b: w, certificate: cert });
                continue;
            }
            let split_v = !tree.node(v).is_leaf()
                && (tree.node(w).is_leaf() || tree.node(v).radius >= tree.node(w).radius);
            if split_v {
                let (c0, c1) = tree.node(v).children.unwrap();
                stack.push((c1, w));
                stack.push((c0, w));
            } else {
                let (c0, c1) = tree.node(w).children.unwrap();
                stack.push((v, c1));
                stack.push((v, c0));
            }
        }
    }
    Ok(out)
}

/// A candidate square together with the pair that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CandidateSquare {
    pub center: [f64; 2],
    pub radius: f64,
    pub pair_index: usize,
    /// Vertex index of the center.
    pub rep_a: usize,
    /// Vertex index of the representative on the other side.
    pub rep_b: usize,
}

impl CandidateSquare {
    pub fn cube(&self) -> Cube {
        Cube {
            center: Point::from(self.center),
            radius: self.radius,
        }
    }

    /// `[x, x'] x [y, y']` as `(x, x', y, y')`.
    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        let [cx, cy] = self.center;
        let r = self.radius;
        (cx - r, cx + r, cy - r, cy + r)
    }
}

#[derive(Clone, Debug)]
pub struct CandidateSquareSet {
    pub squares: Vec<CandidateSquare>,
    pub eps: f64,
    /// Number of WSPD pairs used.
    pub pair_count: usize,
    /// Squares emitted before deduplication; twice the pair count.
    pub raw_count: usize,
}

impl CandidateSquareSet {
    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// Index of the square with this center and radius, if present.
    pub fn find(&self, cube: &Cube) -> Option<usize> {
        let c = cube.center.coords();
        if c.len() != 2 {
            return None;
        }
        self.squares.iter().position(|s| {
            (s.center[0] - c[0]).abs() <= DEDUP_TOL
                && (s.center[1] - c[1]).abs() <= DEDUP_TOL
                && (s.radius - cube.radius).abs() <= DEDUP_TOL
        })
    }
}

const DEDUP_TOL: f64 = 1e-12;

/// Separation ratio used for the candidate construction.
pub fn separation_for(eps: f64) -> f64 {
    720.0 / eps
}

pub(crate) fn check_eps(eps: f64) -> Result<(), PackError> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(PackError::InvalidEpsilon(eps));
    }
    Ok(())
}

/// The candidate squares of a planar curve: two per WSPD pair of its vertices.
pub fn candidate_squares(pi: &Curve, eps: f64) -> Result<CandidateSquareSet, PackError> {
    if pi.dim() != 2 {
        return Err(PackError::NotPlanar(pi.dim()));
    }
    check_eps(eps)?;
    let tree = SplitTree::from_flat(2, pi.flat_coords())?;
    let pairs = wspd_pairs(&tree, separation_for(eps))?;
    let mut raw = Vec::with_capacity(2 * pairs.len());
    for (k, pair) in pairs.iter().enumerate() {
        let ia = tree.node(pair.a).rep;
        let ib = tree.node(pair.b).rep;
        let (a, b) = (pi.vertex(ia), pi.vertex(ib));
        let r = (a[0] - b[0]).abs().max((a[1] - b[1]).abs()) + eps / 120.0 * distance(a, b);
        raw.push(CandidateSquare {
            center: [a[0], a[1]],
            radius: r,
            pair_index: k,
            rep_a: ia,
            rep_b: ib,
        });
        raw.push(CandidateSquare {
            center: [b[0], b[1]],
            radius: r,
            pair_index: k,
            rep_a: ib,
            rep_b: ia,
        });
    }
    let raw_count = raw.len();
    Ok(CandidateSquareSet {
        squares: dedup_squares(raw),
        eps,
        pair_count: pairs.len(),
        raw_count,
    })
}

/// Drops squares within `DEDUP_TOL` of an earlier one, keeping first occurrences.
fn dedup_squares(raw: Vec<CandidateSquare>) -> Vec<CandidateSquare> {
    let key = |s: &CandidateSquare| (s.center[0], s.center[1], s.radius);
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (key(&raw[i]), key(&raw[j]));
        a.0.total_cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.total_cmp(&b.2))
            .then(i.cmp(&j))
    });
    let close = |i: usize, j: usize| {
        let (a, b) = (key(&raw[i]), key(&raw[j]));
        (a.0 - b.0).abs() <= DEDUP_TOL && (a.1 - b.1).abs() <= DEDUP_TOL && (a.2 - b.2).abs() <= DEDUP_TOL
    };
    let mut keep = vec![true; raw.len()];
    let mut g = 0;
    while g < order.len() {
        let x0 = raw[order[g]].center[0];
        let mut h = g + 1;
        while h < order.len() && raw[order[h]].center[0] - x0 <= DEDUP_TOL {
            h += 1;
        }
        for a in g..h {
            for b in a + 1..h {
                let (i, j) = (order[a].min(order[b]), order[a].max(order[b]));
                if keep[i] && keep[j] && close(i, j) {
                    keep[j] = false;
                }
            }
        }
        g = h;
    }
    raw.into_iter()
        .zip(keep)
        .filter_map(|(s, k)| k.then_some(s))
        .collect()
}
