//! Segment tree over the x-extents of one slope class.

use super::band::BandLength;
use super::slope::FormSegment;
use super::typeb::{bucket_bound, build_buckets, Bucket, Piece};
use crate::error::PackError;

/// Bucket and subdivision counts for a given `eps`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Resolution {
    pub eps: f64,
    pub kappa1: usize,
    pub kappa2: usize,
}

impl Resolution {
    pub fn new(eps: f64) -> Self {
        Resolution {
            eps,
            kappa1: (16.0 * std::f64::consts::SQRT_2 / eps).ceil() as usize,
            kappa2: (16.0 / eps).ceil() as usize,
        }
    }

    /// Per-side expansion for a node overlap of width `w`.
    pub fn expansion(&self, w: f64) -> f64 {
        self.eps / 8.0 * w
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Node {
    pub lo_leaf: usize,
    pub hi_leaf: usize,
    pub depth: usize,
    pub x_l: f64,
    pub x_r: f64,
    pub children: Option<(usize, usize)>,
    /// Segment ids spanning this node but not its parent.
    pub f: Vec<usize>,
    /// Distinct segment ids in the subtree.
    pub l: Vec<usize>,
    pub band_l: BandLength,
    pub band_f: BandLength,
    pub buckets: Vec<Bucket>,
}

/// How a query x-range `[x, x']` relates to a node's closed interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum NodeKind {
    Disjoint,
    /// Interval inside the query range.
    Spanned,
    /// Query range crosses the right boundary only.
    CrossRight,
    /// Query range crosses the left boundary only.
    CrossLeft,
    /// Query range inside the interval.
    Contains,
}

/// One slope class: segment tree, spanning and subtree sets, and the
/// band and bucket structures of every node.
#[derive(Clone, Debug)]
pub struct ClassTree {
    pub(crate) res: Resolution,
    pub(crate) segs: Vec<FormSegment>,
    pub(crate) nodes: Vec<Node>,
}

/// Part of segment `s` over `x in [x_l, x_r]`.
pub(crate) fn clip_to_slab(s: &FormSegment, x_l: f64, x_r: f64) -> Piece {
    let (a, b) = (s.a, s.b);
    let at = |x: f64| -> [f64; 2] {
        if x <= a[0] {
            a
        } else if x >= b[0] {
            b
        } else {
            [x, a[1] + (x - a[0]) * (b[1] - a[1]) / (b[0] - a[0])]
        }
    };
    (at(x_l), at(x_r))
}

impl ClassTree {
    /// Builds the tree, the band structures and the angle buckets.
    pub fn build(segs: &[FormSegment], res: Resolution) -> ClassTree {
        let mut xs: Vec<f64> = segs.iter().flat_map(|s| [s.a[0], s.b[0]]).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let mut tree = ClassTree {
            res,
            segs: segs.to_vec(),
            nodes: Vec::new(),
        };
        if segs.is_empty() {
            return tree;
        }
        let leaves = 2 * xs.len() + 1;
        let leaf_bounds = |j: usize| -> (f64, f64) {
            if j == 0 {
                (f64::NEG_INFINITY, xs[0])
            } else if j % 2 == 1 {
                let p = xs[(j - 1) / 2];
                (p, p)
            } else {
                let k = (j - 2) / 2;
                (xs[k], xs.get(k + 1).copied().unwrap_or(f64::INFINITY))
            }
        };
        tree.build_node(0, leaves - 1, 0, &leaf_bounds);
        let point_leaf = |x: f64| 2 * xs.partition_point(|&p| p < x) + 1;
        for (id, s) in segs.iter().enumerate() {
            tree.insert(0, point_leaf(s.a[0]), point_leaf(s.b[0]), id);
        }
        tree.fill(0);
        tree
    }

    fn build_node(&mut self, lo: usize, hi: usize, depth: usize, bounds: &dyn Fn(usize) -> (f64, f64)) -> usize {
        let id = self.nodes.len();
        self.nodes.push(Node {
            lo_leaf: lo,
            hi_leaf: hi,
            depth,
            x_l: bounds(lo).0,
            x_r: bounds(hi).1,
            children: None,
            f: Vec::new(),
            l: Vec::new(),
            band_l: BandLength::default(),
            band_f: BandLength::default(),
            buckets: Vec::new(),
        });
        if lo < hi {
            let mid = (lo + hi) / 2;
            let left = self.build_node(lo, mid, depth + 1, bounds);
            let right = self.build_node(mid + 1, hi, depth + 1, bounds);
            self.nodes[id].children = Some((left, right));
        }
        id
    }

    fn insert(&mut self, v: usize, lo: usize, hi: usize, id: usize) {
        let node = &self.nodes[v];
        if hi < node.lo_leaf || lo > node.hi_leaf {
            return;
        }
        if lo <= node.lo_leaf && node.hi_leaf <= hi {
            self.nodes[v].f.push(id);
            return;
        }
        if let Some((l, r)) = node.children {
            self.insert(l, lo, hi, id);
            self.insert(r, lo, hi, id);
        }
    }

    /// Fills `L(v)` bottom-up and builds the per-node structures.
    fn fill(&mut self, v: usize) {
        let mut l = self.nodes[v].f.clone();
        if let Some((a, b)) = self.nodes[v].children {
            self.fill(a);
            self.fill(b);
            l.extend_from_slice(&self.nodes[a].l);
            l.extend_from_slice(&self.nodes[b].l);
        }
        l.sort_unstable();
        l.dedup();
        let (x_l, x_r) = (self.nodes[v].x_l, self.nodes[v].x_r);
        let band_l = BandLength::new(l.iter().map(|&i| clip_to_slab(&self.segs[i], x_l, x_r)));
        let f_pieces: Vec<Piece> = self.nodes[v].f.iter().map(|&i| clip_to_slab(&self.segs[i], x_l, x_r)).collect();
        let band_f = BandLength::new(f_pieces.iter().copied());
        let buckets = build_buckets(&f_pieces, self.res.kappa1);
        let node = &mut self.nodes[v];
        node.l = l;
        node.band_l = band_l;
        node.band_f = band_f;
        node.buckets = buckets;
    }

    pub fn resolution(&self) -> Resolution {
        self.res
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Segments stored in this class, in their normalized form.
    pub fn segments(&self) -> &[FormSegment] {
        &self.segs
    }

    /// Closure `[x_l, x_r]` of the node's interval.
    pub fn interval(&self, v: usize) -> (f64, f64) {
        (self.nodes[v].x_l, self.nodes[v].x_r)
    }

    pub fn children(&self, v: usize) -> Option<(usize, usize)> {
        self.nodes[v].children
    }

    pub fn depth(&self, v: usize) -> usize {
        self.nodes[v].depth
    }

    /// Ids of segments spanning the node but not its parent.
    pub fn spanning(&self, v: usize) -> &[usize] {
        &self.nodes[v].f
    }

    /// Ids of all segments stored in the node's subtree.
    pub fn subtree(&self, v: usize) -> &[usize] {
        &self.nodes[v].l
    }

    /// Length of the subtree's segments inside the node's slab and the band
    /// `y..=y2`.
    pub fn band_length(&self, v: usize, y: f64, y2: f64) -> f64 {
        self.nodes[v].band_l.query(y, y2)
    }

    pub(crate) fn kind(&self, v: usize, x: f64, x2: f64) -> NodeKind {
        let n = &self.nodes[v];
        if n.x_r <= x || n.x_l >= x2 {
            NodeKind::Disjoint
        } else if x <= n.x_l && n.x_r <= x2 {
            NodeKind::Spanned
        } else if n.x_l <= x && x2 <= n.x_r {
            NodeKind::Contains
        } else if x > n.x_l {
            NodeKind::CrossRight
        } else {
            NodeKind::CrossLeft
        }
    }

    /// Nodes with a nonempty spanning set whose interval contains `[x, x']`,
    /// from the root down. At most one per level.
    pub(crate) fn contains_chain(&self, x: f64, x2: f64) -> Vec<usize> {
        let mut out = Vec::new();
        if self.nodes.is_empty() {
            return out;
        }
        let mut v = 0;
        loop {
            if self.kind(v, x, x2) != NodeKind::Contains {
                break;
            }
            if !self.nodes[v].f.is_empty() {
                out.push(v);
            }
            let Some((a, b)) = self.nodes[v].children else { break };
            v = if self.kind(a, x, x2) == NodeKind::Contains { a } else { b };
        }
        out
    }

    /// Bound on the class's length inside `[x, x'] x [y, y']` and the largest
    /// per-side expansion it may have used. `contained` supplies the
    /// precomputed value for nodes whose interval contains the square.
    pub(crate) fn query_bounds(
        &self,
        (x, x2, y, y2): (f64, f64, f64, f64),
        contained: &mut dyn FnMut(usize) -> Option<f64>,
    ) -> Result<(f64, f64), PackError> {
        if self.nodes.is_empty() {
            return Ok((0.0, 0.0));
        }
        let res = self.res;
        let kappas = (res.kappa1, res.kappa2);
        let mut total = 0.0;
        let mut e_max = 0.0f64;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            let n = &self.nodes[v];
            let kind = self.kind(v, x, x2);
            match kind {
                NodeKind::Disjoint => continue,
                NodeKind::Spanned => {
                    total += n.band_l.query(y, y2);
                    continue;
                }
                NodeKind::Contains => {
                    if !n.f.is_empty() {
                        e_max = e_max.max(res.expansion(x2 - x));
                        total += contained(v).ok_or(PackError::UnknownSquare)?;
                    }
                }
                NodeKind::CrossRight | NodeKind::CrossLeft if !n.f.is_empty() => {
                    let w = if kind == NodeKind::CrossRight { n.x_r - x } else { x2 - n.x_l };
                    let e = res.expansion(w);
                    e_max = e_max.max(e);
                    let spans = if kind == NodeKind::CrossRight {
                        x - e <= n.x_l
                    } else {
                        x2 + e >= n.x_r
                    };
                    if spans {
                        total += n.band_f.query(y, y2);
                    } else {
                        for b in &n.buckets {
                            total += if kind == NodeKind::CrossRight {
                                bucket_bound(&b.right, b.j, kappas, x, n.x_r, y, y2, e)
                            } else {
                                bucket_bound(&b.left, b.j, kappas, -x2, -n.x_l, -y2, -y, e)
                            };
                        }
                    }
                }
                NodeKind::CrossRight | NodeKind::CrossLeft => {}
            }
            if let Some((a, b)) = n.children {
                stack.push(b);
                stack.push(a);
            }
        }
        Ok((total, e_max))
    }
}
