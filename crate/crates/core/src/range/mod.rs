//! Square-length queries over a planar curve and the `(6 + ε)` driver.
//!
//! Segments are split into four slope classes and each class is mapped into
//! the non-negative, at-most-one slope form. Per class a segment tree over the
//! x-extents answers, for a candidate square `S`, a value `M` with
//! `Υ(S) <= M <= Υ(S+)`, where `S+` is `S` grown on every side by the reported
//! expansion.

mod band;
mod chord;
pub mod counting;
pub mod slope;
mod tree;
mod typeb;
mod typec;

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use crate::error::PackError;
use crate::exec::{map_indexed, Execution};
use crate::geometry::{Cube, Curve};
use crate::radial::{Algorithm, PackednessResult};
use crate::wspd::{candidate_squares, check_eps, CandidateSquare, CandidateSquareSet};

pub use counting::{
    count_intersections, BruteForceCounter, CountingBackend, HybridCounter, IntersectionCounter, Seg2,
    SweepCounter,
};
pub use slope::{partition_by_slope, FormSegment, SlopeClass, SlopePartition};
pub use tree::{ClassTree, Resolution};

type Bounds = (f64, f64, f64, f64);

/// The answer to a square query.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QueryAnswer {
    /// Bound on the curve length inside the square.
    pub m: f64,
    /// Per-side growth of the square under which `m` is a lower bound.
    pub expansion: f64,
}

impl QueryAnswer {
    /// The grown square `S+` for `square`.
    pub fn expanded(&self, square: &CandidateSquare) -> Cube {
        Cube {
            center: square.center.into(),
            radius: square.radius + self.expansion,
        }
    }
}

/// Squares as seen from one slope class.
fn class_bounds(class: SlopeClass, sq: &CandidateSquare) -> Bounds {
    let [cx, cy] = class.forward(sq.center);
    let r = sq.radius;
    (cx - r, cx + r, cy - r, cy + r)
}

type TypeCTable = HashMap<(usize, usize), f64>;

/// Bounds for squares nested in a node's slab, keyed by `(node, square)`.
fn type_c_tables(
    trees: &[ClassTree; 4],
    squares: &[CandidateSquare],
    ids: std::ops::Range<usize>,
    exec: Execution,
    counter: &dyn IntersectionCounter,
) -> [TypeCTable; 4] {
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for class in SlopeClass::ALL {
        let tree = &trees[class.index()];
        for id in ids.clone() {
            let (x, x2, _, _) = class_bounds(class, &squares[id]);
            for v in tree.contains_chain(x, x2) {
                groups.entry((class.index(), v)).or_default().push(id);
            }
        }
    }
    let items: Vec<((usize, usize), Vec<usize>)> = groups.into_iter().collect();
    let values = map_indexed(
        exec,
        items.len(),
        || (),
        |_, i| {
            let ((c, v), ref ids) = items[i];
            let class = SlopeClass::ALL[c];
            let tree = &trees[c];
            let node = &tree.nodes[v];
            let bounds: Vec<Bounds> = ids.iter().map(|&id| class_bounds(class, &squares[id])).collect();
            let mut sums = vec![0.0; ids.len()];
            for bucket in &node.buckets {
                let vals = typec::bucket_values(bucket, (node.x_l, node.x_r), tree.res, &bounds, counter);
                for (s, v) in sums.iter_mut().zip(vals) {
                    *s += v;
                }
            }
            sums
        },
    );
    let mut tables: [TypeCTable; 4] = Default::default();
    for (((c, v), ids), sums) in items.into_iter().zip(values) {
        for (id, m) in ids.into_iter().zip(sums) {
            tables[c].insert((v, id), m);
        }
    }
    tables
}

/// Build-time settings.
#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
    pub exec: Execution,
    pub backend: CountingBackend,
}

/// Segment trees for all four slope classes with precomputed values for a
/// fixed set of candidate squares.
#[derive(Clone, Debug)]
pub struct RangeStructure {
    res: Resolution,
    trees: [ClassTree; 4],
    squares: Vec<CandidateSquare>,
    tables: [TypeCTable; 4],
}

fn build_trees(partition: &SlopePartition, res: Resolution) -> [ClassTree; 4] {
    SlopeClass::ALL.map(|c| ClassTree::build(partition.class(c), res))
}

impl RangeStructure {
    /// Builds the structure for a planar curve and its candidate squares.
    pub fn new(pi: &Curve, eps: f64, candidates: &CandidateSquareSet) -> Result<Self, PackError> {
        Self::with_options(pi, eps, candidates, BuildOptions::default())
    }

    pub fn with_options(
        pi: &Curve,
        eps: f64,
        candidates: &CandidateSquareSet,
        opts: BuildOptions,
    ) -> Result<Self, PackError> {
        if pi.dim() != 2 {
            return Err(PackError::NotPlanar(pi.dim()));
        }
        Self::from_partition(&partition_by_slope(pi), eps, &candidates.squares, opts)
    }

    /// Builds the structure from already partitioned segments.
    pub fn from_partition(
        partition: &SlopePartition,
        eps: f64,
        squares: &[CandidateSquare],
        opts: BuildOptions,
    ) -> Result<Self, PackError> {
        check_eps(eps)?;
        let res = Resolution::new(eps);
        let trees = build_trees(partition, res);
        let counter = opts.backend.counter();
        let tables = type_c_tables(&trees, squares, 0..squares.len(), opts.exec, counter.as_ref());
        Ok(RangeStructure {
            res,
            trees,
            squares: squares.to_vec(),
            tables,
        })
    }

    pub fn resolution(&self) -> Resolution {
        self.res
    }

    pub fn class_tree(&self, class: SlopeClass) -> &ClassTree {
        &self.trees[class.index()]
    }

    pub fn squares(&self) -> &[CandidateSquare] {
        &self.squares
    }

    /// Nodes of `class` holding a precomputed value for square `id`.
    pub fn type_c_nodes(&self, class: SlopeClass, id: usize) -> Vec<usize> {
        let mut nodes: Vec<usize> = self.tables[class.index()]
            .keys()
            .filter(|&&(_, s)| s == id)
            .map(|&(v, _)| v)
            .collect();
        nodes.sort_unstable();
        nodes
    }

    /// Bound for the square with index `id` in the candidate list.
    pub fn query(&self, id: usize) -> Result<QueryAnswer, PackError> {
        let sq = self.squares.get(id).ok_or(PackError::UnknownSquare)?;
        query_square(&self.trees, &self.tables, id, sq)
    }

    /// Bound for a square given by center and radius; it must be a candidate.
    pub fn query_cube(&self, cube: &Cube) -> Result<QueryAnswer, PackError> {
        let c = cube.center.coords();
        let id = self
            .squares
            .iter()
            .position(|s| c.len() == 2 && s.center == [c[0], c[1]] && s.radius == cube.radius)
            .ok_or(PackError::UnknownSquare)?;
        self.query(id)
    }
}

fn query_square(
    trees: &[ClassTree; 4],
    tables: &[TypeCTable; 4],
    id: usize,
    sq: &CandidateSquare,
) -> Result<QueryAnswer, PackError> {
    let mut m = 0.0;
    let mut expansion = 0.0f64;
    for class in SlopeClass::ALL {
        let table = &tables[class.index()];
        let (part, e) = trees[class.index()]
            .query_bounds(class_bounds(class, sq), &mut |v| table.get(&(v, id)).copied())?;
        m += part;
        expansion = expansion.max(e);
    }
    Ok(QueryAnswer { m, expansion })
}

/// Settings for [`approx6_with`].
#[derive(Clone, Copy, Debug)]
pub struct Approx6Options {
    pub eps: f64,
    pub exec: Execution,
    pub backend: CountingBackend,
    /// Candidate squares whose precomputed values are held at once.
    pub chunk_size: usize,
    /// Give up with [`PackError::DeadlineExceeded`] after this long.
    pub deadline: Option<Duration>,
}

impl Approx6Options {
    pub fn new(eps: f64) -> Self {
        Approx6Options {
            eps,
            exec: Execution::default(),
            backend: CountingBackend::default(),
            chunk_size: 512,
            deadline: None,
        }
    }
}

/// `(6 + ε)`-approximate packedness of a planar curve.
pub fn approx6(pi: &Curve, eps: f64) -> Result<PackednessResult, PackError> {
    approx6_with(pi, &Approx6Options::new(eps))
}

pub fn approx6_with(pi: &Curve, opts: &Approx6Options) -> Result<PackednessResult, PackError> {
    let start = Instant::now();
    let check_deadline = || match opts.deadline {
        Some(d) if start.elapsed() > d => Err(PackError::DeadlineExceeded),
        _ => Ok(()),
    };
    if pi.dim() != 2 {
        return Err(PackError::NotPlanar(pi.dim()));
    }
    let eps = opts.eps;
    let candidates = candidate_squares(pi, eps)?;
    check_deadline()?;
    let res = Resolution::new(eps);
    let trees = build_trees(&partition_by_slope(pi), res);
    let counter = opts.backend.counter();
    let squares = &candidates.squares;
    let chunk = opts.chunk_size.max(1);

    let mut best: Option<(usize, f64)> = None;
    let mut lo = 0;
    while lo < squares.len() {
        check_deadline()?;
        let hi = (lo + chunk).min(squares.len());
        let tables = type_c_tables(&trees, squares, lo..hi, opts.exec, counter.as_ref());
        let ratios = map_indexed(
            opts.exec,
            hi - lo,
            || (),
            |_, k| {
                let id = lo + k;
                let sq = &squares[id];
                query_square(&trees, &tables, id, sq).map(|a| a.m / sq.radius)
            },
        );
        for (k, ratio) in ratios.into_iter().enumerate() {
            let ratio = ratio?;
            if best.is_none_or(|(_, b)| ratio > b) {
                best = Some((lo + k, ratio));
            }
        }
        lo = hi;
    }
    let (id, value) = best.ok_or(PackError::EmptyPointSet)?;
    Ok(PackednessResult {
        value,
        witness: squares[id].cube(),
        factor: 6.0 + eps,
        algorithm: Algorithm::Approx6,
        eps: Some(eps),
    })
}
