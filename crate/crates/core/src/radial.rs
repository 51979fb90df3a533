//! Fixed-center radial sweep and the vertex-centered 2-approximation.
//!
//! For a fixed center `p` the length `Υ(r)` of the curve inside the cube of
//! radius `r` is continuous and piecewise linear in `r`, so `ψ_p(r) = Υ(r)/r`
//! is piecewise of the form `a/r + b` and attains its maximum at a breakpoint.
//! Each segment contributes a handful of breakpoints: the radius at which the
//! cube first touches it, and the radii at which one of its clip endpoints
//! moves from one face of the cube to another.

use crate::error::GeometryError;
use crate::exec::{map_indexed, Execution, KahanSum};
use crate::geometry::{check_dim, distance, Cube, Curve, Point};

/// Relative tolerance under which two event radii are merged.
const MERGE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EventKind {
    /// A segment endpoint lies on a face of the cube.
    VertexOnFace,
    /// A lower-dimensional face of the cube meets the interior of a segment.
    EdgeOnLowerFace,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialEvent {
    pub radius: f64,
    pub kind: EventKind,
    pub segment_index: usize,
}

/// `Υ(r) = alpha + beta * r` on one inter-event interval.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LinearPiece {
    pub alpha: f64,
    pub beta: f64,
}

impl LinearPiece {
    pub fn upsilon(&self, r: f64) -> f64 {
        self.alpha + self.beta * r
    }

    pub fn psi(&self, r: f64) -> f64 {
        self.alpha / r + self.beta
    }
}

/// `ψ_p` evaluated at one merged event radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepValue {
    pub radius: f64,
    pub upsilon: f64,
    pub psi: f64,
}

/// The full breakpoint description of `ψ_p` for one center.
#[derive(Clone, Debug)]
pub struct SweepProfile {
    pub center: Point,
    /// Every per-segment event, sorted by radius.
    pub events: Vec<RadialEvent>,
    /// Values at the merged event radii, strictly increasing in radius.
    pub values: Vec<SweepValue>,
    /// `deltas[i]` is the change of the linear piece at `values[i].radius`.
    pub deltas: Vec<LinearPiece>,
    /// `pieces[i]` is the linear piece on `[values[i].radius, values[i+1].radius)`.
    pub pieces: Vec<LinearPiece>,
    /// The piece on `(0, values[0].radius)`.
    pub initial: LinearPiece,
}

impl SweepProfile {
    /// `Υ` at any radius, from the stored pieces.
    pub fn upsilon_at(&self, r: f64) -> f64 {
        let i = self.values.partition_point(|v| v.radius <= r);
        let piece = if i == 0 { self.initial } else { self.pieces[i - 1] };
        piece.upsilon(r)
    }

    pub fn psi_at(&self, r: f64) -> f64 {
        self.upsilon_at(r) / r
    }

    /// Smallest radius achieving the maximum event value.
    pub fn best(&self) -> (f64, f64) {
        let mut best = (self.values[0].radius, self.values[0].psi);
        for v in &self.values[1..] {
            if v.psi > best.1 {
                best = (v.radius, v.psi);
            }
        }
        best
    }
}

#[derive(Clone, Copy, Debug)]
struct RawEvent {
    r: f64,
    delta: LinearPiece,
    kind: EventKind,
    seg: u32,
}

/// A line `c + sign * m * r` in the parameter `t` of a segment.
#[derive(Clone, Copy, Debug)]
struct Line {
    c: f64,
    m: f64,
}

/// Reusable buffers for sweeping many centers over the same curve.
#[derive(Default)]
pub(crate) struct Sweeper {
    raw: Vec<RawEvent>,
    lines: Vec<Line>,
    radii: Vec<(f64, EventKind)>,
}

impl Sweeper {
    /// Collects all per-segment events for center `p` into `self.raw`
    /// (unsorted) and returns the piece on `(0, first event)`.
    fn collect(&mut self, pi: &Curve, p: &[f64]) -> LinearPiece {
        self.raw.clear();
        let mut initial = LinearPiece::default();
        for (i, (a, b)) in pi.segments().enumerate() {
            let first = self.segment_events(a, b, p, i as u32);
            initial.alpha += first.alpha;
            initial.beta += first.beta;
        }
        initial
    }

    fn segment_events(&mut self, a: &[f64], b: &[f64], p: &[f64], seg: u32) -> LinearPiece {
        let d = a.len();
        let len = distance(a, b);
        self.lines.clear();
        let mut zero_max = 0.0f64;
        for k in 0..d {
            let u = a[k] - p[k];
            let dir = b[k] - a[k];
            if dir == 0.0 {
                zero_max = zero_max.max(u.abs());
            } else {
                self.lines.push(Line {
                    c: -u / dir,
                    m: 1.0 / dir.abs(),
                });
            }
        }
        let (r_touch, t_touch) = touch_radius(a, b, p);
        let r_touch = r_touch.max(zero_max);

        self.radii.clear();
        if r_touch > 0.0 {
            let at_vertex = t_touch <= MERGE_TOL || t_touch >= 1.0 - MERGE_TOL;
            let kind = if at_vertex {
                EventKind::VertexOnFace
            } else {
                EventKind::EdgeOnLowerFace
            };
            self.radii.push((r_touch, kind));
        }
        let floor = r_touch * (1.0 + MERGE_TOL);
        // Breakpoints of max(0, c_k - m_k r) and of min(1, c_k + m_k r).
        for sign in [-1.0f64, 1.0] {
            let base = if sign < 0.0 { 0.0 } else { 1.0 };
            let n = self.lines.len();
            for i in 0..n {
                let li = self.lines[i];
                let r = sign * (base - li.c) / li.m;
                if r > floor && on_envelope(&self.lines, sign, base, base, r) {
                    self.radii.push((r, EventKind::VertexOnFace));
                }
                for j in i + 1..n {
                    let lj = self.lines[j];
                    if li.m == lj.m {
                        continue;
                    }
                    let r = sign * (lj.c - li.c) / (li.m - lj.m);
                    let v = li.c + sign * li.m * r;
                    if r > floor && on_envelope(&self.lines, sign, base, v, r) {
                        self.radii.push((r, EventKind::EdgeOnLowerFace));
                    }
                }
            }
        }
        self.radii.sort_by(|x, y| x.0.total_cmp(&y.0));
        self.radii.dedup_by(|later, earlier| later.0 <= earlier.0 * (1.0 + MERGE_TOL));

        let piece = |r: f64| -> LinearPiece {
            if r < r_touch {
                return LinearPiece::default();
            }
            segment_piece(&self.lines, len, r)
        };
        let n = self.radii.len();
        if n == 0 {
            return piece(1.0);
        }
        let initial = piece(self.radii[0].0 * 0.5);
        let mut prev = initial;
        for k in 0..n {
            let (r, kind) = self.radii[k];
            let sample = if k + 1 < n {
                0.5 * (r + self.radii[k + 1].0)
            } else {
                2.0 * r
            };
            let cur = piece(sample);
            self.raw.push(RawEvent {
                r,
                delta: LinearPiece {
                    alpha: cur.alpha - prev.alpha,
                    beta: cur.beta - prev.beta,
                },
                kind,
                seg,
            });
            prev = cur;
        }
        initial
    }

    /// Sorts the collected events and walks the merged radii, calling `visit`
    /// with the radius, the accumulated piece and the change at that radius.
    fn walk<F: FnMut(f64, LinearPiece, LinearPiece)>(&mut self, initial: LinearPiece, mut visit: F) {
        self.raw
            .sort_unstable_by(|x, y| x.r.total_cmp(&y.r).then(x.seg.cmp(&y.seg)));
        let mut alpha = KahanSum::default();
        let mut beta = KahanSum::default();
        alpha.add(initial.alpha);
        beta.add(initial.beta);
        let mut i = 0;
        while i < self.raw.len() {
            let start = self.raw[i].r;
            let mut j = i;
            let mut da = KahanSum::default();
            let mut db = KahanSum::default();
            let mut r = start;
            while j < self.raw.len() && self.raw[j].r <= start * (1.0 + MERGE_TOL) {
                r = self.raw[j].r;
                da.add(self.raw[j].delta.alpha);
                db.add(self.raw[j].delta.beta);
                alpha.add(self.raw[j].delta.alpha);
                beta.add(self.raw[j].delta.beta);
                j += 1;
            }
            let piece = LinearPiece {
                alpha: alpha.value(),
                beta: beta.value(),
            };
            let delta = LinearPiece {
                alpha: da.value(),
                beta: db.value(),
            };
            visit(r, piece, delta);
            i = j;
        }
    }

    /// `(radius, ψ)` maximizing `ψ_p` over event radii; smallest radius on ties.
    pub(crate) fn best(&mut self, pi: &Curve, p: &[f64]) -> (f64, f64) {
        let initial = self.collect(pi, p);
        let mut best = (f64::NAN, f64::NEG_INFINITY);
        self.walk(initial, |r, piece, _| {
            let v = nonneg(piece.upsilon(r)) / r;
            if v > best.1 {
                best = (r, v);
            }
        });
        best
    }

    /// Merged `(radius, Υ)` pairs and the per-segment touch radii, for
    /// callers that bound `ψ` over neighborhoods of `p`.
    pub(crate) fn upsilon_steps(&mut self, pi: &Curve, p: &[f64], out: &mut Vec<(f64, f64)>) {
        out.clear();
        let initial = self.collect(pi, p);
        self.walk(initial, |r, piece, _| out.push((r, nonneg(piece.upsilon(r)))));
    }
}

fn nonneg(x: f64) -> f64 {
    x.max(0.0)
}

/// Whether the line value `v` at radius `r` lies on the envelope
/// `max(0, c_k - m_k r)` (sign -1) or `min(1, c_k + m_k r)` (sign +1).
fn on_envelope(lines: &[Line], sign: f64, base: f64, v: f64, r: f64) -> bool {
    let tol = 1e-9 * (1.0 + v.abs());
    if sign < 0.0 {
        let env = lines.iter().fold(base, |e, l| e.max(l.c - l.m * r));
        v >= env - tol
    } else {
        let env = lines.iter().fold(base, |e, l| e.min(l.c + l.m * r));
        v <= env + tol
    }
}

fn segment_piece(lines: &[Line], len: f64, r: f64) -> LinearPiece {
    let (mut lo_v, mut lo_c, mut lo_m) = (0.0f64, 0.0, 0.0);
    let (mut up_v, mut up_c, mut up_m) = (1.0f64, 1.0, 0.0);
    for l in lines {
        let v = l.c - l.m * r;
        if v > lo_v {
            (lo_v, lo_c, lo_m) = (v, l.c, l.m);
        }
        let v = l.c + l.m * r;
        if v < up_v {
            (up_v, up_c, up_m) = (v, l.c, l.m);
        }
    }
    if up_v < lo_v {
        return LinearPiece::default();
    }
    LinearPiece {
        alpha: len * (up_c - lo_c),
        beta: len * (up_m + lo_m),
    }
}

/// Chebyshev distance from `p` to segment `ab` and the parameter attaining it.
///
/// `max_k |u_k + t d_k|` is convex and piecewise linear in `t`, so its minimum
/// over `[0, 1]` sits at an endpoint or where two of the `±(u_k + t d_k)`
/// pieces cross.
pub(crate) fn touch_radius(a: &[f64], b: &[f64], p: &[f64]) -> (f64, f64) {
    let d = a.len();
    let f = |t: f64| -> f64 {
        (0..d).fold(0.0f64, |m, k| m.max((a[k] - p[k] + t * (b[k] - a[k])).abs()))
    };
    let mut best = (f(0.0), 0.0);
    let mut consider = |t: f64| {
        if (0.0..=1.0).contains(&t) {
            let v = f(t);
            if v < best.0 {
                best = (v, t);
            }
        }
    };
    consider(1.0);
    for k in 0..d {
        let uk = a[k] - p[k];
        let dk = b[k] - a[k];
        if dk != 0.0 {
            consider(-uk / dk);
        }
        for j in k + 1..d {
            let uj = a[j] - p[j];
            let dj = b[j] - a[j];
            if dj != dk {
                consider((uk - uj) / (dj - dk));
            }
            if dj != -dk {
                consider(-(uk + uj) / (dj + dk));
            }
        }
    }
    best
}

/// All event radii of the cube growing around `p`, sorted ascending.
pub fn radial_events(pi: &Curve, p: &Point) -> Result<Vec<RadialEvent>, GeometryError> {
    Ok(sweep_profile(pi, p)?.events)
}

/// The breakpoint description of `ψ_p`.
pub fn sweep_profile(pi: &Curve, p: &Point) -> Result<SweepProfile, GeometryError> {
    check_dim(pi.dim(), p.dim())?;
    let mut sw = Sweeper::default();
    let initial = sw.collect(pi, p.coords());
    let mut values = Vec::new();
    let mut deltas = Vec::new();
    let mut pieces = Vec::new();
    sw.walk(initial, |r, piece, delta| {
        let ups = nonneg(piece.upsilon(r));
        values.push(SweepValue {
            radius: r,
            upsilon: ups,
            psi: ups / r,
        });
        deltas.push(delta);
        pieces.push(piece);
    });
    let events = sw
        .raw
        .iter()
        .map(|e| RadialEvent {
            radius: e.r,
            kind: e.kind,
            segment_index: e.seg as usize,
        })
        .collect();
    Ok(SweepProfile {
        center: p.clone(),
        events,
        values,
        deltas,
        pieces,
        initial,
    })
}

/// Radius maximizing `ψ_p` over event radii and the maximum value.
pub fn best_radius_at_center(pi: &Curve, p: &Point) -> Result<(f64, f64), GeometryError> {
    check_dim(pi.dim(), p.dim())?;
    Ok(Sweeper::default().best(pi, p.coords()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Approx2,
    Approx6,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Approx2 => "approx2",
            Algorithm::Approx6 => "approx6",
        }
    }
}

/// An approximate packedness value with its witness cube.
#[derive(Clone, Debug, PartialEq)]
pub struct PackednessResult {
    pub value: f64,
    pub witness: Cube,
    /// The true packedness lies in `[value, factor * value]` for approx2 and
    /// in `[value / (1 + eps/4), factor * value]` for approx6.
    pub factor: f64,
    pub algorithm: Algorithm,
    pub eps: Option<f64>,
}

/// Best cube centered at a vertex; a 2-approximation of the packedness.
pub fn approx2(pi: &Curve) -> PackednessResult {
    approx2_with(pi, Execution::default())
}

pub fn approx2_with(pi: &Curve, exec: Execution) -> PackednessResult {
    let per_vertex = map_indexed(exec, pi.len(), Sweeper::default, |sw, i| {
        sw.best(pi, pi.vertex(i))
    });
    let mut best = (0usize, per_vertex[0]);
    for (i, &cand) in per_vertex.iter().enumerate().skip(1) {
        if cand.1 > best.1 .1 {
            best = (i, cand);
        }
    }
    let (idx, (r, value)) = best;
    PackednessResult {
        value,
        witness: Cube {
            center: pi.vertex_point(idx),
            radius: r,
        },
        factor: 2.0,
        algorithm: Algorithm::Approx2,
        eps: None,
    }
}
